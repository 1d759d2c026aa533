#pragma once

#include "bflift/bf_map.hpp"
#include "bflift/lift.hpp"
#include "bflift/lpa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bflift {

// A homomorphism candidate between Leavitt path algebras over the integers,
// given on generators. Ghost images are explicit data (by default the
// involutions of the edge images) so that non-involutive assignments are
// representable and the star check is a real test.
struct GradedHom {
    enum class Provenance { constructed, user };

    GraphPtr source;  // E
    GraphPtr target;  // F
    std::vector<LPAElement> vimages;  // by E-vertex
    std::vector<LPAElement> eimages;  // by E-edge
    std::vector<LPAElement> gimages;  // by E-edge (image of the ghost edge)
    Provenance provenance = Provenance::user;
    std::optional<TidyWitness> witness;

    bool operator==(const GradedHom& o) const {
        return same_graph(source, o.source) && same_graph(target, o.target) &&
               vimages == o.vimages && eimages == o.eimages && gimages == o.gimages &&
               witness == o.witness;
    }
};

GradedHom identity_hom(const GraphPtr& g);

// Evaluates the images on an arbitrary element of the source algebra:
// monomials are mapped factor by factor (edges through the edge images,
// ghost edges through the ghost images, vertices through the vertex
// images).
LPAElement apply_hom(const GradedHom& h, const LPAElement& x);

struct Violation {
    std::string relation;  // unitality | P | V | E | CK1 | CK2 | star
    std::string locus;
    LPAElement residual;   // nonzero, in normal form
};

// Checks unitality, the five relation families and the compatibility of the
// ghost images with the involution, by normal-form equality in the target
// algebra. Returns the first failing relation.
std::optional<Violation> verify_hom(const GradedHom& h);

// Every generator image homogeneous of the generator's degree.
bool check_graded(const GradedHom& h);
// Ghost images equal the involutions of the edge images.
bool check_star(const GradedHom& h);
// Images of the diagonal generators alpha alpha*, |alpha| <= 3, lie in the
// diagonal of the target. Together with multiplicativity this covers the
// diagonal at every level; involutive homomorphisms preserve the diagonal
// automatically, which the tests assert as a cross-check.
bool check_diagonal(const GradedHom& h);

// Composite g . h for h: E -> F, g: F -> G; images are pushed through h and
// evaluated under g, then normal-formed.
GradedHom compose(const GradedHom& g, const GradedHom& h);

// The induced map on Bowen-Franks modules: expands each vertex image as a
// sum of distinct projections beta beta* and records the ranges with their
// levels. Throws when a vertex image is not a 0/1 sum of diagonal
// projections.
BFMapSpec induced_bf_map(const GradedHom& h);

struct TidyResult {
    bool tidy = false;
    std::optional<TidyWitness> witness;
    std::string certificate;  // set when not tidy
};

// Decision procedure for tidiness of a verified homomorphism: gradedness,
// star and order checks, then recovery of the partitions from the vertex
// image supports and of the bijection tables from the edge image slots,
// with all memberships and bijectivity verified. The search level starts at
// the deepest ghost leg and increases up to a small cap when the table
// assembly needs deeper splitting.
TidyResult tidy_decide(const GradedHom& h);

// Checks a witness against a hom independently: partitions partition the
// path sets, tables are bijections with the right domains and codomains,
// and the reconstructed images equal the hom's images.
bool witness_matches(const GradedHom& h, const TidyWitness& w);

}  // namespace bflift
