#pragma once

#include "bflift/graph.hpp"
#include "bflift/level_vector.hpp"

#include <string>
#include <vector>

namespace bflift {

// A candidate pointed preordered module map between the Bowen-Franks
// modules of two graphs, given by nonnegative representatives of the vertex
// images, all at a common level.
struct BFMapSpec {
    GraphPtr source;  // E
    GraphPtr target;  // F
    int level = 0;    // N
    std::vector<LevelVector> images;  // indexed by E-vertex, over the target

    const LevelVector& image(int v) const { return images[v]; }
};

// Constructs the spec and checks the structural invariants (image count,
// common level, nonnegative coordinates). Semantic validity is decided
// separately by validate_map.
BFMapSpec make_map_spec(GraphPtr source, GraphPtr target, int level,
                        std::vector<LevelVector> images);

struct MapValidity {
    bool valid = false;
    std::string reason;  // empty when valid
};

// Decides whether the spec defines a unital module map:
//   (a) sigma-linearity at every regular vertex of the source,
//   (b) unitality: the images sum to the order unit,
//   (c) no support at negative sink indices (a consequence of (b) for
//       nonnegative representatives, reported separately for diagnosis).
MapValidity validate_map(const BFMapSpec& m);

// The matrix normal form of a map: a level L with nonnegative matrices
// S^(0..L) (sink columns) and R (regular columns) reproducing the vertex
// images levelwise.
struct BFMatrixForm {
    GraphPtr source;
    GraphPtr target;
    int level = 0;                // L
    std::vector<Matrix> s;        // s[i]: E^0 x sink(F), 0 <= i <= L
    Matrix r;                     // E^0 x reg(F)

    // Checks the defining identities:
    //   column sums equal path counts,
    //   S^(0) vanishes on regular rows and S^(i) = A_E S^(i-1) there,
    //   A_E S^(L) = (R A_F) on sink columns,
    //   A_E R = (R A_F) on regular columns.
    void validate() const;

    bool operator==(const BFMatrixForm& o) const {
        return same_graph(source, o.source) && same_graph(target, o.target) &&
               level == o.level && s == o.s && r == o.r;
    }
};

// Finds the smallest level L >= max(level, min_level) at which the
// unitality and sigma-linearity identities hold on the nose, and reads the
// matrices off the pushed representatives. Throws when the map is invalid
// or the identities do not stabilize within `cap` extra levels (the theory
// gives no a priori bound).
BFMatrixForm extract_matrix_form(const BFMapSpec& m, int min_level = 0, int cap = 64);

// The spec x_v = sum over w of P[v][w] . (w at level k) for a nonnegative
// integer matrix P indexed E^0 x F^0. Not validated.
BFMapSpec map_from_matrix(GraphPtr source, GraphPtr target, const Matrix& p, int shift);

// Re-evaluates a matrix form as the level vector of a source vertex.
LevelVector evaluate_form(const BFMatrixForm& form, int v);

// Pushes the representation one level at a time: the new sink column at the
// top index and the new regular block are both read off R A_F.
BFMatrixForm push_form(const BFMatrixForm& form, int target_level);

// Equality after pushing the lower form to the higher level.
bool forms_equivalent(const BFMatrixForm& a, const BFMatrixForm& b);

// The identity spec of a graph: every vertex maps to itself at level 0.
BFMapSpec identity_spec(GraphPtr g);

// Composite spec g . h for h: E -> F and g: F -> G, assembled at level
// level(g) + level(h).
BFMapSpec compose_specs(const BFMapSpec& g, const BFMapSpec& h);

// Same source and target and bf_equal images at every vertex.
bool specs_bf_equal(const BFMapSpec& a, const BFMapSpec& b);

// Both composites are bf_equal to the identity. Both specs must be valid.
bool is_isomorphism_pair(const BFMapSpec& fwd, const BFMapSpec& bwd);

}  // namespace bflift
