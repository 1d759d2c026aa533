#pragma once

#include "bflift/bf_map.hpp"
#include "bflift/graph.hpp"

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace bflift {

struct GradedHom;

// Partitions of the path sets of the target graph F indexed by the vertices
// of the source graph E: for each regular w of F a partition of the
// length-L paths into w, and for each sink u of F and 0 <= i <= L a
// partition of the length-i paths into u. Block sizes match the matrix form
// (R and S entries).
struct PartitionData {
    GraphPtr source;
    GraphPtr target;
    int level = 0;

    // gamma[v][j]: block of E-vertex v in the partition of F^L_w, where w is
    // the j-th regular vertex of F. Paths in canonical order.
    std::vector<std::vector<std::vector<Path>>> gamma;
    // sigma[v][s][i]: block of v in the partition of F^i_u, where u is the
    // s-th sink of F.
    std::vector<std::vector<std::vector<std::vector<Path>>>> sigma;

    bool operator==(const PartitionData& o) const {
        return same_graph(source, o.source) && same_graph(target, o.target) &&
               level == o.level && gamma == o.gamma && sigma == o.sigma;
    }
};

// Explicit pair-to-path tables for the bijections attached to a partition
// family. Domain entries are (edge of E, path of F) pairs ordered by edge
// declaration order then canonical path order.
struct BijectionData {
    using Table = std::vector<std::pair<std::pair<int, Path>, Path>>;

    // xi[(v, j)]: for regular v of E and j-th regular vertex w of F, maps
    // (e, alpha) with e in s^{-1}(v), alpha in gamma[r(e)][j] to a length
    // L+1 path into w whose length-L prefix lies in a block of v.
    std::map<std::pair<int, int>, Table> xi;
    // zeta[(v, s, i)]: for i < L into sigma[v][s][i+1]; for i = L into the
    // paths beta f with r(f) = u and beta in a gamma block of v.
    std::map<std::tuple<int, int, int>, Table> zeta;

    bool operator==(const BijectionData&) const = default;
};

// Witness that a homomorphism is tidy: the level together with the
// partitions and bijections realizing the defining equations.
struct TidyWitness {
    int level = 0;
    PartitionData partitions;
    BijectionData bijections;

    bool operator==(const TidyWitness&) const = default;
};

// Splits the canonical path enumerations of the target graph into
// consecutive blocks sized by the matrix form, in source-vertex declaration
// order.
PartitionData build_partitions(const BFMatrixForm& form);

// Matches each bijection domain against its codomain by rank, both in
// canonical order. Cardinalities agree whenever the matrix form identities
// hold.
BijectionData build_bijections(const PartitionData& p);

// Emits the lifted homomorphism: vertex images are the sums of the block
// projections, edge images route each block through the bijections, ghost
// images are the involutions. The hom carries the witness.
GradedHom emit_hom(const PartitionData& p, const BijectionData& b);

// Reads the matrix form back off a witness (block cardinalities).
BFMatrixForm matrix_form_from_witness(const TidyWitness& w, const GraphPtr& source,
                                      const GraphPtr& target);

}  // namespace bflift
