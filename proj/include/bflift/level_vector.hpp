#pragma once

#include "bflift/graph.hpp"

#include <string>
#include <variant>
#include <vector>

namespace bflift {

// Integer vector at level n of the filtered colimit presenting the
// Bowen-Franks module of a graph: coordinates are indexed by sink vertices
// at indices -n..n together with regular vertices at the top index n.
//
// Pure value type; all operations return fresh vectors.
class LevelVector {
public:
    LevelVector(GraphPtr g, int level);

    const GraphPtr& graph() const { return graph_; }
    int level() const { return level_; }

    // Coordinate of sink u at index i (|i| <= level), or of regular w (then
    // the index must equal the level).
    const Int& coord(int v, int index) const;
    void set_coord(int v, int index, Int value);
    void add_coord(int v, int index, const Int& value);

    const std::vector<Int>& regular_block() const { return reg_; }
    std::vector<Int>& regular_block() { return reg_; }

    bool is_zero() const;
    bool is_nonnegative() const;
    bool has_negative_sink_index_support() const;

    LevelVector operator+(const LevelVector& o) const;
    LevelVector operator-(const LevelVector& o) const;
    LevelVector operator*(const Int& c) const;
    bool operator==(const LevelVector& o) const;

    std::string to_string() const;

private:
    friend LevelVector transition(const LevelVector& x, int k);
    friend LevelVector sigma_shift(const LevelVector& x, int power);

    std::size_t sink_pos(int sink_rank, int index) const {
        return static_cast<std::size_t>(sink_rank) * (2 * level_ + 1) + (index + level_);
    }
    void check_compatible(const LevelVector& o) const;

    GraphPtr graph_;
    int level_;
    std::vector<Int> sink_;  // sink block, row-major: sink rank, then index -n..n
    std::vector<Int> reg_;   // regular block at the top index
};

// Convenience: the vector with a single coordinate c at (v, index). For
// regular v the index must equal the level.
LevelVector unit_vector(const GraphPtr& g, int level, int v, int index, Int c = 1);

// Image of x under the transition maps up to level k >= level(x). Sink
// coordinates are preserved; the regular block passes through B with
// spillover C into each new top sink index.
LevelVector transition(const LevelVector& x, int k);

// Representative of sigma^power . [x]. Negative powers shift sink indices
// down and apply A^t to the regular block (raising the level by one when a
// nonzero coordinate would fall off the low end); positive powers shift sink
// indices up, raising the level so the regular block lands at the new top.
LevelVector sigma_shift(const LevelVector& x, int power);

inline LevelVector sigma_inverse(const LevelVector& x) { return sigma_shift(x, -1); }

// Decides [x] = [y] in the colimit. Brings both to a common level and checks
// that the sink blocks agree on the nose and that the regular difference r
// satisfies C B^j r = 0 for j < d and B^d r = 0, where d is the number of
// regular vertices; the kernel chain of B stabilizes within d steps.
bool bf_equal(const LevelVector& x, const LevelVector& y);

// Representative of the order unit at level n: coordinates are the path
// counts into each vertex.
LevelVector order_unit_vector(const GraphPtr& g, int n);

// Bounded positivity check.
struct Positive {
    int witness_level;
};
struct Negative {
    std::string certificate;
};
struct Undetermined {
    int bound;
};
using PositivityResult = std::variant<Positive, Negative, Undetermined>;

// Positive if some transition within `bound` extra levels is coordinatewise
// nonnegative; negative if a sink coordinate is negative (sink coordinates
// persist under transitions, so this is a proof); undetermined otherwise.
PositivityResult is_positive(const LevelVector& x, int bound);

// An element of the Bowen-Franks module: a representative level vector with
// equality decided by bf_equal.
class BFElement {
public:
    explicit BFElement(LevelVector rep) : rep_(std::move(rep)) {}

    const LevelVector& representative() const { return rep_; }

    static BFElement order_unit(const GraphPtr& g) { return BFElement(order_unit_vector(g, 0)); }

    bool operator==(const BFElement& o) const { return bf_equal(rep_, o.rep_); }
    BFElement operator+(const BFElement& o) const;
    BFElement sigma(int power) const { return BFElement(sigma_shift(rep_, power)); }

private:
    LevelVector rep_;
};

}  // namespace bflift
