#include "bflift/level_vector.hpp"

#include <sstream>

namespace bflift {

LevelVector::LevelVector(GraphPtr g, int level) : graph_(std::move(g)), level_(level) {
    if (!graph_)
        throw internal_error("level vector without a graph");
    if (level < 0)
        throw validation_error("negative level");
    sink_.assign(static_cast<std::size_t>(graph_->sink_count()) * (2 * level + 1), 0);
    reg_.assign(graph_->regular_count(), 0);
}

const Int& LevelVector::coord(int v, int index) const {
    const Graph& g = *graph_;
    if (g.is_sink(v)) {
        if (index < -level_ || index > level_)
            throw validation_error("sink index out of range for level " + std::to_string(level_));
        return sink_[sink_pos(g.sink_index(v), index)];
    }
    if (index != level_)
        throw validation_error("regular coordinate index must equal the level");
    return reg_[g.regular_index(v)];
}

void LevelVector::set_coord(int v, int index, Int value) {
    const Graph& g = *graph_;
    if (g.is_sink(v)) {
        if (index < -level_ || index > level_)
            throw validation_error("sink index out of range for level " + std::to_string(level_));
        sink_[sink_pos(g.sink_index(v), index)] = std::move(value);
        return;
    }
    if (index != level_)
        throw validation_error("regular coordinate index must equal the level");
    reg_[g.regular_index(v)] = std::move(value);
}

void LevelVector::add_coord(int v, int index, const Int& value) {
    const Int& cur = coord(v, index);
    set_coord(v, index, cur + value);
}

bool LevelVector::is_zero() const {
    for (const Int& x : sink_)
        if (x != 0)
            return false;
    for (const Int& x : reg_)
        if (x != 0)
            return false;
    return true;
}

bool LevelVector::is_nonnegative() const {
    for (const Int& x : sink_)
        if (x < 0)
            return false;
    for (const Int& x : reg_)
        if (x < 0)
            return false;
    return true;
}

bool LevelVector::has_negative_sink_index_support() const {
    for (int s = 0; s < graph_->sink_count(); ++s)
        for (int i = -level_; i < 0; ++i)
            if (sink_[sink_pos(s, i)] != 0)
                return true;
    return false;
}

void LevelVector::check_compatible(const LevelVector& o) const {
    if (!same_graph(graph_, o.graph_))
        throw validation_error("level vectors over different graphs");
    if (level_ != o.level_)
        throw validation_error("level vectors at different levels");
}

LevelVector LevelVector::operator+(const LevelVector& o) const {
    check_compatible(o);
    LevelVector out = *this;
    for (std::size_t i = 0; i < sink_.size(); ++i)
        out.sink_[i] += o.sink_[i];
    for (std::size_t i = 0; i < reg_.size(); ++i)
        out.reg_[i] += o.reg_[i];
    return out;
}

LevelVector LevelVector::operator-(const LevelVector& o) const {
    check_compatible(o);
    LevelVector out = *this;
    for (std::size_t i = 0; i < sink_.size(); ++i)
        out.sink_[i] -= o.sink_[i];
    for (std::size_t i = 0; i < reg_.size(); ++i)
        out.reg_[i] -= o.reg_[i];
    return out;
}

LevelVector LevelVector::operator*(const Int& c) const {
    LevelVector out = *this;
    for (Int& x : out.sink_)
        x *= c;
    for (Int& x : out.reg_)
        x *= c;
    return out;
}

bool LevelVector::operator==(const LevelVector& o) const {
    check_compatible(o);
    return sink_ == o.sink_ && reg_ == o.reg_;
}

std::string LevelVector::to_string() const {
    const Graph& g = *graph_;
    std::ostringstream os;
    bool first = true;
    auto emit = [&](int v, int i, const Int& c) {
        if (c == 0)
            return;
        if (!first)
            os << " ";
        first = false;
        os << g.vertex_name(v) << "[" << i << "]=" << c;
    };
    for (int u : g.sink_vertices())
        for (int i = -level_; i <= level_; ++i)
            emit(u, i, sink_[sink_pos(g.sink_index(u), i)]);
    for (int w : g.regular_vertices())
        emit(w, level_, reg_[g.regular_index(w)]);
    if (first)
        os << "0";
    return "level " + std::to_string(level_) + ": " + os.str();
}

LevelVector unit_vector(const GraphPtr& g, int level, int v, int index, Int c) {
    LevelVector x(g, level);
    x.set_coord(v, index, std::move(c));
    return x;
}

namespace {

// One transition step: level n -> n+1.
LevelVector transition_step(const LevelVector& x) {
    const Graph& g = *x.graph();
    LevelVector out(x.graph(), x.level() + 1);
    for (int u : g.sink_vertices())
        for (int i = -x.level(); i <= x.level(); ++i)
            out.set_coord(u, i, x.coord(u, i));
    const Matrix& b = g.matrix_b();
    const Matrix& c = g.matrix_c();
    const auto& r = x.regular_block();
    for (int i = 0; i < g.sink_count(); ++i) {
        Int acc = 0;
        for (int j = 0; j < g.regular_count(); ++j)
            acc += c.at(i, j) * r[j];
        out.add_coord(g.sink_vertices()[i], x.level() + 1, acc);
    }
    auto& nr = out.regular_block();
    for (int i = 0; i < g.regular_count(); ++i) {
        Int acc = 0;
        for (int j = 0; j < g.regular_count(); ++j)
            acc += b.at(i, j) * r[j];
        nr[i] = acc;
    }
    return out;
}

}  // namespace

LevelVector transition(const LevelVector& x, int k) {
    if (k < x.level())
        throw validation_error("transition target level below the vector's level");
    LevelVector out = x;
    for (int n = x.level(); n < k; ++n)
        out = transition_step(out);
    return out;
}

LevelVector sigma_shift(const LevelVector& x, int power) {
    if (power == 0)
        return x;
    const Graph& g = *x.graph();
    if (power > 0) {
        // sigma . [v_n] = [v_{n+1}]: raise the level, move sink indices up,
        // keep the regular block at the new top.
        LevelVector out(x.graph(), x.level() + 1);
        for (int u : g.sink_vertices())
            for (int i = -x.level(); i <= x.level(); ++i)
                out.set_coord(u, i + 1, x.coord(u, i));
        out.regular_block() = x.regular_block();
        return sigma_shift(out, power - 1);
    }
    // Negative power. If the lowest sink slot is occupied, make room first;
    // transitions do not write negative indices, so one step suffices.
    LevelVector src = x;
    bool low_occupied = false;
    for (int u : g.sink_vertices())
        if (src.coord(u, -src.level()) != 0)
            low_occupied = true;
    if (low_occupied)
        src = transition(src, src.level() + 1);

    LevelVector out(src.graph(), src.level());
    for (int u : g.sink_vertices())
        for (int i = -src.level() + 1; i <= src.level(); ++i)
            out.set_coord(u, i - 1, src.coord(u, i));
    // A^t on the regular block: B r stays regular, C r lands at the top sink
    // index.
    const Matrix& b = g.matrix_b();
    const Matrix& c = g.matrix_c();
    const auto& r = src.regular_block();
    for (int i = 0; i < g.sink_count(); ++i) {
        Int acc = 0;
        for (int j = 0; j < g.regular_count(); ++j)
            acc += c.at(i, j) * r[j];
        out.add_coord(g.sink_vertices()[i], src.level(), acc);
    }
    auto& nr = out.regular_block();
    for (int i = 0; i < g.regular_count(); ++i) {
        Int acc = 0;
        for (int j = 0; j < g.regular_count(); ++j)
            acc += b.at(i, j) * r[j];
        nr[i] = acc;
    }
    return sigma_shift(out, power + 1);
}

bool bf_equal(const LevelVector& x, const LevelVector& y) {
    if (!same_graph(x.graph(), y.graph()))
        throw validation_error("bf_equal across different graphs");
    const Graph& g = *x.graph();
    int n = std::max(x.level(), y.level());
    LevelVector z = transition(x, n) - transition(y, n);
    for (int u : g.sink_vertices())
        for (int i = -n; i <= n; ++i)
            if (z.coord(u, i) != 0)
                return false;
    // Difference of regular blocks must die under the kernel chain of B.
    const Matrix& b = g.matrix_b();
    const Matrix& c = g.matrix_c();
    const int d = g.regular_count();
    std::vector<Int> r = z.regular_block();
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < g.sink_count(); ++i) {
            Int acc = 0;
            for (int k = 0; k < d; ++k)
                acc += c.at(i, k) * r[k];
            if (acc != 0)
                return false;
        }
        std::vector<Int> next(d, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                next[i] += b.at(i, k) * r[k];
        r = std::move(next);
    }
    for (const Int& v : r)
        if (v != 0)
            return false;
    return true;
}

LevelVector order_unit_vector(const GraphPtr& g, int n) {
    LevelVector out(g, n);
    for (int u : g->sink_vertices())
        for (int i = 0; i <= n; ++i)
            out.set_coord(u, i, path_count_into(*g, u, i));
    for (int w : g->regular_vertices())
        out.set_coord(w, n, path_count_into(*g, w, n));
    return out;
}

PositivityResult is_positive(const LevelVector& x, int bound) {
    if (bound < 0)
        throw validation_error("negative positivity bound");
    const Graph& g = *x.graph();
    LevelVector cur = x;
    for (int step = 0; step <= bound; ++step) {
        for (int u : g.sink_vertices())
            for (int i = -cur.level(); i <= cur.level(); ++i)
                if (cur.coord(u, i) < 0) {
                    std::ostringstream os;
                    os << "sink coordinate " << g.vertex_name(u) << "[" << i << "] = "
                       << cur.coord(u, i) << " at level " << cur.level()
                       << " persists at every higher level";
                    return Negative{os.str()};
                }
        if (cur.is_nonnegative())
            return Positive{cur.level()};
        if (step < bound)
            cur = transition(cur, cur.level() + 1);
    }
    return Undetermined{bound};
}

BFElement BFElement::operator+(const BFElement& o) const {
    int n = std::max(rep_.level(), o.rep_.level());
    return BFElement(transition(rep_, n) + transition(o.rep_, n));
}

}  // namespace bflift
