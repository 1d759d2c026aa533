#pragma once

#include "bflift/ints.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bflift {

// A finite directed multigraph with ordered vertices and edges. Declaration
// order is the canonical order used everywhere downstream (path enumeration,
// partitions, serialization), so two structurally equal graphs behave
// identically in every pipeline stage.
//
// A vertex is regular if it emits at least one edge, and a sink otherwise.
class Graph {
public:
    struct Edge {
        std::string name;
        int src;
        int rng;
        bool operator==(const Edge&) const = default;
    };

    static std::shared_ptr<const Graph> make(std::string name,
                                             std::vector<std::string> vertices,
                                             std::vector<std::tuple<std::string, std::string, std::string>> edges);

    const std::string& name() const { return name_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::string& vertex_name(int v) const { return vertices_[v]; }
    const std::string& edge_name(int e) const { return edges_[e].name; }
    int edge_src(int e) const { return edges_[e].src; }
    int edge_rng(int e) const { return edges_[e].rng; }

    std::optional<int> find_vertex(const std::string& name) const;
    std::optional<int> find_edge(const std::string& name) const;

    bool is_regular(int v) const { return !out_edges_[v].empty(); }
    bool is_sink(int v) const { return out_edges_[v].empty(); }

    // Regular and sink vertices in declaration order.
    const std::vector<int>& regular_vertices() const { return regular_; }
    const std::vector<int>& sink_vertices() const { return sinks_; }
    int regular_count() const { return static_cast<int>(regular_.size()); }
    int sink_count() const { return static_cast<int>(sinks_.size()); }

    // Position of v within the regular (resp. sink) block, -1 if absent.
    int regular_index(int v) const { return reg_index_[v]; }
    int sink_index(int v) const { return sink_index_[v]; }

    // Outgoing edges of v in declaration order.
    const std::vector<int>& out_edges(int v) const { return out_edges_[v]; }

    // Full adjacency matrix, indexed vertices x vertices; entry (v,w) counts
    // edges from v to w.
    const Matrix& adjacency() const { return full_adj_; }
    // Reduced adjacency matrix A, indexed regular x vertices.
    const Matrix& reduced_adjacency() const { return reduced_adj_; }
    // B = projection of A^t onto the regular block: B(v,w) = A(w,v).
    const Matrix& matrix_b() const { return b_; }
    // C = projection of A^t onto the sink block: C(u,v) = A(v,u).
    const Matrix& matrix_c() const { return c_; }

    bool operator==(const Graph& o) const {
        return name_ == o.name_ && vertices_ == o.vertices_ && edges_ == o.edges_;
    }

private:
    Graph() = default;

    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;
    std::vector<int> regular_, sinks_;
    std::vector<int> reg_index_, sink_index_;
    Matrix full_adj_, reduced_adj_, b_, c_;
};

using GraphPtr = std::shared_ptr<const Graph>;

// Structural compatibility: same object or equal content.
inline bool same_graph(const GraphPtr& a, const GraphPtr& b) {
    return a == b || (a && b && *a == *b);
}

// A finite path. Length-zero paths are vertices; the source is stored
// explicitly so that it is meaningful in that case too.
struct Path {
    int src = 0;
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
    int source() const { return src; }
    int range(const Graph& g) const { return edges.empty() ? src : g.edge_rng(edges.back()); }

    static Path vertex(int v) { return Path{v, {}}; }
    static Path edge(const Graph& g, int e) { return Path{g.edge_src(e), {e}}; }

    Path append(const Graph& g, int e) const;
    Path prefix(int len) const { return Path{src, {edges.begin(), edges.begin() + len}}; }
    // Suffix starting after the first `len` edges.
    Path suffix(const Graph& g, int len) const;
    Path concat(const Graph& g, const Path& tail) const;

    bool operator==(const Path&) const = default;
    // Prefix-friendly order: by source vertex, then edge sequence
    // lexicographically. Used as a map key so that the extensions of a fixed
    // path form a contiguous range.
    auto operator<=>(const Path& o) const {
        if (auto c = src <=> o.src; c != 0)
            return c;
        return edges <=> o.edges;
    }
};

inline bool is_path_prefix(const Path& p, const Path& q) {
    return p.src == q.src && p.edges.size() <= q.edges.size() &&
           std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
}

// Canonical path order: by length, then lexicographically by edge
// declaration order; length-zero paths by vertex declaration order.
inline bool canonical_path_less(const Path& a, const Path& b) {
    if (a.length() != b.length())
        return a.length() < b.length();
    if (a.edges.empty())
        return a.src < b.src;
    return a.edges < b.edges;
}

std::string path_to_string(const Graph& g, const Path& p);

// All paths of length k with range w, in canonical order.
std::vector<Path> paths_into(const Graph& g, int w, int k);

// Number of paths of length k with range w, via the adjacency power column
// sum.
Int path_count_into(const Graph& g, int w, int k);

// R_n: length-n paths into regular vertices; S_n: paths of length at most n
// into sinks. Both canonically ordered.
struct LevelSets {
    std::vector<Path> regular;
    std::vector<Path> sink;
};
LevelSets level_sets(const Graph& g, int n);

// Vertices that are sinks or reach a sink through a chain of vertices each
// having exactly one outgoing edge.
std::vector<int> line_points(const Graph& g);

}  // namespace bflift
