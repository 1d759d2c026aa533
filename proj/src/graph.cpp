#include "bflift/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bflift {

std::shared_ptr<const Graph> Graph::make(
    std::string name, std::vector<std::string> vertices,
    std::vector<std::tuple<std::string, std::string, std::string>> edges) {
    if (vertices.empty())
        throw validation_error("graph '" + name + "' has an empty vertex set");

    auto g = std::shared_ptr<Graph>(new Graph());
    g->name_ = std::move(name);
    g->vertices_ = std::move(vertices);

    std::map<std::string, int> vidx;
    for (int v = 0; v < g->vertex_count(); ++v) {
        if (!vidx.emplace(g->vertices_[v], v).second)
            throw validation_error("duplicate vertex name '" + g->vertices_[v] + "'");
    }

    std::map<std::string, int> eidx;
    for (auto& [ename, s, r] : edges) {
        auto si = vidx.find(s);
        auto ri = vidx.find(r);
        if (si == vidx.end())
            throw validation_error("edge '" + ename + "' has unknown source '" + s + "'");
        if (ri == vidx.end())
            throw validation_error("edge '" + ename + "' has unknown range '" + r + "'");
        if (vidx.count(ename))
            throw validation_error("edge name '" + ename + "' collides with a vertex name");
        int e = static_cast<int>(g->edges_.size());
        if (!eidx.emplace(ename, e).second)
            throw validation_error("duplicate edge name '" + ename + "'");
        g->edges_.push_back(Edge{ename, si->second, ri->second});
    }

    const int nv = g->vertex_count();
    g->out_edges_.resize(nv);
    for (int e = 0; e < g->edge_count(); ++e)
        g->out_edges_[g->edge_src(e)].push_back(e);

    g->reg_index_.assign(nv, -1);
    g->sink_index_.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (g->is_regular(v)) {
            g->reg_index_[v] = static_cast<int>(g->regular_.size());
            g->regular_.push_back(v);
        } else {
            g->sink_index_[v] = static_cast<int>(g->sinks_.size());
            g->sinks_.push_back(v);
        }
    }

    g->full_adj_ = Matrix(nv, nv);
    for (int e = 0; e < g->edge_count(); ++e)
        g->full_adj_.at(g->edge_src(e), g->edge_rng(e)) += 1;

    const int nr = g->regular_count();
    const int ns = g->sink_count();
    g->reduced_adj_ = Matrix(nr, nv);
    for (int i = 0; i < nr; ++i)
        for (int w = 0; w < nv; ++w)
            g->reduced_adj_.at(i, w) = g->full_adj_.at(g->regular_[i], w);

    g->b_ = Matrix(nr, nr);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nr; ++j)
            g->b_.at(i, j) = g->full_adj_.at(g->regular_[j], g->regular_[i]);

    g->c_ = Matrix(ns, nr);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nr; ++j)
            g->c_.at(i, j) = g->full_adj_.at(g->regular_[j], g->sinks_[i]);

    return g;
}

std::optional<int> Graph::find_vertex(const std::string& name) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (vertices_[v] == name)
            return v;
    return std::nullopt;
}

std::optional<int> Graph::find_edge(const std::string& name) const {
    for (int e = 0; e < edge_count(); ++e)
        if (edges_[e].name == name)
            return e;
    return std::nullopt;
}

Path Path::append(const Graph& g, int e) const {
    if (g.edge_src(e) != range(g))
        throw internal_error("appending non-composable edge to path");
    Path out = *this;
    out.edges.push_back(e);
    return out;
}

Path Path::suffix(const Graph& g, int len) const {
    Path out;
    out.edges.assign(edges.begin() + len, edges.end());
    out.src = len == 0 ? src : (len == length() ? range(g) : g.edge_src(edges[len]));
    return out;
}

Path Path::concat(const Graph& g, const Path& tail) const {
    if (tail.src != range(g))
        throw internal_error("concatenating non-composable paths");
    Path out = *this;
    out.edges.insert(out.edges.end(), tail.edges.begin(), tail.edges.end());
    return out;
}

std::string path_to_string(const Graph& g, const Path& p) {
    if (p.edges.empty())
        return g.vertex_name(p.src);
    std::string out;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i)
            out += '.';
        out += g.edge_name(p.edges[i]);
    }
    return out;
}

namespace {

// Emits extensions of `prefix` in lexicographic edge order, which for fixed
// length is the canonical order. `powers[j]` is the adjacency matrix to the
// j-th power, used to prune branches that cannot reach w in time.
void extend_into(const Graph& g, int w, int remaining, const std::vector<Matrix>& powers,
                 Path& prefix, std::vector<Path>& out) {
    if (remaining == 0) {
        if (prefix.range(g) == w)
            out.push_back(prefix);
        return;
    }
    if (powers[remaining].at(prefix.range(g), w) == 0)
        return;
    for (int e : g.out_edges(prefix.range(g))) {
        prefix.edges.push_back(e);
        extend_into(g, w, remaining - 1, powers, prefix, out);
        prefix.edges.pop_back();
    }
}

}  // namespace

std::vector<Path> paths_into(const Graph& g, int w, int k) {
    if (w < 0 || w >= g.vertex_count())
        throw validation_error("unknown vertex index in path enumeration");
    if (k < 0)
        throw validation_error("negative path length");
    std::vector<Path> out;
    if (k == 0) {
        out.push_back(Path::vertex(w));
        return out;
    }
    std::vector<Matrix> powers{Matrix::identity(g.vertex_count())};
    for (int j = 1; j < k; ++j)
        powers.push_back(powers.back() * g.adjacency());
    // First edges run over all edges in declaration order; the recursion
    // keeps the lexicographic order within each branch.
    for (int e = 0; e < g.edge_count(); ++e) {
        Path p = Path::edge(g, e);
        extend_into(g, w, k - 1, powers, p, out);
    }
    return out;
}

Int path_count_into(const Graph& g, int w, int k) {
    return g.adjacency().pow(static_cast<unsigned>(k)).column_sum(w);
}

LevelSets level_sets(const Graph& g, int n) {
    if (n < 0)
        throw validation_error("negative level");
    LevelSets ls;
    for (int w : g.regular_vertices()) {
        auto ps = paths_into(g, w, n);
        ls.regular.insert(ls.regular.end(), ps.begin(), ps.end());
    }
    for (int u : g.sink_vertices())
        for (int i = 0; i <= n; ++i) {
            auto ps = paths_into(g, u, i);
            ls.sink.insert(ls.sink.end(), ps.begin(), ps.end());
        }
    std::sort(ls.regular.begin(), ls.regular.end(), canonical_path_less);
    std::sort(ls.sink.begin(), ls.sink.end(), canonical_path_less);
    return ls;
}

std::vector<int> line_points(const Graph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int cur = v;
        std::vector<bool> seen(g.vertex_count(), false);
        bool ok = true;
        while (g.is_regular(cur)) {
            if (seen[cur] || g.out_edges(cur).size() != 1) {
                ok = false;
                break;
            }
            seen[cur] = true;
            cur = g.edge_rng(g.out_edges(cur)[0]);
        }
        if (ok)
            out.push_back(v);
    }
    return out;
}

}  // namespace bflift
