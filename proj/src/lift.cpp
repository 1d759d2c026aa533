#include "bflift/lift.hpp"

#include "bflift/hom.hpp"

#include <algorithm>

namespace bflift {

namespace {

// Convert an Int known to be a small cardinality into size_t.
std::size_t to_size(const Int& x) {
    return static_cast<std::size_t>(x.convert_to<long long>());
}

}  // namespace

PartitionData build_partitions(const BFMatrixForm& form) {
    form.validate();
    const Graph& ge = *form.source;
    const Graph& gf = *form.target;
    const int nv = ge.vertex_count();

    PartitionData p;
    p.source = form.source;
    p.target = form.target;
    p.level = form.level;
    p.gamma.assign(nv, std::vector<std::vector<Path>>(gf.regular_count()));
    p.sigma.assign(nv, std::vector<std::vector<std::vector<Path>>>(
                           gf.sink_count(), std::vector<std::vector<Path>>(form.level + 1)));

    for (int j = 0; j < gf.regular_count(); ++j) {
        std::vector<Path> all = paths_into(gf, gf.regular_vertices()[j], form.level);
        std::sort(all.begin(), all.end(), canonical_path_less);
        std::size_t next = 0;
        for (int v = 0; v < nv; ++v) {
            std::size_t take = to_size(form.r.at(v, j));
            if (next + take > all.size())
                throw internal_error("partition block sizes exceed the path count");
            p.gamma[v][j].assign(all.begin() + next, all.begin() + next + take);
            next += take;
        }
        if (next != all.size())
            throw internal_error("partition blocks do not exhaust the path set");
    }

    for (int j = 0; j < gf.sink_count(); ++j)
        for (int i = 0; i <= form.level; ++i) {
            std::vector<Path> all = paths_into(gf, gf.sink_vertices()[j], i);
            std::sort(all.begin(), all.end(), canonical_path_less);
            std::size_t next = 0;
            for (int v = 0; v < nv; ++v) {
                std::size_t take = to_size(form.s[i].at(v, j));
                if (next + take > all.size())
                    throw internal_error("partition block sizes exceed the path count");
                p.sigma[v][j][i].assign(all.begin() + next, all.begin() + next + take);
                next += take;
            }
            if (next != all.size())
                throw internal_error("partition blocks do not exhaust the path set");
        }

    return p;
}

namespace {

// Codomain of xi (and of the top zeta): the paths alpha f of length L+1
// into z whose length-L prefix lies in a gamma block of v, in canonical
// order.
std::vector<Path> extended_block_paths(const PartitionData& p, int v, int z) {
    const Graph& gf = *p.target;
    std::vector<Path> out;
    for (int f = 0; f < gf.edge_count(); ++f) {
        if (gf.edge_rng(f) != z)
            continue;
        int w = gf.edge_src(f);
        if (gf.is_sink(w))
            continue;
        for (const Path& alpha : p.gamma[v][gf.regular_index(w)])
            out.push_back(alpha.append(gf, f));
    }
    std::sort(out.begin(), out.end(), canonical_path_less);
    return out;
}

BijectionData::Table match_by_rank(const Graph& ge, int v,
                                   const std::vector<std::vector<Path>>& source_blocks,
                                   const std::vector<Path>& codomain) {
    // Domain: (e, path) pairs with e in s^{-1}(v), path in the block of
    // r(e), ordered by edge declaration order then canonical path order.
    BijectionData::Table table;
    std::size_t rank = 0;
    for (int e : ge.out_edges(v)) {
        for (const Path& q : source_blocks[ge.edge_rng(e)]) {
            if (rank >= codomain.size())
                throw internal_error("bijection domain larger than codomain");
            table.push_back({{e, q}, codomain[rank]});
            ++rank;
        }
    }
    if (rank != codomain.size())
        throw internal_error("bijection domain smaller than codomain");
    return table;
}

}  // namespace

BijectionData build_bijections(const PartitionData& p) {
    const Graph& ge = *p.source;
    const Graph& gf = *p.target;
    BijectionData b;

    for (int v : ge.regular_vertices()) {
        for (int j = 0; j < gf.regular_count(); ++j) {
            std::vector<std::vector<Path>> blocks(ge.vertex_count());
            for (int x = 0; x < ge.vertex_count(); ++x)
                blocks[x] = p.gamma[x][j];
            b.xi[{v, j}] = match_by_rank(ge, v, blocks,
                                         extended_block_paths(p, v, gf.regular_vertices()[j]));
        }
        for (int j = 0; j < gf.sink_count(); ++j) {
            for (int i = 0; i < p.level; ++i) {
                std::vector<std::vector<Path>> blocks(ge.vertex_count());
                for (int x = 0; x < ge.vertex_count(); ++x)
                    blocks[x] = p.sigma[x][j][i];
                b.zeta[{v, j, i}] = match_by_rank(ge, v, blocks, p.sigma[v][j][i + 1]);
            }
            std::vector<std::vector<Path>> blocks(ge.vertex_count());
            for (int x = 0; x < ge.vertex_count(); ++x)
                blocks[x] = p.sigma[x][j][p.level];
            b.zeta[{v, j, p.level}] = match_by_rank(
                ge, v, blocks, extended_block_paths(p, v, gf.sink_vertices()[j]));
        }
    }
    return b;
}

GradedHom emit_hom(const PartitionData& p, const BijectionData& b) {
    const Graph& ge = *p.source;
    const Graph& gf = *p.target;

    GradedHom h;
    h.source = p.source;
    h.target = p.target;
    h.provenance = GradedHom::Provenance::constructed;

    for (int v = 0; v < ge.vertex_count(); ++v) {
        LPAElement img(p.target);
        for (int j = 0; j < gf.regular_count(); ++j)
            for (const Path& alpha : p.gamma[v][j])
                img.add_term(Monomial{alpha, alpha}, 1);
        for (int j = 0; j < gf.sink_count(); ++j)
            for (int i = 0; i <= p.level; ++i)
                for (const Path& beta : p.sigma[v][j][i])
                    img.add_term(Monomial{beta, beta}, 1);
        h.vimages.push_back(std::move(img));
    }

    for (int e = 0; e < ge.edge_count(); ++e) {
        const int v = ge.edge_src(e);
        LPAElement img(p.target);
        for (int j = 0; j < gf.regular_count(); ++j) {
            const auto& table = b.xi.at({v, j});
            for (const auto& [key, image] : table)
                if (key.first == e)
                    img.add_term(Monomial{image, key.second}, 1);
        }
        for (int j = 0; j < gf.sink_count(); ++j)
            for (int i = 0; i <= p.level; ++i) {
                const auto& table = b.zeta.at({v, j, i});
                for (const auto& [key, image] : table)
                    if (key.first == e)
                        img.add_term(Monomial{image, key.second}, 1);
            }
        h.eimages.push_back(img);
        h.gimages.push_back(star(img));
    }

    h.witness = TidyWitness{p.level, p, b};
    return h;
}

BFMatrixForm matrix_form_from_witness(const TidyWitness& w, const GraphPtr& source,
                                      const GraphPtr& target) {
    const Graph& ge = *source;
    const Graph& gf = *target;
    BFMatrixForm form;
    form.source = source;
    form.target = target;
    form.level = w.level;
    form.r = Matrix(ge.vertex_count(), gf.regular_count());
    form.s.assign(w.level + 1, Matrix(ge.vertex_count(), gf.sink_count()));
    for (int v = 0; v < ge.vertex_count(); ++v) {
        for (int j = 0; j < gf.regular_count(); ++j)
            form.r.at(v, j) = static_cast<long>(w.partitions.gamma[v][j].size());
        for (int j = 0; j < gf.sink_count(); ++j)
            for (int i = 0; i <= w.level; ++i)
                form.s[i].at(v, j) = static_cast<long>(w.partitions.sigma[v][j][i].size());
    }
    return form;
}

}  // namespace bflift
