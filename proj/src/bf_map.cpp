#include "bflift/bf_map.hpp"

#include <sstream>

namespace bflift {

BFMapSpec make_map_spec(GraphPtr source, GraphPtr target, int level,
                        std::vector<LevelVector> images) {
    if (!source || !target)
        throw internal_error("map spec without graphs");
    if (static_cast<int>(images.size()) != source->vertex_count())
        throw validation_error("map spec needs one image per source vertex");
    for (int v = 0; v < source->vertex_count(); ++v) {
        const LevelVector& x = images[v];
        if (!same_graph(x.graph(), target))
            throw validation_error("image of '" + source->vertex_name(v) +
                                   "' is not over the target graph");
        if (x.level() != level)
            throw validation_error("level mismatch among the vertex images");
        if (!x.is_nonnegative())
            throw validation_error("image of '" + source->vertex_name(v) +
                                   "' has a negative coordinate");
    }
    return BFMapSpec{std::move(source), std::move(target), level, std::move(images)};
}

MapValidity validate_map(const BFMapSpec& m) {
    const Graph& e = *m.source;

    // No support at negative sink indices.
    for (int v = 0; v < e.vertex_count(); ++v)
        if (m.images[v].has_negative_sink_index_support())
            return {false, "image of '" + e.vertex_name(v) +
                               "' has support at a negative sink index"};

    // Sigma-linearity at every regular vertex of the source.
    for (int v : e.regular_vertices()) {
        LevelVector rhs(m.target, m.level);
        for (int ed : e.out_edges(v))
            rhs = rhs + m.images[e.edge_rng(ed)];
        if (!bf_equal(sigma_inverse(m.images[v]), rhs))
            return {false, "sigma-linearity fails at vertex '" + e.vertex_name(v) +
                               "': sigma^-1 of its image differs from the sum over its out-edges"};
    }

    // Unitality.
    LevelVector total(m.target, m.level);
    for (const LevelVector& x : m.images)
        total = total + x;
    if (!bf_equal(total, order_unit_vector(m.target, m.level)))
        return {false, "unitality fails: the vertex images do not sum to the order unit"};

    return {true, ""};
}

void BFMatrixForm::validate() const {
    const Graph& ge = *source;
    const Graph& gf = *target;
    const int nse = static_cast<int>(s.size());
    if (nse != level + 1)
        throw internal_error("matrix form needs level+1 sink matrices");

    // Column sums are path counts.
    for (int j = 0; j < gf.regular_count(); ++j) {
        Int total = r.column_sum(j);
        if (total != path_count_into(gf, gf.regular_vertices()[j], level))
            throw internal_error("R column sum differs from the path count into '" +
                                 gf.vertex_name(gf.regular_vertices()[j]) + "'");
    }
    for (int i = 0; i <= level; ++i)
        for (int j = 0; j < gf.sink_count(); ++j) {
            Int total = s[i].column_sum(j);
            if (total != path_count_into(gf, gf.sink_vertices()[j], i))
                throw internal_error("S column sum differs from the path count into '" +
                                     gf.vertex_name(gf.sink_vertices()[j]) + "'");
        }

    const Matrix& ae = ge.reduced_adjacency();
    const Matrix& af = gf.reduced_adjacency();
    Matrix raf = r * af;  // E^0 x F^0

    // Regular rows: S^(0) = 0, the recursion, and the splice into R A_F.
    for (int vi = 0; vi < ge.regular_count(); ++vi) {
        int v = ge.regular_vertices()[vi];
        for (int j = 0; j < gf.sink_count(); ++j) {
            if (s[0].at(v, j) != 0)
                throw internal_error("S^(0) must vanish on regular rows");
            for (int i = 1; i <= level; ++i) {
                Int acc = 0;
                for (int w = 0; w < ge.vertex_count(); ++w)
                    acc += ae.at(vi, w) * s[i - 1].at(w, j);
                if (acc != s[i].at(v, j))
                    throw internal_error("sink recursion S^(i) = A_E S^(i-1) fails");
            }
            Int splice = 0;
            for (int w = 0; w < ge.vertex_count(); ++w)
                splice += ae.at(vi, w) * s[level].at(w, j);
            if (splice != raf.at(v, gf.sink_vertices()[j]))
                throw internal_error("splice identity A_E S^(L) = R A_F fails");
        }
        for (int j = 0; j < gf.regular_count(); ++j) {
            Int acc = 0;
            for (int w = 0; w < ge.vertex_count(); ++w)
                acc += ae.at(vi, w) * r.at(w, j);
            if (acc != raf.at(v, gf.regular_vertices()[j]))
                throw internal_error("intertwining identity A_E R = R A_F fails");
        }
    }
}

BFMatrixForm extract_matrix_form(const BFMapSpec& m, int min_level, int cap) {
    if (min_level < 0 || cap < 0)
        throw usage_error("negative level bound");
    if (MapValidity val = validate_map(m); !val.valid)
        throw validation_error("matrix extraction needs a valid map: " + val.reason);

    const Graph& ge = *m.source;
    const Graph& gf = *m.target;
    const int n = m.level;

    for (int extra = std::max(0, min_level - n); extra <= cap; ++extra) {
        const int lvl = n + extra;
        std::vector<LevelVector> pushed;
        pushed.reserve(m.images.size());
        for (const LevelVector& x : m.images)
            pushed.push_back(transition(x, lvl));

        // Unitality on the nose.
        LevelVector total(m.target, lvl);
        for (const LevelVector& y : pushed)
            total = total + y;
        if (!(total == order_unit_vector(m.target, lvl)))
            continue;

        // Sigma-linearity on the nose at every regular source vertex.
        bool exact = true;
        for (int v : ge.regular_vertices()) {
            LevelVector lhs = sigma_inverse(pushed[v]);
            if (lhs.level() != lvl) {
                exact = false;  // a sink coordinate blocks the identity at this level
                break;
            }
            LevelVector rhs(m.target, lvl);
            for (int ed : ge.out_edges(v))
                rhs = rhs + pushed[ge.edge_rng(ed)];
            if (!(lhs == rhs)) {
                exact = false;
                break;
            }
        }
        if (!exact)
            continue;

        BFMatrixForm form;
        form.source = m.source;
        form.target = m.target;
        form.level = lvl;
        form.r = Matrix(ge.vertex_count(), gf.regular_count());
        form.s.assign(lvl + 1, Matrix(ge.vertex_count(), gf.sink_count()));
        for (int v = 0; v < ge.vertex_count(); ++v) {
            for (int j = 0; j < gf.regular_count(); ++j)
                form.r.at(v, j) = pushed[v].coord(gf.regular_vertices()[j], lvl);
            for (int i = 0; i <= lvl; ++i)
                for (int j = 0; j < gf.sink_count(); ++j)
                    form.s[i].at(v, j) = pushed[v].coord(gf.sink_vertices()[j], i);
        }
        form.validate();
        return form;
    }

    std::ostringstream os;
    os << "no stabilization within cap " << cap
       << ": the levelwise identities did not become exact";
    throw validation_error(os.str());
}

BFMapSpec map_from_matrix(GraphPtr source, GraphPtr target, const Matrix& p, int shift) {
    if (shift < 0)
        throw validation_error("negative shift");
    if (p.rows() != static_cast<std::size_t>(source->vertex_count()) ||
        p.cols() != static_cast<std::size_t>(target->vertex_count()))
        throw validation_error("matrix dimensions must be source vertices x target vertices");
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p.at(i, j) < 0)
                throw validation_error("matrix for a map must be nonnegative");

    std::vector<LevelVector> images;
    for (int v = 0; v < source->vertex_count(); ++v) {
        LevelVector x(target, shift);
        for (int w = 0; w < target->vertex_count(); ++w)
            if (p.at(v, w) != 0)
                x.set_coord(w, shift, p.at(v, w));
        images.push_back(std::move(x));
    }
    return make_map_spec(std::move(source), std::move(target), shift, std::move(images));
}

LevelVector evaluate_form(const BFMatrixForm& form, int v) {
    const Graph& gf = *form.target;
    LevelVector x(form.target, form.level);
    for (int j = 0; j < gf.sink_count(); ++j)
        for (int i = 0; i <= form.level; ++i)
            x.set_coord(gf.sink_vertices()[j], i, form.s[i].at(v, j));
    for (int j = 0; j < gf.regular_count(); ++j)
        x.set_coord(gf.regular_vertices()[j], form.level, form.r.at(v, j));
    return x;
}

BFMatrixForm push_form(const BFMatrixForm& form, int target_level) {
    if (target_level < form.level)
        throw validation_error("cannot push a matrix form to a lower level");
    BFMatrixForm out = form;
    const Graph& gf = *form.target;
    while (out.level < target_level) {
        Matrix m = out.r * gf.reduced_adjacency();  // E^0 x F^0
        Matrix snew(out.r.rows(), gf.sink_count());
        Matrix rnew(out.r.rows(), gf.regular_count());
        for (std::size_t v = 0; v < out.r.rows(); ++v) {
            for (int j = 0; j < gf.sink_count(); ++j)
                snew.at(v, j) = m.at(v, gf.sink_vertices()[j]);
            for (int j = 0; j < gf.regular_count(); ++j)
                rnew.at(v, j) = m.at(v, gf.regular_vertices()[j]);
        }
        out.s.push_back(std::move(snew));
        out.r = std::move(rnew);
        ++out.level;
    }
    return out;
}

bool forms_equivalent(const BFMatrixForm& a, const BFMatrixForm& b) {
    if (!same_graph(a.source, b.source) || !same_graph(a.target, b.target))
        return false;
    int lvl = std::max(a.level, b.level);
    return push_form(a, lvl) == push_form(b, lvl);
}

BFMapSpec identity_spec(GraphPtr g) {
    return map_from_matrix(g, g, Matrix::identity(g->vertex_count()), 0);
}

BFMapSpec compose_specs(const BFMapSpec& g, const BFMapSpec& h) {
    if (!same_graph(h.target, g.source))
        throw validation_error("composing specs with mismatched middle graph");
    const Graph& mid = *h.target;
    const int lvl = g.level + h.level;
    std::vector<LevelVector> images;
    for (int v = 0; v < h.source->vertex_count(); ++v) {
        LevelVector acc(g.target, lvl);
        const LevelVector& x = h.images[v];
        for (int u : mid.sink_vertices())
            for (int i = -h.level; i <= h.level; ++i) {
                const Int& c = x.coord(u, i);
                if (c != 0)
                    acc = acc + transition(sigma_shift(g.images[u], i), lvl) * c;
            }
        for (int w : mid.regular_vertices()) {
            const Int& c = x.coord(w, h.level);
            if (c != 0)
                acc = acc + transition(sigma_shift(g.images[w], h.level), lvl) * c;
        }
        images.push_back(std::move(acc));
    }
    return BFMapSpec{h.source, g.target, lvl, std::move(images)};
}

bool specs_bf_equal(const BFMapSpec& a, const BFMapSpec& b) {
    if (!same_graph(a.source, b.source) || !same_graph(a.target, b.target))
        return false;
    for (int v = 0; v < a.source->vertex_count(); ++v)
        if (!bf_equal(a.images[v], b.images[v]))
            return false;
    return true;
}

bool is_isomorphism_pair(const BFMapSpec& fwd, const BFMapSpec& bwd) {
    if (!validate_map(fwd).valid || !validate_map(bwd).valid)
        return false;
    return specs_bf_equal(compose_specs(bwd, fwd), identity_spec(fwd.source)) &&
           specs_bf_equal(compose_specs(fwd, bwd), identity_spec(bwd.source));
}

}  // namespace bflift
