#include "bflift/hom.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bflift {

GradedHom identity_hom(const GraphPtr& g) {
    GradedHom h;
    h.source = g;
    h.target = g;
    for (int v = 0; v < g->vertex_count(); ++v)
        h.vimages.push_back(LPAElement::vertex(g, v));
    for (int e = 0; e < g->edge_count(); ++e) {
        h.eimages.push_back(LPAElement::edge(g, e));
        h.gimages.push_back(LPAElement::ghost(g, e));
    }
    return h;
}

LPAElement apply_hom(const GradedHom& h, const LPAElement& x) {
    if (!same_graph(x.graph(), h.source))
        throw validation_error("element is not over the source graph of the homomorphism");
    LPAElement out(h.target);
    for (const auto& [m, c] : x.terms()) {
        LPAElement acc(h.target);
        bool started = false;
        auto push = [&](const LPAElement& factor) {
            acc = started ? multiply(acc, factor) : factor;
            started = true;
        };
        if (m.alpha.length() == 0)
            push(h.vimages[m.alpha.src]);
        else
            for (int e : m.alpha.edges)
                push(h.eimages[e]);
        if (m.beta.length() > 0)
            for (int i = m.beta.length() - 1; i >= 0; --i)
                push(h.gimages[m.beta.edges[i]]);
        else if (m.alpha.length() > 0)
            push(h.vimages[m.beta.src]);
        out = out + acc * c;
    }
    return out;
}

namespace {

struct Checker {
    const GradedHom& h;
    const SpecialEdgeChoice choice;
    std::optional<Violation> failure;

    explicit Checker(const GradedHom& hom)
        : h(hom), choice(SpecialEdgeChoice::standard(hom.target)) {}

    bool expect_zero(const LPAElement& x, const std::string& relation, const std::string& locus) {
        LPAElement nf = normal_form(x, choice);
        if (nf.is_zero())
            return true;
        failure = Violation{relation, locus, std::move(nf)};
        return false;
    }
};

}  // namespace

std::optional<Violation> verify_hom(const GradedHom& h) {
    const Graph& ge = *h.source;
    if (static_cast<int>(h.vimages.size()) != ge.vertex_count() ||
        static_cast<int>(h.eimages.size()) != ge.edge_count() ||
        static_cast<int>(h.gimages.size()) != ge.edge_count())
        throw validation_error("homomorphism is missing generator images");
    for (const LPAElement& x : h.vimages)
        if (!same_graph(x.graph(), h.target))
            throw validation_error("vertex image over the wrong graph");
    for (const LPAElement& x : h.eimages)
        if (!same_graph(x.graph(), h.target))
            throw validation_error("edge image over the wrong graph");
    for (const LPAElement& x : h.gimages)
        if (!same_graph(x.graph(), h.target))
            throw validation_error("ghost image over the wrong graph");

    Checker ck(h);

    LPAElement total(h.target);
    for (const LPAElement& x : h.vimages)
        total = total + x;
    if (!ck.expect_zero(total - LPAElement::one(h.target), "unitality", "sum of vertex images"))
        return ck.failure;

    for (int v = 0; v < ge.vertex_count(); ++v)
        if (!ck.expect_zero(h.vimages[v] - star(h.vimages[v]), "P", ge.vertex_name(v)))
            return ck.failure;

    for (int v = 0; v < ge.vertex_count(); ++v)
        for (int w = 0; w < ge.vertex_count(); ++w) {
            LPAElement prod = multiply(h.vimages[v], h.vimages[w]);
            if (v == w)
                prod = prod - h.vimages[v];
            if (!ck.expect_zero(prod, "V", ge.vertex_name(v) + "." + ge.vertex_name(w)))
                return ck.failure;
        }

    for (int e = 0; e < ge.edge_count(); ++e) {
        const LPAElement& img = h.eimages[e];
        const LPAElement& gimg = h.gimages[e];
        const std::string locus = ge.edge_name(e);
        if (!ck.expect_zero(multiply(h.vimages[ge.edge_src(e)], img) - img, "E", locus) ||
            !ck.expect_zero(multiply(img, h.vimages[ge.edge_rng(e)]) - img, "E", locus) ||
            !ck.expect_zero(multiply(h.vimages[ge.edge_rng(e)], gimg) - gimg, "E", locus + "*") ||
            !ck.expect_zero(multiply(gimg, h.vimages[ge.edge_src(e)]) - gimg, "E", locus + "*"))
            return ck.failure;
    }

    for (int g = 0; g < ge.edge_count(); ++g)
        for (int e = 0; e < ge.edge_count(); ++e) {
            LPAElement prod = multiply(h.gimages[g], h.eimages[e]);
            if (g == e)
                prod = prod - h.vimages[ge.edge_rng(e)];
            if (!ck.expect_zero(prod, "CK1", ge.edge_name(g) + "*." + ge.edge_name(e)))
                return ck.failure;
        }

    for (int v : ge.regular_vertices()) {
        LPAElement acc(h.target);
        for (int e : ge.out_edges(v))
            acc = acc + multiply(h.eimages[e], h.gimages[e]);
        if (!ck.expect_zero(h.vimages[v] - acc, "CK2", ge.vertex_name(v)))
            return ck.failure;
    }

    for (int e = 0; e < ge.edge_count(); ++e)
        if (!ck.expect_zero(h.gimages[e] - star(h.eimages[e]), "star", ge.edge_name(e)))
            return ck.failure;

    return std::nullopt;
}

namespace {

bool homogeneous_of_degree(const LPAElement& x, int degree) {
    for (const auto& [d, comp] : degree_components(x))
        if (d != degree)
            return false;
    return true;
}

}  // namespace

bool check_graded(const GradedHom& h) {
    for (const LPAElement& x : h.vimages)
        if (!homogeneous_of_degree(x, 0))
            return false;
    for (const LPAElement& x : h.eimages)
        if (!homogeneous_of_degree(x, 1))
            return false;
    for (const LPAElement& x : h.gimages)
        if (!homogeneous_of_degree(x, -1))
            return false;
    return true;
}

bool check_star(const GradedHom& h) {
    SpecialEdgeChoice choice = SpecialEdgeChoice::standard(h.target);
    for (std::size_t e = 0; e < h.eimages.size(); ++e)
        if (!normal_form(h.gimages[e] - star(h.eimages[e]), choice).is_zero())
            return false;
    return true;
}

bool check_diagonal(const GradedHom& h) {
    const Graph& ge = *h.source;
    for (int len = 0; len <= 3; ++len)
        for (int w = 0; w < ge.vertex_count(); ++w)
            for (const Path& alpha : paths_into(ge, w, len)) {
                LPAElement gen = LPAElement::monomial(h.source, Monomial{alpha, alpha});
                if (!in_diagonal(apply_hom(h, gen)))
                    return false;
            }
    return true;
}

GradedHom compose(const GradedHom& g, const GradedHom& h) {
    if (!same_graph(h.target, g.source))
        throw validation_error("composition needs matching middle graph");
    SpecialEdgeChoice choice = SpecialEdgeChoice::standard(g.target);
    GradedHom out;
    out.source = h.source;
    out.target = g.target;
    for (const LPAElement& x : h.vimages)
        out.vimages.push_back(normal_form(apply_hom(g, x), choice));
    for (const LPAElement& x : h.eimages)
        out.eimages.push_back(normal_form(apply_hom(g, x), choice));
    for (const LPAElement& x : h.gimages)
        out.gimages.push_back(normal_form(apply_hom(g, x), choice));
    return out;
}

BFMapSpec induced_bf_map(const GradedHom& h) {
    const Graph& ge = *h.source;
    const Graph& gf = *h.target;

    int lvl = 0;
    for (const LPAElement& x : h.vimages)
        lvl = std::max(lvl, min_expansion_level(x));

    std::vector<LevelVector> images;
    for (int v = 0; v < ge.vertex_count(); ++v) {
        LPAElement ex = uniform_expansion(h.vimages[v], lvl);
        LevelVector x(h.target, lvl);
        for (const auto& [m, c] : ex.terms()) {
            if (m.alpha != m.beta || c != 1)
                throw validation_error(
                    "image of vertex '" + ge.vertex_name(v) +
                    "' is not a 0/1 sum of diagonal projections; the induced map is undefined");
            int rb = m.beta.range(gf);
            x.add_coord(rb, gf.is_sink(rb) ? m.beta.length() : lvl, 1);
        }
        images.push_back(std::move(x));
    }
    return make_map_spec(h.source, h.target, lvl, std::move(images));
}

namespace {

struct TidyAttempt {
    bool tidy = false;
    bool definitive = false;  // failure cannot heal at a higher level
    std::optional<TidyWitness> witness;
    std::string certificate;
};

std::string describe_mono(const Graph& g, const Monomial& m) {
    return path_to_string(g, m.alpha) + "." + path_to_string(g, m.beta) + "*";
}

TidyAttempt try_tidy_at_level(const GradedHom& h, int lvl) {
    const Graph& ge = *h.source;
    const Graph& gf = *h.target;
    TidyAttempt out;

    // Step 1: vertex images must expand to 0/1 sums of diagonal
    // projections. Coefficient and diagonality failures persist at every
    // higher level, so they are final.
    PartitionData parts;
    parts.source = h.source;
    parts.target = h.target;
    parts.level = lvl;
    parts.gamma.assign(ge.vertex_count(), std::vector<std::vector<Path>>(gf.regular_count()));
    parts.sigma.assign(ge.vertex_count(),
                       std::vector<std::vector<std::vector<Path>>>(
                           gf.sink_count(), std::vector<std::vector<Path>>(lvl + 1)));

    for (int v = 0; v < ge.vertex_count(); ++v) {
        LPAElement ex = uniform_expansion(h.vimages[v], lvl);
        for (const auto& [m, c] : ex.terms()) {
            if (m.alpha != m.beta) {
                out.definitive = true;
                out.certificate = "image of vertex '" + ge.vertex_name(v) +
                                  "' contains the off-diagonal monomial " + describe_mono(gf, m);
                return out;
            }
            if (c != 1) {
                std::ostringstream os;
                os << "image of vertex '" << ge.vertex_name(v) << "' carries coefficient " << c
                   << " on the projection of " << path_to_string(gf, m.beta);
                out.definitive = true;
                out.certificate = os.str();
                return out;
            }
            int rb = m.beta.range(gf);
            if (gf.is_sink(rb))
                parts.sigma[v][gf.sink_index(rb)][m.beta.length()].push_back(m.beta);
            else
                parts.gamma[v][gf.regular_index(rb)].push_back(m.beta);
        }
    }
    for (int v = 0; v < ge.vertex_count(); ++v) {
        for (auto& blocks : parts.gamma[v])
            std::sort(blocks.begin(), blocks.end(), canonical_path_less);
        for (auto& per_sink : parts.sigma[v])
            for (auto& blocks : per_sink)
                std::sort(blocks.begin(), blocks.end(), canonical_path_less);
    }

    // Step 2: the blocks partition the path sets (disjointness follows from
    // the vertex orthogonality relations, exhaustion from unitality).
    for (int j = 0; j < gf.regular_count(); ++j) {
        std::vector<Path> all;
        for (int v = 0; v < ge.vertex_count(); ++v)
            all.insert(all.end(), parts.gamma[v][j].begin(), parts.gamma[v][j].end());
        std::vector<Path> expect = paths_into(gf, gf.regular_vertices()[j], lvl);
        std::sort(all.begin(), all.end(), canonical_path_less);
        std::sort(expect.begin(), expect.end(), canonical_path_less);
        if (all != expect) {
            out.certificate = "vertex image supports do not partition the length-" +
                              std::to_string(lvl) + " paths into '" +
                              gf.vertex_name(gf.regular_vertices()[j]) + "'";
            return out;
        }
    }
    for (int j = 0; j < gf.sink_count(); ++j)
        for (int i = 0; i <= lvl; ++i) {
            std::vector<Path> all;
            for (int v = 0; v < ge.vertex_count(); ++v)
                all.insert(all.end(), parts.sigma[v][j][i].begin(), parts.sigma[v][j][i].end());
            std::vector<Path> expect = paths_into(gf, gf.sink_vertices()[j], i);
            std::sort(all.begin(), all.end(), canonical_path_less);
            std::sort(expect.begin(), expect.end(), canonical_path_less);
            if (all != expect) {
                out.certificate = "vertex image supports do not partition the length-" +
                                  std::to_string(i) + " paths into '" +
                                  gf.vertex_name(gf.sink_vertices()[j]) + "'";
                return out;
            }
        }
    for (int v : ge.regular_vertices())
        for (int j = 0; j < gf.sink_count(); ++j)
            if (!parts.sigma[v][j][0].empty()) {
                out.certificate = "regular vertex '" + ge.vertex_name(v) +
                                  "' claims a length-0 sink projection";
                return out;
            }

    // Step 3: edge images must assign a single unit path to every ghost
    // slot of the blocks of their range.
    BijectionData bij;
    // slot tables per edge: beta -> image path
    std::vector<std::map<Path, Path>> slots(ge.edge_count());
    for (int e = 0; e < ge.edge_count(); ++e) {
        LPAElement ex = uniform_expansion(h.eimages[e], lvl);
        std::map<Path, std::vector<std::pair<Path, Int>>> grouped;
        for (const auto& [m, c] : ex.terms())
            grouped[m.beta].push_back({m.alpha, c});
        for (const auto& [beta, entries] : grouped) {
            if (entries.size() != 1 || entries[0].second != 1) {
                std::ostringstream os;
                os << "image of edge '" << ge.edge_name(e) << "' at ghost slot "
                   << path_to_string(gf, beta) << " is not a single unit path:";
                for (const auto& [alpha, c] : entries)
                    os << " " << c << "." << path_to_string(gf, alpha);
                bool negative = false;
                for (const auto& [alpha, c] : entries)
                    if (c < 0)
                        negative = true;
                out.definitive = negative;  // negative coefficients persist
                if (negative)
                    os << " (order preservation fails)";
                out.certificate = os.str();
                return out;
            }
            // Slot membership in the blocks of r(e).
            int rb = beta.range(gf);
            const std::vector<Path>& block =
                gf.is_sink(rb) ? parts.sigma[ge.edge_rng(e)][gf.sink_index(rb)][beta.length()]
                               : parts.gamma[ge.edge_rng(e)][gf.regular_index(rb)];
            if (!std::binary_search(block.begin(), block.end(), beta,
                                    canonical_path_less)) {
                out.certificate = "ghost slot " + path_to_string(gf, beta) + " of edge '" +
                                  ge.edge_name(e) + "' lies outside the blocks of its range";
                return out;
            }
            slots[e][beta] = entries[0].first;
        }
        // Coverage: every path in the blocks of r(e) must carry a slot.
        std::size_t expected = 0;
        int rv = ge.edge_rng(e);
        for (int j = 0; j < gf.regular_count(); ++j)
            expected += parts.gamma[rv][j].size();
        for (int j = 0; j < gf.sink_count(); ++j)
            for (int i = 0; i <= lvl; ++i)
                expected += parts.sigma[rv][j][i].size();
        if (slots[e].size() != expected) {
            out.certificate = "image of edge '" + ge.edge_name(e) +
                              "' misses ghost slots of the blocks of its range";
            return out;
        }
    }

    // Step 4: assemble the tables and check they are bijections with the
    // required codomains.
    auto gather = [&](int v, auto&& block_of, const std::vector<Path>& codomain,
                      BijectionData::Table& table, std::string& err) -> bool {
        std::set<Path> seen;
        for (int e : ge.out_edges(v))
            for (const Path& q : block_of(ge.edge_rng(e))) {
                const Path& img = slots[e].at(q);
                if (!std::binary_search(codomain.begin(), codomain.end(), img,
                                        canonical_path_less)) {
                    err = "image " + path_to_string(gf, img) + " of (" + ge.edge_name(e) + "," +
                          path_to_string(gf, q) + ") lies outside the required codomain";
                    return false;
                }
                if (!seen.insert(img).second) {
                    err = "two slots share the image " + path_to_string(gf, img);
                    return false;
                }
                table.push_back({{e, q}, img});
            }
        if (seen.size() != codomain.size()) {
            err = "table does not exhaust its codomain";
            return false;
        }
        return true;
    };

    // Codomain of the top-level tables at (v, z): the extensions alpha f of
    // the gamma blocks of v by one edge into z.
    auto extended_codomain = [&](int v, int z) {
        std::vector<Path> codomain;
        for (int f = 0; f < gf.edge_count(); ++f) {
            if (gf.edge_rng(f) != z)
                continue;
            int w = gf.edge_src(f);
            if (gf.is_sink(w))
                continue;
            for (const Path& alpha : parts.gamma[v][gf.regular_index(w)])
                codomain.push_back(alpha.append(gf, f));
        }
        std::sort(codomain.begin(), codomain.end(), canonical_path_less);
        return codomain;
    };

    for (int v : ge.regular_vertices()) {
        for (int j = 0; j < gf.regular_count(); ++j) {
            std::vector<Path> codomain = extended_codomain(v, gf.regular_vertices()[j]);
            BijectionData::Table table;
            std::string err;
            if (!gather(v, [&](int x) -> const std::vector<Path>& { return parts.gamma[x][j]; },
                        codomain, table, err)) {
                out.certificate = "tables at ('" + ge.vertex_name(v) + "','" +
                                  gf.vertex_name(gf.regular_vertices()[j]) + "'): " + err;
                return out;
            }
            bij.xi[{v, j}] = std::move(table);
        }
        for (int j = 0; j < gf.sink_count(); ++j) {
            for (int i = 0; i < lvl; ++i) {
                BijectionData::Table table;
                std::string err;
                if (!gather(v,
                            [&](int x) -> const std::vector<Path>& { return parts.sigma[x][j][i]; },
                            parts.sigma[v][j][i + 1], table, err)) {
                    out.certificate = "tables at ('" + ge.vertex_name(v) + "','" +
                                      gf.vertex_name(gf.sink_vertices()[j]) + "'," +
                                      std::to_string(i) + "): " + err;
                    return out;
                }
                bij.zeta[{v, j, i}] = std::move(table);
            }
            std::vector<Path> codomain = extended_codomain(v, gf.sink_vertices()[j]);
            BijectionData::Table table;
            std::string err;
            if (!gather(v, [&](int x) -> const std::vector<Path>& { return parts.sigma[x][j][lvl]; },
                        codomain, table, err)) {
                out.certificate = "tables at ('" + ge.vertex_name(v) + "','" +
                                  gf.vertex_name(gf.sink_vertices()[j]) + "'," +
                                  std::to_string(lvl) + "): " + err;
                return out;
            }
            bij.zeta[{v, j, lvl}] = std::move(table);
        }
    }

    out.tidy = true;
    out.witness = TidyWitness{lvl, std::move(parts), std::move(bij)};
    return out;
}

}  // namespace

TidyResult tidy_decide(const GradedHom& h) {
    if (auto bad = verify_hom(h))
        throw validation_error("tidy decision requires a verified homomorphism; relation " +
                               bad->relation + " fails at " + bad->locus);
    if (!check_graded(h))
        return {false, std::nullopt,
                "some generator image is not homogeneous of the generator's degree"};
    if (!check_star(h))
        return {false, std::nullopt, "some ghost image differs from the involution of its edge image"};

    int start = 0;
    for (const LPAElement& x : h.vimages)
        start = std::max(start, min_expansion_level(x));
    for (const LPAElement& x : h.eimages)
        for (const auto& [m, c] : x.terms())
            start = std::max(start, m.beta.length());

    constexpr int kLevelCap = 16;
    const Int kTermGuard = 1 << 20;
    std::string first_failure;
    for (int lvl = start; lvl <= kLevelCap; ++lvl) {
        if (lvl > start) {
            // Deeper attempts expand every level path of the target; stop
            // climbing when that count stops being desk scale.
            Int total = 0;
            for (int w = 0; w < h.target->vertex_count(); ++w)
                total += path_count_into(*h.target, w, lvl);
            if (total > kTermGuard)
                break;
        }
        TidyAttempt attempt = try_tidy_at_level(h, lvl);
        if (attempt.tidy)
            return {true, std::move(attempt.witness), ""};
        if (attempt.definitive)
            return {false, std::nullopt, std::move(attempt.certificate)};
        if (first_failure.empty())
            first_failure = attempt.certificate;
    }
    return {false, std::nullopt,
            first_failure + " (no tidy structure found up to level " +
                std::to_string(kLevelCap) + ")"};
}

bool witness_matches(const GradedHom& h, const TidyWitness& w) {
    if (!same_graph(h.source, w.partitions.source) || !same_graph(h.target, w.partitions.target))
        return false;
    try {
        BFMatrixForm form = matrix_form_from_witness(w, h.source, h.target);
        form.validate();
    } catch (const Error&) {
        return false;
    }
    GradedHom rebuilt = emit_hom(w.partitions, w.bijections);
    SpecialEdgeChoice choice = SpecialEdgeChoice::standard(h.target);
    for (std::size_t v = 0; v < h.vimages.size(); ++v)
        if (!normal_form(rebuilt.vimages[v] - h.vimages[v], choice).is_zero())
            return false;
    for (std::size_t e = 0; e < h.eimages.size(); ++e)
        if (!normal_form(rebuilt.eimages[e] - h.eimages[e], choice).is_zero())
            return false;
    return true;
}

}  // namespace bflift
