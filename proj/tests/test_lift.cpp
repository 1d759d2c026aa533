#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bflift/hom.hpp"
#include "bflift/io.hpp"
#include "bflift/lift.hpp"

#include "support.hpp"

using namespace bflift;
using namespace bflift::testing;

namespace {

BFMapSpec paper_example_map() {
    GraphPtr r2 = make_r2();
    GraphPtr fk = make_fk();
    Matrix p(1, 2);
    p.at(0, 0) = 1;
    p.at(0, 1) = 1;
    return map_from_matrix(r2, fk, p, 0);
}

GradedHom lift_map(const BFMapSpec& m) {
    BFMatrixForm form = extract_matrix_form(m);
    PartitionData parts = build_partitions(form);
    BijectionData bij = build_bijections(parts);
    return emit_hom(parts, bij);
}

}  // namespace

TEST_CASE("partitions of the example") {
    BFMapSpec m = paper_example_map();
    BFMatrixForm form = extract_matrix_form(m);
    PartitionData p = build_partitions(form);
    const Graph& fk = *m.target;
    int u = *fk.find_vertex("u"), v = *fk.find_vertex("v");
    REQUIRE(p.gamma.size() == 1);
    REQUIRE(p.gamma[0].size() == 2);
    CHECK(p.gamma[0][fk.regular_index(u)] == std::vector<Path>{Path::vertex(u)});
    CHECK(p.gamma[0][fk.regular_index(v)] == std::vector<Path>{Path::vertex(v)});
}

TEST_CASE("bijections of the example") {
    BFMapSpec m = paper_example_map();
    PartitionData p = build_partitions(extract_matrix_form(m));
    BijectionData b = build_bijections(p);
    const Graph& r2 = *m.source;
    const Graph& fk = *m.target;
    int z = 0;
    int x1 = *r2.find_edge("x1"), x2 = *r2.find_edge("x2");
    int e1 = *fk.find_edge("e1"), e2 = *fk.find_edge("e2");
    int f1 = *fk.find_edge("f1"), f2 = *fk.find_edge("f2");
    int u = *fk.find_vertex("u"), v = *fk.find_vertex("v");

    const auto& xi_u = b.xi.at({z, fk.regular_index(u)});
    REQUIRE(xi_u.size() == 2);
    CHECK(xi_u[0].first == std::make_pair(x1, Path::vertex(u)));
    CHECK(xi_u[0].second == Path::edge(fk, e1));
    CHECK(xi_u[1].first == std::make_pair(x2, Path::vertex(u)));
    CHECK(xi_u[1].second == Path::edge(fk, f2));

    const auto& xi_v = b.xi.at({z, fk.regular_index(v)});
    REQUIRE(xi_v.size() == 2);
    CHECK(xi_v[0].second == Path::edge(fk, e2));
    CHECK(xi_v[1].second == Path::edge(fk, f1));
}

TEST_CASE("emitted hom of the example") {
    BFMapSpec m = paper_example_map();
    GradedHom h = lift_map(m);
    GraphPtr fk = m.target;
    const Graph& r2 = *m.source;

    LPAElement uv = LPAElement::vertex(fk, 0) + LPAElement::vertex(fk, 1);
    CHECK(h.vimages[0] == uv);
    CHECK(h.eimages[*r2.find_edge("x1")] ==
          LPAElement::edge(fk, *fk->find_edge("e1")) + LPAElement::edge(fk, *fk->find_edge("e2")));
    CHECK(h.eimages[*r2.find_edge("x2")] ==
          LPAElement::edge(fk, *fk->find_edge("f1")) + LPAElement::edge(fk, *fk->find_edge("f2")));
    CHECK(h.provenance == GradedHom::Provenance::constructed);
    REQUIRE(h.witness.has_value());
    CHECK(h.witness->level == 0);

    CHECK_FALSE(verify_hom(h).has_value());
    CHECK(check_graded(h));
    CHECK(check_star(h));
    CHECK(check_diagonal(h));

    // the commuting square: the induced map equals the input
    BFMapSpec induced = induced_bf_map(h);
    CHECK(specs_bf_equal(induced, m));
}

TEST_CASE("identity form lifts to the identity hom") {
    for (const GraphPtr& g : fixtures()) {
        GradedHom h = lift_map(identity_spec(g));
        GradedHom id = identity_hom(g);
        for (int v = 0; v < g->vertex_count(); ++v)
            CHECK(h.vimages[v] == id.vimages[v]);
        for (int e = 0; e < g->edge_count(); ++e)
            CHECK(h.eimages[e] == id.eimages[e]);
    }
}

TEST_CASE("identity form on S1 in detail") {
    GraphPtr s1 = make_s1();
    int u = *s1->find_vertex("u"), v = *s1->find_vertex("v");
    PartitionData p = build_partitions(extract_matrix_form(identity_spec(s1)));
    CHECK(p.gamma[v][0] == std::vector<Path>{Path::vertex(v)});
    CHECK(p.gamma[u][0].empty());
    CHECK(p.sigma[u][0][0] == std::vector<Path>{Path::vertex(u)});
    CHECK(p.sigma[v][0][0].empty());
    BijectionData b = build_bijections(p);
    const auto& zeta = b.zeta.at({v, 0, 0});
    REQUIRE(zeta.size() == 1);
    CHECK(zeta[0].first == std::make_pair(*s1->find_edge("a"), Path::vertex(u)));
    CHECK(zeta[0].second == Path::edge(*s1, *s1->find_edge("a")));
}

TEST_CASE("witness matrices reproduce the form") {
    Rng rng(97);
    auto samples = sample_valid_specs(rng, 25);
    for (const MapSample& s : samples) {
        BFMatrixForm form = extract_matrix_form(s.spec);
        PartitionData parts = build_partitions(form);
        BijectionData bij = build_bijections(parts);
        GradedHom h = emit_hom(parts, bij);
        REQUIRE(h.witness.has_value());
        BFMatrixForm back = matrix_form_from_witness(*h.witness, h.source, h.target);
        CHECK(back == form);
    }
}

TEST_CASE("every lifted hom verifies and induces the input map") {
    Rng rng(101);
    auto samples = sample_valid_specs(rng, 30);
    for (const MapSample& s : samples) {
        GradedHom h = lift_map(s.spec);
        CHECK_FALSE(verify_hom(h).has_value());
        CHECK(check_graded(h));
        CHECK(check_star(h));
        CHECK(specs_bf_equal(induced_bf_map(h), s.spec));
    }
}

TEST_CASE("pushed identities lift through sink chains") {
    std::vector<GraphPtr> graphs = fixtures();
    Rng rng(113);
    for (int t = 0; t < 8; ++t)
        graphs.push_back(random_graph(rng, 4, 6));
    for (const GraphPtr& g : graphs)
        for (int k = 1; k <= 2; ++k) {
            MapSample s = pushed_identity_sample(g, k);
            REQUIRE(validate_map(s.spec).valid);
            BFMatrixForm form = extract_matrix_form(s.spec);
            CHECK(form.level == k);
            GradedHom h = lift_map(s.spec);
            CHECK_FALSE(verify_hom(h).has_value());
            CHECK(specs_bf_equal(induced_bf_map(h), s.spec));
            TidyResult res = tidy_decide(h);
            CHECK(res.tidy);
            if (res.tidy)
                CHECK(forms_equivalent(
                    matrix_form_from_witness(*res.witness, h.source, h.target), form));
        }
}

TEST_CASE("edgeless graphs lift through sink blocks only") {
    GraphPtr t2 = Graph::make("T2", {"a", "b"}, {});
    Matrix swap(2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    BFMapSpec m = map_from_matrix(t2, t2, swap, 0);
    REQUIRE(validate_map(m).valid);
    GradedHom h = lift_map(m);
    CHECK(h.vimages[0] == LPAElement::vertex(t2, 1));
    CHECK(h.vimages[1] == LPAElement::vertex(t2, 0));
    CHECK(h.eimages.empty());
    CHECK_FALSE(verify_hom(h).has_value());
    TidyResult res = tidy_decide(h);
    CHECK(res.tidy);
    CHECK(res.witness->bijections.xi.empty());
    CHECK(specs_bf_equal(induced_bf_map(h), m));
}

TEST_CASE("lift emission is deterministic") {
    BFMapSpec m = paper_example_map();
    GradedHom a = lift_map(m);
    GradedHom b = lift_map(m);
    CHECK(a == b);
    CHECK(hom_to_text(a, "R2", "FK") == hom_to_text(b, "R2", "FK"));
}
