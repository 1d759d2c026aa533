#include "bflift/cli.hpp"

#include "bflift/expr.hpp"
#include "bflift/hom.hpp"
#include "bflift/io.hpp"
#include "bflift/lift.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <variant>

namespace bflift {

namespace {

namespace fs = std::filesystem;

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw usage_error("cannot write to '" + out_path + "'");
    f << text;
}

int cmd_bf(const std::string& graph_path, int level, std::ostream& out) {
    GraphPtr g = load_graph(graph_path);
    out << "graph " << g->name() << " (" << g->vertex_count() << " vertices, "
        << g->edge_count() << " edges)\n";
    out << "regular:";
    for (int v : g->regular_vertices())
        out << " " << g->vertex_name(v);
    if (g->regular_count() == 0)
        out << " (none)";
    out << "\nsinks:";
    for (int v : g->sink_vertices())
        out << " " << g->vertex_name(v);
    if (g->sink_count() == 0)
        out << " (none)";
    out << "\nline points:";
    auto lps = line_points(*g);
    for (int v : lps)
        out << " " << g->vertex_name(v);
    if (lps.empty())
        out << " (none)";
    out << "\nadjacency matrix (vertex declaration order):\n" << g->adjacency();
    out << "presentation of the Bowen-Franks module:\n";
    out << "  generators:";
    for (int v = 0; v < g->vertex_count(); ++v)
        out << " " << g->vertex_name(v);
    out << "\n";
    for (int v : g->regular_vertices()) {
        out << "  relation: " << g->vertex_name(v) << " = sigma.(";
        bool first = true;
        for (int e : g->out_edges(v)) {
            out << (first ? "" : " + ") << g->vertex_name(g->edge_rng(e));
            first = false;
        }
        out << ")\n";
    }
    LevelVector u = order_unit_vector(g, level);
    out << "order unit at level " << level << ":\n";
    std::string vec = bfvec_to_text(u, g->name());
    // drop the header line, keep the coord lines indented
    auto nl = vec.find('\n');
    for (std::size_t i = nl + 1; i < vec.size();) {
        auto end = vec.find('\n', i);
        out << "  " << vec.substr(i, end - i) << "\n";
        i = end + 1;
    }
    return 0;
}

int cmd_check_map(const std::string& path, std::ostream& out) {
    MapFile mf = load_map_file(path);
    MapValidity v = validate_map(mf.spec);
    if (v.valid) {
        out << "valid\n";
        return 0;
    }
    out << "invalid: " << v.reason << "\n";
    return 1;
}

int cmd_extract(const std::string& path, int min_level, int cap, std::ostream& out) {
    MapFile mf = load_map_file(path);
    BFMatrixForm form = extract_matrix_form(mf.spec, min_level, cap);
    out << matrix_form_to_text(form);
    return 0;
}

int cmd_lift(const std::string& path, int min_level, int cap, const std::string& out_path,
             std::ostream& out) {
    MapFile mf = load_map_file(path);
    BFMatrixForm form = extract_matrix_form(mf.spec, min_level, cap);
    PartitionData parts = build_partitions(form);
    BijectionData bij = build_bijections(parts);
    GradedHom h = emit_hom(parts, bij);
    write_output(hom_to_text(h, mf.source_token, mf.target_token), out_path, out);
    return 0;
}

int cmd_verify(const std::string& path, std::ostream& out) {
    HomFile hf = load_hom_file(path);
    if (auto bad = verify_hom(hf.hom)) {
        out << "violation(" << bad->relation << ") at " << bad->locus
            << ": residual = " << element_to_string(bad->residual) << "\n";
        return 1;
    }
    out << "ok\n";
    out << "graded: " << (check_graded(hf.hom) ? "true" : "false") << "\n";
    out << "star: " << (check_star(hf.hom) ? "true" : "false") << "\n";
    out << "diagonal: " << (check_diagonal(hf.hom) ? "true" : "false") << "\n";
    return 0;
}

int cmd_tidy(const std::string& path, const std::string& out_path, std::ostream& out) {
    HomFile hf = load_hom_file(path);
    TidyResult res = tidy_decide(hf.hom);
    if (res.tidy) {
        out << "tidy\n";
        out << witness_to_text(*hf.hom.source, *hf.hom.target, *res.witness);
        if (!out_path.empty()) {
            GradedHom annotated = hf.hom;
            annotated.witness = res.witness;
            write_output(hom_to_text(annotated, hf.source_token, hf.target_token), out_path,
                         out);
        }
        return 0;
    }
    out << "not tidy: " << res.certificate << "\n";
    if (!out_path.empty()) {
        GradedHom annotated = hf.hom;
        annotated.witness.reset();
        std::string text = hom_to_text(annotated, hf.source_token, hf.target_token);
        text += "violation tidy := " + res.certificate + "\n";
        write_output(text, out_path, out);
    }
    return 1;
}

int cmd_compose(const std::string& gpath, const std::string& hpath, const std::string& out_path,
                std::ostream& out) {
    HomFile gf = load_hom_file(gpath);
    HomFile hf = load_hom_file(hpath);
    GradedHom comp = compose(gf.hom, hf.hom);
    write_output(hom_to_text(comp, hf.source_token, gf.target_token), out_path, out);
    return 0;
}

int cmd_induced(const std::string& path, const std::string& against, std::ostream& out) {
    HomFile hf = load_hom_file(path);
    BFMapSpec spec = induced_bf_map(hf.hom);
    out << map_to_text(spec, hf.source_token, hf.target_token);
    if (!against.empty()) {
        MapFile mf = load_map_file(against);
        if (!specs_bf_equal(spec, mf.spec)) {
            out << "induced map differs from '" << against << "'\n";
            return 1;
        }
        out << "induced map agrees with '" << against << "'\n";
    }
    return 0;
}

int cmd_matmap(const std::string& epath, const std::string& fpath, const std::string& mpath,
               std::ostream& out) {
    GraphPtr e = load_graph(epath);
    GraphPtr f = load_graph(fpath);
    MatMapFile mm = load_matmap_file(mpath);
    auto token_matches = [](const std::string& token, const std::string& arg,
                            const Graph& g) {
        return token == arg || token == g.name() ||
               fs::path(token).stem() == fs::path(arg).stem();
    };
    if (!token_matches(mm.source_token, epath, *e))
        throw parse_error("matrix file names source '" + mm.source_token +
                          "', which matches neither '" + epath + "' nor graph '" + e->name() +
                          "'");
    if (!token_matches(mm.target_token, fpath, *f))
        throw parse_error("matrix file names target '" + mm.target_token +
                          "', which matches neither '" + fpath + "' nor graph '" + f->name() +
                          "'");
    BFMapSpec spec = map_from_matrix(e, f, mm.p, mm.shift);
    MapValidity v = validate_map(spec);
    out << map_to_text(spec, mm.source_token, mm.target_token);
    if (!v.valid) {
        out << "invalid: " << v.reason << "\n";
        return 1;
    }
    out << "valid\n";
    return 0;
}

int cmd_eval(const std::string& graph_path, const std::string& expr, bool nf, int expand,
             std::ostream& out) {
    GraphPtr g = load_graph(graph_path);
    LPAElement x = parse_element(g, expr);
    if (nf)
        x = normal_form(x);
    if (expand >= 0)
        x = uniform_expansion(x, expand);
    out << element_to_string(x) << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bowen-Franks modules of finite graphs and combinatorial lifts to "
                 "Leavitt path algebra homomorphisms over the integers",
                 "bflift"};
    app.require_subcommand(1);

    std::string graph_path, map_path, hom_path, hom2_path, mat_path, out_path, against, expr;
    int level = 0, min_level = 0, cap = 64, expand = -1;
    bool nf = false;

    auto* bf = app.add_subcommand("bf", "Print a graph's Bowen-Franks presentation and order unit");
    bf->add_option("graph", graph_path)->required();
    bf->add_option("--level", level, "level of the order unit representative");

    auto* checkmap = app.add_subcommand("check-map", "Validate a map file");
    checkmap->add_option("mapfile", map_path)->required();

    auto* extract = app.add_subcommand("extract", "Extract the matrix normal form of a map");
    extract->add_option("mapfile", map_path)->required();
    extract->add_option("--min-level", min_level);
    extract->add_option("--cap", cap, "extra levels to search for stabilization");

    auto* lift = app.add_subcommand("lift", "Lift a map to a graded *-homomorphism");
    lift->add_option("mapfile", map_path)->required();
    lift->add_option("--min-level", min_level);
    lift->add_option("--cap", cap);
    lift->add_option("-o,--output", out_path);

    auto* verify = app.add_subcommand("verify", "Verify the defining relations of a hom file");
    verify->add_option("homfile", hom_path)->required();

    auto* tidy = app.add_subcommand("tidy", "Decide tidiness of a hom file");
    tidy->add_option("homfile", hom_path)->required();
    tidy->add_option("-o,--output", out_path, "write the annotated hom file");

    auto* comp = app.add_subcommand("compose", "Compose two hom files (first after second)");
    comp->add_option("outer", hom_path)->required();
    comp->add_option("inner", hom2_path)->required();
    comp->add_option("-o,--output", out_path);

    auto* induced = app.add_subcommand("induced", "Induced map on Bowen-Franks modules");
    induced->add_option("homfile", hom_path)->required();
    induced->add_option("--check-against", against, "compare against a map file");

    auto* matmap = app.add_subcommand("matmap", "Build and validate a map from a matrix file");
    matmap->add_option("source", graph_path)->required();
    matmap->add_option("target", map_path)->required();
    matmap->add_option("matrixfile", mat_path)->required();

    auto* eval = app.add_subcommand("eval", "Evaluate an element expression over a graph");
    eval->add_option("graph", graph_path)->required();
    eval->add_option("expression", expr)->required();
    eval->add_flag("--normal-form", nf);
    eval->add_option("--expand", expand, "uniform expansion level");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (bf->parsed())
            return cmd_bf(graph_path, level, out);
        if (checkmap->parsed())
            return cmd_check_map(map_path, out);
        if (extract->parsed())
            return cmd_extract(map_path, min_level, cap, out);
        if (lift->parsed())
            return cmd_lift(map_path, min_level, cap, out_path, out);
        if (verify->parsed())
            return cmd_verify(hom_path, out);
        if (tidy->parsed())
            return cmd_tidy(hom_path, out_path, out);
        if (comp->parsed())
            return cmd_compose(hom_path, hom2_path, out_path, out);
        if (induced->parsed())
            return cmd_induced(hom_path, against, out);
        if (matmap->parsed())
            return cmd_matmap(graph_path, map_path, mat_path, out);
        if (eval->parsed())
            return cmd_eval(graph_path, expr, nf, expand, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind) {
            case Error::Kind::validation: return 1;
            case Error::Kind::parse:
            case Error::Kind::usage: return 2;
            case Error::Kind::internal: return 3;
        }
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace bflift
