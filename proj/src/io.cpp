#include "bflift/io.hpp"

#include "bflift/expr.hpp"

#include <fstream>
#include <sstream>

namespace bflift {

namespace {

// Line-based reader with comment stripping and positions for error
// messages.
struct LineReader {
    std::istream& in;
    std::string origin;
    int lineno = 0;

    // Next non-empty line split into whitespace tokens; returns false at
    // the end.
    bool next(std::vector<std::string>& tokens, std::string& raw) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            std::string tok;
            while (ss >> tok)
                tokens.push_back(tok);
            if (!tokens.empty()) {
                raw = line;
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(origin + ":" + std::to_string(lineno) + ": " + msg);
    }
};

int parse_int(const LineReader& r, const std::string& tok) {
    try {
        std::size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size())
            r.fail("malformed integer '" + tok + "'");
        return value;
    } catch (const std::exception&) {
        r.fail("malformed integer '" + tok + "'");
    }
}

Int parse_bigint(const LineReader& r, const std::string& tok) {
    try {
        return Int(tok);
    } catch (const std::exception&) {
        r.fail("malformed integer '" + tok + "'");
    }
}

int need_vertex(const LineReader& r, const Graph& g, const std::string& name) {
    if (auto v = g.find_vertex(name))
        return *v;
    r.fail("unknown vertex '" + name + "' in graph '" + g.name() + "'");
}

int need_edge(const LineReader& r, const Graph& g, const std::string& name) {
    if (auto e = g.find_edge(name))
        return *e;
    r.fail("unknown edge '" + name + "' in graph '" + g.name() + "'");
}

bool valid_identifier(const std::string& s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

}  // namespace

GraphPtr parse_graph(std::istream& in, const std::string& origin) {
    LineReader r{in, origin};
    std::vector<std::string> toks;
    std::string raw;

    if (!r.next(toks, raw) || toks[0] != "graph" || toks.size() != 2)
        r.fail("expected header 'graph <name>'");
    std::string name = toks[1];

    std::vector<std::string> vertices;
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    while (r.next(toks, raw)) {
        if (toks[0] == "vertex" && toks.size() == 2) {
            if (!valid_identifier(toks[1]))
                r.fail("vertex name '" + toks[1] + "' is not an identifier");
            vertices.push_back(toks[1]);
        } else if (toks[0] == "edge" && toks.size() == 4) {
            if (!valid_identifier(toks[1]))
                r.fail("edge name '" + toks[1] + "' is not an identifier");
            edges.emplace_back(toks[1], toks[2], toks[3]);
        } else {
            r.fail("expected 'vertex <name>' or 'edge <name> <src> <rng>'");
        }
    }
    try {
        return Graph::make(std::move(name), std::move(vertices), std::move(edges));
    } catch (const Error& e) {
        throw parse_error(origin + ": " + e.what());
    }
}

GraphPtr load_graph(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw parse_error("cannot open graph file '" + file.string() + "'");
    return parse_graph(in, file.string());
}

std::string graph_to_text(const Graph& g) {
    std::ostringstream os;
    os << "graph " << g.name() << "\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        os << "vertex " << g.vertex_name(v) << "\n";
    for (int e = 0; e < g.edge_count(); ++e)
        os << "edge " << g.edge_name(e) << " " << g.vertex_name(g.edge_src(e)) << " "
           << g.vertex_name(g.edge_rng(e)) << "\n";
    return os.str();
}

GraphPtr resolve_graph_token(const std::string& token, const std::filesystem::path& base_dir) {
    std::filesystem::path direct = base_dir / token;
    if (std::filesystem::exists(direct))
        return load_graph(direct);
    std::filesystem::path suffixed = base_dir / (token + ".graph");
    if (std::filesystem::exists(suffixed))
        return load_graph(suffixed);
    throw parse_error("cannot resolve graph '" + token + "' relative to '" +
                      base_dir.string() + "' (tried '" + direct.string() + "' and '" +
                      suffixed.string() + "')");
}

namespace {

void read_coord_line(const LineReader& r, const std::vector<std::string>& toks,
                     const Graph& g, LevelVector& x) {
    if (toks.size() != 4)
        r.fail("expected 'coord <vertex> <index> <integer>'");
    int v = need_vertex(r, g, toks[1]);
    int idx = parse_int(r, toks[2]);
    Int value = parse_bigint(r, toks[3]);
    if (g.is_regular(v) && idx != x.level())
        r.fail("regular vertex '" + toks[1] + "' must use index " + std::to_string(x.level()));
    if (g.is_sink(v) && (idx < -x.level() || idx > x.level()))
        r.fail("sink index " + toks[2] + " out of range for level " +
               std::to_string(x.level()));
    x.add_coord(v, idx, value);
}

}  // namespace

LevelVector parse_bfvec(std::istream& in, const std::string& origin,
                        const std::filesystem::path& base_dir) {
    LineReader r{in, origin};
    std::vector<std::string> toks;
    std::string raw;
    if (!r.next(toks, raw) || toks[0] != "bfvec" || toks.size() != 4 || toks[2] != "level")
        r.fail("expected header 'bfvec <graph> level <n>'");
    GraphPtr g = resolve_graph_token(toks[1], base_dir);
    int level = parse_int(r, toks[3]);
    if (level < 0)
        r.fail("negative level");
    LevelVector x(g, level);
    while (r.next(toks, raw)) {
        if (toks[0] != "coord")
            r.fail("expected 'coord' lines");
        read_coord_line(r, toks, *g, x);
    }
    return x;
}

namespace {

void write_coords(std::ostringstream& os, const LevelVector& x) {
    const Graph& g = *x.graph();
    for (int u : g.sink_vertices())
        for (int i = -x.level(); i <= x.level(); ++i)
            if (x.coord(u, i) != 0)
                os << "coord " << g.vertex_name(u) << " " << i << " " << x.coord(u, i) << "\n";
    for (int w : g.regular_vertices())
        if (x.coord(w, x.level()) != 0)
            os << "coord " << g.vertex_name(w) << " " << x.level() << " "
               << x.coord(w, x.level()) << "\n";
}

}  // namespace

std::string bfvec_to_text(const LevelVector& x, const std::string& graph_token) {
    std::ostringstream os;
    os << "bfvec " << graph_token << " level " << x.level() << "\n";
    write_coords(os, x);
    return os.str();
}

MapFile parse_map_file(std::istream& in, const std::string& origin,
                       const std::filesystem::path& base_dir) {
    LineReader r{in, origin};
    std::vector<std::string> toks;
    std::string raw;
    if (!r.next(toks, raw) || toks[0] != "bfmap" || toks.size() != 6 || toks[2] != "->" ||
        toks[4] != "level")
        r.fail("expected header 'bfmap <E> -> <F> level <N>'");
    MapFile mf;
    mf.source_token = toks[1];
    mf.target_token = toks[3];
    GraphPtr source = resolve_graph_token(mf.source_token, base_dir);
    GraphPtr target = resolve_graph_token(mf.target_token, base_dir);
    int level = parse_int(r, toks[5]);
    if (level < 0)
        r.fail("negative level");

    std::vector<LevelVector> images(source->vertex_count(), LevelVector(target, level));
    std::vector<bool> seen(source->vertex_count(), false);
    int current = -1;
    while (r.next(toks, raw)) {
        if (toks[0] == "image") {
            if (toks.size() != 2)
                r.fail("expected 'image <vertex>'");
            current = need_vertex(r, *source, toks[1]);
            if (seen[current])
                r.fail("duplicate image block for vertex '" + toks[1] + "'");
            seen[current] = true;
        } else if (toks[0] == "coord") {
            if (current < 0)
                r.fail("'coord' before any 'image' block");
            read_coord_line(r, toks, *target, images[current]);
        } else {
            r.fail("expected 'image' or 'coord' lines");
        }
    }
    for (int v = 0; v < source->vertex_count(); ++v)
        if (!seen[v])
            r.fail("missing image block for vertex '" + source->vertex_name(v) + "'");
    try {
        mf.spec = make_map_spec(source, target, level, std::move(images));
    } catch (const Error& e) {
        throw parse_error(origin + ": " + e.what());
    }
    return mf;
}

MapFile load_map_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw parse_error("cannot open map file '" + file.string() + "'");
    return parse_map_file(in, file.string(), file.parent_path());
}

std::string map_to_text(const BFMapSpec& m, const std::string& source_token,
                        const std::string& target_token) {
    std::ostringstream os;
    os << "bfmap " << source_token << " -> " << target_token << " level " << m.level << "\n";
    for (int v = 0; v < m.source->vertex_count(); ++v) {
        os << "image " << m.source->vertex_name(v) << "\n";
        write_coords(os, m.images[v]);
    }
    return os.str();
}

MatMapFile parse_matmap_file(std::istream& in, const std::string& origin) {
    LineReader r{in, origin};
    std::vector<std::string> toks;
    std::string raw;
    if (!r.next(toks, raw) || toks[0] != "matmap" || toks.size() != 6 || toks[2] != "->" ||
        toks[4] != "shift")
        r.fail("expected header 'matmap <E> -> <F> shift <k>'");
    MatMapFile mm;
    mm.source_token = toks[1];
    mm.target_token = toks[3];
    mm.shift = parse_int(r, toks[5]);

    std::vector<std::vector<Int>> rows;
    while (r.next(toks, raw)) {
        std::vector<Int> row;
        for (const std::string& t : toks)
            row.push_back(parse_bigint(r, t));
        if (!rows.empty() && rows[0].size() != row.size())
            r.fail("ragged matrix rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        r.fail("matrix has no rows");
    mm.p = Matrix(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            mm.p.at(i, j) = rows[i][j];
    return mm;
}

MatMapFile load_matmap_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw parse_error("cannot open matrix file '" + file.string() + "'");
    return parse_matmap_file(in, file.string());
}

Path parse_path(const Graph& g, const std::string& text) {
    if (auto v = g.find_vertex(text))
        return Path::vertex(*v);
    Path p;
    std::size_t start = 0;
    bool first = true;
    while (start <= text.size()) {
        std::size_t dot = text.find('.', start);
        std::string part = text.substr(start, dot == std::string::npos ? dot : dot - start);
        auto e = g.find_edge(part);
        if (!e)
            throw parse_error("unknown edge '" + part + "' in path '" + text + "'");
        if (first) {
            p = Path::edge(g, *e);
            first = false;
        } else {
            if (g.edge_src(*e) != p.range(g))
                throw parse_error("non-composable path '" + text + "'");
            p = p.append(g, *e);
        }
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }
    if (first)
        throw parse_error("empty path");
    return p;
}

HomFile parse_hom_file(std::istream& in, const std::string& origin,
                       const std::filesystem::path& base_dir) {
    LineReader r{in, origin};
    std::vector<std::string> toks;
    std::string raw;
    if (!r.next(toks, raw) || toks[0] != "hom" || toks.size() != 4 || toks[2] != "->")
        r.fail("expected header 'hom <E> -> <F>'");
    HomFile hf;
    hf.source_token = toks[1];
    hf.target_token = toks[3];
    GraphPtr source = resolve_graph_token(hf.source_token, base_dir);
    GraphPtr target = resolve_graph_token(hf.target_token, base_dir);

    GradedHom& h = hf.hom;
    h.source = source;
    h.target = target;
    h.vimages.assign(source->vertex_count(), LPAElement(target));
    h.eimages.assign(source->edge_count(), LPAElement(target));
    h.gimages.assign(source->edge_count(), LPAElement(target));
    std::vector<bool> vseen(source->vertex_count(), false);
    std::vector<bool> eseen(source->edge_count(), false);
    std::vector<bool> gseen(source->edge_count(), false);

    std::optional<TidyWitness> witness;

    auto expr_after_assign = [&](const std::string& line) -> LPAElement {
        auto pos = line.find(":=");
        if (pos == std::string::npos)
            r.fail("expected ':=' in image line");
        try {
            return parse_element(target, line.substr(pos + 2));
        } catch (const Error& e) {
            r.fail(e.what());
        }
    };

    while (r.next(toks, raw)) {
        if (toks[0] == "vimage" || toks[0] == "eimage" || toks[0] == "gimage") {
            if (toks.size() < 3 || toks[2] != ":=")
                r.fail("expected '" + toks[0] + " <name> := <expression>'");
        }
        if (toks[0] == "vimage") {
            int v = need_vertex(r, *source, toks[1]);
            if (vseen[v])
                r.fail("duplicate vimage for '" + toks[1] + "'");
            vseen[v] = true;
            h.vimages[v] = expr_after_assign(raw);
        } else if (toks[0] == "eimage") {
            int e = need_edge(r, *source, toks[1]);
            if (eseen[e])
                r.fail("duplicate eimage for '" + toks[1] + "'");
            eseen[e] = true;
            h.eimages[e] = expr_after_assign(raw);
        } else if (toks[0] == "gimage") {
            int e = need_edge(r, *source, toks[1]);
            if (gseen[e])
                r.fail("duplicate gimage for '" + toks[1] + "'");
            gseen[e] = true;
            h.gimages[e] = expr_after_assign(raw);
        } else if (toks[0] == "witness") {
            if (toks.size() != 3 || toks[1] != "level")
                r.fail("expected 'witness level <L>'");
            int lvl = parse_int(r, toks[2]);
            if (lvl < 0)
                r.fail("negative witness level");
            witness = TidyWitness{};
            witness->level = lvl;
            witness->partitions.source = source;
            witness->partitions.target = target;
            witness->partitions.level = lvl;
            witness->partitions.gamma.assign(
                source->vertex_count(),
                std::vector<std::vector<Path>>(target->regular_count()));
            witness->partitions.sigma.assign(
                source->vertex_count(),
                std::vector<std::vector<std::vector<Path>>>(
                    target->sink_count(), std::vector<std::vector<Path>>(lvl + 1)));
        } else if (toks[0] == "gamma" || toks[0] == "sigma" || toks[0] == "xi" ||
                   toks[0] == "zeta") {
            if (!witness)
                r.fail("witness table line before 'witness level'");
            if (toks[0] == "gamma") {
                // gamma <v> <w> := <path> ...
                if (toks.size() < 4 || toks[3] != ":=")
                    r.fail("expected 'gamma <v> <w> := <paths>'");
                int v = need_vertex(r, *source, toks[1]);
                int w = need_vertex(r, *target, toks[2]);
                if (!target->is_regular(w))
                    r.fail("gamma block at non-regular vertex '" + toks[2] + "'");
                auto& block = witness->partitions.gamma[v][target->regular_index(w)];
                for (std::size_t i = 4; i < toks.size(); ++i)
                    block.push_back(parse_path(*target, toks[i]));
            } else if (toks[0] == "sigma") {
                // sigma <v> <u> <i> := <path> ...
                if (toks.size() < 5 || toks[4] != ":=")
                    r.fail("expected 'sigma <v> <u> <i> := <paths>'");
                int v = need_vertex(r, *source, toks[1]);
                int u = need_vertex(r, *target, toks[2]);
                int i = parse_int(r, toks[3]);
                if (!target->is_sink(u))
                    r.fail("sigma block at non-sink vertex '" + toks[2] + "'");
                if (i < 0 || i > witness->level)
                    r.fail("sigma block index out of range");
                auto& block = witness->partitions.sigma[v][target->sink_index(u)][i];
                for (std::size_t j = 5; j < toks.size(); ++j)
                    block.push_back(parse_path(*target, toks[j]));
            } else {
                // xi <v> <w> : <e>,<path> -> <path>
                // zeta <i> <v> <u> : <e>,<path> -> <path>
                bool is_xi = toks[0] == "xi";
                std::size_t base = is_xi ? 3 : 4;
                if (toks.size() != base + 4 || toks[base] != ":" || toks[base + 2] != "->")
                    r.fail("expected '... : <e>,<path> -> <path>'");
                if (toks[base + 1].find(',') == std::string::npos)
                    r.fail("expected '<e>,<path>' in bijection line");
                std::string pair = toks[base + 1];
                auto comma = pair.find(',');
                std::string ename = pair.substr(0, comma);
                std::string qtext = pair.substr(comma + 1);
                int e = need_edge(r, *source, ename);
                Path q = parse_path(*target, qtext);
                Path img = parse_path(*target, toks[base + 3]);
                if (is_xi) {
                    int v = need_vertex(r, *source, toks[1]);
                    int w = need_vertex(r, *target, toks[2]);
                    if (!target->is_regular(w))
                        r.fail("xi table at non-regular vertex");
                    witness->bijections.xi[{v, target->regular_index(w)}].push_back(
                        {{e, q}, img});
                } else {
                    int i = parse_int(r, toks[1]);
                    int v = need_vertex(r, *source, toks[2]);
                    int u = need_vertex(r, *target, toks[3]);
                    if (!target->is_sink(u))
                        r.fail("zeta table at non-sink vertex");
                    if (i < 0 || i > witness->level)
                        r.fail("zeta table index out of range");
                    witness->bijections.zeta[{v, target->sink_index(u), i}].push_back(
                        {{e, q}, img});
                }
            }
        } else if (toks[0] == "violation") {
            // informational; retained lines are not needed to rebuild state
            continue;
        } else {
            r.fail("unrecognized line '" + toks[0] + "'");
        }
    }

    for (int v = 0; v < source->vertex_count(); ++v)
        if (!vseen[v])
            r.fail("missing vimage for vertex '" + source->vertex_name(v) + "'");
    for (int e = 0; e < source->edge_count(); ++e) {
        if (!eseen[e])
            r.fail("missing eimage for edge '" + source->edge_name(e) + "'");
        if (!gseen[e])
            h.gimages[e] = star(h.eimages[e]);
    }
    h.witness = std::move(witness);
    h.provenance = h.witness ? GradedHom::Provenance::constructed : GradedHom::Provenance::user;
    return hf;
}

HomFile load_hom_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw parse_error("cannot open hom file '" + file.string() + "'");
    return parse_hom_file(in, file.string(), file.parent_path());
}

std::string witness_to_text(const Graph& source, const Graph& target, const TidyWitness& w) {
    std::ostringstream os;
    os << "witness level " << w.level << "\n";
    for (int v = 0; v < source.vertex_count(); ++v) {
        for (int j = 0; j < target.regular_count(); ++j) {
            const auto& block = w.partitions.gamma[v][j];
            if (block.empty())
                continue;
            os << "gamma " << source.vertex_name(v) << " "
               << target.vertex_name(target.regular_vertices()[j]) << " :=";
            for (const Path& p : block)
                os << " " << path_to_string(target, p);
            os << "\n";
        }
        for (int j = 0; j < target.sink_count(); ++j)
            for (int i = 0; i <= w.level; ++i) {
                const auto& block = w.partitions.sigma[v][j][i];
                if (block.empty())
                    continue;
                os << "sigma " << source.vertex_name(v) << " "
                   << target.vertex_name(target.sink_vertices()[j]) << " " << i << " :=";
                for (const Path& p : block)
                    os << " " << path_to_string(target, p);
                os << "\n";
            }
    }
    for (const auto& [key, table] : w.bijections.xi) {
        const auto& [v, j] = key;
        for (const auto& [dom, img] : table)
            os << "xi " << source.vertex_name(v) << " "
               << target.vertex_name(target.regular_vertices()[j]) << " : "
               << source.edge_name(dom.first) << "," << path_to_string(target, dom.second)
               << " -> " << path_to_string(target, img) << "\n";
    }
    for (const auto& [key, table] : w.bijections.zeta) {
        const auto& [v, j, i] = key;
        for (const auto& [dom, img] : table)
            os << "zeta " << i << " " << source.vertex_name(v) << " "
               << target.vertex_name(target.sink_vertices()[j]) << " : "
               << source.edge_name(dom.first) << "," << path_to_string(target, dom.second)
               << " -> " << path_to_string(target, img) << "\n";
    }
    return os.str();
}

std::string hom_to_text(const GradedHom& h, const std::string& source_token,
                        const std::string& target_token) {
    const Graph& ge = *h.source;
    std::ostringstream os;
    os << "hom " << source_token << " -> " << target_token << "\n";
    for (int v = 0; v < ge.vertex_count(); ++v)
        os << "vimage " << ge.vertex_name(v) << " := " << element_to_string(h.vimages[v]) << "\n";
    for (int e = 0; e < ge.edge_count(); ++e)
        os << "eimage " << ge.edge_name(e) << " := " << element_to_string(h.eimages[e]) << "\n";
    for (int e = 0; e < ge.edge_count(); ++e)
        if (!(h.gimages[e] == star(h.eimages[e])))
            os << "gimage " << ge.edge_name(e) << " := " << element_to_string(h.gimages[e])
               << "\n";
    if (h.witness)
        os << witness_to_text(*h.source, *h.target, *h.witness);
    return os.str();
}

std::string matrix_form_to_text(const BFMatrixForm& form) {
    const Graph& ge = *form.source;
    const Graph& gf = *form.target;
    std::ostringstream os;
    os << "matform " << ge.name() << " -> " << gf.name() << " level " << form.level << "\n";
    if (gf.regular_count() > 0) {
        os << "R (rows: " << ge.name() << " vertices; columns:";
        for (int w : gf.regular_vertices())
            os << " " << gf.vertex_name(w);
        os << ")\n";
        for (int v = 0; v < ge.vertex_count(); ++v) {
            os << "  " << ge.vertex_name(v) << ":";
            for (int j = 0; j < gf.regular_count(); ++j)
                os << " " << form.r.at(v, j);
            os << "\n";
        }
    } else {
        os << "R (empty: no regular vertices in " << gf.name() << ")\n";
    }
    if (gf.sink_count() > 0) {
        for (int i = 0; i <= form.level; ++i) {
            os << "S^(" << i << ") (columns:";
            for (int u : gf.sink_vertices())
                os << " " << gf.vertex_name(u);
            os << ")\n";
            for (int v = 0; v < ge.vertex_count(); ++v) {
                os << "  " << ge.vertex_name(v) << ":";
                for (int j = 0; j < gf.sink_count(); ++j)
                    os << " " << form.s[i].at(v, j);
                os << "\n";
            }
        }
    } else {
        os << "S (empty: no sinks in " << gf.name() << ")\n";
    }
    return os.str();
}

}  // namespace bflift
