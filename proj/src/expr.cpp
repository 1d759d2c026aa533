#include "bflift/expr.hpp"

#include <cctype>
#include <vector>

namespace bflift {

namespace {

struct Token {
    enum class Kind { integer, ident, star, dot, plus, minus, end };
    Kind kind;
    std::string text;
    int col;  // 1-based
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        int col = static_cast<int>(i) + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({Token::Kind::integer, text.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, text.substr(i, j - i), col});
            i = j;
            continue;
        }
        switch (c) {
            case '*': out.push_back({Token::Kind::star, "*", col}); break;
            case '.': out.push_back({Token::Kind::dot, ".", col}); break;
            case '+': out.push_back({Token::Kind::plus, "+", col}); break;
            case '-': out.push_back({Token::Kind::minus, "-", col}); break;
            default:
                throw parse_error("column " + std::to_string(col) +
                                  ": unexpected character '" + std::string(1, c) + "'");
        }
        ++i;
    }
    out.push_back({Token::Kind::end, "", static_cast<int>(text.size()) + 1});
    return out;
}

struct Atom {
    int id;        // vertex or edge index
    bool is_edge;
    bool starred;
    int col;
};

[[noreturn]] void fail(int col, const std::string& msg) {
    throw parse_error("column " + std::to_string(col) + ": " + msg);
}

int atom_source(const Graph& g, const Atom& a) {
    if (!a.is_edge)
        return a.id;
    return a.starred ? g.edge_rng(a.id) : g.edge_src(a.id);
}

int atom_range(const Graph& g, const Atom& a) {
    if (!a.is_edge)
        return a.id;
    return a.starred ? g.edge_src(a.id) : g.edge_rng(a.id);
}

LPAElement atom_element(const GraphPtr& g, const Atom& a) {
    if (!a.is_edge)
        return LPAElement::vertex(g, a.id);
    return a.starred ? LPAElement::ghost(g, a.id) : LPAElement::edge(g, a.id);
}

}  // namespace

LPAElement parse_element(const GraphPtr& g, const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    std::size_t pos = 0;
    auto peek = [&]() -> const Token& { return toks[pos]; };
    auto next = [&]() -> const Token& { return toks[pos++]; };

    LPAElement result(g);
    bool any_term = false;
    Int sign = 1;

    // the zero element prints as a bare "0"
    if (toks.size() == 2 && toks[0].kind == Token::Kind::integer && toks[0].text == "0")
        return result;

    if (peek().kind == Token::Kind::minus) {
        next();
        sign = -1;
    }

    while (true) {
        // coefficient
        Int coeff = sign;
        if (peek().kind == Token::Kind::integer)
            coeff *= Int(next().text);

        // factor sequence
        std::vector<Atom> atoms;
        while (peek().kind == Token::Kind::ident || peek().kind == Token::Kind::dot) {
            if (peek().kind == Token::Kind::dot) {
                if (atoms.empty())
                    fail(peek().col, "'.' without a left factor");
                next();
            }
            if (peek().kind != Token::Kind::ident)
                fail(peek().col, "expected an identifier");
            Token t = next();
            Atom a{};
            a.col = t.col;
            if (auto v = g->find_vertex(t.text)) {
                a.id = *v;
                a.is_edge = false;
            } else if (auto e = g->find_edge(t.text)) {
                a.id = *e;
                a.is_edge = true;
            } else {
                fail(t.col, "unknown vertex or edge '" + t.text + "'");
            }
            if (peek().kind == Token::Kind::star) {
                next();
                a.starred = true;
            }
            if (!atoms.empty()) {
                const Atom& prev = atoms.back();
                // Same-kind neighbours spell a path and must compose.
                if (prev.starred == a.starred) {
                    bool composable = atom_range(*g, prev) == atom_source(*g, a);
                    if (!composable)
                        fail(a.col, "non-composable path: '" + t.text +
                                        "' does not continue the previous factor");
                }
            }
            atoms.push_back(a);
        }
        if (atoms.empty())
            fail(peek().col, "expected an identifier");

        LPAElement term = atom_element(g, atoms[0]);
        for (std::size_t i = 1; i < atoms.size(); ++i)
            term = multiply(term, atom_element(g, atoms[i]));
        result = result + term * coeff;
        any_term = true;

        if (peek().kind == Token::Kind::end)
            break;
        if (peek().kind == Token::Kind::plus) {
            next();
            sign = 1;
        } else if (peek().kind == Token::Kind::minus) {
            next();
            sign = -1;
        } else {
            fail(peek().col, "expected '+', '-' or end of expression");
        }
    }
    if (!any_term)
        fail(1, "empty expression");
    return result;
}

}  // namespace bflift
