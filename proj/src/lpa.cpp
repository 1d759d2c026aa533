#include "bflift/lpa.hpp"

#include <algorithm>
#include <sstream>

namespace bflift {

bool canonical_monomial_less(const Monomial& a, const Monomial& b) {
    if (a.alpha.length() != b.alpha.length() || a.beta.length() != b.beta.length()) {
        if (a.alpha.length() + a.beta.length() != b.alpha.length() + b.beta.length())
            return a.alpha.length() + a.beta.length() < b.alpha.length() + b.beta.length();
        return a.alpha.length() < b.alpha.length();
    }
    if (canonical_path_less(a.alpha, b.alpha))
        return true;
    if (canonical_path_less(b.alpha, a.alpha))
        return false;
    return canonical_path_less(a.beta, b.beta);
}

LPAElement LPAElement::one(const GraphPtr& g) {
    LPAElement out(g);
    for (int v = 0; v < g->vertex_count(); ++v)
        out.add_term(Monomial::vertex(v), 1);
    return out;
}

LPAElement LPAElement::vertex(const GraphPtr& g, int v) {
    LPAElement out(g);
    out.add_term(Monomial::vertex(v), 1);
    return out;
}

LPAElement LPAElement::edge(const GraphPtr& g, int e) {
    LPAElement out(g);
    out.add_term(Monomial{Path::edge(*g, e), Path::vertex(g->edge_rng(e))}, 1);
    return out;
}

LPAElement LPAElement::ghost(const GraphPtr& g, int e) {
    LPAElement out(g);
    out.add_term(Monomial{Path::vertex(g->edge_rng(e)), Path::edge(*g, e)}, 1);
    return out;
}

LPAElement LPAElement::monomial(const GraphPtr& g, Monomial m, Int coeff) {
    if (m.alpha.range(*g) != m.beta.range(*g))
        throw validation_error("monomial legs have different ranges");
    LPAElement out(g);
    out.add_term(std::move(m), coeff);
    return out;
}

void LPAElement::add_term(Monomial m, const Int& coeff) {
    if (coeff == 0)
        return;
    auto [it, inserted] = terms_.emplace(std::move(m), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void LPAElement::check_compatible(const LPAElement& o) const {
    if (!same_graph(graph_, o.graph_))
        throw validation_error("elements over different graphs");
}

LPAElement LPAElement::operator+(const LPAElement& o) const {
    check_compatible(o);
    LPAElement out = *this;
    for (const auto& [m, c] : o.terms_)
        out.add_term(m, c);
    return out;
}

LPAElement LPAElement::operator-(const LPAElement& o) const {
    check_compatible(o);
    LPAElement out = *this;
    for (const auto& [m, c] : o.terms_)
        out.add_term(m, -c);
    return out;
}

LPAElement LPAElement::operator*(const Int& c) const {
    LPAElement out(graph_);
    if (c == 0)
        return out;
    for (const auto& [m, k] : terms_)
        out.terms_.emplace(m, k * c);
    return out;
}

bool LPAElement::operator==(const LPAElement& o) const {
    check_compatible(o);
    return terms_ == o.terms_;
}

LPAElement multiply(const LPAElement& x, const LPAElement& y) {
    if (!x.graph())
        throw internal_error("multiply on a default-constructed element");
    if (!same_graph(x.graph(), y.graph()))
        throw validation_error("product of elements over different graphs");
    const Graph& g = *x.graph();
    LPAElement out(x.graph());

    // Sentinel below every real path in the alpha-leg order.
    const Path bottom{-1, {}};

    for (const auto& [mx, cx] : x.terms()) {
        const Path& beta = mx.beta;
        // gamma extending beta: contiguous range of y's terms.
        auto it = y.terms().lower_bound(Monomial{beta, bottom});
        for (; it != y.terms().end() && is_path_prefix(beta, it->first.alpha); ++it) {
            Path tau = it->first.alpha.suffix(g, beta.length());
            out.add_term(Monomial{mx.alpha.concat(g, tau), it->first.beta}, cx * it->second);
        }
        // gamma a proper prefix of beta: at most |beta| exact-key scans.
        for (int j = 0; j < beta.length(); ++j) {
            Path gamma = beta.prefix(j);
            Path tau = beta.suffix(g, j);
            auto jt = y.terms().lower_bound(Monomial{gamma, bottom});
            for (; jt != y.terms().end() && jt->first.alpha == gamma; ++jt)
                out.add_term(Monomial{mx.alpha, jt->first.beta.concat(g, tau)}, cx * jt->second);
        }
    }
    return out;
}

LPAElement star(const LPAElement& x) {
    LPAElement out(x.graph());
    for (const auto& [m, c] : x.terms())
        out.add_term(Monomial{m.beta, m.alpha}, c);
    return out;
}

SpecialEdgeChoice SpecialEdgeChoice::standard(const GraphPtr& g) {
    std::vector<int> special(g->vertex_count(), -1);
    for (int v = 0; v < g->vertex_count(); ++v)
        if (g->is_regular(v))
            special[v] = g->out_edges(v)[0];
    return SpecialEdgeChoice(g, std::move(special));
}

namespace {

void normal_form_mono(const Graph& g, const SpecialEdgeChoice& choice, const Monomial& m,
                      const Int& coeff, LPAElement& out) {
    if (m.alpha.length() > 0 && m.beta.length() > 0 && m.alpha.edges.back() == m.beta.edges.back()) {
        int last = m.alpha.edges.back();
        int v = g.edge_src(last);
        if (choice.special_edge(v) == last) {
            Monomial shorter{m.alpha.prefix(m.alpha.length() - 1), m.beta.prefix(m.beta.length() - 1)};
            normal_form_mono(g, choice, shorter, coeff, out);
            for (int e : g.out_edges(v)) {
                if (e == last)
                    continue;
                // Ends in a non-special pair, hence already in normal form.
                out.add_term(Monomial{shorter.alpha.append(g, e), shorter.beta.append(g, e)}, -coeff);
            }
            return;
        }
    }
    out.add_term(m, coeff);
}

}  // namespace

LPAElement normal_form(const LPAElement& x, const SpecialEdgeChoice& choice) {
    if (!x.graph())
        return x;
    LPAElement out(x.graph());
    for (const auto& [m, c] : x.terms())
        normal_form_mono(*x.graph(), choice, m, c, out);
    return out;
}

LPAElement normal_form(const LPAElement& x) {
    if (!x.graph())
        return x;
    return normal_form(x, SpecialEdgeChoice::standard(x.graph()));
}

int min_expansion_level(const LPAElement& x) {
    int n = 0;
    for (const auto& [m, c] : x.terms())
        n = std::max(n, m.beta.length());
    return n;
}

namespace {

void expand_mono(const Graph& g, const Monomial& m, const Int& coeff, int n, LPAElement& out) {
    int rb = m.beta.range(g);
    if (m.beta.length() == n || g.is_sink(rb)) {
        out.add_term(m, coeff);
        return;
    }
    for (int e : g.out_edges(rb))
        expand_mono(g, Monomial{m.alpha.append(g, e), m.beta.append(g, e)}, coeff, n, out);
}

}  // namespace

LPAElement uniform_expansion(const LPAElement& x, int n) {
    if (n < min_expansion_level(x))
        throw validation_error("expansion level " + std::to_string(n) +
                               " below the minimum " + std::to_string(min_expansion_level(x)));
    if (!x.graph())
        return x;
    LPAElement out(x.graph());
    for (const auto& [m, c] : x.terms())
        expand_mono(*x.graph(), m, c, n, out);
    return out;
}

std::map<int, LPAElement> degree_components(const LPAElement& x) {
    std::map<int, LPAElement> out;
    for (const auto& [m, c] : x.terms()) {
        auto [it, fresh] = out.emplace(m.degree(), LPAElement(x.graph()));
        it->second.add_term(m, c);
    }
    return out;
}

bool in_diagonal(const LPAElement& x) {
    if (x.is_zero())
        return true;
    for (const auto& [deg, comp] : degree_components(x))
        if (deg != 0)
            return false;
    LPAElement ex = uniform_expansion(x, min_expansion_level(x));
    for (const auto& [m, c] : ex.terms())
        if (m.alpha != m.beta)
            return false;
    return true;
}

bool pc_member(const LPAElement& x) {
    for (const auto& [deg, comp] : degree_components(x)) {
        LPAElement ex = uniform_expansion(comp, min_expansion_level(comp));
        for (const auto& [m, c] : ex.terms())
            if (c < 0)
                return false;
    }
    return true;
}

std::string element_to_string(const LPAElement& x) {
    if (x.is_zero())
        return "0";
    const Graph& g = *x.graph();
    std::vector<std::pair<Monomial, Int>> terms(x.terms().begin(), x.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return canonical_monomial_less(a.first, b.first); });

    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Int a = c < 0 ? Int(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;

        std::string body;
        if (m.alpha.length() > 0)
            body = path_to_string(g, m.alpha);
        if (m.beta.length() > 0) {
            std::string ghost;
            for (int i = m.beta.length() - 1; i >= 0; --i) {
                if (!ghost.empty())
                    ghost += '.';
                ghost += g.edge_name(m.beta.edges[i]) + "*";
            }
            if (!body.empty())
                body += ' ';
            body += ghost;
        }
        if (body.empty())
            body = g.vertex_name(m.alpha.src);

        if (a != 1)
            os << a << ' ';
        os << body;
    }
    return os.str();
}

}  // namespace bflift
