#pragma once

#include "bflift/graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace bflift {

// Monomial alpha . beta* with r(alpha) = r(beta). Vertex idempotents are the
// monomials (v, v). The key order is prefix-friendly on the alpha leg so
// that products can be matched by range scans.
struct Monomial {
    Path alpha;
    Path beta;

    int degree() const { return alpha.length() - beta.length(); }

    static Monomial vertex(int v) { return Monomial{Path::vertex(v), Path::vertex(v)}; }

    bool operator==(const Monomial&) const = default;
    auto operator<=>(const Monomial& o) const {
        if (auto c = alpha <=> o.alpha; c != 0)
            return c;
        return beta <=> o.beta;
    }
};

// Display order: by leg lengths first, then lexicographically; puts vertex
// terms before edge terms and keeps reports stable.
bool canonical_monomial_less(const Monomial& a, const Monomial& b);

// Exact integer combination of monomials over a fixed graph. Zero
// coefficients are never stored.
class LPAElement {
public:
    LPAElement() = default;
    explicit LPAElement(GraphPtr g) : graph_(std::move(g)) {}

    static LPAElement zero(GraphPtr g) { return LPAElement(std::move(g)); }
    static LPAElement one(const GraphPtr& g);
    static LPAElement vertex(const GraphPtr& g, int v);
    static LPAElement edge(const GraphPtr& g, int e);
    static LPAElement ghost(const GraphPtr& g, int e);
    static LPAElement monomial(const GraphPtr& g, Monomial m, Int coeff = 1);

    const GraphPtr& graph() const { return graph_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(Monomial m, const Int& coeff);

    LPAElement operator+(const LPAElement& o) const;
    LPAElement operator-(const LPAElement& o) const;
    LPAElement operator*(const Int& c) const;
    LPAElement operator-() const { return *this * Int(-1); }
    bool operator==(const LPAElement& o) const;

private:
    void check_compatible(const LPAElement& o) const;
    friend LPAElement multiply(const LPAElement& x, const LPAElement& y);

    GraphPtr graph_;
    std::map<Monomial, Int> terms_;
};

// Bilinear extension of (alpha beta*)(gamma delta*) = (alpha tau) delta* if
// gamma = beta tau, alpha (delta tau)* if beta = gamma tau, 0 otherwise.
LPAElement multiply(const LPAElement& x, const LPAElement& y);
inline LPAElement operator*(const LPAElement& x, const LPAElement& y) { return multiply(x, y); }

// Coefficientwise involution alpha beta* -> beta alpha*.
LPAElement star(const LPAElement& x);

// One chosen edge per regular vertex; the default takes the first edge in
// declaration order. Selects the basis used by the normal form.
class SpecialEdgeChoice {
public:
    static SpecialEdgeChoice standard(const GraphPtr& g);
    explicit SpecialEdgeChoice(GraphPtr g, std::vector<int> special)
        : graph_(std::move(g)), special_(std::move(special)) {}

    // Special edge of regular vertex v, or -1 for sinks.
    int special_edge(int v) const { return special_[v]; }
    const GraphPtr& graph() const { return graph_; }

private:
    GraphPtr graph_;
    std::vector<int> special_;
};

// Terminating rewrite: any monomial whose two legs end in the common special
// edge g of v = s(g) is replaced via
//   (alpha g)(beta g)* -> alpha beta* - sum over e in s^{-1}(v), e != g of
//   (alpha e)(beta e)*.
// The output contains no monomial whose legs both end in a special edge of
// their common source. Deciding equality through it is independent of any
// expansion level.
LPAElement normal_form(const LPAElement& x, const SpecialEdgeChoice& choice);
LPAElement normal_form(const LPAElement& x);

// Smallest level at which every beta leg of x lies in R_N or S_N.
int min_expansion_level(const LPAElement& x);

// Rewrites every monomial via alpha beta* = sum over e in s^{-1}(r(beta)) of
// (alpha e)(beta e)* until each beta leg lies in R_N or S_N. The resulting
// monomials are linearly independent, so coefficients are canonical at
// level N.
LPAElement uniform_expansion(const LPAElement& x, int n);

// Split by degree |alpha| - |beta|; zero element maps to an empty split.
std::map<int, LPAElement> degree_components(const LPAElement& x);

// Membership in the diagonal subalgebra: degree zero and some uniform
// expansion consisting only of monomials with alpha = beta.
bool in_diagonal(const LPAElement& x);

// Membership in the positive cone: every degree component's minimal uniform
// expansion has all coefficients >= 0. Extensions of distinct level-N basis
// monomials stay distinct at level N+1, so negative coefficients never
// cancel at higher levels and the minimal level decides.
bool pc_member(const LPAElement& x);

std::string element_to_string(const LPAElement& x);

}  // namespace bflift
