#pragma once

#include <optional>
#include <vector>

#include "trialg/abelian.hpp"
#include "trialg/polynomial.hpp"
#include "trialg/trinomial.hpp"

namespace trialg {

/// The 2 x n matrix (-l_0 | l_1 | 0 ; -l_0 | 0 | l_2); its transpose
/// presents the grading group.
inline IntegerMatrix build_matrix_L(const TrinomialData& t) {
    IntegerMatrix L(2, t.n());
    int col = 0;
    for (int j = 1; j <= t.block_size(0); ++j, ++col) {
        L.at(0, col) = -t.exponent(0, j);
        L.at(1, col) = -t.exponent(0, j);
    }
    for (int j = 1; j <= t.block_size(1); ++j, ++col) L.at(0, col) = t.exponent(1, j);
    for (int j = 1; j <= t.block_size(2); ++j, ++col) L.at(1, col) = t.exponent(2, j);
    return L;
}

inline IntegerMatrix presentation_matrix(const TrinomialData& t) {
    return build_matrix_L(t).transposed();
}

/// T_i^{l_i} as a monomial.
inline Monomial block_monomial(const TrinomialData& t, int i) {
    std::vector<int> e(t.n(), 0);
    for (int j = 1; j <= t.block_size(i); ++j) e[t.flat_index(i, j)] = t.exponent(i, j);
    return Monomial(std::move(e));
}

/// g = T_0^{l_0} + T_1^{l_1} + T_2^{l_2}.
inline Polynomial trinomial_polynomial(const TrinomialData& t) {
    Polynomial g(t.n());
    for (int i = 0; i < 3; ++i) g.add_term(block_monomial(t, i), 1);
    return g;
}

/// Grading by K = Z^n / Im L* with deg T_ij the image of e_ij. The three
/// weighted block sums coincide, so g itself is homogeneous of g_degree.
struct FineGrading {
    GradingGroup group;
    std::vector<GroupElement> generator_degrees;
    GroupElement g_degree;
};

inline GroupElement monomial_degree(const FineGrading& fg, const Monomial& m) {
    GroupElement acc = fg.group.zero();
    for (int k = 0; k < m.nvars(); ++k) {
        if (m[k] == 0) continue;
        acc = fg.group.add(acc, fg.group.scale(fg.generator_degrees[k], m[k]));
    }
    return acc;
}

inline FineGrading fine_grading(const TrinomialData& t) {
    FineGrading fg;
    fg.group = quotient_group(presentation_matrix(t));
    const int n = t.n();
    fg.generator_degrees.reserve(n);
    for (int k = 0; k < n; ++k) {
        std::vector<Integer> e(n, Integer(0));
        e[k] = 1;
        fg.generator_degrees.push_back(fg.group.project(e));
    }
    fg.g_degree = monomial_degree(fg, block_monomial(t, 0));
    for (int i = 1; i < 3; ++i)
        if (monomial_degree(fg, block_monomial(t, i)) != fg.g_degree)
            throw Error("fine grading: block degrees disagree");
    return fg;
}

/// Remainder of division by g under lex order (T(0,1) > T(0,2) > ... >
/// T(2,n_2)), where the leading monomial of g is T_0^{l_0}. A single
/// polynomial generates its ideal as a Groebner basis, so the remainder is
/// the unique canonical representative of p + (g).
inline Polynomial normal_form(const Polynomial& p, const TrinomialData& t) {
    const Monomial lead = block_monomial(t, 0);
    Polynomial tail(t.n());  // -T_1^{l_1} - T_2^{l_2}
    tail.add_term(block_monomial(t, 1), -1);
    tail.add_term(block_monomial(t, 2), -1);

    Polynomial out(t.n());
    Polynomial work = p;
    while (!work.is_zero()) {
        const auto& [m, c] = work.leading_term();
        if (lead.divides(m)) {
            // rewrite c*T^m = c*T^(m-l_0) * T_0^{l_0} == c*T^(m-l_0) * tail
            Polynomial replacement = tail.scaled(c);
            Monomial q = m.divided_by(lead);
            Polynomial shifted(t.n());
            for (const auto& [tm, tc] : replacement.terms()) shifted.add_term(q.times(tm), tc);
            work.add_term(m, -c);
            work += shifted;
        } else {
            out.add_term(m, c);
            work.add_term(m, -c);
        }
    }
    return out;
}

/// True when the two representatives are congruent modulo (g).
inline bool same_class(const Polynomial& a, const Polynomial& b, const TrinomialData& t) {
    return normal_form(a - b, t).is_zero();
}

struct Homogeneity {
    enum class Kind { Zero, Homogeneous, NotHomogeneous } kind;
    GroupElement degree;  // meaningful only when kind == Homogeneous

    bool is_homogeneous_of(const GroupElement& w) const {
        return kind == Kind::Zero || (kind == Kind::Homogeneous && degree == w);
    }
};

/// Common fine degree of all terms. The zero polynomial is reported with a
/// distinguished marker (it lies in every homogeneous component).
inline Homogeneity homogeneous_degree(const Polynomial& p, const FineGrading& fg) {
    if (p.is_zero()) return {Homogeneity::Kind::Zero, fg.group.zero()};
    bool first = true;
    GroupElement deg = fg.group.zero();
    for (const auto& [m, c] : p.terms()) {
        GroupElement d = monomial_degree(fg, m);
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return {Homogeneity::Kind::NotHomogeneous, fg.group.zero()};
        }
    }
    return {Homogeneity::Kind::Homogeneous, deg};
}

struct BivariateTerm {
    int a;  // power of T_0^{l_0}
    int b;  // power of T_1^{l_1}
    Rational coeff;
};

struct HomogeneousFactorization {
    Monomial monomial;
    std::vector<BivariateTerm> factor_terms;  // F(T_0^{l_0}, T_1^{l_1})
};

/// Splits the given representative as monomial * F(T_0^{l_0}, T_1^{l_1})
/// when it literally has that shape, taking the monomial part maximal (the
/// monomial gcd of the support). The class of p may admit such a form via a
/// different representative; this checks only the one supplied.
inline std::optional<HomogeneousFactorization> decompose_homogeneous(const Polynomial& p,
                                                                     const TrinomialData& t) {
    if (p.is_zero()) return std::nullopt;
    HomogeneousFactorization out{p.monomial_gcd(), {}};
    Polynomial f = p.divided_by(out.monomial);
    for (const auto& [m, c] : f.terms()) {
        // block 2 must be untouched; blocks 0 and 1 must be multiples of l_0, l_1
        for (int j = 1; j <= t.block_size(2); ++j)
            if (m[t.flat_index(2, j)] != 0) return std::nullopt;
        int a = -1, b = -1;
        for (int j = 1; j <= t.block_size(0); ++j) {
            int e = m[t.flat_index(0, j)];
            int l = t.exponent(0, j);
            if (e % l != 0) return std::nullopt;
            int q = e / l;
            if (a < 0)
                a = q;
            else if (a != q)
                return std::nullopt;
        }
        for (int j = 1; j <= t.block_size(1); ++j) {
            int e = m[t.flat_index(1, j)];
            int l = t.exponent(1, j);
            if (e % l != 0) return std::nullopt;
            int q = e / l;
            if (b < 0)
                b = q;
            else if (b != q)
                return std::nullopt;
        }
        out.factor_terms.push_back({a, b, c});
    }
    return out;
}

/// True when the assignment of one degree vector per generator kills every
/// relation in Im L*, i.e. factors through the fine grading.
inline bool validate_coarsening(const FineGrading& fg,
                                const std::vector<std::vector<Integer>>& assigned) {
    const int n = fg.group.ambient_rank();
    if (static_cast<int>(assigned.size()) != n)
        throw LengthMismatchError("one assigned degree per generator required");
    const std::size_t dim = assigned.empty() ? 0 : assigned[0].size();
    for (const auto& v : assigned)
        if (v.size() != dim) throw LengthMismatchError("assigned degrees of unequal dimension");
    const IntegerMatrix& pres = fg.group.presentation();
    for (int c = 0; c < pres.cols(); ++c) {
        std::vector<Integer> acc(dim, Integer(0));
        for (int k = 0; k < n; ++k)
            for (std::size_t d = 0; d < dim; ++d) acc[d] += pres.at(k, c) * assigned[k][d];
        for (const auto& x : acc)
            if (x != 0) return false;
    }
    return true;
}

}  // namespace trialg
