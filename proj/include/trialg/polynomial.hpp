#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "trialg/errors.hpp"
#include "trialg/numeric.hpp"

namespace trialg {

/// Power product of the generators; exponents are nonnegative and indexed by
/// flat generator index.
class Monomial {
public:
    explicit Monomial(int nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e_(std::move(exps)) {}

    static Monomial unit(int nvars, int var, int power = 1) {
        Monomial m(nvars);
        m.e_[var] = power;
        return m;
    }

    int nvars() const { return static_cast<int>(e_.size()); }
    int operator[](int k) const { return e_[k]; }
    const std::vector<int>& exponents() const { return e_; }

    int total_degree() const {
        int d = 0;
        for (int x : e_) d += x;
        return d;
    }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
    }

    bool divides(const Monomial& other) const {
        for (std::size_t k = 0; k < e_.size(); ++k)
            if (e_[k] > other.e_[k]) return false;
        return true;
    }

    Monomial times(const Monomial& other) const {
        Monomial m = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] += other.e_[k];
        return m;
    }

    /// Componentwise difference; caller guarantees divisibility.
    Monomial divided_by(const Monomial& other) const {
        Monomial m = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] -= other.e_[k];
        return m;
    }

    Monomial gcd(const Monomial& other) const {
        Monomial m = *this;
        for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = std::min(m.e_[k], other.e_[k]);
        return m;
    }

    /// Lexicographic comparison, variable 0 most significant.
    static int lex_compare(const Monomial& a, const Monomial& b) {
        for (std::size_t k = 0; k < a.e_.size(); ++k) {
            if (a.e_[k] != b.e_[k]) return a.e_[k] < b.e_[k] ? -1 : 1;
        }
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

private:
    std::vector<int> e_;
};

struct LexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::lex_compare(a, b) > 0;
    }
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms
/// are kept in descending lex order; zero coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, LexGreater>;

    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Monomial(nvars), c);
        return p;
    }

    static Polynomial from_monomial(const Monomial& m, const Rational& c = 1) {
        Polynomial p(m.nvars());
        p.add_term(m, c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    bool is_monomial() const { return terms_.size() == 1; }

    const std::pair<const Monomial, Rational>& leading_term() const {
        if (terms_.empty()) throw Error("leading term of the zero polynomial");
        return *terms_.begin();
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        check_universe(other);
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other) {
        check_universe(other);
        for (const auto& [m, c] : other.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_universe(b);
        Polynomial out(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
        return out;
    }

    Polynomial scaled(const Rational& c) const {
        Polynomial out(nvars_);
        if (c == 0) return out;
        for (const auto& [m, coef] : terms_) out.terms_.emplace(m, coef * c);
        return out;
    }

    Polynomial operator-() const { return scaled(Rational(-1)); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial partial_derivative(int var) const {
        Polynomial out(nvars_);
        for (const auto& [m, c] : terms_) {
            int e = m[var];
            if (e == 0) continue;
            std::vector<int> exps = m.exponents();
            exps[var] -= 1;
            out.add_term(Monomial(std::move(exps)), c * e);
        }
        return out;
    }

    /// Componentwise minimum over the support; identity monomial for 0.
    Monomial monomial_gcd() const {
        if (terms_.empty()) return Monomial(nvars_);
        Monomial g = terms_.begin()->first;
        for (const auto& [m, c] : terms_) g = g.gcd(m);
        return g;
    }

    /// Exact division by a monomial; every term must be divisible.
    Polynomial divided_by(const Monomial& m) const {
        Polynomial out(nvars_);
        for (const auto& [mono, c] : terms_) {
            if (!m.divides(mono)) throw Error("polynomial is not divisible by the monomial");
            out.terms_.emplace(mono.divided_by(m), c);
        }
        return out;
    }

    /// True when other == r * this for the returned rational r (this != 0).
    bool proportional_to(const Polynomial& other, Rational& ratio) const {
        if (is_zero()) return false;
        if (other.is_zero()) {
            ratio = 0;
            return true;
        }
        if (terms_.size() != other.terms_.size()) return false;
        ratio = other.leading_term().second / leading_term().second;
        auto it = terms_.begin();
        auto jt = other.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt) {
            if (it->first != jt->first || it->second * ratio != jt->second) return false;
        }
        return true;
    }

private:
    void check_universe(const Polynomial& other) const {
        if (nvars_ != other.nvars_)
            throw LengthMismatchError("polynomials over different variable sets");
    }

    int nvars_;
    TermMap terms_;
};

inline Polynomial power(const Polynomial& base, int exp) {
    Polynomial out = Polynomial::constant(base.nvars(), 1);
    for (int k = 0; k < exp; ++k) out = out * base;
    return out;
}

}  // namespace trialg
