#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "trialg/derivation.hpp"
#include "trialg/grading_basis.hpp"

namespace trialg {

struct Settings {
    int nilpotency_cap = 50;
    int oracle_cap = 6;
    int oracle_samples = 20;
    unsigned seed = 20240601;
};

struct SpecFile {
    TrinomialData trinomial;
    std::optional<std::vector<std::vector<Integer>>> explicit_grading;
    Settings settings;
};

namespace detail {

class Cursor {
public:
    explicit Cursor(const std::string& text, int line = 1) : text_(text), line_(line) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }

    char take() {
        char c = peek();
        ++pos_;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
            take();
    }

    void expect(char c, const std::string& what) {
        if (peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
        take();
    }

    bool try_take(char c) {
        if (peek() != c) return false;
        take();
        return true;
    }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, line_, col_); }

    long long integer() {
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = (take() == '-');
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (take() - '0');
        return neg ? -v : v;
    }

    int line() const { return line_; }
    int column() const { return col_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_;
    int col_ = 1;
};

// factor := 'T(' i ',' j ')' ['^' positive-int]
inline void parse_factor(Cursor& cur, const TrinomialData& t, std::vector<int>& exps) {
    cur.expect('T', "to open a generator");
    cur.expect('(', "after T");
    cur.skip_ws();
    int i = static_cast<int>(cur.integer());
    cur.skip_ws();
    cur.expect(',', "between generator indices");
    cur.skip_ws();
    int j = static_cast<int>(cur.integer());
    cur.skip_ws();
    cur.expect(')', "after generator indices");
    int pow = 1;
    if (cur.try_take('^')) {
        cur.skip_ws();
        pow = static_cast<int>(cur.integer());
        if (pow < 1) cur.fail("exponent must be positive");
    }
    exps[t.flat_index(i, j)] += pow;  // throws IndexOutOfRangeError for bad (i, j)
}

}  // namespace detail

/// poly := term (('+'|'-') term)* ; term := [sign] [rational '*'] factor
/// ('*' factor)* ; a bare rational is accepted as a constant term; factor :=
/// 'T(' i ',' j ')' ['^' positive-int] ; whitespace insignificant.
inline Polynomial parse_poly_at(detail::Cursor& cur, const TrinomialData& t) {
    Polynomial out(t.n());
    auto at_end = [&]() { return cur.done(); };
    auto skip_inline_ws = [&]() { cur.skip_ws(); };

    skip_inline_ws();
    if (at_end()) cur.fail("empty polynomial");
    Rational sign = 1;

    for (;;) {
        skip_inline_ws();
        // the term may carry its own sign on top of the separator's
        if (cur.try_take('-')) {
            sign = -sign;
            skip_inline_ws();
        } else if (cur.try_take('+')) {
            skip_inline_ws();
        }
        Rational coeff = sign;
        bool have_factor = false;
        std::vector<int> exps(t.n(), 0);
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            Integer num(cur.integer());
            Integer den = 1;
            if (cur.try_take('/')) {
                cur.skip_ws();
                den = Integer(cur.integer());
                if (den <= 0) cur.fail("denominator must be positive");
            }
            coeff *= Rational(num, den);
            skip_inline_ws();
            if (cur.try_take('*')) {
                skip_inline_ws();
                detail::parse_factor(cur, t, exps);
                have_factor = true;
            }
        } else {
            detail::parse_factor(cur, t, exps);
            have_factor = true;
        }
        if (have_factor) {
            for (;;) {
                skip_inline_ws();
                if (!cur.try_take('*')) break;
                skip_inline_ws();
                detail::parse_factor(cur, t, exps);
            }
        }
        out.add_term(Monomial(std::move(exps)), coeff);

        skip_inline_ws();
        if (at_end()) break;
        if (cur.try_take('+'))
            sign = 1;
        else if (cur.try_take('-'))
            sign = -1;
        else
            cur.fail("trailing junk after polynomial");
    }
    return out;
}

inline Polynomial parse_poly(const std::string& text, const TrinomialData& t) {
    detail::Cursor cur(text);
    return parse_poly_at(cur, t);
}

/// Spec files are line based:  l0: / l1: / l2: with the exponent tuples,
/// then optional `grading:` lines (one vector per generator, in T(0,1),
/// T(0,2), ... order) and optional settings keys. '#' starts a comment.
inline SpecFile parse_spec(const std::string& text) {
    std::optional<std::vector<int>> l[3];
    std::vector<std::vector<Integer>> grading;
    Settings settings;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw SyntaxError("expected 'key: values'", lineno, static_cast<int>(first) + 1);
        std::string key = line.substr(first, colon - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::istringstream vals(line.substr(colon + 1));

        auto parse_int_list = [&]() {
            std::vector<long long> out;
            long long v;
            while (vals >> v) out.push_back(v);
            if (!vals.eof()) throw SyntaxError("trailing junk after values", lineno, 1);
            return out;
        };
        auto parse_single = [&](long long lo, long long hi) {
            auto list = parse_int_list();
            if (list.size() != 1 || list[0] < lo || list[0] > hi)
                throw SemanticError("bad value for '" + key + "' on line " +
                                    std::to_string(lineno));
            return list[0];
        };

        if (key == "l0" || key == "l1" || key == "l2") {
            int idx = key[1] - '0';
            if (l[idx]) throw SemanticError("duplicate '" + key + "' line");
            auto list = parse_int_list();
            if (list.empty()) throw SemanticError("'" + key + "' needs at least one exponent");
            std::vector<int> exps;
            for (long long v : list) {
                if (v < 1)
                    throw SemanticError("exponents must be >= 1 (line " + std::to_string(lineno) +
                                        ")");
                exps.push_back(static_cast<int>(v));
            }
            l[idx] = std::move(exps);
        } else if (key == "grading") {
            auto list = parse_int_list();
            if (list.empty()) throw SemanticError("empty grading vector");
            grading.emplace_back(list.begin(), list.end());
        } else if (key == "nilpotency_cap") {
            settings.nilpotency_cap = static_cast<int>(parse_single(1, 1'000'000));
        } else if (key == "oracle_cap") {
            settings.oracle_cap = static_cast<int>(parse_single(0, 1'000'000));
        } else if (key == "oracle_samples") {
            settings.oracle_samples = static_cast<int>(parse_single(0, 1'000'000));
        } else if (key == "seed") {
            settings.seed = static_cast<unsigned>(parse_single(0, 0xffffffffLL));
        } else {
            throw SyntaxError("unknown key '" + key + "'", lineno, static_cast<int>(first) + 1);
        }
    }
    if (!l[0] || !l[1] || !l[2]) throw SemanticError("spec needs l0:, l1: and l2: lines");

    SpecFile spec{TrinomialData(*l[0], *l[1], *l[2]), std::nullopt, settings};
    if (!grading.empty()) {
        if (static_cast<int>(grading.size()) != spec.trinomial.n())
            throw SemanticError("expected one grading vector per generator");
        for (const auto& v : grading)
            if (v.size() != grading[0].size())
                throw SemanticError("grading vectors of unequal dimension");
        // throws SemanticError unless the vectors present the fine grading faithfully
        validate_explicit_grading(fine_grading(spec.trinomial), grading);
        spec.explicit_grading = std::move(grading);
    }
    return spec;
}

/// Derivation files: one `T(i,j): polynomial` line per generator with a
/// nonzero image; omitted generators map to zero.
inline Derivation parse_derivation(const std::string& text, const TrinomialData& t) {
    std::vector<Polynomial> images(t.n(), Polynomial(t.n()));
    std::vector<bool> seen(t.n(), false);

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw SyntaxError("expected 'T(i,j): polynomial'", lineno, 1);

        detail::Cursor head(line, lineno);
        head.skip_ws();
        std::vector<int> probe(t.n(), 0);
        detail::parse_factor(head, t, probe);
        int flat = -1;
        for (int k = 0; k < t.n(); ++k)
            if (probe[k] == 1)
                flat = k;
            else if (probe[k] != 0)
                throw SyntaxError("generator on the left must be plain", lineno, 1);
        head.skip_ws();
        head.expect(':', "after the generator");
        if (seen[flat])
            throw SemanticError("duplicate image for one generator (line " +
                                std::to_string(lineno) + ")");
        seen[flat] = true;

        std::string rhs = line.substr(colon + 1);
        detail::Cursor cur(rhs, lineno);
        images[flat] = parse_poly_at(cur, t);
    }
    return Derivation::from_images(t, std::move(images));
}

inline std::string generator_name(const TrinomialData& t, int flat) {
    auto [i, j] = t.block_position(flat);
    return "T(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

inline std::string to_string(const Monomial& m, const TrinomialData& t) {
    std::string out;
    for (int k = 0; k < m.nvars(); ++k) {
        if (m[k] == 0) continue;
        if (!out.empty()) out += " * ";
        out += generator_name(t, k);
        if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
    return out.empty() ? "1" : out;
}

/// Canonical text form; parse_poly inverts it exactly.
inline std::string to_string(const Polynomial& p, const TrinomialData& t) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        if (!out.empty()) out += " + ";
        if (m.is_one()) {
            out += to_string(c);
        } else if (c == 1) {
            out += to_string(m, t);
        } else if (c == -1) {
            out += "-" + to_string(m, t);
        } else {
            out += to_string(c) + " * " + to_string(m, t);
        }
    }
    return out;
}

}  // namespace trialg
