#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace trialg {

// Exact arithmetic everywhere; entries grow under elimination, so no
// machine-word fast path.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(Integer a, Integer b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Integer r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Floor division (rounds toward -inf); the % twin satisfies a = q*b + r, 0 <= r < |b|.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer mod_floor(const Integer& a, const Integer& b) {
    Integer r = a % b;
    if (r < 0) r += abs_int(b);
    return r;
}

// Scales a rational vector to a primitive integer vector with the first
// nonzero entry positive. All-zero input stays all-zero.
inline std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
    Integer den_lcm = 1;
    for (const auto& q : v) den_lcm = lcm_int(den_lcm, denominator(q));
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& q : v) {
        Integer e = numerator(q) * (den_lcm / denominator(q));
        g = gcd_int(g, e);
        out.push_back(e);
    }
    if (g == 0) return out;
    bool flip = false;
    for (const auto& e : out) {
        if (e != 0) {
            flip = (e < 0);
            break;
        }
    }
    for (auto& e : out) {
        e /= g;
        if (flip) e = -e;
    }
    return out;
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace trialg
