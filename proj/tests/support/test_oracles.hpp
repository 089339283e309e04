#pragma once

// Test-side oracles, independent of the library's computation paths.

#include <algorithm>
#include <optional>
#include <vector>

#include "trialg/matrix.hpp"
#include "trialg/numeric.hpp"

namespace oracles {

using trialg::Integer;
using trialg::IntegerMatrix;

// Determinant by cofactor expansion along the first row.
inline Integer det_cofactor(const IntegerMatrix& a) {
    const int n = a.rows();
    if (n == 1) return a.at(0, 0);
    Integer acc = 0;
    for (int j = 0; j < n; ++j) {
        if (a.at(0, j) == 0) continue;
        IntegerMatrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = a.at(i, c);
            }
        }
        Integer term = a.at(0, j) * det_cofactor(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

namespace detail {

inline void subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

}  // namespace detail

// gcd of all k x k minors; 0 if none is nonzero.
inline Integer minor_gcd(const IntegerMatrix& a, int k) {
    std::vector<std::vector<int>> rsel, csel;
    detail::subsets(a.rows(), k, rsel);
    detail::subsets(a.cols(), k, csel);
    Integer g = 0;
    for (const auto& rs : rsel)
        for (const auto& cs : csel) {
            IntegerMatrix sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub.at(i, j) = a.at(rs[i], cs[j]);
            g = trialg::gcd_int(g, det_cofactor(sub));
        }
    return g;
}

// Invariant factors d_1 | d_2 | ... via quotients of minor gcds; this is the
// classical characterization and does not touch the elimination code.
inline std::vector<Integer> invariant_factors_by_minors(const IntegerMatrix& a) {
    const int steps = std::min(a.rows(), a.cols());
    std::vector<Integer> out(steps, Integer(0));
    Integer prev = 1;
    for (int k = 1; k <= steps; ++k) {
        Integer g = minor_gcd(a, k);
        if (g == 0) break;  // all larger minors vanish as well
        out[k - 1] = g / prev;
        prev = g;
    }
    return out;
}

// Exact solve of A*x = v for a full-column-rank A with exactly two columns,
// over the integers. Returns nullopt when no integer solution exists.
inline std::optional<std::pair<Integer, Integer>> solve_two_columns(const IntegerMatrix& a,
                                                                    const std::vector<Integer>& v) {
    // find two rows with a nonzero 2x2 determinant
    const int n = a.rows();
    for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2) {
            Integer det = a.at(r1, 0) * a.at(r2, 1) - a.at(r1, 1) * a.at(r2, 0);
            if (det == 0) continue;
            Integer xn = v[r1] * a.at(r2, 1) - v[r2] * a.at(r1, 1);
            Integer yn = a.at(r1, 0) * v[r2] - a.at(r2, 0) * v[r1];
            if (xn % det != 0 || yn % det != 0) return std::nullopt;
            Integer x = xn / det, y = yn / det;
            for (int i = 0; i < n; ++i)
                if (a.at(i, 0) * x + a.at(i, 1) * y != v[i]) return std::nullopt;
            return std::make_pair(x, y);
        }
    return std::nullopt;
}

}  // namespace oracles
