#pragma once

#include <array>
#include <numeric>
#include <utility>
#include <vector>

#include "trialg/errors.hpp"

namespace trialg {

/// The combinatorial data of a trinomial: block sizes (n_0, n_1, n_2) and
/// per-block exponent tuples l_i with every l_ij >= 1. Generators are
/// addressed as T(i, j) with i in {0,1,2} and 1 <= j <= n_i, or by flat
/// index in block order.
class TrinomialData {
public:
    TrinomialData(std::vector<int> l0, std::vector<int> l1, std::vector<int> l2)
        : exponents_{std::move(l0), std::move(l1), std::move(l2)} {
        for (int i = 0; i < 3; ++i) {
            if (exponents_[i].empty())
                throw SemanticError("trinomial block " + std::to_string(i) + " is empty");
            for (int l : exponents_[i])
                if (l < 1) throw SemanticError("trinomial exponents must be >= 1");
        }
        offsets_ = {0, block_size(0), block_size(0) + block_size(1)};
    }

    int block_size(int i) const { return static_cast<int>(exponents_[i].size()); }
    int n() const { return block_size(0) + block_size(1) + block_size(2); }

    /// l_ij (j is 1-based, as in T(i,j)).
    int exponent(int i, int j) const { return exponents_[i][j - 1]; }
    const std::vector<int>& block_exponents(int i) const { return exponents_[i]; }

    int flat_index(int i, int j) const {
        if (i < 0 || i > 2 || j < 1 || j > block_size(i))
            throw IndexOutOfRangeError("no generator T(" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
        return offsets_[i] + j - 1;
    }

    std::pair<int, int> block_position(int flat) const {
        for (int i = 2; i >= 0; --i)
            if (flat >= offsets_[i]) return {i, flat - offsets_[i] + 1};
        throw IndexOutOfRangeError("bad flat generator index");
    }

    int block_of(int flat) const { return block_position(flat).first; }

    /// l laid out flat, in block order.
    std::vector<int> exponent_vector() const {
        std::vector<int> v;
        v.reserve(n());
        for (int i = 0; i < 3; ++i) v.insert(v.end(), exponents_[i].begin(), exponents_[i].end());
        return v;
    }

    int block_total_degree(int i) const {
        return std::accumulate(exponents_[i].begin(), exponents_[i].end(), 0);
    }

    friend bool operator==(const TrinomialData& a, const TrinomialData& b) {
        return a.exponents_ == b.exponents_;
    }

private:
    std::array<std::vector<int>, 3> exponents_;
    std::array<int, 3> offsets_{};
};

}  // namespace trialg
