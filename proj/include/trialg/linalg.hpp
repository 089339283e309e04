#pragma once

#include <vector>

#include "trialg/numeric.hpp"

namespace trialg {

/// Dense matrix over the exact rationals, for elimination work.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Rational(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

private:
    int rows_;
    int cols_;
    std::vector<Rational> data_;
};

/// In-place reduced row echelon form; returns the pivot columns. Pivoting is
/// deterministic: first nonzero entry in column order.
inline std::vector<int> rref(RationalMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m.at(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(RationalMatrix m) { return static_cast<int>(rref(m).size()); }

/// Basis of {x : M x = 0}, one vector per free column, in column order.
inline std::vector<std::vector<Rational>> nullspace(RationalMatrix m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(m.cols(), Rational(0));
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m.at(static_cast<int>(r), free);
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace trialg
