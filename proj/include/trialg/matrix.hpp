#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "trialg/errors.hpp"
#include "trialg/numeric.hpp"

namespace trialg {

/// Dense integer matrix with exact arbitrary-precision entries, row-major.
class IntegerMatrix {
public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Integer(0)) {
        if (rows <= 0 || cols <= 0) throw Error("IntegerMatrix: dimensions must be positive");
    }

    static IntegerMatrix identity(int n) {
        IntegerMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Integer& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Integer& at(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    IntegerMatrix transposed() const {
        IntegerMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<Integer> column(int j) const {
        std::vector<Integer> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Integer> apply(const std::vector<Integer>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw LengthMismatchError("matrix-vector size mismatch");
        std::vector<Integer> out(rows_, Integer(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        if (a.cols_ != b.rows_) throw LengthMismatchError("matrix product shape mismatch");
        IntegerMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (int j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_;
    int cols_;
    std::vector<Integer> data_;
};

/// U*A*V = D with U, V unimodular and D in Smith form (diagonal,
/// nonnegative, divisibility chain).
struct SmithDecomposition {
    IntegerMatrix U;
    IntegerMatrix V;
    IntegerMatrix D;
    std::vector<Integer> diag;  // min(rows, cols) entries, zeros trailing
};

namespace detail {

inline void swap_rows(IntegerMatrix& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void swap_cols(IntegerMatrix& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[dst] += q * row[src]
inline void add_row(IntegerMatrix& m, int dst, int src, const Integer& q) {
    if (q == 0) return;
    for (int j = 0; j < m.cols(); ++j) m.at(dst, j) += q * m.at(src, j);
}

inline void add_col(IntegerMatrix& m, int dst, int src, const Integer& q) {
    if (q == 0) return;
    for (int i = 0; i < m.rows(); ++i) m.at(i, dst) += q * m.at(i, src);
}

inline void negate_row(IntegerMatrix& m, int r) {
    for (int j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace detail

/// Smith normal form. Pivot rule: nonzero entry of least absolute value in
/// the working submatrix, ties broken by lowest (row, col); this makes U, V,
/// D a deterministic function of A.
inline SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
    const int m = a.rows();
    const int n = a.cols();
    SmithDecomposition s{IntegerMatrix::identity(m), IntegerMatrix::identity(n), a, {}};
    IntegerMatrix& d = s.D;
    IntegerMatrix& u = s.U;
    IntegerMatrix& v = s.V;

    const int steps = std::min(m, n);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            int pr = -1, pc = -1;
            Integer best = 0;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    const Integer& e = d.at(i, j);
                    if (e == 0) continue;
                    Integer ae = abs_int(e);
                    if (pr < 0 || ae < best) {
                        best = ae;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr < 0) {
                t = steps;  // remaining submatrix zero
                break;
            }
            detail::swap_rows(d, t, pr);
            detail::swap_rows(u, t, pr);
            detail::swap_cols(d, t, pc);
            detail::swap_cols(v, t, pc);

            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Integer q = d.at(i, t) / d.at(t, t);  // truncating: leaves |rem| < |pivot|
                detail::add_row(d, i, t, -q);
                detail::add_row(u, i, t, -q);
                if (d.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Integer q = d.at(t, j) / d.at(t, t);
                detail::add_col(d, j, t, -q);
                detail::add_col(v, j, t, -q);
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility fix-up: fold a non-divisible entry into row t
            int br = -1;
            for (int i = t + 1; i < m && br < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        br = i;
                        break;
                    }
            if (br < 0) break;
            detail::add_row(d, t, br, Integer(1));
            detail::add_row(u, t, br, Integer(1));
        }
        if (t >= steps) break;
        if (d.at(t, t) < 0) {
            detail::negate_row(d, t);
            detail::negate_row(u, t);
        }
    }

    s.diag.resize(steps);
    for (int t = 0; t < steps; ++t) s.diag[t] = d.at(t, t);
    return s;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntegerMatrix& a) {
    if (a.rows() != a.cols()) throw LengthMismatchError("determinant needs a square matrix");
    const int n = a.rows();
    IntegerMatrix w = a;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    r = i;
                    break;
                }
            if (r < 0) return 0;
            detail::swap_rows(w, k, r);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Integer(-w.at(n - 1, n - 1));
}

/// Inverse of a matrix with determinant +-1; entries stay integral.
inline IntegerMatrix inverse_unimodular(const IntegerMatrix& a) {
    if (a.rows() != a.cols()) throw LengthMismatchError("inverse needs a square matrix");
    const int n = a.rows();
    // Gauss-Jordan over rationals, then read back integer entries.
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i][j] = Rational(a.at(i, j));
        w[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (w[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) throw Error("inverse_unimodular: singular matrix");
        std::swap(w[c], w[p]);
        Rational inv = Rational(1) / w[c][c];
        for (int j = 0; j < 2 * n; ++j) w[c][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || w[i][c] == 0) continue;
            Rational f = w[i][c];
            for (int j = 0; j < 2 * n; ++j) w[i][j] -= f * w[c][j];
        }
    }
    IntegerMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational& q = w[i][n + j];
            if (denominator(q) != 1)
                throw Error("inverse_unimodular: matrix is not unimodular");
            out.at(i, j) = numerator(q);
        }
    return out;
}

/// Basis of the integer kernel {v : A*v = 0}, via SNF (columns of V at the
/// zero-diagonal positions). Empty when A has full column rank.
inline std::vector<std::vector<Integer>> kernel_basis(const IntegerMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::vector<std::vector<Integer>> basis;
    const int n = a.cols();
    const int steps = std::min(a.rows(), n);
    for (int j = 0; j < n; ++j) {
        bool free_col = (j >= steps) || (s.diag[j] == 0);
        if (free_col) basis.push_back(s.V.column(j));
    }
    return basis;
}

}  // namespace trialg
