#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/test_oracles.hpp"
#include "trialg/matrix.hpp"

using namespace trialg;

namespace {

IntegerMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    IntegerMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

bool is_smith_shape(const IntegerMatrix& d) {
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (i != j && d.at(i, j) != 0) return false;
    const int steps = std::min(d.rows(), d.cols());
    for (int k = 0; k < steps; ++k) {
        if (d.at(k, k) < 0) return false;
        if (k + 1 < steps) {
            const Integer& a = d.at(k, k);
            const Integer& b = d.at(k + 1, k + 1);
            if (a == 0 && b != 0) return false;
            if (a != 0 && b % a != 0) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("smith normal form of the identity") {
    auto s = smith_normal_form(IntegerMatrix::identity(2));
    REQUIRE(s.diag == std::vector<Integer>{1, 1});
    REQUIRE(s.D == IntegerMatrix::identity(2));
}

TEST_CASE("smith normal form of the quadric presentation") {
    // rows of L* for T01*T02 + T11*T12 + T21^2
    auto lt = from_rows({{-1, -1}, {-1, -1}, {1, 0}, {1, 0}, {0, 2}});
    auto s = smith_normal_form(lt);
    REQUIRE(s.diag == std::vector<Integer>{1, 1});
}

TEST_CASE("smith normal form of x^2+y^2+z^2 presentation") {
    auto lt = from_rows({{-2, -2}, {2, 0}, {0, 2}});
    auto s = smith_normal_form(lt);
    REQUIRE(s.diag == std::vector<Integer>{2, 2});
    // independent route: gcds of entries and of 2x2 minors
    REQUIRE(oracles::invariant_factors_by_minors(lt) == std::vector<Integer>{2, 2});
}

TEST_CASE("smith property suite on random matrices") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int iter = 0; iter < 500; ++iter) {
        const int m = dim(rng), n = dim(rng);
        IntegerMatrix a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = entry(rng);
        auto s = smith_normal_form(a);

        REQUIRE(s.U * a * s.V == s.D);
        REQUIRE(is_smith_shape(s.D));
        REQUIRE(abs_int(oracles::det_cofactor(s.U)) == 1);
        REQUIRE(abs_int(oracles::det_cofactor(s.V)) == 1);

        // deterministic: same input, same decomposition
        auto s2 = smith_normal_form(a);
        REQUIRE(s2.U == s.U);
        REQUIRE(s2.V == s.V);
        REQUIRE(s2.D == s.D);

        // invariant factors agree with the minor-gcd characterization
        if (m <= 4 && n <= 4) {
            REQUIRE(s.diag == oracles::invariant_factors_by_minors(a));
        }
    }
}

TEST_CASE("inverse of unimodular factors") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 5), entry(-6, 6);
    for (int iter = 0; iter < 50; ++iter) {
        const int m = dim(rng), n = dim(rng);
        IntegerMatrix a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = entry(rng);
        auto s = smith_normal_form(a);
        REQUIRE(inverse_unimodular(s.U) * s.U == IntegerMatrix::identity(m));
        REQUIRE(s.V * inverse_unimodular(s.V) == IntegerMatrix::identity(n));
    }
}

TEST_CASE("kernel basis") {
    // columns (1,1,0) and (2,2,0) are dependent: kernel is spanned by (2,-1)
    auto a = from_rows({{1, 2}, {1, 2}, {0, 0}});
    auto basis = kernel_basis(a);
    REQUIRE(basis.size() == 1);
    REQUIRE(a.apply(basis[0]) == std::vector<Integer>(3, Integer(0)));
    REQUIRE(!(basis[0][0] == 0 && basis[0][1] == 0));

    auto full = from_rows({{1, 0}, {0, 1}, {3, 5}});
    REQUIRE(kernel_basis(full).empty());
}

TEST_CASE("determinant by fraction-free elimination") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(1, 5), entry(-7, 7);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = dim(rng);
        IntegerMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = entry(rng);
        REQUIRE(determinant(a) == oracles::det_cofactor(a));
    }
}
