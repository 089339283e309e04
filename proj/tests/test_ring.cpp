#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/generators.hpp"
#include "trialg/ring.hpp"

using namespace trialg;

namespace {

const TrinomialData kQuadric({1, 1}, {1, 1}, {2});
const TrinomialData kAllOnes222({1, 1}, {1, 1}, {1, 1});

Polynomial var(const TrinomialData& t, int i, int j, int pow = 1) {
    return Polynomial::from_monomial(Monomial::unit(t.n(), t.flat_index(i, j), pow));
}

std::vector<std::vector<Integer>> int_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<Integer>> out;
    for (const auto& r : rows) out.emplace_back(r.begin(), r.end());
    return out;
}

}  // namespace

TEST_CASE("matrix L") {
    IntegerMatrix l1 = build_matrix_L(kAllOnes222);
    REQUIRE(l1.rows() == 2);
    REQUIRE(l1.cols() == 6);
    std::vector<int> row0{-1, -1, 1, 1, 0, 0}, row1{-1, -1, 0, 0, 1, 1};
    for (int j = 0; j < 6; ++j) {
        REQUIRE(l1.at(0, j) == row0[j]);
        REQUIRE(l1.at(1, j) == row1[j]);
    }

    TrinomialData small({1}, {1}, {2});
    IntegerMatrix l2 = build_matrix_L(small);
    std::vector<int> r0{-1, 1, 0}, r1{-1, 0, 2};
    for (int j = 0; j < 3; ++j) {
        REQUIRE(l2.at(0, j) == r0[j]);
        REQUIRE(l2.at(1, j) == r1[j]);
    }

    IntegerMatrix l3 = build_matrix_L(kQuadric);
    std::vector<int> q0{-1, -1, 1, 1, 0}, q1{-1, -1, 0, 0, 2};
    for (int j = 0; j < 5; ++j) {
        REQUIRE(l3.at(0, j) == q0[j]);
        REQUIRE(l3.at(1, j) == q1[j]);
    }
}

TEST_CASE("fine grading of x + y + z^k") {
    TrinomialData t({1}, {1}, {3});
    FineGrading fg = fine_grading(t);
    REQUIRE(fg.group.free_rank() == 1);
    REQUIRE(fg.group.torsion_invariants().empty());
    const auto& dx = fg.generator_degrees[0];
    const auto& dy = fg.generator_degrees[1];
    const auto& dz = fg.generator_degrees[2];
    REQUIRE(dx == dy);
    REQUIRE(dx == fg.group.scale(dz, 3));
    REQUIRE(abs_int(dz.free_part[0]) == 1);  // deg z generates, up to sign
}

TEST_CASE("fine grading of the quadric") {
    FineGrading fg = fine_grading(kQuadric);
    REQUIRE(fg.group.free_rank() == 3);
    REQUIRE(fg.group.torsion_invariants().empty());
    auto sum0 = fg.group.add(fg.generator_degrees[0], fg.generator_degrees[1]);
    auto sum1 = fg.group.add(fg.generator_degrees[2], fg.generator_degrees[3]);
    auto sum2 = fg.group.scale(fg.generator_degrees[4], 2);
    REQUIRE(sum0 == sum1);
    REQUIRE(sum1 == sum2);
    REQUIRE(sum0 == fg.g_degree);
}

TEST_CASE("fine grading of the all-ones (2,2,2) trinomial") {
    FineGrading fg = fine_grading(kAllOnes222);
    REQUIRE(fg.group.free_rank() == 4);
    REQUIRE(fg.group.torsion_invariants().empty());
}

TEST_CASE("polynomial arithmetic basics") {
    const int n = kQuadric.n();
    std::mt19937 rng(31);
    Polynomial a = gen::random_polynomial(rng, n);
    REQUIRE(a + Polynomial(n) == a);
    REQUIRE((a - a).is_zero());

    Polynomial s = var(kQuadric, 0, 1) + var(kQuadric, 0, 2);
    Polynomial d = var(kQuadric, 0, 1) - var(kQuadric, 0, 2);
    Polynomial expect = var(kQuadric, 0, 1, 2) - var(kQuadric, 0, 2, 2);
    REQUIRE(s * d == expect);
}

TEST_CASE("partial derivatives") {
    REQUIRE(var(kQuadric, 2, 1, 2).partial_derivative(kQuadric.flat_index(2, 1)) ==
            var(kQuadric, 2, 1).scaled(2));
    Polynomial xy = var(kQuadric, 0, 1) * var(kQuadric, 0, 2);
    REQUIRE(xy.partial_derivative(kQuadric.flat_index(0, 1)) == var(kQuadric, 0, 2));
    REQUIRE(Polynomial::constant(kQuadric.n(), 5).partial_derivative(0).is_zero());
}

TEST_CASE("normal form") {
    const auto& t = kQuadric;
    Polynomial g = trinomial_polynomial(t);
    REQUIRE(normal_form(g, t).is_zero());

    Polynomial x = Polynomial::from_monomial(block_monomial(t, 0));
    Polynomial y = Polynomial::from_monomial(block_monomial(t, 1));
    Polynomial z = Polynomial::from_monomial(block_monomial(t, 2));
    REQUIRE(normal_form(x, t) == -y - z);

    REQUIRE(normal_form(g * var(t, 0, 1) + var(t, 1, 1), t) == var(t, 1, 1));
}

TEST_CASE("normal form is idempotent and constant on classes") {
    std::mt19937 rng(41);
    for (int iter = 0; iter < 100; ++iter) {
        TrinomialData t = gen::random_trinomial(rng);
        Polynomial g = trinomial_polynomial(t);
        Polynomial p = gen::random_polynomial(rng, t.n());
        Polynomial q = gen::random_polynomial(rng, t.n());
        Polynomial r = normal_form(p, t);
        REQUIRE(normal_form(r, t) == r);
        REQUIRE(normal_form(p + q * g, t) == r);
    }
}

TEST_CASE("homogeneous degree") {
    const auto& t = kQuadric;
    FineGrading fg = fine_grading(t);
    Polynomial g = trinomial_polynomial(t);

    auto hg = homogeneous_degree(g, fg);
    REQUIRE(hg.kind == Homogeneity::Kind::Homogeneous);
    REQUIRE(hg.degree == fg.g_degree);

    auto mixed = homogeneous_degree(var(t, 0, 1) + var(t, 2, 1), fg);
    REQUIRE(mixed.kind == Homogeneity::Kind::NotHomogeneous);

    // beta_1 * T_0^{l_0} - beta_0 * T_1^{l_1} is homogeneous of the block degree
    Polynomial x = Polynomial::from_monomial(block_monomial(t, 0));
    Polynomial y = Polynomial::from_monomial(block_monomial(t, 1));
    auto hb = homogeneous_degree(x.scaled(Rational(2, 3)) - y.scaled(5), fg);
    REQUIRE(hb.kind == Homogeneity::Kind::Homogeneous);
    REQUIRE(hb.degree == fg.g_degree);

    auto hz = homogeneous_degree(Polynomial(t.n()), fg);
    REQUIRE(hz.kind == Homogeneity::Kind::Zero);
    REQUIRE(hz.is_homogeneous_of(fg.g_degree));
}

TEST_CASE("degrees multiply additively") {
    std::mt19937 rng(43);
    for (int iter = 0; iter < 100; ++iter) {
        TrinomialData t = gen::random_trinomial(rng);
        FineGrading fg = fine_grading(t);
        Polynomial a = Polynomial::from_monomial(gen::random_monomial(rng, t.n()),
                                                 gen::random_nonzero_rational(rng));
        Polynomial x = Polynomial::from_monomial(block_monomial(t, 0));
        Polynomial y = Polynomial::from_monomial(block_monomial(t, 1));
        Polynomial b = x - y.scaled(gen::random_nonzero_rational(rng));
        auto ha = homogeneous_degree(a, fg);
        auto hb = homogeneous_degree(b, fg);
        auto hab = homogeneous_degree(a * b, fg);
        REQUIRE(ha.kind == Homogeneity::Kind::Homogeneous);
        REQUIRE(hb.kind == Homogeneity::Kind::Homogeneous);
        REQUIRE(hab.kind == Homogeneity::Kind::Homogeneous);
        REQUIRE(hab.degree == fg.group.add(ha.degree, hb.degree));
    }
}

TEST_CASE("decompose homogeneous representative") {
    const auto& t = kQuadric;
    Polynomial x = Polynomial::from_monomial(block_monomial(t, 0));
    Polynomial y = Polynomial::from_monomial(block_monomial(t, 1));

    Polynomial p = var(t, 2, 1, 3) * (x - y.scaled(2));
    auto d = decompose_homogeneous(p, t);
    REQUIRE(d.has_value());
    REQUIRE(d->monomial == Monomial::unit(t.n(), t.flat_index(2, 1), 3));
    REQUIRE(d->factor_terms.size() == 2);

    Polynomial single = var(t, 0, 1, 2) * var(t, 1, 2);
    auto ds = decompose_homogeneous(single, t);
    REQUIRE(ds.has_value());
    REQUIRE(ds->monomial == single.leading_term().first);
    REQUIRE(ds->factor_terms.size() == 1);
    REQUIRE(ds->factor_terms[0].a == 0);
    REQUIRE(ds->factor_terms[0].b == 0);
    REQUIRE(ds->factor_terms[0].coeff == 1);

    REQUIRE_FALSE(decompose_homogeneous(var(t, 0, 1) + var(t, 2, 1), t).has_value());
}

TEST_CASE("coarsening validation") {
    const auto& t = kQuadric;
    FineGrading fg = fine_grading(t);

    // rdeg T01 = l_02 = 1, rdeg T02 = -l_01 = -1, rest 0
    REQUIRE(validate_coarsening(fg, int_rows({{1}, {-1}, {0}, {0}, {0}})));

    REQUIRE(validate_coarsening(
        fg, int_rows({{1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}, {0, 0, 1}})));

    REQUIRE_FALSE(validate_coarsening(fg, int_rows({{1}, {0}, {0}, {0}, {0}})));

    REQUIRE_THROWS_AS(validate_coarsening(fg, int_rows({{1}, {0}})), LengthMismatchError);
}
