#pragma once

#include <array>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "trialg/ring.hpp"

namespace trialg {

/// Derivation of R(g), stored as the images of the generators, each in
/// normal form. Extension to the whole ring is by the Leibniz rule.
class Derivation {
public:
    static Derivation from_images(const TrinomialData& t, std::vector<Polynomial> images) {
        if (static_cast<int>(images.size()) != t.n())
            throw LengthMismatchError("one image per generator required");
        for (auto& p : images) p = normal_form(p, t);
        return Derivation(t, std::move(images));
    }

    static Derivation zero(const TrinomialData& t) {
        return Derivation(t, std::vector<Polynomial>(t.n(), Polynomial(t.n())));
    }

    const TrinomialData& trinomial() const { return trinomial_; }
    const Polynomial& image(int flat) const { return images_[flat]; }
    const Polynomial& image(int i, int j) const { return images_[trinomial_.flat_index(i, j)]; }
    const std::vector<Polynomial>& images() const { return images_; }

    bool is_zero() const {
        for (const auto& p : images_)
            if (!p.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.trinomial_ == b.trinomial_ && a.images_ == b.images_;
    }

private:
    Derivation(TrinomialData t, std::vector<Polynomial> images)
        : trinomial_(std::move(t)), images_(std::move(images)) {}

    TrinomialData trinomial_;
    std::vector<Polynomial> images_;
};

/// Leibniz application: delta(p) = sum over generators of dp/dT_ij *
/// delta(T_ij), reduced to normal form.
inline Polynomial apply(const Derivation& d, const Polynomial& p) {
    Polynomial acc(p.nvars());
    for (int k = 0; k < d.trinomial().n(); ++k) {
        if (d.image(k).is_zero()) continue;
        acc += p.partial_derivative(k) * d.image(k);
    }
    return normal_form(acc, d.trinomial());
}

/// delta(g) = 0, i.e. the generator images induce a map on the quotient.
inline bool annihilates_g(const Derivation& d) {
    return apply(d, trinomial_polynomial(d.trinomial())).is_zero();
}

inline std::vector<int> non_kernel_support(const Derivation& d) {
    std::vector<int> out;
    for (int k = 0; k < d.trinomial().n(); ++k)
        if (!d.image(k).is_zero()) out.push_back(k);
    return out;
}

/// Generators with nonzero image, as (i, j) positions.
inline std::vector<std::pair<int, int>> non_kernel_variables(const Derivation& d) {
    std::vector<std::pair<int, int>> out;
    for (int k : non_kernel_support(d)) out.push_back(d.trinomial().block_position(k));
    return out;
}

/// Common w with deg delta(T_ij) = deg T_ij + w over all non-kernel
/// generators; nullopt when images are inhomogeneous or their shifts differ.
inline std::optional<GroupElement> derivation_degree(const Derivation& d, const FineGrading& fg) {
    if (d.is_zero()) throw ZeroDerivationError("degree of the zero derivation");
    std::optional<GroupElement> w;
    for (int k : non_kernel_support(d)) {
        Homogeneity h = homogeneous_degree(d.image(k), fg);
        if (h.kind != Homogeneity::Kind::Homogeneous) return std::nullopt;
        GroupElement shift = fg.group.sub(h.degree, fg.generator_degrees[k]);
        if (!w)
            w = shift;
        else if (*w != shift)
            return std::nullopt;
    }
    return w;
}

/// Smallest k <= cap with delta^k killing every generator; nullopt when the
/// cap is reached first (says nothing about non-nilpotency).
inline std::optional<int> bounded_nilpotency(const Derivation& d, int cap) {
    if (cap < 1) throw Error("nilpotency cap must be >= 1");
    std::vector<Polynomial> cur = d.images();
    for (int k = 1; k <= cap; ++k) {
        bool all_zero = true;
        for (const auto& p : cur)
            if (!p.is_zero()) {
                all_zero = false;
                break;
            }
        if (all_zero) return k;
        for (auto& p : cur) p = apply(d, p);
    }
    return std::nullopt;
}

inline bool is_in_kernel(const Derivation& d, const Polynomial& p) {
    return apply(d, p).is_zero();
}

/// Images of the three block monomials span a subspace of dimension <= 1.
inline bool block_image_proportionality(const Derivation& d) {
    std::vector<Polynomial> v;
    for (int i = 0; i < 3; ++i)
        v.push_back(apply(d, Polynomial::from_monomial(block_monomial(d.trinomial(), i))));
    const Polynomial* base = nullptr;
    for (const auto& p : v)
        if (!p.is_zero()) {
            base = &p;
            break;
        }
    if (!base) return true;
    for (const auto& p : v) {
        Rational r;
        if (!base->proportional_to(p, r)) return false;
    }
    return true;
}

/// Elementary data: the derivation h * delta_{C,beta} with
/// h = alpha * prod T^u * (beta_1 T_0^{l_0} - beta_0 T_1^{l_1})^m.
struct ElementarySpec {
    enum class Type { I, II };

    std::array<int, 3> C{1, 1, 1};
    std::array<Rational, 3> beta{};
    Type type = Type::I;
    int i0 = -1;  // Type II only: the block with beta_{i0} = 0
    std::vector<int> multiplier_u;
    int multiplier_m = 0;
    Rational multiplier_alpha = 1;
};

namespace detail {

// (monomial, scalar) of dT_k^{l_k}/dT_{kc_k}
inline std::pair<Monomial, Integer> block_partial(const TrinomialData& t, int k, int ck) {
    std::vector<int> e(t.n(), 0);
    for (int j = 1; j <= t.block_size(k); ++j) e[t.flat_index(k, j)] = t.exponent(k, j);
    e[t.flat_index(k, ck)] -= 1;
    return {Monomial(std::move(e)), Integer(t.exponent(k, ck))};
}

struct BetaCase {
    ElementarySpec::Type type;
    int i0;  // -1 for Type I
};

inline BetaCase classify_beta(const std::array<Rational, 3>& beta) {
    if (beta[0] + beta[1] + beta[2] != 0)
        throw BetaSumNonzeroError("beta entries must sum to zero");
    int zeros = 0, i0 = -1;
    for (int i = 0; i < 3; ++i)
        if (beta[i] == 0) {
            ++zeros;
            i0 = i;
        }
    if (zeros == 0) return {ElementarySpec::Type::I, -1};
    if (zeros == 1) return {ElementarySpec::Type::II, i0};
    throw BetaCaseInvalidError("beta must be nonzero");
}

inline void check_indices(const TrinomialData& t, const std::array<int, 3>& C) {
    for (int i = 0; i < 3; ++i)
        if (C[i] < 1 || C[i] > t.block_size(i))
            throw IndexOutOfRangeError("c_" + std::to_string(i) + " out of range");
}

inline void check_exponent_condition(const TrinomialData& t, const std::array<int, 3>& C,
                                     const BetaCase& bc) {
    int big = 0;
    for (int i = 0; i < 3; ++i) {
        if (bc.type == ElementarySpec::Type::II && i == bc.i0) continue;
        if (t.exponent(i, C[i]) > 1) ++big;
    }
    if (big > 1)
        throw ExponentConditionError("more than one chosen exponent exceeds 1");
}

}  // namespace detail

/// The derivation delta_{C,beta}: the chosen generator of each block maps to
/// beta_i times the product of the other blocks' partials (skipping block
/// i_0 in the beta_{i0} = 0 case), all other generators map to zero.
inline Derivation elementary_derivation(const TrinomialData& t, const std::array<int, 3>& C,
                                        const std::array<Rational, 3>& beta) {
    detail::check_indices(t, C);
    detail::BetaCase bc = detail::classify_beta(beta);
    detail::check_exponent_condition(t, C, bc);

    std::vector<Polynomial> images(t.n(), Polynomial(t.n()));
    for (int i = 0; i < 3; ++i) {
        if (beta[i] == 0) continue;
        Monomial mono(t.n());
        Integer scale = 1;
        for (int k = 0; k < 3; ++k) {
            if (k == i || (bc.type == ElementarySpec::Type::II && k == bc.i0)) continue;
            auto [pm, pc] = detail::block_partial(t, k, C[k]);
            mono = mono.times(pm);
            scale *= pc;
        }
        images[t.flat_index(i, C[i])] =
            Polynomial::from_monomial(mono, beta[i] * Rational(scale));
    }
    return Derivation::from_images(t, std::move(images));
}

inline std::vector<int> non_kernel_positions(const TrinomialData& t, const ElementarySpec& spec) {
    std::vector<int> out;
    for (int i = 0; i < 3; ++i) {
        if (spec.type == ElementarySpec::Type::II && i == spec.i0) continue;
        out.push_back(t.flat_index(i, spec.C[i]));
    }
    return out;
}

/// alpha * prod T^u * (beta_1 T_0^{l_0} - beta_0 T_1^{l_1})^m in normal
/// form. u may only touch kernel variables of delta_{C,beta}.
inline Polynomial kernel_element(const TrinomialData& t, const ElementarySpec& spec) {
    std::vector<int> forbidden = non_kernel_positions(t, spec);
    if (static_cast<int>(spec.multiplier_u.size()) != t.n())
        throw LengthMismatchError("multiplier exponent vector has wrong length");
    for (int k : forbidden)
        if (spec.multiplier_u[k] != 0)
            throw SupportViolationError("multiplier touches a non-kernel variable");
    for (int e : spec.multiplier_u)
        if (e < 0) throw SupportViolationError("multiplier exponents must be nonnegative");

    Polynomial binom(t.n());
    binom.add_term(block_monomial(t, 0), spec.beta[1]);
    binom.add_term(block_monomial(t, 1), -spec.beta[0]);
    Polynomial h = Polynomial::from_monomial(Monomial(spec.multiplier_u), spec.multiplier_alpha);
    h = h * power(binom, spec.multiplier_m);
    return normal_form(h, t);
}

/// h * delta_{C,beta} for the full spec.
inline Derivation elementary_from_spec(const TrinomialData& t, const ElementarySpec& spec) {
    Derivation base = elementary_derivation(t, spec.C, spec.beta);
    Polynomial h = kernel_element(t, spec);
    std::vector<Polynomial> images;
    images.reserve(t.n());
    for (int k = 0; k < t.n(); ++k) images.push_back(h * base.image(k));
    return Derivation::from_images(t, std::move(images));
}

namespace detail {

// f as lead * mono * (y + r z)^m with y = T_1^{l_1}, z = T_2^{l_2}; the
// normal form of every elementary image has this shape. m = 0 encodes a
// plain monomial (r meaningless).
struct ImagePattern {
    Monomial mono = Monomial(0);
    int m = 0;
    Rational r = 0;
    Rational lead = 0;
};

inline std::optional<ImagePattern> match_image_pattern(const Polynomial& f,
                                                       const TrinomialData& t) {
    if (f.is_zero()) return std::nullopt;
    ImagePattern out;
    out.mono = f.monomial_gcd();
    Polynomial q = f.divided_by(out.mono);
    if (q.term_count() == 1) {
        out.m = 0;
        out.lead = q.leading_term().second;
        return out;
    }
    // q must be a binomial power in y and z with full support
    std::vector<std::pair<int, Rational>> by_zpow;  // (b, coeff), a + b = m
    int m = -1;
    for (const auto& [mono, c] : q.terms()) {
        int a = -1, b = -1;
        for (int j = 1; j <= t.block_size(0); ++j)
            if (mono[t.flat_index(0, j)] != 0) return std::nullopt;
        for (int j = 1; j <= t.block_size(1); ++j) {
            int e = mono[t.flat_index(1, j)], l = t.exponent(1, j);
            if (e % l != 0) return std::nullopt;
            if (a < 0)
                a = e / l;
            else if (a != e / l)
                return std::nullopt;
        }
        for (int j = 1; j <= t.block_size(2); ++j) {
            int e = mono[t.flat_index(2, j)], l = t.exponent(2, j);
            if (e % l != 0) return std::nullopt;
            if (b < 0)
                b = e / l;
            else if (b != e / l)
                return std::nullopt;
        }
        if (m < 0)
            m = a + b;
        else if (m != a + b)
            return std::nullopt;
        by_zpow.emplace_back(b, c);
    }
    if (static_cast<int>(by_zpow.size()) != m + 1) return std::nullopt;
    std::sort(by_zpow.begin(), by_zpow.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });
    for (int j = 0; j <= m; ++j)
        if (by_zpow[j].first != j) return std::nullopt;
    out.m = m;
    out.lead = by_zpow[0].second;  // coefficient of y^m
    out.r = by_zpow[1].second / (out.lead * m);
    if (out.r == 0) return std::nullopt;
    Integer binco = 1;
    Rational rpow = 1;
    for (int j = 1; j <= m; ++j) {
        binco = binco * (m - j + 1) / j;
        rpow *= out.r;
        if (by_zpow[j].second != out.lead * Rational(binco) * rpow) return std::nullopt;
    }
    return out;
}

}  // namespace detail

/// Recognizer for the elementary form: reads C off the non-kernel support,
/// beta and the kernel multiplier off the image shapes, then verifies the
/// candidate by exact reconstruction of every image. Images that cannot be
/// reproduced by any h * delta_{C,beta} over the rationals yield nullopt.
inline std::optional<ElementarySpec> is_elementary(const Derivation& d) {
    const TrinomialData& t = d.trinomial();
    std::vector<int> support = non_kernel_support(d);
    if (support.empty()) return std::nullopt;

    std::array<int, 3> c{0, 0, 0};
    for (int flat : support) {
        auto [i, j] = t.block_position(flat);
        if (c[i] != 0) return std::nullopt;  // two non-kernel variables in one block
        c[i] = j;
    }

    ElementarySpec spec;
    int missing = -1, present = 0;
    for (int i = 0; i < 3; ++i) {
        if (c[i] == 0)
            missing = i;
        else
            ++present;
    }
    if (present == 3) {
        spec.type = ElementarySpec::Type::I;
        spec.i0 = -1;
    } else if (present == 2) {
        spec.type = ElementarySpec::Type::II;
        spec.i0 = missing;
        c[missing] = 1;  // immaterial in case (ii); fixed by convention
    } else {
        return std::nullopt;
    }
    spec.C = c;

    // exponent condition of the construction
    int big = 0;
    for (int i = 0; i < 3; ++i) {
        if (spec.type == ElementarySpec::Type::II && i == spec.i0) continue;
        if (t.exponent(i, c[i]) > 1) ++big;
    }
    if (big > 1) return std::nullopt;

    // per-image patterns
    std::array<std::optional<detail::ImagePattern>, 3> pat;
    std::array<Monomial, 3> prod_mono{Monomial(t.n()), Monomial(t.n()), Monomial(t.n())};
    std::array<Integer, 3> prod_scale{1, 1, 1};
    std::optional<std::vector<int>> u;
    int m = -1;
    Rational r;
    for (int i = 0; i < 3; ++i) {
        if (spec.type == ElementarySpec::Type::II && i == spec.i0) continue;
        for (int k = 0; k < 3; ++k) {
            if (k == i || (spec.type == ElementarySpec::Type::II && k == spec.i0)) continue;
            auto [pm, pc] = detail::block_partial(t, k, c[k]);
            prod_mono[i] = prod_mono[i].times(pm);
            prod_scale[i] *= pc;
        }
        pat[i] = detail::match_image_pattern(d.image(i, c[i]), t);
        if (!pat[i]) return std::nullopt;
        if (!prod_mono[i].divides(pat[i]->mono)) return std::nullopt;
        Monomial rest = pat[i]->mono.divided_by(prod_mono[i]);
        if (!u)
            u = rest.exponents();
        else if (*u != rest.exponents())
            return std::nullopt;
        if (m < 0) {
            m = pat[i]->m;
            r = pat[i]->r;
        } else if (m != pat[i]->m || (m > 0 && r != pat[i]->r)) {
            return std::nullopt;
        }
    }

    // the extracted multiplier must avoid the non-kernel variables
    for (int i = 0; i < 3; ++i) {
        if (spec.type == ElementarySpec::Type::II && i == spec.i0) continue;
        if ((*u)[t.flat_index(i, c[i])] != 0) return std::nullopt;
    }
    spec.multiplier_u = *u;
    spec.multiplier_m = m;

    if (spec.type == ElementarySpec::Type::I) {
        std::vector<Rational> raw(3);
        for (int i = 0; i < 3; ++i) raw[i] = pat[i]->lead / Rational(prod_scale[i]);
        std::vector<Integer> prim = primitive_integer_vector(raw);
        for (int i = 0; i < 3; ++i) spec.beta[i] = Rational(prim[i]);
        if (spec.beta[0] + spec.beta[1] + spec.beta[2] != 0) return std::nullopt;
        if (m > 0 && r != -spec.beta[1] / spec.beta[2]) return std::nullopt;
    } else {
        int a = -1, b = -1;
        for (int i = 0; i < 3; ++i) {
            if (i == spec.i0) continue;
            (a < 0 ? a : b) = i;
        }
        if (pat[a]->lead / Rational(prod_scale[a]) != -(pat[b]->lead / Rational(prod_scale[b])))
            return std::nullopt;
        spec.beta[a] = 1;
        spec.beta[b] = -1;
        spec.beta[spec.i0] = 0;
        if (spec.i0 == 0) {
            if (m > 0 && r != 1) return std::nullopt;
        } else {
            if (m != 0) return std::nullopt;
        }
    }

    // exponent condition may still fail construction-side; treat as no match
    spec.multiplier_alpha = 1;
    Derivation ref = [&]() -> Derivation {
        try {
            return elementary_from_spec(t, spec);
        } catch (const Error&) {
            return Derivation::zero(t);
        }
    }();
    if (ref.is_zero()) return std::nullopt;

    int probe = non_kernel_positions(t, spec)[0];
    Rational alpha;
    if (!ref.image(probe).proportional_to(d.image(probe), alpha) || alpha == 0)
        return std::nullopt;
    for (int k = 0; k < t.n(); ++k)
        if (ref.image(k).scaled(alpha) != d.image(k)) return std::nullopt;
    spec.multiplier_alpha = alpha;
    return spec;
}

/// One class of delta_{C,beta} up to the continuous beta parameter: the
/// choice of C and of the construction case (with i_0 for case (ii)).
struct ElementaryClass {
    std::array<int, 3> C;
    ElementarySpec::Type type;
    int i0;  // -1 for Type I
};

/// All classes admitted by the exponent conditions, in deterministic order:
/// Type I by lex order of C, then Type II by (i0, remaining c's).
inline std::vector<ElementaryClass> elementary_classes(const TrinomialData& t) {
    std::vector<ElementaryClass> out;
    auto count_big = [&](const std::array<int, 3>& c, int skip) {
        int big = 0;
        for (int i = 0; i < 3; ++i)
            if (i != skip && t.exponent(i, c[i]) > 1) ++big;
        return big;
    };
    std::array<int, 3> c;
    for (c[0] = 1; c[0] <= t.block_size(0); ++c[0])
        for (c[1] = 1; c[1] <= t.block_size(1); ++c[1])
            for (c[2] = 1; c[2] <= t.block_size(2); ++c[2])
                if (count_big(c, -1) <= 1) out.push_back({c, ElementarySpec::Type::I, -1});
    for (int i0 = 0; i0 < 3; ++i0) {
        int a = (i0 == 0) ? 1 : 0;
        int b = (i0 == 2) ? 1 : 2;
        std::array<int, 3> cc{1, 1, 1};
        for (cc[a] = 1; cc[a] <= t.block_size(a); ++cc[a])
            for (cc[b] = 1; cc[b] <= t.block_size(b); ++cc[b]) {
                cc[i0] = 1;
                if (count_big(cc, i0) <= 1) out.push_back({cc, ElementarySpec::Type::II, i0});
            }
    }
    return out;
}

struct KernelReconstruction {
    std::array<int, 3> C;
    ElementarySpec::Type type;
    int i0;  // -1 for Type I
    std::array<Rational, 3> beta;
};

/// Recovers (C, type, beta up to scalar) from the kernel data: the set of
/// kernel variables and a pair (zeta, xi) with zeta T_0^{l_0} + xi T_1^{l_1}
/// in the kernel.
inline KernelReconstruction reconstruct_from_kernel(const TrinomialData& t,
                                                    const std::set<std::pair<int, int>>& kernel_vars,
                                                    const Rational& zeta, const Rational& xi) {
    std::array<int, 3> c{0, 0, 0};
    int count = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 1; j <= t.block_size(i); ++j) {
            if (kernel_vars.count({i, j})) continue;
            if (c[i] != 0) throw InvalidKernelShapeError("two non-kernel variables in a block");
            c[i] = j;
            ++count;
        }

    KernelReconstruction out{};
    if (count == 3) {
        out.type = ElementarySpec::Type::I;
        out.i0 = -1;
        // (beta_0, beta_1) ~ (-xi, zeta), beta_2 = -beta_0 - beta_1
        if (zeta == 0 || xi == 0 || zeta == xi)
            throw SemanticError("kernel binomial incompatible with a Type I shape");
        std::vector<Integer> prim = primitive_integer_vector({-xi, zeta, xi - zeta});
        for (int i = 0; i < 3; ++i) out.beta[i] = Rational(prim[i]);
    } else if (count == 2) {
        out.type = ElementarySpec::Type::II;
        for (int i = 0; i < 3; ++i)
            if (c[i] == 0) out.i0 = i;
        c[out.i0] = 1;
        switch (out.i0) {
            case 0:
                if (xi != 0 || zeta == 0)
                    throw SemanticError("kernel binomial incompatible with i0 = 0");
                out.beta = {Rational(0), Rational(1), Rational(-1)};
                break;
            case 1:
                if (zeta != 0 || xi == 0)
                    throw SemanticError("kernel binomial incompatible with i0 = 1");
                out.beta = {Rational(1), Rational(0), Rational(-1)};
                break;
            default:
                if (zeta != xi || zeta == 0)
                    throw SemanticError("kernel binomial incompatible with i0 = 2");
                out.beta = {Rational(1), Rational(-1), Rational(0)};
                break;
        }
    } else {
        throw InvalidKernelShapeError("kernel complement must pick 3 blocks or exactly 2");
    }
    out.C = c;
    return out;
}

}  // namespace trialg
