#pragma once

#include <map>
#include <random>
#include <vector>

#include "trialg/linalg.hpp"
#include "trialg/roots.hpp"

namespace trialg {

/// All reduced monomials (not divisible by the leading monomial of g) of a
/// given fine degree and total degree <= cap, in descending lex order.
struct ComponentBasis {
    GroupElement degree;
    int cap;
    std::vector<Monomial> monomials;
};

inline ComponentBasis component_basis(const RootContext& ctx, const GroupElement& w, int cap) {
    if (cap < 0) throw Error("component basis cap must be >= 0");
    ComponentBasis out{w, cap, {}};
    std::vector<std::pair<GroupElement, Integer>> gens;
    for (int k = 0; k < ctx.t.n(); ++k)
        gens.emplace_back(ctx.fg.generator_degrees[k], ctx.pf.weights[k]);
    Monomial lead = block_monomial(ctx.t, 0);
    detail::enumerate_nonneg_combinations(
        ctx.fg.group, ctx.pf, w, gens, cap, [&](const std::vector<int>& u) {
            Monomial m{u};
            if (!lead.divides(m)) out.monomials.push_back(std::move(m));
        });
    std::sort(out.monomials.begin(), out.monomials.end(), LexGreater{});
    return out;
}

/// The full space of degree-e derivations annihilating g, truncated to
/// images of total degree <= cap: unknowns are image coefficients over the
/// per-generator component bases, the constraint is the normal form of
/// sum dg/dT_ij * delta(T_ij).
struct DerivationSpace {
    GroupElement degree;
    int cap;
    std::vector<Derivation> basis;
};

inline DerivationSpace derivation_space(const RootContext& ctx, const GroupElement& e, int cap) {
    const TrinomialData& t = ctx.t;
    int gdeg = 0;
    for (int i = 0; i < 3; ++i) gdeg = std::max(gdeg, t.block_total_degree(i));
    if (cap < gdeg) throw CapTooSmallError("cap below the total degree of g");

    DerivationSpace out{e, cap, {}};
    std::vector<ComponentBasis> bases;
    bases.reserve(t.n());
    std::vector<std::pair<int, int>> unknowns;  // (generator, index in its basis)
    for (int k = 0; k < t.n(); ++k) {
        bases.push_back(component_basis(ctx, ctx.fg.group.add(ctx.fg.generator_degrees[k], e), cap));
        for (std::size_t j = 0; j < bases[k].monomials.size(); ++j)
            unknowns.emplace_back(k, static_cast<int>(j));
    }
    if (unknowns.empty()) return out;

    // column per unknown: the normal form of dg/dT_k * monomial
    std::vector<Polynomial> columns;
    columns.reserve(unknowns.size());
    std::map<Monomial, int, LexGreater> row_of;
    for (auto [k, j] : unknowns) {
        auto [i, jj] = t.block_position(k);
        auto [pm, pc] = detail::block_partial(t, i, jj);
        Polynomial contrib = normal_form(
            Polynomial::from_monomial(pm.times(bases[k].monomials[j]), Rational(pc)), t);
        for (const auto& [mono, c] : contrib.terms()) row_of.emplace(mono, 0);
        columns.push_back(std::move(contrib));
    }
    int r = 0;
    for (auto& [mono, idx] : row_of) idx = r++;

    RationalMatrix sys(std::max(r, 1), static_cast<int>(unknowns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [mono, coef] : columns[c].terms())
            sys.at(row_of[mono], static_cast<int>(c)) = coef;

    for (const auto& vec : nullspace(sys)) {
        std::vector<Polynomial> images(t.n(), Polynomial(t.n()));
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            if (vec[c] == 0) continue;
            auto [k, j] = unknowns[c];
            images[k].add_term(bases[k].monomials[j], vec[c]);
        }
        out.basis.push_back(Derivation::from_images(t, std::move(images)));
    }
    return out;
}

/// Desk-scale check of the main structure statement: within the caps, every
/// derivation certified nilpotent must be recognized as elementary. A
/// nilpotent derivation the rational recognizer rejects would need a scalar
/// extension and is flagged, never silently dropped.
struct TheoremReport {
    struct PerDegree {
        GroupElement degree;
        int space_dim = 0;
        int tested = 0;
        int nilpotent = 0;
        int elementary = 0;
        int unknown_at_cap = 0;
        int scalar_extension_flags = 0;
        bool degree_is_root = false;
        bool has_nilpotent = false;
    };

    int cap = 0;
    int nilpotency_cap = 0;
    int samples = 0;
    unsigned seed = 0;
    std::vector<PerDegree> entries;

    int total_flags() const {
        int acc = 0;
        for (const auto& p : entries) acc += p.scalar_extension_flags;
        return acc;
    }
    int total_unknown() const {
        int acc = 0;
        for (const auto& p : entries) acc += p.unknown_at_cap;
        return acc;
    }
    bool ok() const { return total_flags() == 0; }
};

inline TheoremReport verify_theorem(const RootContext& ctx,
                                    const std::vector<GroupElement>& degrees, int cap,
                                    int nilpotency_cap, int samples, unsigned seed = 20240601) {
    TheoremReport report;
    report.cap = cap;
    report.nilpotency_cap = nilpotency_cap;
    report.samples = samples;
    report.seed = seed;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);

    for (const auto& e : degrees) {
        TheoremReport::PerDegree entry;
        entry.degree = e;
        entry.degree_is_root = is_root(ctx, e).is_root();
        DerivationSpace space = derivation_space(ctx, e, cap);
        entry.space_dim = static_cast<int>(space.basis.size());

        std::vector<Derivation> candidates = space.basis;
        if (!space.basis.empty()) {
            for (int s = 0; s < samples; ++s) {
                std::vector<Polynomial> images(ctx.t.n(), Polynomial(ctx.t.n()));
                bool nonzero = false;
                for (const auto& b : space.basis) {
                    int c = coef(rng);
                    if (c == 0) continue;
                    nonzero = true;
                    for (int k = 0; k < ctx.t.n(); ++k) images[k] += b.image(k).scaled(c);
                }
                if (!nonzero) continue;
                candidates.push_back(Derivation::from_images(ctx.t, std::move(images)));
            }
        }

        for (const auto& d : candidates) {
            if (d.is_zero()) continue;
            ++entry.tested;
            auto nil = bounded_nilpotency(d, nilpotency_cap);
            if (!nil) {
                ++entry.unknown_at_cap;
                continue;
            }
            ++entry.nilpotent;
            if (is_elementary(d))
                ++entry.elementary;
            else
                ++entry.scalar_extension_flags;
        }
        entry.has_nilpotent = entry.nilpotent > 0;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace trialg
