#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "trialg/derivation.hpp"

namespace trialg {

/// Strictly positive weights w_ij with equal weighted block sums, so the
/// functional factors through K. Bounds every nonnegative-combination
/// search: u_ij <= psi(target) / w_ij.
struct PositiveFunctional {
    std::vector<Integer> weights;   // per generator, flat order
    Integer W = 0;                  // common block value
    std::vector<Integer> free_row;  // induced functional on canonical free coordinates

    Integer value(const GroupElement& e) const {
        Integer acc = 0;
        for (std::size_t k = 0; k < free_row.size(); ++k) acc += free_row[k] * e.free_part[k];
        return acc;
    }
};

/// w_ij = prod_{k != i} A_k with A_k the k-th block's total degree; every
/// block sum is then A_0 A_1 A_2.
inline PositiveFunctional positive_functional(const TrinomialData& t, const FineGrading& fg) {
    PositiveFunctional pf;
    std::array<Integer, 3> a;
    for (int i = 0; i < 3; ++i) a[i] = t.block_total_degree(i);
    pf.W = a[0] * a[1] * a[2];
    pf.weights.reserve(t.n());
    for (int i = 0; i < 3; ++i)
        for (int j = 1; j <= t.block_size(i); ++j) pf.weights.push_back(pf.W / a[i]);
    const GradingGroup& g = fg.group;
    pf.free_row.reserve(g.free_rank());
    for (int k = 0; k < g.free_rank(); ++k) {
        std::vector<Integer> basis(g.free_rank(), Integer(0));
        basis[k] = 1;
        std::vector<Integer> ambient = g.section(basis);
        Integer acc = 0;
        for (int v = 0; v < t.n(); ++v) acc += pf.weights[v] * ambient[v];
        pf.free_row.push_back(acc);
    }
    return pf;
}

namespace detail {

// Decides target = sum u_k * gens[k] with u_k >= 0, by depth-first search
// bounded through psi; complete because all weights are positive.
inline bool solve_nonneg_combination(const GradingGroup& K, const PositiveFunctional& pf,
                                     const GroupElement& target,
                                     const std::vector<std::pair<GroupElement, Integer>>& gens,
                                     std::vector<int>& counts) {
    std::vector<int> order(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return gens[x].second > gens[y].second; });

    counts.assign(gens.size(), 0);
    std::vector<int> stack_counts(gens.size(), 0);

    auto rec = [&](auto&& self, const GroupElement& tau, std::size_t idx) -> bool {
        Integer psi = pf.value(tau);
        if (psi < 0) return false;
        if (idx == order.size()) return tau.is_zero();
        const auto& [deg, w] = gens[order[idx]];
        GroupElement cur = tau;
        for (Integer u = 0; u * w <= psi; ++u) {
            stack_counts[idx] = static_cast<int>(u);
            if (self(self, cur, idx + 1)) return true;
            cur = K.sub(cur, deg);
        }
        return false;
    };
    if (!rec(rec, target, 0)) return false;
    for (std::size_t k = 0; k < order.size(); ++k) counts[order[k]] = stack_counts[k];
    return true;
}

// Enumerates all solutions with total count <= cap; callback gets counts in
// the input order.
template <typename Fn>
inline void enumerate_nonneg_combinations(const GradingGroup& K, const PositiveFunctional& pf,
                                          const GroupElement& target,
                                          const std::vector<std::pair<GroupElement, Integer>>& gens,
                                          int cap, Fn&& callback) {
    std::vector<int> counts(gens.size(), 0);
    auto rec = [&](auto&& self, const GroupElement& tau, std::size_t idx, int used) -> void {
        if (pf.value(tau) < 0) return;
        if (idx == gens.size()) {
            if (tau.is_zero()) callback(counts);
            return;
        }
        const auto& [deg, w] = gens[idx];
        GroupElement cur = tau;
        for (int u = 0; used + u <= cap && Integer(u) * w <= pf.value(tau); ++u) {
            counts[idx] = u;
            self(self, cur, idx + 1, used + u);
            cur = K.sub(cur, deg);
        }
        counts[idx] = 0;
    };
    rec(rec, target, 0, 0);
}

}  // namespace detail

/// E(T_{ac_a}, T_{bc_b}): the degrees reachable from deg g - deg T_{ac_a} -
/// deg T_{bc_b} by nonnegative combinations of the other generator degrees.
struct BasicSet {
    std::pair<int, int> first;   // (a, c_a)
    std::pair<int, int> second;  // (b, c_b), with a < b
    GroupElement offset;
    std::vector<int> generator_flats;  // everything outside the pair
};

/// One set per unordered pair of positions in distinct blocks with at least
/// one exponent equal to 1, ordered by (a, c_a, b, c_b).
inline std::vector<BasicSet> basic_sets(const TrinomialData& t, const FineGrading& fg) {
    std::vector<BasicSet> out;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int ca = 1; ca <= t.block_size(a); ++ca)
                for (int cb = 1; cb <= t.block_size(b); ++cb) {
                    if (std::min(t.exponent(a, ca), t.exponent(b, cb)) != 1) continue;
                    BasicSet s{{a, ca}, {b, cb}, fg.group.zero(), {}};
                    int fa = t.flat_index(a, ca), fb = t.flat_index(b, cb);
                    s.offset = fg.group.sub(
                        fg.group.sub(fg.g_degree, fg.generator_degrees[fa]),
                        fg.generator_degrees[fb]);
                    for (int k = 0; k < t.n(); ++k)
                        if (k != fa && k != fb) s.generator_flats.push_back(k);
                    out.push_back(std::move(s));
                }
    return out;
}

/// Everything the root-theory operations need about one trinomial.
struct RootContext {
    TrinomialData t;
    FineGrading fg;
    PositiveFunctional pf;
    std::vector<BasicSet> sets;
};

inline RootContext make_root_context(const TrinomialData& t) {
    RootContext ctx{t, fine_grading(t), {}, {}};
    ctx.pf = positive_functional(t, ctx.fg);
    ctx.sets = basic_sets(t, ctx.fg);
    return ctx;
}

/// Witness u >= 0 with e = offset + sum u_ij deg T_ij, or nullopt. The
/// returned vector has length n with zeros at the pair positions.
inline std::optional<std::vector<int>> membership(const RootContext& ctx, const BasicSet& set,
                                                  const GroupElement& e) {
    ctx.fg.group.check_element(e);
    GroupElement target = ctx.fg.group.sub(e, set.offset);
    std::vector<std::pair<GroupElement, Integer>> gens;
    gens.reserve(set.generator_flats.size());
    for (int k : set.generator_flats)
        gens.emplace_back(ctx.fg.generator_degrees[k], ctx.pf.weights[k]);
    std::vector<int> counts;
    if (!detail::solve_nonneg_combination(ctx.fg.group, ctx.pf, target, gens, counts))
        return std::nullopt;
    std::vector<int> u(ctx.t.n(), 0);
    for (std::size_t k = 0; k < set.generator_flats.size(); ++k)
        u[set.generator_flats[k]] = counts[k];
    return u;
}

/// w lies in the weight monoid: w = sum u_ij deg T_ij with u >= 0.
inline bool monoid_membership(const RootContext& ctx, const GroupElement& w) {
    std::vector<std::pair<GroupElement, Integer>> gens;
    for (int k = 0; k < ctx.t.n(); ++k)
        gens.emplace_back(ctx.fg.generator_degrees[k], ctx.pf.weights[k]);
    std::vector<int> counts;
    return detail::solve_nonneg_combination(ctx.fg.group, ctx.pf, w, gens, counts);
}

/// e is a Type I degree: e = 2 deg g - sum_i deg T_{ic_i} + sum u_ij deg
/// T_ij + m deg g for some admissible C, kernel-supported u, m >= 0.
inline bool is_type_one_degree(const RootContext& ctx, const GroupElement& e) {
    for (const auto& cls : elementary_classes(ctx.t)) {
        if (cls.type != ElementarySpec::Type::I) continue;
        GroupElement target = ctx.fg.group.sub(e, ctx.fg.group.scale(ctx.fg.g_degree, 2));
        std::vector<std::pair<GroupElement, Integer>> gens;
        std::array<int, 3> chosen{};
        for (int i = 0; i < 3; ++i) chosen[i] = ctx.t.flat_index(i, cls.C[i]);
        for (int i = 0; i < 3; ++i)
            target = ctx.fg.group.add(target, ctx.fg.generator_degrees[chosen[i]]);
        for (int k = 0; k < ctx.t.n(); ++k) {
            if (k == chosen[0] || k == chosen[1] || k == chosen[2]) continue;
            gens.emplace_back(ctx.fg.generator_degrees[k], ctx.pf.weights[k]);
        }
        gens.emplace_back(ctx.fg.g_degree, ctx.pf.W);  // the m * deg g part
        std::vector<int> counts;
        if (detail::solve_nonneg_combination(ctx.fg.group, ctx.pf, target, gens, counts))
            return true;
    }
    return false;
}

struct ContainingSet {
    int set_index;
    std::vector<int> witness;
};

struct RootQuery {
    GroupElement element;
    std::vector<ContainingSet> containing_sets;
    bool type_one = false;

    bool is_root() const { return !containing_sets.empty(); }
};

/// Runs membership against every basic set. At most three sets can contain
/// any element; more indicates an internal error.
inline RootQuery is_root(const RootContext& ctx, const GroupElement& e) {
    RootQuery q{e, {}, false};
    for (std::size_t s = 0; s < ctx.sets.size(); ++s) {
        auto u = membership(ctx, ctx.sets[s], e);
        if (u) q.containing_sets.push_back({static_cast<int>(s), std::move(*u)});
    }
    if (q.containing_sets.size() > 3)
        throw Error("internal invariant violated: element in more than three basic sets");
    q.type_one = is_type_one_degree(ctx, e);
    return q;
}

/// Type II derivation realizing e from a membership witness: non-kernel
/// variables are exactly the defining pair of the basic set.
inline Derivation witness_derivation(const RootContext& ctx, const BasicSet& set,
                                     const GroupElement& e, const std::vector<int>& u) {
    if (static_cast<int>(u.size()) != ctx.t.n())
        throw InvalidWitnessError("witness exponent vector has wrong length");
    int fa = ctx.t.flat_index(set.first.first, set.first.second);
    int fb = ctx.t.flat_index(set.second.first, set.second.second);
    GroupElement check = set.offset;
    for (int k = 0; k < ctx.t.n(); ++k) {
        if (u[k] < 0 || ((k == fa || k == fb) && u[k] != 0))
            throw InvalidWitnessError("witness exponents violate the basic-set support");
        if (u[k] != 0)
            check = ctx.fg.group.add(check,
                                     ctx.fg.group.scale(ctx.fg.generator_degrees[k], u[k]));
    }
    if (check != e) throw InvalidWitnessError("witness does not recompute the degree");

    ElementarySpec spec;
    spec.type = ElementarySpec::Type::II;
    spec.i0 = 3 - set.first.first - set.second.first;
    spec.C = {1, 1, 1};
    spec.C[set.first.first] = set.first.second;
    spec.C[set.second.first] = set.second.second;
    spec.beta = {Rational(0), Rational(0), Rational(0)};
    spec.beta[set.first.first] = 1;
    spec.beta[set.second.first] = -1;
    spec.multiplier_u = u;
    spec.multiplier_m = 0;
    spec.multiplier_alpha = 1;
    return elementary_from_spec(ctx.t, spec);
}

/// All roots in the free-coordinate box (canonical coordinates), with every
/// torsion residue combination enumerated alongside; output in coordinate
/// order.
inline std::vector<RootQuery> enumerate_roots_in_box(const RootContext& ctx,
                                                     const std::vector<Integer>& lo,
                                                     const std::vector<Integer>& hi) {
    const GradingGroup& K = ctx.fg.group;
    const int r = K.free_rank();
    if (static_cast<int>(lo.size()) != r || static_cast<int>(hi.size()) != r)
        throw EmptyBoxError("box bounds must cover every free coordinate");
    for (int k = 0; k < r; ++k)
        if (lo[k] > hi[k]) throw EmptyBoxError("empty box: lower bound exceeds upper bound");

    std::vector<RootQuery> out;
    GroupElement e = K.zero();
    auto scan_torsion = [&](auto&& self, std::size_t idx) -> void {
        if (idx == e.torsion.size()) {
            RootQuery q = is_root(ctx, e);
            if (q.is_root()) out.push_back(std::move(q));
            return;
        }
        for (Integer v = 0; v < K.torsion_invariants()[idx]; ++v) {
            e.torsion[idx] = v;
            self(self, idx + 1);
        }
        e.torsion[idx] = 0;
    };
    auto scan_free = [&](auto&& self, int k) -> void {
        if (k == r) {
            scan_torsion(scan_torsion, 0);
            return;
        }
        for (Integer v = lo[k]; v <= hi[k]; ++v) {
            e.free_part[k] = v;
            self(self, k + 1);
        }
        e.free_part[k] = 0;
    };
    scan_free(scan_free, 0);
    return out;
}

}  // namespace trialg
