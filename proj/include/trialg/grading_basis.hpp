#pragma once

#include <optional>
#include <vector>

#include "trialg/ring.hpp"
#include "trialg/roots.hpp"

namespace trialg {

/// A user-supplied coordinate system for the fine grading: one integer
/// vector per generator whose relation lattice equals Im L* exactly. Degrees
/// on the CLI and box bounds are read in this basis when present.
class ExplicitGrading {
public:
    int dimension() const { return dim_; }
    const std::vector<std::vector<Integer>>& assigned() const { return assigned_; }

    /// User coordinates of a canonical element.
    std::vector<Integer> to_user(const GroupElement& e) const {
        std::vector<Integer> out(dim_, Integer(0));
        for (int i = 0; i < dim_; ++i)
            for (std::size_t k = 0; k < e.free_part.size(); ++k)
                out[i] += phi_.at(i, static_cast<int>(k)) * e.free_part[k];
        return out;
    }

    /// Canonical element with the given user coordinates, when one exists.
    std::optional<GroupElement> from_user(const GradingGroup& group,
                                          const std::vector<Integer>& w) const {
        if (static_cast<int>(w.size()) != dim_)
            throw LengthMismatchError("degree vector has wrong dimension");
        const int r = phi_.cols();
        std::vector<Integer> y = phi_snf_.U.apply(w);
        std::vector<Integer> x(r, Integer(0));
        for (int i = 0; i < dim_; ++i) {
            if (i < r) {
                const Integer& d = phi_snf_.diag[i];
                if (y[i] % d != 0) return std::nullopt;
                x[i] = y[i] / d;
            } else if (y[i] != 0) {
                return std::nullopt;
            }
        }
        std::vector<Integer> free_coords = phi_snf_.V.apply(x);
        GroupElement e = group.zero();
        e.free_part = std::move(free_coords);
        return e;
    }

    friend ExplicitGrading validate_explicit_grading(const FineGrading& fg,
                                                     const std::vector<std::vector<Integer>>& a);

private:
    int dim_ = 0;
    std::vector<std::vector<Integer>> assigned_;
    IntegerMatrix phi_;  // dim x free_rank, injective
    SmithDecomposition phi_snf_;
};

/// Checks that the assignment is a legitimate coordinate choice for the fine
/// grading: it must factor through K (coarsening) and its relation lattice
/// must equal Im L* exactly, which also rules out torsion in K.
inline ExplicitGrading validate_explicit_grading(const FineGrading& fg,
                                                 const std::vector<std::vector<Integer>>& a) {
    if (!validate_coarsening(fg, a))
        throw SemanticError("explicit grading does not kill the relation lattice");
    if (!fg.group.torsion_invariants().empty())
        throw SemanticError(
            "explicit grading impossible: the grading group has torsion, which no integer-vector "
            "assignment can present faithfully");
    const int n = fg.group.ambient_rank();
    const int dim = static_cast<int>(a[0].size());
    if (dim == 0) throw SemanticError("explicit grading vectors are empty");

    IntegerMatrix m(dim, n);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < n; ++k) m.at(i, k) = a[k][i];
    for (const auto& v : kernel_basis(m))
        if (!fg.group.is_in_image(v))
            throw SemanticError("explicit grading has extra relations beyond Im L*");

    ExplicitGrading out;
    out.dim_ = dim;
    out.assigned_ = a;
    const int r = fg.group.free_rank();
    out.phi_ = IntegerMatrix(dim, r);
    for (int k = 0; k < r; ++k) {
        std::vector<Integer> basis(r, Integer(0));
        basis[k] = 1;
        std::vector<Integer> user = m.apply(fg.group.section(basis));
        for (int i = 0; i < dim; ++i) out.phi_.at(i, k) = user[i];
    }
    out.phi_snf_ = smith_normal_form(out.phi_);
    for (int k = 0; k < std::min(dim, r); ++k)
        if (out.phi_snf_.diag[k] == 0)
            throw SemanticError("explicit grading is degenerate on the free part");
    if (r > dim) throw SemanticError("explicit grading has too few coordinates");
    return out;
}

/// Roots in a box given in user coordinates; points outside the image of K
/// are skipped. Results come back with their user coordinates.
inline std::vector<std::pair<std::vector<Integer>, RootQuery>> enumerate_roots_in_user_box(
    const RootContext& ctx, const ExplicitGrading& basis, const std::vector<Integer>& lo,
    const std::vector<Integer>& hi) {
    const int dim = basis.dimension();
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw EmptyBoxError("box bounds must cover every coordinate");
    for (int k = 0; k < dim; ++k)
        if (lo[k] > hi[k]) throw EmptyBoxError("empty box: lower bound exceeds upper bound");

    std::vector<std::pair<std::vector<Integer>, RootQuery>> out;
    std::vector<Integer> w(dim);
    auto scan = [&](auto&& self, int k) -> void {
        if (k == dim) {
            auto e = basis.from_user(ctx.fg.group, w);
            if (!e) return;
            RootQuery q = is_root(ctx, *e);
            if (q.is_root()) out.emplace_back(w, std::move(q));
            return;
        }
        for (Integer v = lo[k]; v <= hi[k]; ++v) {
            w[k] = v;
            self(self, k + 1);
        }
    };
    scan(scan, 0);
    return out;
}

}  // namespace trialg
