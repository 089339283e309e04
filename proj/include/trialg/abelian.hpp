#pragma once

#include <vector>

#include "trialg/matrix.hpp"

namespace trialg {

/// Element of a GradingGroup in canonical coordinates: one residue per
/// torsion invariant (reduced into [0, d)) plus free integer coordinates.
struct GroupElement {
    std::vector<Integer> torsion;
    std::vector<Integer> free_part;

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.torsion == b.torsion && a.free_part == b.free_part;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& r : torsion)
            if (r != 0) return false;
        for (const auto& x : free_part)
            if (x != 0) return false;
        return true;
    }
};

/// Z^n modulo the column span of a presentation matrix, in Smith
/// coordinates. Torsion invariants equal to 1 are dropped from element
/// coordinates.
class GradingGroup {
public:
    GradingGroup() = default;

    int ambient_rank() const { return ambient_rank_; }
    int free_rank() const { return free_rank_; }
    const std::vector<Integer>& torsion_invariants() const { return torsion_invariants_; }
    const SmithDecomposition& projection_data() const { return snf_; }
    const IntegerMatrix& presentation() const { return presentation_; }

    bool same_shape(const GradingGroup& other) const {
        return ambient_rank_ == other.ambient_rank_ && free_rank_ == other.free_rank_ &&
               torsion_invariants_ == other.torsion_invariants_;
    }

    GroupElement zero() const {
        GroupElement e;
        e.torsion.assign(torsion_invariants_.size(), Integer(0));
        e.free_part.assign(free_rank_, Integer(0));
        return e;
    }

    GroupElement project(const std::vector<Integer>& v) const {
        if (static_cast<int>(v.size()) != ambient_rank_)
            throw LengthMismatchError("project: vector length != ambient rank");
        std::vector<Integer> y = snf_.U.apply(v);
        GroupElement e;
        e.torsion.reserve(torsion_positions_.size());
        for (std::size_t k = 0; k < torsion_positions_.size(); ++k)
            e.torsion.push_back(mod_floor(y[torsion_positions_[k]], torsion_invariants_[k]));
        e.free_part.reserve(free_positions_.size());
        for (int p : free_positions_) e.free_part.push_back(y[p]);
        return e;
    }

    void check_element(const GroupElement& e) const {
        if (e.torsion.size() != torsion_invariants_.size() ||
            static_cast<int>(e.free_part.size()) != free_rank_)
            throw GroupMismatchError("element does not belong to this group");
    }

    GroupElement add(const GroupElement& a, const GroupElement& b, int sign = +1) const {
        check_element(a);
        check_element(b);
        GroupElement e;
        e.torsion.reserve(a.torsion.size());
        for (std::size_t k = 0; k < a.torsion.size(); ++k)
            e.torsion.push_back(
                mod_floor(a.torsion[k] + sign * b.torsion[k], torsion_invariants_[k]));
        e.free_part.reserve(a.free_part.size());
        for (std::size_t k = 0; k < a.free_part.size(); ++k)
            e.free_part.push_back(a.free_part[k] + sign * b.free_part[k]);
        return e;
    }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, b, -1); }

    GroupElement negate(const GroupElement& a) const { return sub(zero(), a); }

    GroupElement scale(const GroupElement& a, const Integer& c) const {
        check_element(a);
        GroupElement e;
        e.torsion.reserve(a.torsion.size());
        for (std::size_t k = 0; k < a.torsion.size(); ++k)
            e.torsion.push_back(mod_floor(a.torsion[k] * c, torsion_invariants_[k]));
        e.free_part.reserve(a.free_part.size());
        for (const auto& x : a.free_part) e.free_part.push_back(x * c);
        return e;
    }

    bool is_in_image(const std::vector<Integer>& v) const { return project(v).is_zero(); }

    /// Ambient representative of a free-part coordinate vector (a section of
    /// the projection: project(section(x)) has free part x and no torsion).
    std::vector<Integer> section(const std::vector<Integer>& free_coords) const {
        if (static_cast<int>(free_coords.size()) != free_rank_)
            throw LengthMismatchError("section: wrong free coordinate count");
        std::vector<Integer> y(ambient_rank_, Integer(0));
        for (int k = 0; k < free_rank_; ++k) y[free_positions_[k]] = free_coords[k];
        return u_inverse_.apply(y);
    }

    friend GradingGroup quotient_group(const IntegerMatrix& presentation);

private:
    int ambient_rank_ = 0;
    int free_rank_ = 0;
    std::vector<Integer> torsion_invariants_;
    std::vector<int> torsion_positions_;  // rows of U*v carrying the residues
    std::vector<int> free_positions_;     // rows of U*v carrying free coords
    SmithDecomposition snf_;
    IntegerMatrix u_inverse_;
    IntegerMatrix presentation_;
};

/// K = Z^n / Im(presentation columns). The presentation must have full
/// column rank; dependent columns signal malformed input.
inline GradingGroup quotient_group(const IntegerMatrix& presentation) {
    GradingGroup g;
    g.ambient_rank_ = presentation.rows();
    g.presentation_ = presentation;
    g.snf_ = smith_normal_form(presentation);
    const int n = presentation.rows();
    const int m = presentation.cols();
    const int steps = std::min(n, m);
    for (int k = 0; k < steps; ++k)
        if (g.snf_.diag[k] == 0)
            throw RankDeficientError("presentation columns are linearly dependent");
    if (m > n) throw RankDeficientError("presentation has more columns than rows");
    for (int k = 0; k < steps; ++k)
        if (g.snf_.diag[k] > 1) {
            g.torsion_invariants_.push_back(g.snf_.diag[k]);
            g.torsion_positions_.push_back(k);
        }
    for (int k = m; k < n; ++k) g.free_positions_.push_back(k);
    g.free_rank_ = n - m;
    g.u_inverse_ = inverse_unimodular(g.snf_.U);
    return g;
}

}  // namespace trialg
