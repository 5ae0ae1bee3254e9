#ifndef BO_BALL_BASIS_HPP
#define BO_BALL_BASIS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bo/measure_space.hpp"
#include "bo/norms.hpp"

namespace bo {

using BallId = int;

struct Ball {
    BallId id = -1;
    AtomSet atoms;
    double measure = 0.0;
};

/// A finite family of balls over a MeasureSpace together with a hull map
/// B -> B* and the measured hull constant K = max mu(B*)/mu(B).
///
/// The whole space is always a member (appended during construction when the
/// supplied ball list lacks it).  Hull maps supplied by a builder are kept
/// as-is; missing entries are filled by compute_hull.  Structural invariants
/// (nonempty balls, valid atom ids, valid hull ids) are enforced here, while
/// the semantic hull conditions are checked by verify_axioms so that broken
/// hull maps can be constructed on purpose and reported.
class BallBasis {
public:
    BallBasis(std::shared_ptr<const MeasureSpace> space, std::vector<AtomSet> ball_sets,
              std::vector<std::optional<BallId>> hull_overrides = {});

    const MeasureSpace& space() const { return *space_; }
    std::shared_ptr<const MeasureSpace> space_ptr() const { return space_; }

    int ball_count() const { return static_cast<int>(balls_.size()); }
    const Ball& ball(BallId id) const { return balls_.at(static_cast<std::size_t>(id)); }
    const std::vector<Ball>& balls() const { return balls_; }

    BallId hull(BallId id) const { return hull_.at(static_cast<std::size_t>(id)); }

    /// n-fold hull iterate B^[n].
    BallId hull_level(BallId id, int n) const {
        BallId b = id;
        for (int i = 0; i < n; ++i) b = hull(b);
        return b;
    }

    double K() const { return k_; }
    BallId whole_space_id() const { return whole_id_; }

    std::optional<double> doubling_eta() const { return doubling_eta_; }
    std::optional<int> besicovitch_D() const { return besicovitch_d_; }
    void set_doubling_eta(double eta) { doubling_eta_ = eta; }
    void set_besicovitch_D(int d) { besicovitch_d_ = d; }

    const std::vector<BallId>& balls_containing(AtomId a) const {
        return by_atom_.at(static_cast<std::size_t>(a));
    }

    bool contains_atom(BallId id, AtomId a) const { return set_contains(ball(id).atoms, a); }

    /// Ids of balls that are supersets of the given ball (itself included),
    /// precomputed at construction.
    const std::vector<BallId>& supersets_of(BallId id) const {
        return supersets_.at(static_cast<std::size_t>(id));
    }

    /// Minimal-measure ball containing the atom (ties to the smaller id).
    BallId minimal_ball_containing(AtomId a) const;

    /// Union of all balls A with mu(A) <= 2 mu(B) and A intersecting B.
    AtomSet two_balls_union(BallId b) const;

private:
    std::shared_ptr<const MeasureSpace> space_;
    std::vector<Ball> balls_;
    std::vector<BallId> hull_;
    std::vector<std::vector<BallId>> by_atom_;
    std::vector<std::vector<BallId>> supersets_;
    double k_ = 1.0;
    BallId whole_id_ = -1;
    std::optional<double> doubling_eta_;
    std::optional<int> besicovitch_d_;
};

/// Minimal-measure ball of the family containing the two-balls union of B,
/// ties broken by smallest id.  The whole space is always a valid fallback.
BallId compute_hull(const std::vector<Ball>& balls, const MeasureSpace& space, const Ball& b);

/// <f>*_{B,r}: max of avg(f, A, r) over basis balls A containing B.
double avg_star(const BallBasis& basis, const Function& f, BallId b, double r);

} // namespace bo

#endif
