#ifndef BO_ARC_BASIS_HPP
#define BO_ARC_BASIS_HPP

#include <memory>
#include <vector>

#include "bo/ball_basis.hpp"

namespace bo {

/// A finite quasi-metric: symmetric, zero exactly on the diagonal, and
/// rho(x,y) <= D (rho(x,z) + rho(z,y)) with a fixed constant D > 1.
/// All three axioms are verified exhaustively at construction.
struct QuasiMetricSpec {
    int point_count = 0;
    std::vector<std::vector<double>> distance;
    double triangle_constant = 2.0;

    /// Throws std::invalid_argument naming the offending pair/triple.
    void validate() const;

    double diameter() const;
};

struct ArcBall {
    AtomId center = 0;
    double radius = 0.0;
    double max_radius = 0.0; // largest generating radius among realized representations
};

/// Metric-ball basis over a quasi-metric space: every distinct ball
/// B(x,r) = { y : rho(x,y) < r } with r ranging over the realized distances
/// plus one value beyond the diameter, together with the whole space.
///
/// Hulls: for each ball, gamma is the largest generating radius among balls
/// that intersect it and have measure at most twice its own; the hull is the
/// smallest basis ball containing B(center, 4 D^2 gamma).
class ArcBasis {
public:
    ArcBasis(std::shared_ptr<BallBasis> basis, QuasiMetricSpec spec,
             std::vector<ArcBall> meta, double homogeneity)
        : basis_(std::move(basis)), spec_(std::move(spec)), meta_(std::move(meta)),
          homogeneity_(homogeneity) {}

    const BallBasis& basis() const { return *basis_; }
    std::shared_ptr<BallBasis> basis_ptr() const { return basis_; }
    const QuasiMetricSpec& spec() const { return spec_; }
    const ArcBall& meta(BallId id) const { return meta_.at(static_cast<std::size_t>(id)); }

    /// Measured constant H with mu(B(c,2r)) <= H mu(B(c,r)) over realized balls.
    double homogeneity() const { return homogeneity_; }

private:
    std::shared_ptr<BallBasis> basis_;
    QuasiMetricSpec spec_;
    std::vector<ArcBall> meta_;
    double homogeneity_;
};

ArcBasis build_arc_basis(const QuasiMetricSpec& spec, std::vector<double> masses);

} // namespace bo

#endif
