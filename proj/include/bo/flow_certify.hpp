#ifndef BO_FLOW_CERTIFY_HPP
#define BO_FLOW_CERTIFY_HPP

#include <optional>
#include <vector>

#include "bo/sparse.hpp"

namespace bo {

/// Hall-type infeasibility certificate: a set of balls whose combined witness
/// demand exceeds the total mass of the atoms available to them.
struct SparsityDeficiency {
    std::vector<BallId> balls;
    AtomSet atoms;
    double demand = 0.0;
    double supply = 0.0;
};

struct SparseCertification {
    /// Fractional feasibility of the witness-demand flow, decided exactly in
    /// rational arithmetic.
    bool feasible = false;

    /// Whole-atom witness assignment (validated), when one was extracted.
    std::optional<SparseCollection> collection;

    std::optional<SparsityDeficiency> deficiency;

    /// Set when the flow is feasible but no whole-atom assignment was found;
    /// the fractional optimum then splits at least one atom between balls.
    bool extraction_failed = false;
};

/// Exact feasibility of gamma-sparseness for the given balls: a flow problem
/// on balls x atoms with demands gamma mu(B), member-atom capacities mu(a),
/// all quantities converted exactly to rationals.  On success a disjoint
/// whole-atom witness family with mu(E_B) >= gamma mu(B) is extracted and
/// validated; on failure a deficiency certificate is returned.
SparseCertification certify_sparse(const BallBasis& basis, std::vector<BallId> balls,
                                   double gamma);

/// Largest gamma (up to the given resolution) at which certify_sparse
/// extracts witnesses, via bisection.  Returns 0 when even tiny gamma fails.
double best_certified_gamma(const BallBasis& basis, const std::vector<BallId>& balls,
                            double resolution = 1e-6);

} // namespace bo

#endif
