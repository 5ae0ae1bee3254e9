#ifndef BO_COVERING_HPP
#define BO_COVERING_HPP

#include <string>
#include <vector>

#include "bo/ball_basis.hpp"

namespace bo {

struct CoverSelection {
    std::vector<BallId> chosen;     // pairwise disjoint
    std::vector<BallId> hull_cover; // their hulls, in pick order
};

/// Greedy disjoint subcover: repeatedly pick the largest family ball disjoint
/// from everything chosen so far (ties to the smaller id) until none remains.
/// On a finite family the maximum trivially exceeds half the supremum of the
/// still-admissible measures, and the hulls of the chosen balls cover E.
/// Throws std::invalid_argument when E is not covered by the family.
CoverSelection greedy_disjoint_subcover(const BallBasis& basis, std::vector<BallId> family,
                                        const AtomSet& target);

/// Cover of E by hulls of a greedily thinned per-atom minimal-ball family,
/// deduplicated.  Total measure is at most 2 K mu(E) whenever the per-atom
/// minimal balls do not overshoot E (always when singleton balls exist).
std::vector<BallId> economical_cover(const BallBasis& basis, const AtomSet& target);

struct CardinalityBoundReport {
    int family_size = 0;
    double bound = 0.0;
    bool pass = false;
    std::vector<std::string> precondition_violations;
};

/// Checks #G <= min(K^3 c2, K mu(A)) / c1 for a disjoint family whose hulls
/// meet A and whose measures lie in [c1, c2].  Precondition violations are
/// reported, not thrown.
CardinalityBoundReport cardinality_bound_check(const BallBasis& basis, BallId a,
                                               const std::vector<BallId>& family, double c1,
                                               double c2);

} // namespace bo

#endif
