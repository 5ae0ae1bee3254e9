#include "bo/covering.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bo {

CoverSelection greedy_disjoint_subcover(const BallBasis& basis, std::vector<BallId> family,
                                        const AtomSet& target) {
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());

    AtomSet family_union;
    for (BallId id : family) family_union = set_union_of(family_union, basis.ball(id).atoms);
    if (!is_subset(target, family_union))
        throw std::invalid_argument("greedy_disjoint_subcover: target not covered by family");

    CoverSelection sel;
    AtomSet chosen_union;
    std::vector<char> used(family.size(), 0);
    for (;;) {
        int best = -1;
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (used[i]) continue;
            const Ball& b = basis.ball(family[i]);
            if (sets_intersect(b.atoms, chosen_union)) continue;
            if (best < 0 || b.measure > basis.ball(family[static_cast<std::size_t>(best)]).measure)
                best = static_cast<int>(i);
        }
        if (best < 0) break;
        used[static_cast<std::size_t>(best)] = 1;
        BallId id = family[static_cast<std::size_t>(best)];
        sel.chosen.push_back(id);
        sel.hull_cover.push_back(basis.hull(id));
        chosen_union = set_union_of(chosen_union, basis.ball(id).atoms);
    }

    AtomSet hull_union;
    for (BallId id : sel.hull_cover) hull_union = set_union_of(hull_union, basis.ball(id).atoms);
    if (!is_subset(target, hull_union))
        throw std::logic_error("greedy_disjoint_subcover: hulls fail to cover target "
                               "(hull map violates the two-balls relation)");
    return sel;
}

std::vector<BallId> economical_cover(const BallBasis& basis, const AtomSet& target) {
    if (target.empty()) throw std::invalid_argument("economical_cover: empty target");
    std::vector<BallId> family;
    for (AtomId a : target) family.push_back(basis.minimal_ball_containing(a));
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());

    CoverSelection sel = greedy_disjoint_subcover(basis, family, target);
    std::vector<BallId> hulls = sel.hull_cover;
    std::sort(hulls.begin(), hulls.end());
    hulls.erase(std::unique(hulls.begin(), hulls.end()), hulls.end());
    return hulls;
}

CardinalityBoundReport cardinality_bound_check(const BallBasis& basis, BallId a,
                                               const std::vector<BallId>& family, double c1,
                                               double c2) {
    CardinalityBoundReport report;
    report.family_size = static_cast<int>(family.size());

    const Ball& target = basis.ball(a);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const Ball& g = basis.ball(family[i]);
        if (!(g.measure >= c1 && g.measure <= c2)) {
            std::ostringstream os;
            os << "ball " << g.id << " has measure outside [c1, c2]";
            report.precondition_violations.push_back(os.str());
        }
        const Ball& g_hull = basis.ball(basis.hull(g.id));
        if (!sets_intersect(g_hull.atoms, target.atoms)) {
            std::ostringstream os;
            os << "hull of ball " << g.id << " does not meet the reference ball";
            report.precondition_violations.push_back(os.str());
        }
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (sets_intersect(g.atoms, basis.ball(family[j]).atoms)) {
                std::ostringstream os;
                os << "balls " << g.id << " and " << family[j] << " are not disjoint";
                report.precondition_violations.push_back(os.str());
            }
    }

    const double k = basis.K();
    report.bound = std::min(k * k * k * c2, k * target.measure) / c1;
    report.pass = report.precondition_violations.empty() &&
                  static_cast<double>(report.family_size) <= report.bound + 1e-12;
    if (family.empty()) report.pass = true;
    return report;
}

} // namespace bo
