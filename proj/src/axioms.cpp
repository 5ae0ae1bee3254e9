#include "bo/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace bo {

namespace {

// Backtracking search for a subcover of the family (given by indices into
// basis balls) whose pointwise overlap stays within `limit`.  Decrements the
// shared node budget; returns false when it runs out.
class SubcoverSearch {
public:
    SubcoverSearch(const BallBasis& basis, const std::vector<BallId>& family, int limit,
                   long long* budget)
        : basis_(basis), family_(family), limit_(limit), budget_(budget) {
        const int n = basis_.space().atom_count();
        overlap_.assign(static_cast<std::size_t>(n), 0);
        covered_.assign(static_cast<std::size_t>(n), 0);
        AtomSet u;
        for (BallId id : family_) u = set_union_of(u, basis_.ball(id).atoms);
        target_ = u;
    }

    bool run() { return extend(0); }

private:
    bool extend(std::size_t from) {
        if (*budget_ <= 0) return false;
        --*budget_;
        AtomId pick = -1;
        for (AtomId a : target_)
            if (!covered_[static_cast<std::size_t>(a)]) { pick = a; break; }
        if (pick < 0) return true;
        (void)from;
        for (BallId id : family_) {
            const Ball& b = basis_.ball(id);
            if (!set_contains(b.atoms, pick)) continue;
            bool ok = true;
            for (AtomId a : b.atoms)
                if (overlap_[static_cast<std::size_t>(a)] + 1 > limit_) { ok = false; break; }
            if (!ok) continue;
            for (AtomId a : b.atoms) {
                ++overlap_[static_cast<std::size_t>(a)];
                ++covered_[static_cast<std::size_t>(a)];
            }
            if (extend(from)) return true;
            for (AtomId a : b.atoms) {
                --overlap_[static_cast<std::size_t>(a)];
                --covered_[static_cast<std::size_t>(a)];
            }
            if (*budget_ <= 0) return false;
        }
        return false;
    }

    const BallBasis& basis_;
    const std::vector<BallId>& family_;
    int limit_;
    long long* budget_;
    std::vector<int> overlap_;
    std::vector<int> covered_;
    AtomSet target_;
};

int min_subcover_overlap(const BallBasis& basis, const std::vector<BallId>& family,
                         long long* budget, bool* exhausted) {
    for (int limit = 1; limit <= static_cast<int>(family.size()); ++limit) {
        SubcoverSearch search(basis, family, limit, budget);
        if (search.run()) return limit;
        if (*budget <= 0) {
            *exhausted = true;
            return limit;
        }
    }
    return static_cast<int>(family.size());
}

int greedy_subcover_overlap(const BallBasis& basis, std::vector<BallId> family) {
    std::sort(family.begin(), family.end(), [&](BallId a, BallId b) {
        double ma = basis.ball(a).measure, mb = basis.ball(b).measure;
        if (ma != mb) return ma > mb;
        return a < b;
    });
    const int n = basis.space().atom_count();
    std::vector<int> overlap(static_cast<std::size_t>(n), 0);
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (BallId id : family) {
        const Ball& b = basis.ball(id);
        bool adds = false;
        for (AtomId a : b.atoms)
            if (!covered[static_cast<std::size_t>(a)]) { adds = true; break; }
        if (!adds) continue;
        for (AtomId a : b.atoms) {
            ++overlap[static_cast<std::size_t>(a)];
            covered[static_cast<std::size_t>(a)] = 1;
        }
    }
    int d = 1;
    for (int v : overlap) d = std::max(d, v);
    return d;
}

BesicovitchResult certify_besicovitch(const BallBasis& basis, const AxiomCheckOptions& opts) {
    BesicovitchResult result;
    if (is_laminar(basis)) {
        result.value = 1;
        result.kind = BesicovitchResult::Kind::laminar_certificate;
        return result;
    }
    const int count = basis.ball_count();
    if (count <= opts.exhaustive_besicovitch_limit) {
        long long budget = opts.besicovitch_node_budget;
        bool exhausted = false;
        int worst = 1;
        for (unsigned mask = 1; mask < (1u << count) && !exhausted; ++mask) {
            std::vector<BallId> family;
            for (int i = 0; i < count; ++i)
                if (mask & (1u << i)) family.push_back(i);
            worst = std::max(worst, min_subcover_overlap(basis, family, &budget, &exhausted));
        }
        result.value = worst;
        result.kind = exhausted ? BesicovitchResult::Kind::greedy_upper_estimate
                                : BesicovitchResult::Kind::exhaustive_certificate;
        result.budget_exhausted = exhausted;
        return result;
    }

    // Too many balls for the exhaustive sweep: greedy bound over the full
    // family and over measure-scale slices, reported as an estimate only.
    int worst = greedy_subcover_overlap(basis, [&] {
        std::vector<BallId> all(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) all[static_cast<std::size_t>(i)] = i;
        return all;
    }());
    double min_mu = basis.ball(0).measure;
    for (const Ball& b : basis.balls()) min_mu = std::min(min_mu, b.measure);
    for (double lo = min_mu; lo <= basis.space().total_mass() * 2.0; lo *= 2.0) {
        std::vector<BallId> slice;
        for (const Ball& b : basis.balls())
            if (b.measure >= lo && b.measure < 2.0 * lo) slice.push_back(b.id);
        if (!slice.empty()) worst = std::max(worst, greedy_subcover_overlap(basis, slice));
    }
    result.value = worst;
    result.kind = BesicovitchResult::Kind::greedy_upper_estimate;
    return result;
}

} // namespace

bool is_laminar(const BallBasis& basis) {
    const auto& balls = basis.balls();
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            const AtomSet& a = balls[i].atoms;
            const AtomSet& b = balls[j].atoms;
            if (!sets_intersect(a, b)) continue;
            if (!is_subset(a, b) && !is_subset(b, a)) return false;
        }
    return true;
}

AxiomReport verify_axioms(const BallBasis& basis, const AxiomCheckOptions& opts) {
    AxiomReport report;
    const MeasureSpace& space = basis.space();
    const double tol = 1e-12;

    // B1: nonempty balls with positive finite measure, cached sums consistent.
    for (const Ball& b : basis.balls()) {
        double mu = space.measure(b.atoms);
        if (b.atoms.empty() || !(b.measure > 0.0) || !std::isfinite(b.measure) ||
            std::abs(mu - b.measure) > tol * std::max(1.0, mu)) {
            report.b1_pass = false;
            std::ostringstream os;
            os << "ball " << b.id << " has inconsistent or non-positive measure";
            report.b1_witness = os.str();
            break;
        }
    }

    // B2: every pair of atoms shares a ball.
    for (AtomId x = 0; x < space.atom_count() && report.b2_pass; ++x)
        for (AtomId y = x; y < space.atom_count(); ++y) {
            bool found = false;
            for (BallId id : basis.balls_containing(x))
                if (basis.contains_atom(id, y)) { found = true; break; }
            if (!found) {
                report.b2_pass = false;
                report.b2_witness = {x, y};
                break;
            }
        }

    // B3 is immediate on atomic spaces; record singleton availability.
    report.every_atom_has_singleton_ball = true;
    for (AtomId a = 0; a < space.atom_count(); ++a)
        if (basis.ball(basis.minimal_ball_containing(a)).atoms.size() != 1)
            report.every_atom_has_singleton_ball = false;

    // B4 containment and the two-balls relation, exhaustively.
    for (const Ball& b : basis.balls()) {
        const Ball& hull = basis.ball(basis.hull(b.id));
        for (const Ball& a : basis.balls()) {
            if (a.measure <= 2.0 * b.measure && sets_intersect(a.atoms, b.atoms) &&
                !is_subset(a.atoms, hull.atoms)) {
                if (report.b4_containment_pass) {
                    report.b4_containment_pass = false;
                    report.b4_witness = {b.id, a.id};
                }
                if (report.two_balls_pass) {
                    report.two_balls_pass = false;
                    report.two_balls_witness = {a.id, b.id};
                }
            }
        }
    }

    report.measured_K = basis.K();

    // Hull-level growth with the measured constant, n <= 4.
    for (const Ball& b : basis.balls()) {
        double bound = b.measure;
        BallId cur = b.id;
        for (int lvl = 1; lvl <= 4; ++lvl) {
            cur = basis.hull(cur);
            bound *= report.measured_K;
            if (basis.ball(cur).measure > bound * (1.0 + tol)) report.hull_growth_pass = false;
        }
    }

    report.doubling_eta = measured_doubling_eta(basis);

    report.besicovitch = certify_besicovitch(basis, opts);
    return report;
}

double measured_doubling_eta(const BallBasis& basis) {
    double eta = 1.0;
    const AtomSet& everything = basis.ball(basis.whole_space_id()).atoms;
    for (const Ball& a : basis.balls()) {
        if (basis.ball(basis.hull(a.id)).atoms == everything) continue;
        double best = 0.0;
        bool found = false;
        for (const Ball& b : basis.balls()) {
            if (b.id == a.id || b.atoms == a.atoms) continue;
            if (!is_subset(a.atoms, b.atoms)) continue;
            if (!found || b.measure < best) {
                best = b.measure;
                found = true;
            }
        }
        if (found) eta = std::max(eta, best / a.measure);
    }
    return eta;
}

} // namespace bo
