#include "bo/bo_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bo/norms.hpp"
#include "bo/rng.hpp"

namespace bo {

namespace {

double localization_ratio(const SublinearOperator& op, const BallBasis& basis, const Ball& b,
                          const AtomSet& outside, double r, const Function& f) {
    double denom = avg_star(basis, f, b.id, r);
    if (denom <= 0.0) return 0.0;
    Function tf = op.apply_masked(f, outside);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (AtomId x : b.atoms) {
        lo = std::min(lo, tf[x]);
        hi = std::max(hi, tf[x]);
    }
    return (hi - lo) / denom;
}

} // namespace

double weak_norm_estimate(const SublinearOperator& op, double r, int trials, std::uint64_t seed) {
    const MeasureSpace& space = op.space();
    double best = 0.0;
    auto probe = [&](const Function& f) {
        double denom = lp_norm(space, f, r);
        if (denom <= 0.0) return;
        best = std::max(best, weak_lp_norm(space, op.apply(f), r) / denom);
    };
    for (AtomId y = 0; y < space.atom_count(); ++y) {
        Function f(space, 0.0);
        f[y] = 1.0;
        probe(f);
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        probe(rng.function(space));
        Function s(space, 0.0);
        for (AtomId a = 0; a < space.atom_count(); ++a) s[a] = rng.sign();
        probe(s);
        probe(rng.spiky_function(space, 1 + t % 3, 8.0));
    }
    return best;
}

BOReport verify_bo(const std::shared_ptr<const SublinearOperator>& op,
                   const std::shared_ptr<const BallBasis>& basis, double r,
                   const BOVerifyOptions& opts) {
    BOReport report;
    const MeasureSpace& space = op->space();
    const AtomSet everything = space.all_atoms();
    Rng rng(opts.seed);

    // Localization constant.
    if (auto exact = op->exact_localization_constant()) {
        report.l1_estimate = *exact;
        report.l1_method = EstimateMethod::exact;
    } else {
        double best = 0.0;
        BallId witness = -1;
        for (const Ball& b : basis->balls()) {
            if (b.atoms.size() < 2) continue;
            const AtomSet& hull_atoms = basis->ball(basis->hull(b.id)).atoms;
            AtomSet outside = set_difference_of(everything, hull_atoms);
            if (outside.empty()) continue;
            double local = 0.0;
            for (AtomId y : outside) {
                Function f(space, 0.0);
                f[y] = 1.0;
                local = std::max(local, localization_ratio(*op, *basis, b, outside, r, f));
            }
            for (int t = 0; t < opts.trials; ++t) {
                Function f(space, 0.0);
                for (AtomId y : outside) f[y] = rng.sign() * rng.uniform(0.25, 1.0);
                local = std::max(local, localization_ratio(*op, *basis, b, outside, r, f));
            }
            if (local > best) {
                best = local;
                witness = b.id;
            }
        }
        report.l1_estimate = best;
        report.l1_method = EstimateMethod::search_lower_bound;
        report.l1_witness_ball = witness;
    }

    // Connectivity constant: worst ball's best strict superset.
    {
        const AtomSet& whole = basis->ball(basis->whole_space_id()).atoms;
        double worst = 0.0;
        BallId witness = -1;
        bool all_closed = true;
        for (const Ball& a : basis->balls()) {
            if (basis->ball(basis->hull(a.id)).atoms == whole) continue;
            double best_b = std::numeric_limits<double>::infinity();
            bool found = false;
            for (const Ball& b : basis->balls()) {
                if (b.atoms.size() <= a.atoms.size() || !is_subset(a.atoms, b.atoms)) continue;
                DeltaOptions dopts;
                dopts.seed = rng.raw();
                DeltaResult d = delta(*op, *basis, a.id, b.id, r, dopts);
                if (d.method != EstimateMethod::closed_form) all_closed = false;
                if (d.value < best_b) best_b = d.value;
                found = true;
            }
            if (!found) continue;
            if (best_b > worst) {
                worst = best_b;
                witness = a.id;
            }
        }
        report.l2_estimate = worst;
        report.l2_method = all_closed ? EstimateMethod::closed_form
                                      : EstimateMethod::search_lower_bound;
        report.l2_witness_ball = witness;
    }

    report.weak_norm = weak_norm_estimate(*op, r, opts.trials, rng.raw());
    report.weak_method = EstimateMethod::search_lower_bound;

    // Delta growth bound over all nested pairs.
    if (opts.run_l4_check) {
        double base = report.l1_estimate + report.weak_norm;
        double worst = 0.0;
        bool finite = true;
        for (const Ball& a : basis->balls())
            for (const Ball& b : basis->balls()) {
                if (a.id == b.id || !is_subset(a.atoms, b.atoms)) continue;
                DeltaOptions dopts;
                dopts.seed = opts.seed ^ (static_cast<std::uint64_t>(a.id) << 20) ^
                             static_cast<std::uint64_t>(b.id);
                DeltaResult d = delta(*op, *basis, a.id, b.id, r, dopts);
                double denom = base * std::pow(b.measure / a.measure, 1.0 / r);
                if (denom <= 0.0) {
                    if (d.value > 0.0) finite = false;
                    continue;
                }
                worst = std::max(worst, d.value / denom);
            }
        report.l4_max_ratio = worst;
        report.l4_finite = finite;
    }

    // Delta agreement between T and T* on sampled nested pairs.
    if (opts.run_t6_check) {
        auto star = t_star(op, basis);
        std::vector<std::pair<BallId, BallId>> pairs;
        for (const Ball& a : basis->balls())
            for (const Ball& b : basis->balls())
                if (a.id != b.id && is_subset(a.atoms, b.atoms)) pairs.emplace_back(a.id, b.id);
        std::size_t step = std::max<std::size_t>(1, pairs.size() / static_cast<std::size_t>(
                                                        std::max(1, opts.t6_sample_pairs)));
        double gap = 0.0;
        bool sound = true;
        for (std::size_t i = 0; i < pairs.size(); i += step) {
            auto [a, b] = pairs[i];
            DeltaOptions dopts;
            dopts.seed = opts.seed + i;
            DeltaResult dt = delta(*op, *basis, a, b, r, dopts);
            DeltaResult ds = delta(*star, *basis, a, b, r, dopts);
            gap = std::max(gap, std::abs(ds.value - dt.value));
            if (dt.method == EstimateMethod::closed_form && ds.value > dt.value * (1.0 + 1e-9) + 1e-12)
                sound = false;
        }
        report.t6_max_gap = gap;
        report.t6_sound = sound;
    }

    if (auto eta = basis->doubling_eta()) {
        double denom = std::pow(*eta, 1.0 / r) * (report.l1_estimate + report.weak_norm);
        if (denom > 0.0) report.t4_ratio = report.l2_estimate / denom;
    }

    return report;
}

} // namespace bo
