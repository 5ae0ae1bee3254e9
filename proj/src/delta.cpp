#include "bo/delta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bo/norms.hpp"
#include "bo/rng.hpp"

namespace bo {

namespace {

double masked_ratio(const SublinearOperator& op, const MeasureSpace& space, const AtomSet& eval_atoms,
                    const AtomSet& mask, const AtomSet& normalizing_ball, double r,
                    const Function& f) {
    double denom = avg(space, f, normalizing_ball, r);
    if (denom <= 0.0) return 0.0;
    Function tf = op.apply_masked(f, mask);
    double num = 0.0;
    for (AtomId x : eval_atoms) num = std::max(num, std::abs(tf[x]));
    return num / denom;
}

} // namespace

double linear_masked_ratio(const SublinearOperator& op, const MeasureSpace& space,
                           const AtomSet& eval_atoms, const AtomSet& mask,
                           const AtomSet& normalizing_ball) {
    const KernelMatrix* k = op.kernel();
    if (!k) throw std::invalid_argument("linear_masked_ratio: operator has no kernel");
    if (!is_subset(mask, normalizing_ball))
        throw std::invalid_argument("linear_masked_ratio: mask must lie inside the normalizing ball");
    double mu = space.measure(normalizing_ball);
    double best = 0.0;
    for (AtomId x : eval_atoms)
        for (AtomId y : mask)
            best = std::max(best, std::abs((*k)[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]));
    return mu * best;
}

DeltaResult delta(const SublinearOperator& op, const BallBasis& basis, BallId a, BallId b,
                  double r, const DeltaOptions& opts) {
    const Ball& ball_a = basis.ball(a);
    const Ball& ball_b = basis.ball(b);
    if (!is_subset(ball_a.atoms, ball_b.atoms))
        throw std::invalid_argument("delta: A must be a subset of B");

    const MeasureSpace& space = basis.space();
    const AtomSet& b1 = basis.ball(basis.hull(b)).atoms;
    const AtomSet& a1 = basis.ball(basis.hull(a)).atoms;
    AtomSet mask = set_difference_of(b1, a1);

    DeltaResult result;
    if (mask.empty()) {
        result.value = 0.0;
        result.method = (op.kernel() && r == 1.0) ? EstimateMethod::closed_form
                                                  : EstimateMethod::search_lower_bound;
        return result;
    }

    if (op.kernel() && r == 1.0) {
        result.value = linear_masked_ratio(op, space, ball_a.atoms, mask, b1);
        result.method = EstimateMethod::closed_form;
        return result;
    }

    // Lower bound: single-atom probes, random signs on the mask, coordinate ascent.
    double best = 0.0;
    Function best_f(space, 0.0);
    for (AtomId y : mask) {
        Function f(space, 0.0);
        f[y] = 1.0;
        double v = masked_ratio(op, space, ball_a.atoms, mask, b1, r, f);
        if (v > best) {
            best = v;
            best_f = f;
        }
    }
    Rng rng(opts.seed);
    for (int t = 0; t < opts.random_probes; ++t) {
        Function f(space, 0.0);
        for (AtomId y : mask) f[y] = rng.sign() * rng.uniform(0.25, 1.0);
        double v = masked_ratio(op, space, ball_a.atoms, mask, b1, r, f);
        if (v > best) {
            best = v;
            best_f = f;
        }
    }
    const double factors[] = {0.0, 0.5, 2.0, -1.0};
    for (int sweep = 0; sweep < opts.ascent_sweeps; ++sweep) {
        for (AtomId y : mask) {
            double base = best_f[y];
            for (double c : factors) {
                Function f = best_f;
                f[y] = (c == -1.0) ? -base : c * base + ((base == 0.0 && c != 0.0) ? 0.5 : 0.0);
                double v = masked_ratio(op, space, ball_a.atoms, mask, b1, r, f);
                if (v > best) {
                    best = v;
                    best_f = f;
                }
            }
        }
    }
    result.value = best;
    result.method = EstimateMethod::search_lower_bound;
    return result;
}

} // namespace bo
