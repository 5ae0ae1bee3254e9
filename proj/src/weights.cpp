#include "bo/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bo/norms.hpp"
#include "bo/operators.hpp"
#include "bo/rng.hpp"

namespace bo {

namespace {

double ball_average(const MeasureSpace& space, const AtomSet& atoms,
                    const std::vector<double>& values) {
    double num = 0.0, den = 0.0;
    for (AtomId a : atoms) {
        num += values[static_cast<std::size_t>(a)] * space.mass(a);
        den += space.mass(a);
    }
    return num / den;
}

// Largest singular value of the weighted similarity transform
// D^{1/2} M D^{-1/2}, D = diag(w mu), via power iteration on the Gram matrix.
double exact_l2_weighted_norm(const KernelMatrix& kernel, const MeasureSpace& space,
                              const Weight& w) {
    const int n = space.atom_count();
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = std::sqrt(w[i] * space.mass(i));

    // A(i,j) = d_i * kernel(i,j) mu_j / d_j
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                d[static_cast<std::size_t>(i)] *
                kernel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * space.mass(j) /
                d[static_cast<std::size_t>(j)];

    auto mat_vec = [&](const std::vector<std::vector<double>>& m, const std::vector<double>& v) {
        std::vector<double> out(v.size(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
        return out;
    };
    auto transpose_vec = [&](const std::vector<std::vector<double>>& m,
                             const std::vector<double>& v) {
        std::vector<double> out(v.size(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) out[j] += m[i][j] * v[i];
        return out;
    };

    std::vector<double> v(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    v[0] += 1e-3; // break symmetry against eigenvectors orthogonal to constants
    double lambda = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> gv = transpose_vec(a, mat_vec(a, v));
        double norm = 0.0;
        for (double x : gv) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        for (auto& x : gv) x /= norm;
        double new_lambda = 0.0;
        std::vector<double> ggv = transpose_vec(a, mat_vec(a, gv));
        for (std::size_t i = 0; i < gv.size(); ++i) new_lambda += gv[i] * ggv[i];
        double residual = 0.0;
        for (std::size_t i = 0; i < gv.size(); ++i) {
            double rterm = ggv[i] - new_lambda * gv[i];
            residual += rterm * rterm;
        }
        v = gv;
        lambda = new_lambda;
        if (std::sqrt(residual) <= 1e-10 * std::max(1.0, lambda)) break;
    }
    return std::sqrt(std::max(0.0, lambda));
}

double ratio_on(const SublinearOperator& op, const MeasureSpace& space, const Weight& w, double p,
                const Function& f) {
    double den = lp_norm(space, f, p, &w);
    if (den <= 0.0) return 0.0;
    return lp_norm(space, op.apply(f), p, &w) / den;
}

} // namespace

double ap_characteristic(const BallBasis& basis, const Weight& w, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("ap_characteristic: p must exceed 1");
    const MeasureSpace& space = basis.space();
    const int n = space.atom_count();
    std::vector<double> wv(w.values());
    std::vector<double> dual(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dual[static_cast<std::size_t>(i)] = std::pow(wv[static_cast<std::size_t>(i)], -1.0 / (p - 1.0));
    double best = 0.0;
    for (const Ball& b : basis.balls()) {
        double lhs = ball_average(space, b.atoms, wv);
        double rhs = std::pow(ball_average(space, b.atoms, dual), p - 1.0);
        best = std::max(best, lhs * rhs);
    }
    return best;
}

Weight dual_weight(const Weight& w, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("dual_weight: p must exceed 1");
    std::vector<double> v(w.values());
    for (auto& x : v) x = std::pow(x, -1.0 / (p - 1.0));
    return Weight(std::move(v));
}

NormEstimate weighted_operator_norm(const SublinearOperator& op, const BallBasis& basis,
                                    const Weight& w, double p, const NormSearchOptions& opts,
                                    NormMethod method) {
    if (!(p >= 1.0)) throw std::invalid_argument("weighted_operator_norm: p must be >= 1");
    const MeasureSpace& space = basis.space();
    NormEstimate est;
    if (p == 2.0 && method == NormMethod::automatic) {
        if (const KernelMatrix* kernel = op.norm_equivalent_kernel()) {
            est.value = exact_l2_weighted_norm(*kernel, space, w);
            est.method = EstimateMethod::exact;
            return est;
        }
    }

    double best = 0.0;
    Function best_f(space, 0.0);
    for (AtomId y = 0; y < space.atom_count(); ++y) {
        Function f(space, 0.0);
        f[y] = 1.0;
        double v = ratio_on(op, space, w, p, f);
        if (v > best) {
            best = v;
            best_f = f;
        }
    }
    {
        Function ones(space, 1.0);
        double v = ratio_on(op, space, w, p, ones);
        if (v > best) {
            best = v;
            best_f = ones;
        }
    }
    Rng rng(opts.seed);
    for (int t = 0; t < opts.random_starts; ++t) {
        Function f = rng.function(space);
        double v = ratio_on(op, space, w, p, f);
        if (v > best) {
            best = v;
            best_f = f;
        }
    }
    const double factors[] = {0.0, 0.5, 1.5, 2.0, -1.0};
    for (int sweep = 0; sweep < opts.ascent_sweeps; ++sweep)
        for (AtomId y = 0; y < space.atom_count(); ++y) {
            double base = best_f[y];
            for (double c : factors) {
                Function f = best_f;
                f[y] = (c == -1.0) ? -base : c * base + ((base == 0.0 && c != 0.0) ? 0.25 : 0.0);
                double v = ratio_on(op, space, w, p, f);
                if (v > best) {
                    best = v;
                    best_f = f;
                }
            }
        }
    est.value = best;
    est.method = EstimateMethod::search_lower_bound;
    return est;
}

WeightLemmaReport check_weight_lemmas(const BallBasis& basis, const Weight& w, double p,
                                      int trials, std::uint64_t seed) {
    if (!(p > 1.0)) throw std::invalid_argument("check_weight_lemmas: p must exceed 1");
    WeightLemmaReport report;
    const MeasureSpace& space = basis.space();
    const double characteristic = ap_characteristic(basis, w, p);

    for (const Ball& a : basis.balls()) {
        for (const Ball& b : basis.balls()) {
            if (a.id == b.id || !is_subset(a.atoms, b.atoms)) continue;
            double lhs = w.measure(space, b.atoms) / w.measure(space, a.atoms);
            double rhs = std::pow(2.0, p) * characteristic * std::pow(b.measure / a.measure, p);
            if (lhs > rhs * (1.0 + 1e-12)) {
                report.ratio_bound_pass = false;
                report.ratio_witness = {a.id, b.id};
            }
        }
    }

    // Weak-type constant of the w-measure maximal function, in the w-measure.
    auto basis_ptr = std::make_shared<BallBasis>(basis);
    MaximalOperator mw(basis_ptr, 1.0, w);
    double worst = 0.0;
    auto probe = [&](const Function& f) {
        double den = lp_norm(space, f, 1.0, &w);
        if (den <= 0.0) return;
        worst = std::max(worst, weak_lp_norm(space, mw.apply(f), 1.0, &w) / den);
    };
    for (AtomId y = 0; y < space.atom_count(); ++y) {
        Function f(space, 0.0);
        f[y] = 1.0;
        probe(f);
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        probe(rng.function(space));
        probe(rng.spiky_function(space, 1 + t % 2, 16.0));
    }
    report.weighted_maximal_weak_norm = worst;
    report.weak_bound = std::pow(2.0 * basis.K(), p) * characteristic;
    report.weak_bound_pass = worst <= report.weak_bound * (1.0 + 1e-9);
    if (basis.besicovitch_D()) {
        report.besicovitch_bound = static_cast<double>(*basis.besicovitch_D());
        report.besicovitch_pass = worst <= *report.besicovitch_bound * (1.0 + 1e-9);
    }

    const double q = p / (p - 1.0);
    double sigma_char = ap_characteristic(basis, dual_weight(w, p), q);
    double expected = std::pow(characteristic, 1.0 / (p - 1.0));
    report.dual_identity_gap = std::abs(sigma_char - expected) / std::max(1.0, expected);
    return report;
}

SparseWeightedReport sparse_weighted_bound_check(const std::shared_ptr<const BallBasis>& basis,
                                                 const SparseCollection& s, const Weight& w,
                                                 double p, double gamma, double r,
                                                 const NormSearchOptions& opts) {
    if (!(p > 1.0)) throw std::invalid_argument("sparse_weighted_bound_check: p must exceed 1");
    SparseWeightedReport report;
    SparseAveragingOperator op(basis, s, r);
    NormEstimate norm = weighted_operator_norm(op, *basis, w, p, opts);
    report.norm = norm.value;
    report.norm_method = norm.method;
    report.characteristic = ap_characteristic(*basis, w, p);

    report.general_exponent =
        std::max((p + 2.0) / (p * (p - 1.0)), (3.0 * p - 2.0) / p);
    report.besicovitch_exponent = std::max(1.0, 1.0 / (p - 1.0));
    double scale = std::pow(report.characteristic, report.general_exponent) / gamma;
    report.general_c = report.norm / scale;
    if (auto d = basis->besicovitch_D()) {
        double dscale = std::pow(static_cast<double>(*d), std::max(1.0 / (p - 1.0), p - 1.0)) *
                        std::pow(report.characteristic, report.besicovitch_exponent) / gamma;
        report.besicovitch_c = report.norm / dscale;
    }

    const double q = p / (p - 1.0);
    Weight sigma = dual_weight(w, p);
    NormSearchOptions dual_opts = opts;
    dual_opts.seed = opts.seed + 1;
    NormEstimate dual_norm = weighted_operator_norm(op, *basis, sigma, q, dual_opts);
    double denom = std::max(report.norm, dual_norm.value);
    report.duality_gap = denom > 0.0 ? std::abs(report.norm - dual_norm.value) / denom : 0.0;
    double tolerance = (p == 2.0 && norm.method == EstimateMethod::exact) ? 1e-8 : 0.05;
    report.duality_within_tolerance = report.duality_gap <= tolerance;
    return report;
}

Weight power_weight(int atom_count, double exponent) {
    std::vector<double> v(static_cast<std::size_t>(atom_count));
    for (int j = 0; j < atom_count; ++j)
        v[static_cast<std::size_t>(j)] =
            std::pow((j + 0.5) / static_cast<double>(atom_count), exponent);
    return Weight(std::move(v));
}

std::vector<BuckleyRow> buckley_sweep(const std::shared_ptr<const BallBasis>& basis, double p,
                                      const std::vector<double>& exponents,
                                      const NormSearchOptions& opts) {
    if (!(p > 1.0)) throw std::invalid_argument("buckley_sweep: p must exceed 1");
    std::vector<BuckleyRow> rows;
    MaximalOperator maximal(basis, 1.0);
    for (double a : exponents) {
        BuckleyRow row;
        row.a = a;
        Weight w = power_weight(basis->space().atom_count(), a);
        row.characteristic = ap_characteristic(*basis, w, p);
        NormSearchOptions o = opts;
        o.seed = opts.seed ^ static_cast<std::uint64_t>(std::llround(a * 1024.0) + (1 << 20));
        row.maximal_norm = weighted_operator_norm(maximal, *basis, w, p, o).value;
        row.ratio = row.maximal_norm / std::pow(row.characteristic, 1.0 / (p - 1.0));
        rows.push_back(row);
    }
    return rows;
}

CsvTable buckley_csv(const std::vector<BuckleyRow>& rows) {
    CsvTable table({"a", "ap_characteristic", "maximal_norm_lower_bound", "ratio"});
    for (const auto& row : rows)
        table.add_row({CsvTable::number(row.a), CsvTable::number(row.characteristic),
                       CsvTable::number(row.maximal_norm), CsvTable::number(row.ratio)});
    return table;
}

} // namespace bo
