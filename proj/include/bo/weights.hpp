#ifndef BO_WEIGHTS_HPP
#define BO_WEIGHTS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bo/ball_basis.hpp"
#include "bo/csv.hpp"
#include "bo/delta.hpp"
#include "bo/sparse.hpp"
#include "bo/weight.hpp"

namespace bo {

/// [w]_{A_p} = sup over basis balls of (avg w)(avg w^{-1/(p-1)})^{p-1}.
/// Exact maximum over the finite family; requires p > 1.
double ap_characteristic(const BallBasis& basis, const Weight& w, double p);

/// Dual weight sigma = w^{-1/(p-1)}; requires p > 1.
Weight dual_weight(const Weight& w, double p);

struct NormEstimate {
    double value = 0.0;
    EstimateMethod method = EstimateMethod::search_lower_bound;
};

struct NormSearchOptions {
    int random_starts = 12;
    int ascent_sweeps = 4;
    std::uint64_t seed = 1;
};

enum class NormMethod { automatic, force_search };

/// Operator norm on L^p(w).  Exact (power iteration on the similarity
/// transform by the weighted mass diagonal, residual 1e-10) when p = 2 and
/// the operator carries a norm-equivalent kernel; otherwise a seeded search
/// lower bound.  force_search skips the exact route even when available.
NormEstimate weighted_operator_norm(const SublinearOperator& op, const BallBasis& basis,
                                    const Weight& w, double p,
                                    const NormSearchOptions& opts = {},
                                    NormMethod method = NormMethod::automatic);

struct WeightLemmaReport {
    bool ratio_bound_pass = true; // w(B)/w(A) <= 2^p [w] (mu(B)/mu(A))^p on nested pairs
    std::pair<BallId, BallId> ratio_witness{-1, -1};
    double weighted_maximal_weak_norm = 0.0; // estimate for M_w on L^1(w)
    double weak_bound = 0.0;                 // (2K)^p [w]_{A_p}
    bool weak_bound_pass = true;
    std::optional<double> besicovitch_bound; // certified D, when available
    bool besicovitch_pass = true;
    double dual_identity_gap = 0.0; // relative gap in [sigma]_{A_q} = [w]^{1/(p-1)}
};

/// Nested-pair ratio bound (exhaustive), weak-type constant of the w-measure
/// maximal function over seeded samples, and the dual-characteristic
/// identity.  Failures are report entries.
WeightLemmaReport check_weight_lemmas(const BallBasis& basis, const Weight& w, double p,
                                      int trials = 64, std::uint64_t seed = 1);

struct SparseWeightedReport {
    double norm = 0.0;
    EstimateMethod norm_method = EstimateMethod::search_lower_bound;
    double characteristic = 0.0;
    double general_exponent = 0.0;   // max((p+2)/(p(p-1)), (3p-2)/p)
    double besicovitch_exponent = 0.0; // max(1, 1/(p-1))
    double general_c = 0.0;          // norm / (gamma^{ -1 } [w]^general_exponent)
    std::optional<double> besicovitch_c;
    double duality_gap = 0.0;        // |norm_p(w) - norm_q(sigma)| / norm
    bool duality_within_tolerance = true;
};

/// Weighted norm of the sparse operator with the theorem-shaped bounds: the
/// smallest working constants are recorded for regression tracking, and the
/// p/q duality is evaluated on both sides (exact at p = 2).
SparseWeightedReport sparse_weighted_bound_check(const std::shared_ptr<const BallBasis>& basis,
                                                 const SparseCollection& s, const Weight& w,
                                                 double p, double gamma, double r = 1.0,
                                                 const NormSearchOptions& opts = {});

struct BuckleyRow {
    double a = 0.0;
    double characteristic = 0.0;
    double maximal_norm = 0.0; // search lower bound on L^p(w_a)
    double ratio = 0.0;        // maximal_norm / characteristic^(1/(p-1))
};

/// Power-weight sweep w_a(atom_j) = ((j + 0.5)/n)^a over the exponent grid.
std::vector<BuckleyRow> buckley_sweep(const std::shared_ptr<const BallBasis>& basis, double p,
                                      const std::vector<double>& exponents,
                                      const NormSearchOptions& opts = {});

CsvTable buckley_csv(const std::vector<BuckleyRow>& rows);

/// Midpoint-sampled power weight on n atoms.
Weight power_weight(int atom_count, double exponent);

} // namespace bo

#endif
