#ifndef BO_DELTA_HPP
#define BO_DELTA_HPP

#include <cstdint>
#include <string>

#include "bo/ball_basis.hpp"
#include "bo/operators.hpp"

namespace bo {

enum class EstimateMethod { exact, closed_form, search_lower_bound };

inline const char* method_tag(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::exact: return "exact";
        case EstimateMethod::closed_form: return "closed-form";
        default: return "search lower bound";
    }
}

struct DeltaResult {
    double value = 0.0;
    EstimateMethod method = EstimateMethod::search_lower_bound;
};

struct DeltaOptions {
    std::uint64_t seed = 1;
    int random_probes = 32;
    int ascent_sweeps = 3;
};

/// Delta(A,B) = sup over x in A and f of
///   |T(f 1_{B^[1] \ A^[1]})(x)| / <f>_{B^[1], r},    requires A subset of B.
///
/// For linear kernel operators at r = 1 the supremum over f is attained on
/// single-atom inputs (the numerator is linear in f while the denominator is
/// one fixed average, so mass concentrates on the best atom), giving the
/// closed form mu(B^[1]) * max |kernel| over A x (B^[1] \ A^[1]).
/// Otherwise the result is a lower bound from single-atom probes, random sign
/// patterns and coordinate ascent, and is tagged as such.
DeltaResult delta(const SublinearOperator& op, const BallBasis& basis, BallId a, BallId b,
                  double r, const DeltaOptions& opts = {});

/// Closed-form masked ratio for linear operators at r = 1:
///   sup_{x in A_atoms, f} |T(f 1_mask)(x)| / <f>_{P,1}
///     = mu(P) * max over A_atoms x mask of |kernel|,  valid when mask is
/// inside P.  Used for parent-step connectivity checks.
double linear_masked_ratio(const SublinearOperator& op, const MeasureSpace& space,
                           const AtomSet& eval_atoms, const AtomSet& mask,
                           const AtomSet& normalizing_ball);

} // namespace bo

#endif
