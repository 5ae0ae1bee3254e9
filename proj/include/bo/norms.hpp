#ifndef BO_NORMS_HPP
#define BO_NORMS_HPP

#include <limits>

#include "bo/measure_space.hpp"
#include "bo/weight.hpp"

namespace bo {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Distribution function lambda_f(t) = mu{ |f| > t }.  Non-increasing and
/// right-continuous in t; on an atomic space it is a finite step function.
double distribution(const MeasureSpace& space, const Function& f, double t,
                    const Weight* w = nullptr);

/// Weighted L^p norm (sum |f|^p w dmu)^(1/p); w defaults to 1, p = infinity
/// gives the plain maximum of |f|.  Rejects p < 1.
double lp_norm(const MeasureSpace& space, const Function& f, double p,
               const Weight* w = nullptr);

/// Weak L^p quasinorm sup_{t>0} t * lambda_f(t)^(1/p).  The supremum over
/// continuous t is attained as a left limit at one of the finitely many
/// distinct values of |f|, so it is evaluated exactly as a finite maximum.
double weak_lp_norm(const MeasureSpace& space, const Function& f, double p,
                    const Weight* w = nullptr);

/// r-average over an atom set: ((1/mu(B)) sum_B |f|^r dmu)^(1/r).
/// Rejects empty B; monotone non-decreasing in r.
double avg(const MeasureSpace& space, const Function& f, const AtomSet& ball, double r);

} // namespace bo

#endif
