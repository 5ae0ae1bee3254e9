#ifndef BO_SPARSE_HPP
#define BO_SPARSE_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bo/ball_basis.hpp"
#include "bo/operators.hpp"

namespace bo {

/// Balls with pairwise-disjoint witness sets E_B certifying gamma-sparseness:
/// E_B inside B and mu(E_B) >= gamma mu(B).
struct SparseCollection {
    std::vector<BallId> balls;
    std::map<BallId, AtomSet> witnesses;
    double gamma = 1.0;
    std::optional<std::pair<std::vector<BallId>, std::vector<BallId>>> parity_split;

    bool witnesses_valid(const BallBasis& basis) const;
};

/// A_{S,r} f(x) = sum over S of <f>_{B,r} 1_B(x).
Function sparse_apply(const BallBasis& basis, const SparseCollection& s, const Function& f,
                      double r);

/// The sparse averaging operator as a pointwise-evaluable operator.  For
/// r = 1 it agrees on nonnegative inputs with the positive linear operator
/// whose kernel is sum_{B in S} 1_B(x) 1_B(y) / mu(B), and |A_S f| = A_S |f|,
/// so that kernel carries the same weighted operator norms.
class SparseAveragingOperator : public SublinearOperator {
public:
    SparseAveragingOperator(std::shared_ptr<const BallBasis> basis, SparseCollection s, double r);

    Function apply(const Function& f) const override;
    const KernelMatrix* norm_equivalent_kernel() const override {
        return r_ == 1.0 ? &positive_kernel_ : nullptr;
    }
    std::string name() const override { return "sparse-averaging"; }

    const SparseCollection& collection() const { return s_; }
    double r() const { return r_; }

private:
    std::shared_ptr<const BallBasis> basis_;
    SparseCollection s_;
    double r_;
    KernelMatrix positive_kernel_;
};

} // namespace bo

#endif
