#ifndef BO_OPERATORS_HPP
#define BO_OPERATORS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bo/ball_basis.hpp"
#include "bo/tree_basis.hpp"
#include "bo/weight.hpp"

namespace bo {

/// Dense kernel matrix: entry (x, y) multiplies f(y) mu(y) in T f(x).
using KernelMatrix = std::vector<std::vector<double>>;

/// Pointwise-evaluable subadditive operator.  apply_masked(f, mask) computes
/// T(f * 1_mask); the default masks f and calls apply.
class SublinearOperator {
public:
    explicit SublinearOperator(std::shared_ptr<const MeasureSpace> space)
        : space_(std::move(space)) {}
    virtual ~SublinearOperator() = default;

    const MeasureSpace& space() const { return *space_; }
    std::shared_ptr<const MeasureSpace> space_ptr() const { return space_; }

    virtual Function apply(const Function& f) const = 0;

    virtual Function apply_masked(const Function& f, const AtomSet& mask) const {
        return apply(f.masked(mask));
    }

    virtual bool is_linear() const { return false; }

    /// Exact kernel for linear instances: T f(x) = sum_y k(x,y) f(y) mu(y).
    virtual const KernelMatrix* kernel() const { return nullptr; }

    /// A kernel whose linear operator has the same weighted operator norms
    /// (the operator itself for linear T, the positive linearization for
    /// r = 1 sparse averaging operators).  Null when no such kernel exists.
    virtual const KernelMatrix* norm_equivalent_kernel() const { return kernel(); }

    /// Known exact localization constant, when the operator family has one.
    virtual std::optional<double> exact_localization_constant() const { return std::nullopt; }

    virtual std::string name() const { return "operator"; }

protected:
    Function kernel_apply(const KernelMatrix& k, const Function& f) const;

private:
    std::shared_ptr<const MeasureSpace> space_;
};

/// M_r f(x) = max over balls containing x of the r-average of f.
class MaximalOperator : public SublinearOperator {
public:
    MaximalOperator(std::shared_ptr<const BallBasis> basis, double r,
                    std::optional<Weight> measure_weight = std::nullopt);

    Function apply(const Function& f) const override;
    std::string name() const override { return measure_weight_ ? "weighted-maximal" : "maximal"; }

    const BallBasis& basis() const { return *basis_; }
    double r() const { return r_; }

private:
    std::shared_ptr<const BallBasis> basis_;
    double r_;
    std::optional<Weight> measure_weight_;
};

/// Martingale transform sum_A eps_A Delta_A f over internal tree nodes, with
/// the exact kernel exposed.
class MartingaleTransform : public SublinearOperator {
public:
    MartingaleTransform(std::shared_ptr<const TreeBasis> tree, std::map<BallId, int> signs);

    Function apply(const Function& f) const override;
    bool is_linear() const override { return true; }
    const KernelMatrix* kernel() const override { return &kernel_; }
    std::optional<double> exact_localization_constant() const override { return 0.0; }
    std::string name() const override { return "martingale"; }

    const TreeBasis& tree() const { return *tree_; }
    int sign(BallId internal_node) const { return signs_.at(internal_node); }

private:
    std::shared_ptr<const TreeBasis> tree_;
    std::map<BallId, int> signs_;
    KernelMatrix kernel_;
};

/// Linear operator given by an explicit kernel.  Off-diagonal entries must be
/// finite; the diagonal is fixed to zero.
class KernelOperator : public SublinearOperator {
public:
    KernelOperator(std::shared_ptr<const MeasureSpace> space, KernelMatrix kernel,
                   std::string name = "kernel");

    Function apply(const Function& f) const override;
    bool is_linear() const override { return true; }
    const KernelMatrix* kernel() const override { return &kernel_; }
    std::string name() const override { return name_; }

private:
    KernelMatrix kernel_;
    std::string name_;
};

/// Discrete Hilbert-type kernel on Z_N with unit masses 1/N:
/// K(i,j) = 1 / s(i,j) where s is the signed circular displacement, zero at
/// the antipode of even N.
std::shared_ptr<KernelOperator> discrete_hilbert(int n);

/// T* f(x) = sup over balls B containing x of |T(f 1_{X \ B*})(x)|.
class StarOperator : public SublinearOperator {
public:
    StarOperator(std::shared_ptr<const SublinearOperator> inner,
                 std::shared_ptr<const BallBasis> basis);

    Function apply(const Function& f) const override;
    Function apply_masked(const Function& f, const AtomSet& mask) const override;
    std::optional<double> exact_localization_constant() const override { return std::nullopt; }
    std::string name() const override { return inner_->name() + "*"; }

private:
    std::shared_ptr<const SublinearOperator> inner_;
    std::shared_ptr<const BallBasis> basis_;
};

std::shared_ptr<StarOperator> t_star(std::shared_ptr<const SublinearOperator> inner,
                                     std::shared_ptr<const BallBasis> basis);

/// T** f(x) = sup over balls B containing x of |T(f 1_{B^[1]})(x)|.
class LocalStarOperator : public SublinearOperator {
public:
    LocalStarOperator(std::shared_ptr<const SublinearOperator> inner,
                      std::shared_ptr<const BallBasis> basis);

    Function apply(const Function& f) const override;
    Function apply_masked(const Function& f, const AtomSet& mask) const override;
    std::string name() const override { return inner_->name() + "**"; }

private:
    std::shared_ptr<const SublinearOperator> inner_;
    std::shared_ptr<const BallBasis> basis_;
};

std::shared_ptr<LocalStarOperator> t_star_star(std::shared_ptr<const SublinearOperator> inner,
                                               std::shared_ptr<const BallBasis> basis);

/// T^G f(x) = max over modulators g of |T(g f)(x)|.
class MaximalModulation : public SublinearOperator {
public:
    MaximalModulation(std::shared_ptr<const SublinearOperator> inner,
                      std::vector<Function> modulators);

    Function apply(const Function& f) const override;
    Function apply_masked(const Function& f, const AtomSet& mask) const override;
    std::optional<double> exact_localization_constant() const override;
    std::string name() const override { return inner_->name() + "^G"; }

    double modulator_sup_norm() const { return sup_norm_; }

private:
    std::shared_ptr<const SublinearOperator> inner_;
    std::vector<Function> modulators_;
    double sup_norm_ = 0.0;
};

std::shared_ptr<MaximalModulation> maximal_modulation(
    std::shared_ptr<const SublinearOperator> inner, std::vector<Function> modulators);

/// The 2^depth Walsh sign patterns on 2^depth atoms.
std::vector<Function> walsh_modulators(const MeasureSpace& space);

} // namespace bo

#endif
