#include "bo/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bo/norms.hpp"

namespace bo {

Function SublinearOperator::kernel_apply(const KernelMatrix& k, const Function& f) const {
    const int n = space().atom_count();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        double s = 0.0;
        const auto& row = k[static_cast<std::size_t>(x)];
        for (int y = 0; y < n; ++y) s += row[static_cast<std::size_t>(y)] * f[y] * space().mass(y);
        out[static_cast<std::size_t>(x)] = s;
    }
    return Function(std::move(out));
}

MaximalOperator::MaximalOperator(std::shared_ptr<const BallBasis> basis, double r,
                                 std::optional<Weight> measure_weight)
    : SublinearOperator(basis->space_ptr()), basis_(std::move(basis)), r_(r),
      measure_weight_(std::move(measure_weight)) {
    if (!(r_ >= 1.0)) throw std::invalid_argument("MaximalOperator: r must be >= 1");
}

Function MaximalOperator::apply(const Function& f) const {
    check_same_size(space(), f);
    const int n = space().atom_count();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        double best = 0.0;
        for (BallId id : basis_->balls_containing(x)) {
            const AtomSet& atoms = basis_->ball(id).atoms;
            double value;
            if (measure_weight_) {
                double num = 0.0, den = 0.0;
                for (AtomId a : atoms) {
                    double wm = (*measure_weight_)[a] * space().mass(a);
                    num += std::pow(std::abs(f[a]), r_) * wm;
                    den += wm;
                }
                value = std::pow(num / den, 1.0 / r_);
            } else {
                value = avg(space(), f, atoms, r_);
            }
            best = std::max(best, value);
        }
        out[static_cast<std::size_t>(x)] = best;
    }
    return Function(std::move(out));
}

MartingaleTransform::MartingaleTransform(std::shared_ptr<const TreeBasis> tree,
                                         std::map<BallId, int> signs)
    : SublinearOperator(tree->basis().space_ptr()), tree_(std::move(tree)),
      signs_(std::move(signs)) {
    for (BallId node : tree_->internal_nodes()) {
        auto it = signs_.find(node);
        if (it == signs_.end())
            throw std::invalid_argument("MartingaleTransform: missing sign for internal node");
        if (it->second != 1 && it->second != -1)
            throw std::invalid_argument("MartingaleTransform: signs must be +1 or -1");
    }

    // kappa(x,y) = sum_A eps_A sum_{B in ch(A)} 1_B(x) (1_B(y)/mu(B) - 1_A(y)/mu(A))
    const int n = space().atom_count();
    kernel_.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    const BallBasis& basis = tree_->basis();
    for (BallId a : tree_->internal_nodes()) {
        const double eps = signs_.at(a);
        const Ball& parent = basis.ball(a);
        for (BallId c : tree_->children(a)) {
            const Ball& child = basis.ball(c);
            for (AtomId x : child.atoms) {
                auto& row = kernel_[static_cast<std::size_t>(x)];
                for (AtomId y : child.atoms) row[static_cast<std::size_t>(y)] += eps / child.measure;
                for (AtomId y : parent.atoms) row[static_cast<std::size_t>(y)] -= eps / parent.measure;
            }
        }
    }
}

Function MartingaleTransform::apply(const Function& f) const {
    check_same_size(space(), f);
    const BallBasis& basis = tree_->basis();
    const int n = space().atom_count();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (BallId a : tree_->internal_nodes()) {
        const double eps = signs_.at(a);
        const Ball& parent = basis.ball(a);
        double parent_avg = 0.0;
        for (AtomId y : parent.atoms) parent_avg += f[y] * space().mass(y);
        parent_avg /= parent.measure;
        for (BallId c : tree_->children(a)) {
            const Ball& child = basis.ball(c);
            double child_avg = 0.0;
            for (AtomId y : child.atoms) child_avg += f[y] * space().mass(y);
            child_avg /= child.measure;
            for (AtomId x : child.atoms)
                out[static_cast<std::size_t>(x)] += eps * (child_avg - parent_avg);
        }
    }
    return Function(std::move(out));
}

KernelOperator::KernelOperator(std::shared_ptr<const MeasureSpace> space, KernelMatrix kernel,
                               std::string name)
    : SublinearOperator(std::move(space)), kernel_(std::move(kernel)), name_(std::move(name)) {
    const int n = this->space().atom_count();
    if (static_cast<int>(kernel_.size()) != n)
        throw std::invalid_argument("KernelOperator: kernel size mismatch");
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(kernel_[static_cast<std::size_t>(x)].size()) != n)
            throw std::invalid_argument("KernelOperator: kernel row size mismatch");
        for (int y = 0; y < n; ++y)
            if (x != y && !std::isfinite(kernel_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]))
                throw std::invalid_argument("KernelOperator: non-finite off-diagonal kernel entry");
        kernel_[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] = 0.0;
    }
}

Function KernelOperator::apply(const Function& f) const {
    check_same_size(space(), f);
    return kernel_apply(kernel_, f);
}

std::shared_ptr<KernelOperator> discrete_hilbert(int n) {
    if (n < 2) throw std::invalid_argument("discrete_hilbert: need at least two points");
    auto space = std::make_shared<MeasureSpace>(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    KernelMatrix k(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int d = ((j - i) % n + n) % n;
            int s;
            if (2 * d < n) s = d;
            else if (2 * d > n) s = d - n;
            else s = 0; // antipode of even n: signed displacement is ambiguous
            k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (s == 0) ? 0.0 : 1.0 / s;
        }
    return std::make_shared<KernelOperator>(std::move(space), std::move(k), "hilbert");
}

StarOperator::StarOperator(std::shared_ptr<const SublinearOperator> inner,
                           std::shared_ptr<const BallBasis> basis)
    : SublinearOperator(inner->space_ptr()), inner_(std::move(inner)), basis_(std::move(basis)) {
    if (basis_->space().atom_count() != space().atom_count())
        throw std::invalid_argument("StarOperator: basis/operator space mismatch");
}

Function StarOperator::apply(const Function& f) const {
    return apply_masked(f, space().all_atoms());
}

Function StarOperator::apply_masked(const Function& f, const AtomSet& mask) const {
    check_same_size(space(), f);
    const int n = space().atom_count();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    const AtomSet everything = space().all_atoms();
    for (const Ball& b : basis_->balls()) {
        const AtomSet& hull_atoms = basis_->ball(basis_->hull(b.id)).atoms;
        AtomSet outside = set_difference_of(everything, hull_atoms);
        AtomSet effective = set_intersection_of(outside, mask);
        Function tf = inner_->apply_masked(f, effective);
        for (AtomId x : b.atoms) {
            double v = std::abs(tf[x]);
            auto& slot = out[static_cast<std::size_t>(x)];
            slot = std::max(slot, v);
        }
    }
    return Function(std::move(out));
}

std::shared_ptr<StarOperator> t_star(std::shared_ptr<const SublinearOperator> inner,
                                     std::shared_ptr<const BallBasis> basis) {
    return std::make_shared<StarOperator>(std::move(inner), std::move(basis));
}

LocalStarOperator::LocalStarOperator(std::shared_ptr<const SublinearOperator> inner,
                                     std::shared_ptr<const BallBasis> basis)
    : SublinearOperator(inner->space_ptr()), inner_(std::move(inner)), basis_(std::move(basis)) {}

Function LocalStarOperator::apply(const Function& f) const {
    return apply_masked(f, space().all_atoms());
}

Function LocalStarOperator::apply_masked(const Function& f, const AtomSet& mask) const {
    check_same_size(space(), f);
    const int n = space().atom_count();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (const Ball& b : basis_->balls()) {
        const AtomSet& hull_atoms = basis_->ball(basis_->hull(b.id)).atoms;
        AtomSet effective = set_intersection_of(hull_atoms, mask);
        Function tf = inner_->apply_masked(f, effective);
        for (AtomId x : b.atoms) {
            double v = std::abs(tf[x]);
            auto& slot = out[static_cast<std::size_t>(x)];
            slot = std::max(slot, v);
        }
    }
    return Function(std::move(out));
}

std::shared_ptr<LocalStarOperator> t_star_star(std::shared_ptr<const SublinearOperator> inner,
                                               std::shared_ptr<const BallBasis> basis) {
    return std::make_shared<LocalStarOperator>(std::move(inner), std::move(basis));
}

MaximalModulation::MaximalModulation(std::shared_ptr<const SublinearOperator> inner,
                                     std::vector<Function> modulators)
    : SublinearOperator(inner->space_ptr()), inner_(std::move(inner)),
      modulators_(std::move(modulators)) {
    if (modulators_.empty())
        throw std::invalid_argument("MaximalModulation: empty modulator list");
    for (const Function& g : modulators_) {
        check_same_size(space(), g);
        sup_norm_ = std::max(sup_norm_, g.max_abs());
    }
}

Function MaximalModulation::apply(const Function& f) const {
    check_same_size(space(), f);
    const int n = space().atom_count();
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (const Function& g : modulators_) {
        Function gf(f.values());
        for (int a = 0; a < n; ++a) gf[a] = g[a] * f[a];
        Function tf = inner_->apply(gf);
        for (int a = 0; a < n; ++a)
            out[static_cast<std::size_t>(a)] = std::max(out[static_cast<std::size_t>(a)], std::abs(tf[a]));
    }
    return Function(std::move(out));
}

Function MaximalModulation::apply_masked(const Function& f, const AtomSet& mask) const {
    return apply(f.masked(mask));
}

std::optional<double> MaximalModulation::exact_localization_constant() const {
    // A pointwise modulation of a transform with vanishing localization
    // constant keeps it at zero: each modulated input stays supported off the
    // hull, so every branch is constant on the ball.
    auto base = inner_->exact_localization_constant();
    if (base && *base == 0.0) return 0.0;
    return std::nullopt;
}

std::shared_ptr<MaximalModulation> maximal_modulation(
    std::shared_ptr<const SublinearOperator> inner, std::vector<Function> modulators) {
    return std::make_shared<MaximalModulation>(std::move(inner), std::move(modulators));
}

std::vector<Function> walsh_modulators(const MeasureSpace& space) {
    const int n = space.atom_count();
    if (n <= 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("walsh_modulators: atom count must be a power of two");
    std::vector<Function> mods;
    mods.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            v[static_cast<std::size_t>(j)] = (__builtin_popcount(static_cast<unsigned>(k & j)) % 2 == 0) ? 1.0 : -1.0;
        mods.emplace_back(std::move(v));
    }
    return mods;
}

} // namespace bo
