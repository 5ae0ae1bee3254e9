#include "bo/sparse.hpp"

#include <stdexcept>

#include "bo/norms.hpp"

namespace bo {

bool SparseCollection::witnesses_valid(const BallBasis& basis) const {
    std::vector<char> taken(static_cast<std::size_t>(basis.space().atom_count()), 0);
    for (BallId id : balls) {
        auto it = witnesses.find(id);
        if (it == witnesses.end()) return false;
        const AtomSet& e = it->second;
        if (!is_subset(e, basis.ball(id).atoms)) return false;
        double mu = basis.space().measure(e);
        if (mu + 1e-15 < gamma * basis.ball(id).measure) return false;
        for (AtomId a : e) {
            if (taken[static_cast<std::size_t>(a)]) return false;
            taken[static_cast<std::size_t>(a)] = 1;
        }
    }
    return true;
}

Function sparse_apply(const BallBasis& basis, const SparseCollection& s, const Function& f,
                      double r) {
    check_same_size(basis.space(), f);
    Function out(basis.space(), 0.0);
    for (BallId id : s.balls) {
        if (id < 0 || id >= basis.ball_count())
            throw std::invalid_argument("sparse_apply: unknown ball id");
        const Ball& b = basis.ball(id);
        double a = avg(basis.space(), f, b.atoms, r);
        for (AtomId x : b.atoms) out[x] += a;
    }
    return out;
}

SparseAveragingOperator::SparseAveragingOperator(std::shared_ptr<const BallBasis> basis,
                                                 SparseCollection s, double r)
    : SublinearOperator(basis->space_ptr()), basis_(std::move(basis)), s_(std::move(s)), r_(r) {
    if (!(r_ >= 1.0)) throw std::invalid_argument("SparseAveragingOperator: r must be >= 1");
    const int n = space().atom_count();
    positive_kernel_.assign(static_cast<std::size_t>(n),
                            std::vector<double>(static_cast<std::size_t>(n), 0.0));
    if (r_ == 1.0)
        for (BallId id : s_.balls) {
            const Ball& b = basis_->ball(id);
            for (AtomId x : b.atoms)
                for (AtomId y : b.atoms)
                    positive_kernel_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] +=
                        1.0 / b.measure;
        }
}

Function SparseAveragingOperator::apply(const Function& f) const {
    return sparse_apply(*basis_, s_, f, r_);
}

} // namespace bo
