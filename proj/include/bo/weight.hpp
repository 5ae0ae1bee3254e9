#ifndef BO_WEIGHT_HPP
#define BO_WEIGHT_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bo/measure_space.hpp"

namespace bo {

/// A strictly positive function on atoms, used as a density against the base measure.
class Weight {
public:
    explicit Weight(std::vector<double> values) : v_(std::move(values)) {
        for (double x : v_)
            if (!(x > 0.0) || !std::isfinite(x))
                throw std::invalid_argument("Weight: values must be positive and finite");
    }

    Weight(const MeasureSpace& space, double constant)
        : Weight(std::vector<double>(static_cast<std::size_t>(space.atom_count()), constant)) {}

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](AtomId a) const { return v_[static_cast<std::size_t>(a)]; }
    const std::vector<double>& values() const { return v_; }

    /// w-measure of an atom set: sum of w * mu over the atoms.
    double measure(const MeasureSpace& space, const AtomSet& s) const {
        double m = 0.0;
        for (AtomId a : s) m += v_[static_cast<std::size_t>(a)] * space.mass(a);
        return m;
    }

    double total(const MeasureSpace& space) const {
        double m = 0.0;
        for (int a = 0; a < size(); ++a) m += v_[static_cast<std::size_t>(a)] * space.mass(a);
        return m;
    }

private:
    std::vector<double> v_;
};

} // namespace bo

#endif
