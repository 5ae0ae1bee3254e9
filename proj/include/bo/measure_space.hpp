#ifndef BO_MEASURE_SPACE_HPP
#define BO_MEASURE_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bo {

using AtomId = int;

/// Sorted, duplicate-free list of atom indices.
using AtomSet = std::vector<AtomId>;

inline AtomSet make_atom_set(std::vector<AtomId> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

inline bool set_contains(const AtomSet& s, AtomId a) {
    return std::binary_search(s.begin(), s.end(), a);
}

inline bool sets_intersect(const AtomSet& a, const AtomSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

inline bool is_subset(const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline AtomSet set_union_of(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline AtomSet set_intersection_of(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline AtomSet set_difference_of(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// A finite set of atoms with strictly positive masses.
class MeasureSpace {
public:
    explicit MeasureSpace(std::vector<double> masses) : mass_(std::move(masses)) {
        if (mass_.empty())
            throw std::invalid_argument("MeasureSpace: at least one atom required");
        total_ = 0.0;
        for (double m : mass_) {
            if (!(m > 0.0) || !std::isfinite(m))
                throw std::invalid_argument("MeasureSpace: masses must be positive and finite");
            total_ += m;
        }
    }

    int atom_count() const { return static_cast<int>(mass_.size()); }
    double mass(AtomId a) const { return mass_.at(static_cast<std::size_t>(a)); }
    double total_mass() const { return total_; }
    const std::vector<double>& masses() const { return mass_; }

    double measure(const AtomSet& s) const {
        double m = 0.0;
        for (AtomId a : s) m += mass(a);
        return m;
    }

    AtomSet all_atoms() const {
        AtomSet s(mass_.size());
        for (int i = 0; i < atom_count(); ++i) s[static_cast<std::size_t>(i)] = i;
        return s;
    }

private:
    std::vector<double> mass_;
    double total_ = 0.0;
};

/// A real-valued function on the atoms of a MeasureSpace.
class Function {
public:
    Function() = default;

    explicit Function(std::vector<double> values) : v_(std::move(values)) {
        for (double x : v_)
            if (!std::isfinite(x))
                throw std::invalid_argument("Function: values must be finite");
    }

    Function(const MeasureSpace& space, double constant)
        : v_(static_cast<std::size_t>(space.atom_count()), constant) {
        if (!std::isfinite(constant))
            throw std::invalid_argument("Function: values must be finite");
    }

    static Function indicator(const MeasureSpace& space, const AtomSet& s, double scale = 1.0) {
        Function f(space, 0.0);
        for (AtomId a : s) f[a] = scale;
        return f;
    }

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](AtomId a) const { return v_[static_cast<std::size_t>(a)]; }
    double& operator[](AtomId a) { return v_[static_cast<std::size_t>(a)]; }
    const std::vector<double>& values() const { return v_; }

    Function masked(const AtomSet& keep) const {
        Function g(std::vector<double>(v_.size(), 0.0));
        for (AtomId a : keep) g[a] = v_[static_cast<std::size_t>(a)];
        return g;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::vector<double> v_;
};

inline void check_same_size(const MeasureSpace& space, const Function& f) {
    if (f.size() != space.atom_count())
        throw std::invalid_argument("function length does not match atom count");
}

} // namespace bo

#endif
