#ifndef BO_RNG_HPP
#define BO_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "bo/measure_space.hpp"

namespace bo {

/// Deterministic random helpers.  Values are derived from raw engine output
/// so that streams are reproducible independently of the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi) { // inclusive bounds
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % range);
    }

    int sign() { return (engine_() & 1u) ? 1 : -1; }

    /// Uniform values in [-1, 1] per atom.
    Function function(const MeasureSpace& space) {
        std::vector<double> v(static_cast<std::size_t>(space.atom_count()));
        for (auto& x : v) x = uniform(-1.0, 1.0);
        return Function(std::move(v));
    }

    /// Sparse spiky test function: a few atoms with large values of random sign.
    Function spiky_function(const MeasureSpace& space, int spikes, double scale) {
        std::vector<double> v(static_cast<std::size_t>(space.atom_count()), 0.0);
        for (int s = 0; s < spikes; ++s) {
            int a = uniform_int(0, space.atom_count() - 1);
            v[static_cast<std::size_t>(a)] += sign() * scale * uniform01();
        }
        return Function(std::move(v));
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace bo

#endif
