#include "bo/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bo {

namespace {

double atom_weight(const MeasureSpace& space, const Weight* w, AtomId a) {
    double m = space.mass(a);
    return w ? (*w)[a] * m : m;
}

} // namespace

double distribution(const MeasureSpace& space, const Function& f, double t, const Weight* w) {
    check_same_size(space, f);
    if (t < 0.0) throw std::invalid_argument("distribution: t must be nonnegative");
    double m = 0.0;
    for (int a = 0; a < space.atom_count(); ++a)
        if (std::abs(f[a]) > t) m += atom_weight(space, w, a);
    return m;
}

double lp_norm(const MeasureSpace& space, const Function& f, double p, const Weight* w) {
    check_same_size(space, f);
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (p == kInfExponent) return f.max_abs();
    double s = 0.0;
    for (int a = 0; a < space.atom_count(); ++a)
        s += std::pow(std::abs(f[a]), p) * atom_weight(space, w, a);
    return std::pow(s, 1.0 / p);
}

double weak_lp_norm(const MeasureSpace& space, const Function& f, double p, const Weight* w) {
    check_same_size(space, f);
    if (!(p >= 1.0)) throw std::invalid_argument("weak_lp_norm: p must be >= 1");
    // Collect distinct nonzero levels of |f|; the sup over t is attained in the
    // left limit at one of them, where lambda_f(t-) = mu{ |f| >= level }.
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(f.size()));
    for (int a = 0; a < space.atom_count(); ++a) {
        double v = std::abs(f[a]);
        if (v > 0.0) levels.push_back(v);
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    double best = 0.0;
    for (double t : levels) {
        double m = 0.0;
        for (int a = 0; a < space.atom_count(); ++a)
            if (std::abs(f[a]) >= t) m += atom_weight(space, w, a);
        best = std::max(best, t * std::pow(m, 1.0 / p));
    }
    return best;
}

double avg(const MeasureSpace& space, const Function& f, const AtomSet& ball, double r) {
    check_same_size(space, f);
    if (ball.empty()) throw std::invalid_argument("avg: empty atom set");
    if (!(r >= 1.0)) throw std::invalid_argument("avg: r must be >= 1");
    double mu = 0.0;
    for (AtomId a : ball) mu += space.mass(a);
    if (r == kInfExponent) {
        double m = 0.0;
        for (AtomId a : ball) m = std::max(m, std::abs(f[a]));
        return m;
    }
    double s = 0.0;
    for (AtomId a : ball) s += std::pow(std::abs(f[a]), r) * space.mass(a);
    return std::pow(s / mu, 1.0 / r);
}

} // namespace bo
