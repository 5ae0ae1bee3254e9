#include "bo/arc_basis.hpp"

#include "bo/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bo {

void QuasiMetricSpec::validate() const {
    const int n = point_count;
    if (n <= 0) throw std::invalid_argument("QuasiMetricSpec: point_count must be positive");
    if (!(triangle_constant > 1.0))
        throw std::invalid_argument("QuasiMetricSpec: triangle constant must exceed 1");
    if (static_cast<int>(distance.size()) != n)
        throw std::invalid_argument("QuasiMetricSpec: distance matrix size mismatch");
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(distance[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("QuasiMetricSpec: distance matrix row size mismatch");

    auto d = [&](int i, int j) { return distance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(d(i, j) >= 0.0) || !std::isfinite(d(i, j))) {
                std::ostringstream os;
                os << "quasi-metric violation: negative or non-finite distance at (" << i << "," << j << ")";
                throw std::invalid_argument(os.str());
            }
            if ((d(i, j) == 0.0) != (i == j)) {
                std::ostringstream os;
                os << "quasi-metric violation: rho vanishes iff points coincide, offending pair ("
                   << i << "," << j << ")";
                throw std::invalid_argument(os.str());
            }
            if (d(i, j) != d(j, i)) {
                std::ostringstream os;
                os << "quasi-metric violation: asymmetric pair (" << i << "," << j << ")";
                throw std::invalid_argument(os.str());
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d(i, j) > triangle_constant * (d(i, k) + d(k, j))) {
                    std::ostringstream os;
                    os << "quasi-metric violation: triangle inequality fails for triple ("
                       << i << "," << j << "," << k << ")";
                    throw std::invalid_argument(os.str());
                }
}

double QuasiMetricSpec::diameter() const {
    double m = 0.0;
    for (const auto& row : distance)
        for (double v : row) m = std::max(m, v);
    return m;
}

ArcBasis build_arc_basis(const QuasiMetricSpec& spec, std::vector<double> masses) {
    spec.validate();
    const int n = spec.point_count;
    if (static_cast<int>(masses.size()) != n)
        throw std::invalid_argument("build_arc_basis: mass count mismatch");
    auto space = std::make_shared<MeasureSpace>(std::move(masses));

    auto dist = [&](int i, int j) {
        return spec.distance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };

    // Realized positive distances plus one radius beyond the diameter (gives X).
    std::vector<double> radii;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (dist(i, j) > 0.0) radii.push_back(dist(i, j));
    radii.push_back(spec.diameter() + 1.0);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    auto ball_set = [&](int center, double r) {
        AtomSet s;
        for (int y = 0; y < n; ++y)
            if (dist(center, y) < r) s.push_back(y);
        return s;
    };

    // Distinct balls, keeping the first (radius-then-center order) generating
    // pair as the canonical representation and the largest one for hulls.
    std::map<AtomSet, ArcBall> distinct;
    for (double r : radii)
        for (int c = 0; c < n; ++c) {
            AtomSet s = ball_set(c, r);
            if (s.empty()) continue;
            auto it = distinct.find(s);
            if (it == distinct.end()) {
                distinct.emplace(std::move(s), ArcBall{c, r, r});
            } else {
                it->second.max_radius = std::max(it->second.max_radius, r);
            }
        }

    std::vector<AtomSet> sets;
    std::vector<ArcBall> meta;
    sets.reserve(distinct.size());
    for (auto& [atoms, ab] : distinct) {
        sets.push_back(atoms);
        meta.push_back(ab);
    }

    const std::size_t count = sets.size();
    std::vector<double> mu(count);
    for (std::size_t i = 0; i < count; ++i) mu[i] = space->measure(sets[i]);

    // gamma = largest generating radius among balls intersecting B with
    // measure at most 2 mu(B); hull = smallest basis ball containing
    // B(center(B), 4 D^2 gamma).
    const double d2 = spec.triangle_constant * spec.triangle_constant;
    std::vector<std::optional<BallId>> hulls(count);
    for (std::size_t i = 0; i < count; ++i) {
        double gamma = 0.0;
        for (std::size_t j = 0; j < count; ++j)
            if (mu[j] <= 2.0 * mu[i] && sets_intersect(sets[j], sets[i]))
                gamma = std::max(gamma, meta[j].max_radius);
        AtomSet target = set_union_of(sets[i], ball_set(meta[i].center, 4.0 * d2 * gamma));
        BallId best = -1;
        for (std::size_t j = 0; j < count; ++j) {
            if (!is_subset(target, sets[j])) continue;
            if (best < 0 || mu[j] < mu[static_cast<std::size_t>(best)]) best = static_cast<BallId>(j);
        }
        hulls[i] = best; // the whole space is a realized ball, so best >= 0
    }

    double homogeneity = 1.0;
    for (std::size_t i = 0; i < count; ++i) {
        AtomSet doubled = ball_set(meta[i].center, 2.0 * meta[i].radius);
        homogeneity = std::max(homogeneity, space->measure(doubled) / mu[i]);
    }

    auto basis = std::make_shared<BallBasis>(space, sets, hulls);
    if (basis->ball_count() != static_cast<int>(count))
        throw std::logic_error("build_arc_basis: whole space missing from realized balls");
    basis->set_doubling_eta(measured_doubling_eta(*basis));
    return ArcBasis(std::move(basis), spec, std::move(meta), homogeneity);
}

} // namespace bo
