#include "bo/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace bo {
namespace fixtures {

TreeBasis dyadic(int depth, std::vector<double> masses) {
    if (depth < 0 || depth > 20) throw std::invalid_argument("dyadic: depth out of range");
    const int leaves = 1 << depth;
    if (masses.empty()) masses.assign(static_cast<std::size_t>(leaves), 1.0 / leaves);
    if (static_cast<int>(masses.size()) != leaves)
        throw std::invalid_argument("dyadic: need one mass per leaf");
    auto space = std::make_shared<MeasureSpace>(std::move(masses));

    // Level order: node (level, k) covers atoms [k*2^(depth-level), (k+1)*2^(depth-level)).
    TreeSpec spec;
    for (int level = 0; level <= depth; ++level) {
        const int width = leaves >> level;
        for (int k = 0; k < (1 << level); ++k) {
            AtomSet atoms;
            for (int a = k * width; a < (k + 1) * width; ++a) atoms.push_back(a);
            spec.nodes.push_back(std::move(atoms));
            spec.parent.push_back(level == 0 ? -1 : ((1 << (level - 1)) - 1) + k / 2);
        }
    }
    return build_tree_basis(space, spec);
}

TreeBasis two_atom() {
    auto space = std::make_shared<MeasureSpace>(std::vector<double>{0.5, 0.5});
    TreeSpec spec;
    spec.nodes = {AtomSet{0, 1}, AtomSet{0}, AtomSet{1}};
    spec.parent = {-1, 0, 0};
    return build_tree_basis(space, spec);
}

TreeBasis lopsided(int atoms) {
    if (atoms < 2) throw std::invalid_argument("lopsided: need at least two atoms");
    std::vector<double> masses(static_cast<std::size_t>(atoms));
    for (int j = 0; j < atoms; ++j) masses[static_cast<std::size_t>(j)] = std::ldexp(1.0, -(j + 1));
    masses[static_cast<std::size_t>(atoms - 1)] *= 2.0; // close the total to exactly 1

    // Node i (i < atoms-1) is the tail {i, i+1, ..., atoms-1}; its children are
    // the singleton {i} and the next tail.  Singletons are the leaves.
    TreeSpec spec;
    std::vector<int> tail_index(static_cast<std::size_t>(atoms), -1);
    for (int i = 0; i + 1 < atoms; ++i) {
        AtomSet tail;
        for (int a = i; a < atoms; ++a) tail.push_back(a);
        tail_index[static_cast<std::size_t>(i)] = static_cast<int>(spec.nodes.size());
        spec.nodes.push_back(std::move(tail));
        spec.parent.push_back(i == 0 ? -1 : tail_index[static_cast<std::size_t>(i - 1)]);
    }
    for (int a = 0; a < atoms; ++a) {
        spec.nodes.push_back(AtomSet{a});
        int p = (a + 1 < atoms) ? tail_index[static_cast<std::size_t>(a)]
                                : tail_index[static_cast<std::size_t>(a - 1)];
        spec.parent.push_back(p);
    }
    auto space = std::make_shared<MeasureSpace>(std::move(masses));
    return build_tree_basis(space, spec);
}

QuasiMetricSpec cyclic_metric(int n, double triangle_constant) {
    if (n < 1) throw std::invalid_argument("cyclic_metric: n must be positive");
    QuasiMetricSpec spec;
    spec.point_count = n;
    spec.triangle_constant = triangle_constant;
    spec.distance.assign(static_cast<std::size_t>(n),
                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int d = std::abs(i - j);
            spec.distance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<double>(std::min(d, n - d));
        }
    return spec;
}

ArcBasis cyclic_arc(int n, double triangle_constant) {
    QuasiMetricSpec spec = cyclic_metric(n, triangle_constant);
    std::vector<double> masses(static_cast<std::size_t>(n), 1.0 / n);
    return build_arc_basis(spec, std::move(masses));
}

} // namespace fixtures
} // namespace bo
