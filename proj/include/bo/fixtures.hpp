#ifndef BO_FIXTURES_HPP
#define BO_FIXTURES_HPP

#include <memory>
#include <vector>

#include "bo/arc_basis.hpp"
#include "bo/tree_basis.hpp"

namespace bo {
namespace fixtures {

/// Balanced binary tree over 2^depth atoms.  Masses default to uniform
/// 2^-depth; a custom list (one entry per atom) may be supplied.
TreeBasis dyadic(int depth, std::vector<double> masses = {});

/// Two atoms of mass 1/2 under the whole space.
TreeBasis two_atom();

/// Caterpillar tree over n atoms with geometrically decaying masses
/// (atom j has mass 2^-(j+1), the last one doubled to close the total to 1).
/// Every internal node is {atom j} + tail, so ball measures span many scales.
TreeBasis lopsided(int atoms);

/// Circular quasi-metric on Z_N: rho(i,j) = min(|i-j|, N-|i-j|) with the
/// given triangle constant.
QuasiMetricSpec cyclic_metric(int n, double triangle_constant = 1.25);

/// Arc basis over Z_N with unit masses 1/N.
ArcBasis cyclic_arc(int n, double triangle_constant = 1.25);

} // namespace fixtures
} // namespace bo

#endif
