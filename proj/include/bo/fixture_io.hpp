#ifndef BO_FIXTURE_IO_HPP
#define BO_FIXTURE_IO_HPP

#include <iosfwd>
#include <memory>
#include <string>

#include "bo/ball_basis.hpp"

namespace bo {

/// Line-oriented basis fixture format, version 1:
///
///   basis v1
///   atoms <N> <mass_0> ... <mass_{N-1}>
///   ball <id> <atom> [<atom> ...]
///   hull <ball-id> <hull-ball-id>
///
/// Ball ids must be exactly 0..M-1 (any order, each once).  `hull` lines are
/// optional overrides; balls without one get the minimal containing hull.
/// Blank lines and lines starting with '#' are ignored.  Any other directive
/// is rejected.  Throws std::invalid_argument with the line number on errors.
std::shared_ptr<BallBasis> read_basis_fixture(std::istream& in);
std::shared_ptr<BallBasis> read_basis_fixture_file(const std::string& path);

void write_basis_fixture(std::ostream& out, const BallBasis& basis);

} // namespace bo

#endif
