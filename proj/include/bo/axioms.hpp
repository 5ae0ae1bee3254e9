#ifndef BO_AXIOMS_HPP
#define BO_AXIOMS_HPP

#include <optional>
#include <string>
#include <utility>

#include "bo/ball_basis.hpp"

namespace bo {

struct BesicovitchResult {
    enum class Kind { laminar_certificate, exhaustive_certificate, greedy_upper_estimate };
    int value = 1;
    Kind kind = Kind::greedy_upper_estimate;
    bool budget_exhausted = false;

    bool is_certificate() const { return kind != Kind::greedy_upper_estimate; }
};

/// Outcome of the exhaustive ball-basis checks.  Failures carry witnesses;
/// nothing throws.
struct AxiomReport {
    bool b1_pass = true;
    std::string b1_witness;

    bool b2_pass = true;
    std::pair<AtomId, AtomId> b2_witness{-1, -1};

    // On an atomic space the approximation axiom holds outright; the report
    // only records whether every atom has a singleton ball available.
    bool b3_recorded_trivial = true;
    bool every_atom_has_singleton_ball = false;

    bool b4_containment_pass = true;          // hull contains the two-balls union
    std::pair<BallId, BallId> b4_witness{-1, -1}; // (ball, offending intersector)

    bool two_balls_pass = true;
    std::pair<BallId, BallId> two_balls_witness{-1, -1};

    double measured_K = 1.0;
    bool hull_growth_pass = true; // mu(B^[n]) <= K^n mu(B) for n <= 4

    double doubling_eta = 1.0;

    BesicovitchResult besicovitch;

    bool pass() const {
        return b1_pass && b2_pass && b4_containment_pass && two_balls_pass && hull_growth_pass;
    }
};

struct AxiomCheckOptions {
    int exhaustive_besicovitch_limit = 20;
    long long besicovitch_node_budget = 20'000'000;
};

AxiomReport verify_axioms(const BallBasis& basis, const AxiomCheckOptions& opts = {});

/// True when every pair of balls is nested or disjoint.
bool is_laminar(const BallBasis& basis);

/// Worst minimal strict-superset measure ratio among balls whose hull is not
/// the whole space; 1 when no ball qualifies.
double measured_doubling_eta(const BallBasis& basis);

} // namespace bo

#endif
