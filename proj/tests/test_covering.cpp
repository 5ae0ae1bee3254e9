#include <doctest.h>

#include "bo/covering.hpp"
#include "bo/fixtures.hpp"

using namespace bo;

namespace {

BallId find_ball(const BallBasis& basis, const AtomSet& atoms) {
    for (const Ball& b : basis.balls())
        if (b.atoms == atoms) return b.id;
    return -1;
}

} // namespace

TEST_CASE("greedy subcover traces the half-sup rule on the dyadic fixture") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    BallId quarter0 = find_ball(basis, {0, 1});
    BallId half0 = find_ball(basis, {0, 1, 2, 3});
    BallId half1 = find_ball(basis, {4, 5, 6, 7});

    CoverSelection sel = greedy_disjoint_subcover(basis, {quarter0, half0, half1},
                                                  basis.space().all_atoms());
    CHECK(sel.chosen == std::vector<BallId>{half0, half1});
    AtomSet hull_union;
    for (BallId id : sel.hull_cover) hull_union = set_union_of(hull_union, basis.ball(id).atoms);
    CHECK(hull_union == basis.space().all_atoms());

    CoverSelection whole = greedy_disjoint_subcover(basis, {tree.root()}, basis.space().all_atoms());
    CHECK(whole.chosen == std::vector<BallId>{tree.root()});

    // All singletons are pairwise disjoint: every one is picked.
    std::vector<BallId> singletons;
    for (int a = 0; a < 8; ++a) singletons.push_back(find_ball(basis, {a}));
    CoverSelection atoms01 = greedy_disjoint_subcover(basis, singletons, AtomSet{0, 1});
    CHECK(atoms01.chosen.size() == 8);
    CHECK(set_contains(AtomSet(atoms01.chosen.begin(), atoms01.chosen.end()), find_ball(basis, {0})));
    AtomSet covered;
    for (BallId id : atoms01.hull_cover) covered = set_union_of(covered, basis.ball(id).atoms);
    CHECK(is_subset(AtomSet{0, 1}, covered));

    CHECK_THROWS_AS(greedy_disjoint_subcover(basis, {quarter0}, basis.space().all_atoms()),
                    std::invalid_argument);
}

TEST_CASE("greedy picks always exceed half the remaining supremum") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    std::vector<BallId> family;
    for (int i = 0; i < basis.ball_count(); ++i) family.push_back(i);

    for (unsigned mask = 1; mask < (1u << 8); ++mask) {
        AtomSet target;
        for (int a = 0; a < 8; ++a)
            if (mask & (1u << a)) target.push_back(a);
        CoverSelection sel = greedy_disjoint_subcover(basis, family, target);
        // Replay the sequence and check the half-sup rule at each step.
        AtomSet used;
        for (BallId pick : sel.chosen) {
            double sup = 0.0;
            for (BallId id : family)
                if (!sets_intersect(basis.ball(id).atoms, used))
                    sup = std::max(sup, basis.ball(id).measure);
            CHECK(basis.ball(pick).measure > 0.5 * sup - 1e-15);
            used = set_union_of(used, basis.ball(pick).atoms);
        }
    }
}

TEST_CASE("exhaustive covering sweep over all targets of the 8-atom fixture") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    std::vector<BallId> family;
    for (int i = 0; i < basis.ball_count(); ++i) family.push_back(i);
    const double k = basis.K();

    int checked = 0;
    for (unsigned mask = 1; mask < (1u << 8); ++mask) {
        AtomSet target;
        for (int a = 0; a < 8; ++a)
            if (mask & (1u << a)) target.push_back(a);

        CoverSelection sel = greedy_disjoint_subcover(basis, family, target);
        AtomSet seen;
        for (BallId id : sel.chosen) {
            CHECK_FALSE(sets_intersect(seen, basis.ball(id).atoms));
            seen = set_union_of(seen, basis.ball(id).atoms);
        }
        AtomSet hull_union;
        for (BallId id : sel.hull_cover)
            hull_union = set_union_of(hull_union, basis.ball(id).atoms);
        CHECK(is_subset(target, hull_union));

        std::vector<BallId> cover = economical_cover(basis, target);
        AtomSet covered;
        double total = 0.0;
        for (BallId id : cover) {
            covered = set_union_of(covered, basis.ball(id).atoms);
            total += basis.ball(id).measure;
        }
        CHECK(is_subset(target, covered));
        CHECK(total <= 2.0 * k * basis.space().measure(target) * (1.0 + 1e-12));
        ++checked;
    }
    CHECK(checked == 255);
}

TEST_CASE("economical cover hand traces") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();

    std::vector<BallId> quarter = economical_cover(basis, AtomSet{0, 1});
    CHECK(quarter == std::vector<BallId>{find_ball(basis, {0, 1})});

    std::vector<BallId> single = economical_cover(basis, AtomSet{5});
    REQUIRE(single.size() == 1);
    CHECK(is_subset(AtomSet{5}, basis.ball(single.front()).atoms));

    std::vector<BallId> whole_cover = economical_cover(basis, basis.space().all_atoms());
    double total = 0.0;
    for (BallId id : whole_cover) total += basis.ball(id).measure;
    CHECK(total <= 2.0 * basis.K() * 1.0 + 1e-12);

    CHECK_THROWS_AS(economical_cover(basis, AtomSet{}), std::invalid_argument);
}

TEST_CASE("cardinality bound report") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    std::vector<BallId> singletons;
    for (int a = 0; a < 8; ++a) singletons.push_back(find_ball(basis, {a}));

    CardinalityBoundReport report =
        cardinality_bound_check(basis, tree.root(), singletons, 0.125, 0.125);
    CHECK(report.pass);
    CHECK(report.family_size == 8);
    CHECK(report.precondition_violations.empty());

    CardinalityBoundReport empty = cardinality_bound_check(basis, tree.root(), {}, 0.125, 0.125);
    CHECK(empty.pass);

    std::vector<BallId> quarters;
    for (int q = 0; q < 4; ++q) quarters.push_back(find_ball(basis, {2 * q, 2 * q + 1}));
    CardinalityBoundReport quarter_report =
        cardinality_bound_check(basis, tree.root(), quarters, 0.25, 0.25);
    CHECK(quarter_report.pass);
    CHECK(quarter_report.family_size == 4);
    CHECK(quarter_report.bound == doctest::Approx(8.0));

    // Precondition violations are reported, not thrown.
    std::vector<BallId> overlapping{find_ball(basis, {0, 1}), find_ball(basis, {0, 1, 2, 3})};
    CardinalityBoundReport bad =
        cardinality_bound_check(basis, tree.root(), overlapping, 0.25, 0.5);
    CHECK_FALSE(bad.precondition_violations.empty());
}
