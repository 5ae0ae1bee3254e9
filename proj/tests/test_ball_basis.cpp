#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bo/axioms.hpp"
#include "bo/fixture_io.hpp"
#include "bo/fixtures.hpp"
#include "bo/norms.hpp"

using namespace bo;

namespace {

BallId find_ball(const BallBasis& basis, const AtomSet& atoms) {
    for (const Ball& b : basis.balls())
        if (b.atoms == atoms) return b.id;
    return -1;
}

} // namespace

TEST_CASE("dyadic tree basis: counts, hulls, K") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    CHECK(basis.ball_count() == 15);

    BallId leaf0 = find_ball(basis, {0});
    BallId quarter0 = find_ball(basis, {0, 1});
    REQUIRE(leaf0 >= 0);
    REQUIRE(quarter0 >= 0);
    CHECK(basis.hull(leaf0) == quarter0);
    CHECK(basis.K() == doctest::Approx(2.0));

    // Exhaustive two-balls containment for every ball.
    for (const Ball& b : basis.balls()) {
        AtomSet u = basis.two_balls_union(b.id);
        CHECK(is_subset(u, basis.ball(basis.hull(b.id)).atoms));
        CHECK(basis.ball(basis.hull(b.id)).measure <= 2.0 * b.measure * (1 + 1e-12));
    }

    // Tree hulls are ancestors; on the balanced uniform tree, the parent.
    for (const Ball& b : basis.balls()) {
        if (b.id == tree.root()) {
            CHECK(basis.hull(b.id) == b.id);
            continue;
        }
        CHECK(basis.hull(b.id) == tree.parent(b.id));
    }
}

TEST_CASE("single-atom and two-atom trees") {
    auto space = std::make_shared<MeasureSpace>(std::vector<double>{1.0});
    TreeSpec spec;
    spec.nodes = {AtomSet{0}};
    spec.parent = {-1};
    TreeBasis tiny = build_tree_basis(space, spec);
    CHECK(tiny.basis().ball_count() == 1);
    CHECK(tiny.basis().hull(0) == 0);
    CHECK(tiny.basis().K() == doctest::Approx(1.0));

    TreeBasis pair = fixtures::two_atom();
    BallId a = find_ball(pair.basis(), {0});
    CHECK(pair.basis().hull(a) == pair.root());
    CHECK(pair.basis().K() == doctest::Approx(2.0));
}

TEST_CASE("tree builder rejects malformed hierarchies") {
    auto space = std::make_shared<MeasureSpace>(std::vector<double>{0.5, 0.5});
    TreeSpec no_partition;
    no_partition.nodes = {AtomSet{0, 1}, AtomSet{0}};
    no_partition.parent = {-1, 0};
    CHECK_THROWS_AS(build_tree_basis(space, no_partition), std::invalid_argument);

    TreeSpec fat_leaf;
    fat_leaf.nodes = {AtomSet{0, 1}};
    fat_leaf.parent = {-1};
    CHECK_THROWS_AS(build_tree_basis(space, fat_leaf), std::invalid_argument);

    TreeSpec bad_root;
    bad_root.nodes = {AtomSet{0}, AtomSet{0}, AtomSet{1}};
    bad_root.parent = {-1, 0, 0};
    CHECK_THROWS_AS(build_tree_basis(space, bad_root), std::invalid_argument);
}

TEST_CASE("compute_hull picks the minimal containing ball") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    BallId leaf0 = find_ball(basis, {0});
    BallId quarter0 = find_ball(basis, {0, 1});
    CHECK(compute_hull(basis.balls(), basis.space(), basis.ball(leaf0)) == quarter0);
    CHECK(compute_hull(basis.balls(), basis.space(), basis.ball(tree.root())) == tree.root());

    TreeBasis pair = fixtures::two_atom();
    BallId a = find_ball(pair.basis(), {0});
    CHECK(compute_hull(pair.basis().balls(), pair.basis().space(), pair.basis().ball(a)) ==
          pair.root());
}

TEST_CASE("axiom report on the dyadic fixture") {
    TreeBasis tree = fixtures::dyadic(3);
    AxiomReport report = verify_axioms(tree.basis());
    CHECK(report.pass());
    CHECK(report.measured_K == doctest::Approx(2.0));
    CHECK(report.doubling_eta == doctest::Approx(2.0));
    CHECK(report.besicovitch.value == 1);
    CHECK(report.besicovitch.is_certificate());
    CHECK(report.every_atom_has_singleton_ball);
}

TEST_CASE("deliberately broken hull map is reported with a witness") {
    TreeBasis tree = fixtures::dyadic(2);
    const BallBasis& good = tree.basis();
    std::vector<AtomSet> sets;
    std::vector<std::optional<BallId>> hulls;
    for (const Ball& b : good.balls()) {
        sets.push_back(b.atoms);
        hulls.emplace_back(good.hull(b.id));
    }
    // Force identity hull on a leaf: too small to absorb its siblings.
    BallId leaf0 = find_ball(good, {0});
    hulls[static_cast<std::size_t>(leaf0)] = leaf0;
    BallBasis broken(good.space_ptr(), sets, hulls);
    AxiomReport report = verify_axioms(broken);
    CHECK_FALSE(report.b4_containment_pass);
    CHECK(report.b4_witness.first == leaf0);
    CHECK_FALSE(report.pass());
}

TEST_CASE("single ball basis passes trivially") {
    auto space = std::make_shared<MeasureSpace>(std::vector<double>{2.0});
    BallBasis basis(space, {AtomSet{0}});
    AxiomReport report = verify_axioms(basis);
    CHECK(report.pass());
    CHECK(report.measured_K == doctest::Approx(1.0));
}

TEST_CASE("arc basis on small cycles") {
    ArcBasis z8 = fixtures::cyclic_arc(8);
    AxiomReport report = verify_axioms(z8.basis());
    CHECK(report.pass());
    CHECK(std::isfinite(report.measured_K));
    CHECK(report.measured_K >= 1.0);

    // Single point: one ball, trivial constant.
    ArcBasis z1 = fixtures::cyclic_arc(1);
    CHECK(z1.basis().ball_count() == 1);
    CHECK(z1.basis().K() == doctest::Approx(1.0));

    // On Z_4 the hull of a singleton contains its 3-point neighborhood.
    ArcBasis z4 = fixtures::cyclic_arc(4);
    BallId single = find_ball(z4.basis(), {0});
    REQUIRE(single >= 0);
    BallId neighborhood = find_ball(z4.basis(), {0, 1, 3});
    REQUIRE(neighborhood >= 0);
    CHECK(is_subset(z4.basis().ball(neighborhood).atoms,
                    z4.basis().ball(z4.basis().hull(single)).atoms));
}

TEST_CASE("quasi-metric validation names the offending triple") {
    QuasiMetricSpec spec = fixtures::cyclic_metric(4);
    spec.distance[1][2] = 100.0;
    spec.distance[2][1] = 100.0;
    try {
        spec.validate();
        FAIL("expected a triangle violation");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("triple") != std::string::npos);
    }

    QuasiMetricSpec asym = fixtures::cyclic_metric(3);
    asym.distance[0][1] = 0.5;
    CHECK_THROWS_AS(asym.validate(), std::invalid_argument);
}

TEST_CASE("avg_star dominates avg and matches hand values") {
    TreeBasis tree = fixtures::dyadic(3);
    const BallBasis& basis = tree.basis();
    const MeasureSpace& space = basis.space();
    Function f(space, 0.0);
    f[0] = 8.0;

    BallId leaf0 = find_ball(basis, {0});
    BallId half0 = find_ball(basis, {0, 1, 2, 3});
    CHECK(avg_star(basis, f, leaf0, 1.0) == doctest::Approx(8.0));
    CHECK(avg_star(basis, f, half0, 1.0) == doctest::Approx(2.0));
    Function ones(space, 1.0);
    CHECK(avg_star(basis, ones, leaf0, 1.0) == doctest::Approx(1.0));

    for (const Ball& b : basis.balls()) {
        CHECK(avg_star(basis, f, b.id, 1.0) >= avg(space, f, b.atoms, 1.0) - 1e-12);
    }
    CHECK(avg_star(basis, f, tree.root(), 1.0) ==
          doctest::Approx(avg(space, f, basis.ball(tree.root()).atoms, 1.0)));
}

TEST_CASE("hull level growth bound") {
    for (int depth : {2, 3, 4}) {
        TreeBasis tree = fixtures::dyadic(depth);
        const BallBasis& basis = tree.basis();
        double k = basis.K();
        for (const Ball& b : basis.balls())
            for (int n = 1; n <= 4; ++n)
                CHECK(basis.ball(basis.hull_level(b.id, n)).measure <=
                      std::pow(k, n) * b.measure * (1.0 + 1e-12));
    }
}

TEST_CASE("fixture round trip and rejection of unknown directives") {
    TreeBasis tree = fixtures::dyadic(2);
    std::ostringstream out;
    write_basis_fixture(out, tree.basis());
    std::istringstream in(out.str());
    auto loaded = read_basis_fixture(in);
    CHECK(loaded->ball_count() == tree.basis().ball_count());
    for (const Ball& b : tree.basis().balls()) {
        CHECK(loaded->ball(b.id).atoms == b.atoms);
        CHECK(loaded->hull(b.id) == tree.basis().hull(b.id));
    }

    std::istringstream bad("basis v1\natoms 2 0.5 0.5\nball 0 0\nball 1 1\nball 2 0 1\nfrob 1 2\n");
    CHECK_THROWS_AS(read_basis_fixture(bad), std::invalid_argument);

    std::istringstream bad_version("basis v2\natoms 1 1.0\nball 0 0\n");
    CHECK_THROWS_AS(read_basis_fixture(bad_version), std::invalid_argument);

    std::istringstream no_header("atoms 1 1.0\nball 0 0\n");
    CHECK_THROWS_AS(read_basis_fixture(no_header), std::invalid_argument);

    // Whole space is appended when missing.
    std::istringstream partial("basis v1\natoms 2 0.5 0.5\nball 0 0\nball 1 1\n");
    auto completed = read_basis_fixture(partial);
    CHECK(completed->ball_count() == 3);
    CHECK(completed->ball(completed->whole_space_id()).atoms == AtomSet{0, 1});
}

TEST_CASE("fixture files load from disk") {
    TreeBasis tree = fixtures::dyadic(2);
    const char* path = "roundtrip_fixture.txt";
    {
        std::ofstream out(path);
        write_basis_fixture(out, tree.basis());
    }
    auto loaded = read_basis_fixture_file(path);
    CHECK(loaded->ball_count() == tree.basis().ball_count());
    CHECK(loaded->K() == tree.basis().K());
    std::remove(path);
    CHECK_THROWS_AS(read_basis_fixture_file("does_not_exist.txt"), std::invalid_argument);
}

TEST_CASE("lopsided fixture has geometric ball scales") {
    TreeBasis tree = fixtures::lopsided(10);
    const BallBasis& basis = tree.basis();
    CHECK(basis.space().total_mass() == doctest::Approx(1.0));
    AxiomReport report = verify_axioms(basis);
    CHECK(report.pass());
    CHECK(report.measured_K == doctest::Approx(2.0));
    CHECK(is_laminar(basis));
}

TEST_CASE("tree hulls are ancestors") {
    for (auto make : {+[] { return fixtures::dyadic(4); }, +[] { return fixtures::lopsided(9); }}) {
        TreeBasis tree = make();
        const BallBasis& basis = tree.basis();
        for (BallId id = 0; id < basis.ball_count(); ++id) {
            BallId hull = basis.hull(id);
            BallId walk = id;
            bool is_ancestor = (walk == hull);
            while (walk != tree.root()) {
                walk = tree.parent(walk);
                if (walk == hull) is_ancestor = true;
            }
            CHECK(is_ancestor);
        }
    }
}

TEST_CASE("arc builder reports its doubling constant") {
    ArcBasis z8 = fixtures::cyclic_arc(8);
    REQUIRE(z8.basis().doubling_eta().has_value());
    CHECK(*z8.basis().doubling_eta() >= 1.0);
    CHECK(z8.homogeneity() >= 1.0);
}
