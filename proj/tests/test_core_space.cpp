#include <doctest.h>

#include <cmath>

#include "bo/norms.hpp"
#include "bo/rng.hpp"

using namespace bo;

namespace {

// Independent oracles: plain loops over atoms, no shared code with the
// library implementations beyond the data types.
double oracle_distribution(const MeasureSpace& s, const Function& f, double t) {
    double m = 0.0;
    for (int a = 0; a < s.atom_count(); ++a)
        if (std::abs(f[a]) > t) m += s.mass(a);
    return m;
}

double oracle_lp(const MeasureSpace& s, const Function& f, double p) {
    double acc = 0.0;
    for (int a = 0; a < s.atom_count(); ++a) acc += std::pow(std::abs(f[a]), p) * s.mass(a);
    return std::pow(acc, 1.0 / p);
}

// Weak norm by brute force: scan a fine grid of thresholds between levels in
// addition to the exact left limits.
double oracle_weak_lp(const MeasureSpace& s, const Function& f, double p) {
    double best = 0.0;
    double top = f.max_abs();
    for (int i = 1; i <= 4096; ++i) {
        double t = top * i / 4096.0 - 1e-12;
        if (t <= 0.0) continue;
        best = std::max(best, t * std::pow(oracle_distribution(s, f, t), 1.0 / p));
    }
    return best;
}

MeasureSpace half_half() { return MeasureSpace({0.5, 0.5}); }

} // namespace

TEST_CASE("distribution on the two-atom space") {
    MeasureSpace s = half_half();
    Function f({2.0, 0.0});
    CHECK(distribution(s, f, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(distribution(s, f, 2.0) == 0.0); // strict inequality at the maximum
    Function zero(s, 0.0);
    CHECK(distribution(s, zero, 0.0) == 0.0);
    CHECK(distribution(s, zero, 3.0) == 0.0);
}

TEST_CASE("lp_norm basics") {
    MeasureSpace s = half_half();
    Function f({2.0, 0.0});
    CHECK(lp_norm(s, f, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lp_norm(s, f, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    Function ones(s, 1.0);
    CHECK(lp_norm(s, ones, 1.0) == doctest::Approx(1.0));
    CHECK(lp_norm(s, ones, 7.5) == doctest::Approx(1.0));
    CHECK(lp_norm(s, f, kInfExponent) == 2.0);
    CHECK_THROWS_AS(lp_norm(s, f, 0.5), std::invalid_argument);
}

TEST_CASE("weak_lp_norm matches the oracle and hand values") {
    MeasureSpace s = half_half();
    Function f({2.0, 0.0});
    CHECK(weak_lp_norm(s, f, 1.0) == doctest::Approx(1.0).epsilon(1e-15)); // attained as t -> 2-
    Function zero(s, 0.0);
    CHECK(weak_lp_norm(s, zero, 1.0) == 0.0);
    Function c(s, 3.25);
    CHECK(weak_lp_norm(s, c, 1.0) == doctest::Approx(3.25)); // single jump at c, total mass 1
    CHECK_THROWS_AS(weak_lp_norm(s, f, 0.25), std::invalid_argument);

    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        MeasureSpace sp({0.25, 0.5, 0.125, 0.125});
        Function g = rng.function(sp);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            double lib = weak_lp_norm(sp, g, p);
            CHECK(lib >= oracle_weak_lp(sp, g, p) - 1e-9);
            CHECK(lib <= lp_norm(sp, g, p) + 1e-12);
        }
    }
}

TEST_CASE("avg basics and errors") {
    MeasureSpace s = half_half();
    Function f({2.0, 0.0});
    AtomSet whole{0, 1};
    CHECK(avg(s, f, whole, 1.0) == doctest::Approx(1.0));
    CHECK(avg(s, f, whole, 2.0) == doctest::Approx(std::sqrt(2.0)));
    Function ones(s, 1.0);
    CHECK(avg(s, ones, whole, 3.0) == doctest::Approx(1.0));
    CHECK(avg(s, ones, AtomSet{1}, 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(avg(s, f, AtomSet{}, 1.0), std::invalid_argument);
}

TEST_CASE("norm properties on random data") {
    Rng rng(42);
    MeasureSpace s({0.1, 0.4, 0.2, 0.05, 0.25});
    for (int t = 0; t < 1000; ++t) {
        Function f = rng.function(s);
        Function g = rng.function(s);
        double p = 1.0 + 3.0 * rng.uniform01();
        Function sum(s, 0.0);
        for (int a = 0; a < s.atom_count(); ++a) sum[a] = f[a] + g[a];
        double lhs = lp_norm(s, sum, p);
        double rhs = lp_norm(s, f, p) + lp_norm(s, g, p);
        CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);

        double c = rng.uniform(-3.0, 3.0);
        Function cf(s, 0.0);
        for (int a = 0; a < s.atom_count(); ++a) cf[a] = c * f[a];
        CHECK(lp_norm(s, cf, p) == doctest::Approx(std::abs(c) * lp_norm(s, f, p)).epsilon(1e-11));

        CHECK(weak_lp_norm(s, f, p) <= lp_norm(s, f, p) + 1e-12);
        CHECK(lp_norm(s, f, p) == doctest::Approx(oracle_lp(s, f, p)).epsilon(1e-12));
    }
}

TEST_CASE("distribution is non-increasing and vanishes past the maximum") {
    Rng rng(11);
    MeasureSpace s({0.3, 0.3, 0.4});
    for (int t = 0; t < 200; ++t) {
        Function f = rng.function(s);
        double prev = distribution(s, f, 0.0);
        for (double level = 0.05; level <= 1.2; level += 0.05) {
            double cur = distribution(s, f, level);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        CHECK(distribution(s, f, f.max_abs()) == 0.0);
    }
}

TEST_CASE("averages are monotone in the exponent and homogeneous") {
    Rng rng(5);
    MeasureSpace s({0.25, 0.25, 0.25, 0.25});
    AtomSet whole{0, 1, 2, 3};
    for (int t = 0; t < 300; ++t) {
        Function f = rng.function(s);
        double r1 = 1.0 + 2.0 * rng.uniform01();
        double r2 = r1 + 2.0 * rng.uniform01();
        CHECK(avg(s, f, whole, r1) <= avg(s, f, whole, r2) * (1.0 + 1e-12) + 1e-13);
        double c = rng.uniform(-2.0, 2.0);
        Function cf(s, 0.0);
        for (int a = 0; a < s.atom_count(); ++a) cf[a] = c * f[a];
        CHECK(avg(s, cf, whole, r1) ==
              doctest::Approx(std::abs(c) * avg(s, f, whole, r1)).epsilon(1e-11));
    }
}

TEST_CASE("measure space rejects bad input") {
    CHECK_THROWS_AS(MeasureSpace({}), std::invalid_argument);
    CHECK_THROWS_AS(MeasureSpace({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(MeasureSpace({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(Function({1.0, std::nan("")}), std::invalid_argument);
}
