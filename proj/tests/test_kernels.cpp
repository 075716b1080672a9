#include "perfhom/kernel.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "perfhom/errors.hpp"
#include "perfhom/vec.hpp"

using perfhom::RadialKernel;
using perfhom::StaircaseKernel;
using perfhom::Vec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pointwise evaluation of the three profiles") {
    const auto ind = RadialKernel::make_indicator(1.0, 2);
    CHECK(ind.evaluate(Vec{{0.5, 0.0, 0.0}}) == 1.0);
    CHECK(ind.evaluate(Vec{{1.5, 0.0, 0.0}}) == 0.0);
    // Closed support convention: the boundary sphere is inside.
    CHECK(ind.evaluate(Vec{{1.0, 0.0, 0.0}}) == 1.0);
    CHECK(ind.value(1.0 + 1e-12) == 0.0);

    const auto expo = RadialKernel::make_exponential(1.0, 2);
    CHECK(expo.evaluate(Vec{{3.0, 4.0, 0.0}}) == doctest::Approx(std::exp(-5.0)).epsilon(1e-14));

    const auto tab = RadialKernel::make_tabulated({0.5, 1.0}, {1.0, 0.5}, 2);
    CHECK(tab.value(0.0) == 1.0);
    CHECK(tab.value(0.25) == 1.0);
    CHECK(tab.value(0.5) == 1.0);
    CHECK(tab.value(0.50001) == 0.5);
    CHECK(tab.value(1.0) == 0.5);
    CHECK(tab.value(1.1) == 0.0);
}

TEST_CASE("radial symmetry under axis permutations and sign flips") {
    const auto expo = RadialKernel::make_exponential(0.7, 2);
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = box(rng), b = box(rng);
        const double v = expo.evaluate(Vec{{a, b, 0.0}});
        CHECK(expo.evaluate(Vec{{b, a, 0.0}}) == doctest::Approx(v).epsilon(1e-15));
        CHECK(expo.evaluate(Vec{{-a, b, 0.0}}) == doctest::Approx(v).epsilon(1e-15));
        CHECK(expo.evaluate(Vec{{a, -b, 0.0}}) == doctest::Approx(v).epsilon(1e-15));
    }
}

TEST_CASE("second-moment constant matches closed forms") {
    CHECK(RadialKernel::make_indicator(1.0, 2).c_phi() == doctest::Approx(kPi / 4.0).epsilon(1e-10));
    CHECK(RadialKernel::make_indicator(1.0, 1).c_phi() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    // Scaling: indicator(s) has c_phi = sigma/(d(d+2)) s^{d+2}.
    CHECK(RadialKernel::make_indicator(0.5, 2).c_phi() ==
          doctest::Approx(kPi / 4.0 * std::pow(0.5, 4.0)).epsilon(1e-10));
    // Exponential: integral of e^{-lambda t} t^{d+1} = (d+1)! / lambda^{d+2}.
    CHECK(RadialKernel::make_exponential(1.0, 1).c_phi() == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(RadialKernel::make_exponential(1.0, 2).c_phi() == doctest::Approx(6.0 * kPi).epsilon(1e-8));
    // d=1, lambda=2: (sigma/d) * Gamma(3)/lambda^3 = 2 * 2/8 = 1/2.
    CHECK(RadialKernel::make_exponential(2.0, 1).c_phi() == doctest::Approx(0.5).epsilon(1e-8));
    // Step profile, piecewise-exact: sigma/d * sum v_j (b_j^4 - b_{j-1}^4)/4.
    const auto tab = RadialKernel::make_tabulated({0.5, 1.0}, {1.0, 0.5}, 2);
    const double expect = kPi * (std::pow(0.5, 4.0) / 4.0 + 0.5 * (1.0 - std::pow(0.5, 4.0)) / 4.0);
    CHECK(tab.c_phi() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(RadialKernel::make_tabulated({1.0}, {0.0}, 2).c_phi() == 0.0);
}

TEST_CASE("mass and second moment identities") {
    const auto ind = RadialKernel::make_indicator(1.0, 2);
    CHECK(ind.mass() == doctest::Approx(kPi).epsilon(1e-10));  // area of unit disc
    CHECK(ind.second_moment() == doctest::Approx(2.0 * ind.c_phi()).epsilon(1e-14));
    const auto expo = RadialKernel::make_exponential(1.0, 1);
    CHECK(expo.mass() == doctest::Approx(2.0).epsilon(1e-8));  // 2 integral of e^{-t}
}

TEST_CASE("tail of the second moment") {
    const auto ind = RadialKernel::make_indicator(1.0, 2);
    CHECK(ind.tail_second_moment(1.0) == 0.0);
    CHECK(ind.tail_second_moment(2.0) == 0.0);
    CHECK(ind.tail_second_moment(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-10));

    const auto expo = RadialKernel::make_exponential(1.0, 1);
    auto closed_tail = [](double R) { return 2.0 * std::exp(-R) * (R * R + 2.0 * R + 2.0); };
    CHECK(expo.tail_second_moment(0.0) == doctest::Approx(closed_tail(0.0)).epsilon(1e-8));
    CHECK(expo.tail_second_moment(1.0) == doctest::Approx(closed_tail(1.0)).epsilon(1e-8));
    CHECK(expo.tail_second_moment(5.0) == doctest::Approx(closed_tail(5.0)).epsilon(1e-8));

    // Monotone nonincreasing in R.
    double prev = expo.tail_second_moment(0.0);
    for (double R = 0.5; R < 8.0; R += 0.5) {
        const double cur = expo.tail_second_moment(R);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("superlevel radii") {
    const auto ind = RadialKernel::make_indicator(2.0, 2);
    CHECK(ind.superlevel_radius(0.3) == 2.0);
    CHECK(ind.superlevel_radius(1.0) == 2.0);
    CHECK(ind.superlevel_radius(1.1) == 0.0);
    const auto expo = RadialKernel::make_exponential(1.0, 1);
    CHECK(expo.superlevel_radius(std::exp(-2.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(expo.superlevel_radius(2.0) == 0.0);
    const auto tab = RadialKernel::make_tabulated({0.5, 1.0}, {1.0, 0.5}, 2);
    CHECK(tab.superlevel_radius(0.75) == 0.5);
    CHECK(tab.superlevel_radius(0.5) == 1.0);
    CHECK(tab.superlevel_radius(0.2) == 1.0);
}

TEST_CASE("truncation radius certifies the tail bound") {
    const auto ind = RadialKernel::make_indicator(1.5, 2);
    CHECK(ind.truncation_radius() == 1.5);
    const auto expo = RadialKernel::make_exponential(1.0, 1);
    const double R = expo.truncation_radius(1e-6);
    CHECK(R > 5.0);
    CHECK(R < 25.0);
    CHECK(expo.tail_second_moment(R) <= 1e-6 * expo.second_moment() * (1.0 + 1e-9));
    // Just inside the radius the tail must still exceed the target.
    CHECK(expo.tail_second_moment(R - 1e-3) > 1e-6 * expo.second_moment());
}

TEST_CASE("staircase of an indicator reproduces it exactly") {
    const auto ind = RadialKernel::make_indicator(1.0, 2);
    const auto st = ind.staircase(3);
    REQUIRE(st.radii.size() == 3 * 8 + 1);
    CHECK(st.weight == 0.125);
    for (int k = 0; k <= 7; ++k) CHECK(st.radii[static_cast<std::size_t>(k)] == 1.0);
    for (std::size_t k = 8; k < st.radii.size(); ++k) CHECK(st.radii[k] == 0.0);
    CHECK(st.value(0.0) == 1.0);
    CHECK(st.value(0.3) == 1.0);
    CHECK(st.value(1.0) == 1.0);
    CHECK(st.value(1.0001) == 0.0);
}

TEST_CASE("staircase cardinality") {
    const auto expo = RadialKernel::make_exponential(1.0, 1);
    CHECK(expo.staircase(1).radii.size() == 3);
    CHECK(expo.staircase(2).radii.size() == 9);
    const auto ind = RadialKernel::make_indicator(1.0, 1);
    CHECK(ind.staircase(2, /*upper=*/true).radii.size() == 10);
    CHECK_THROWS_AS((void)expo.staircase(2, /*upper=*/true), perfhom::config_error);
}

TEST_CASE("staircase sandwich bounds") {
    const auto expo = RadialKernel::make_exponential(1.0, 1);
    for (int n : {2, 4, 6}) {
        const auto st = expo.staircase(n);
        const double gap = std::ldexp(1.0, -n);
        double worst = 0.0;
        for (double t = 0.0; t <= 10.0; t += 0.01) {
            const double lo = st.value(t);
            const double v = expo.value(t);
            CHECK(lo <= v + 1e-15);
            worst = std::max(worst, v - lo);
        }
        CHECK(worst <= gap + 1e-15);
    }

    const auto tab = RadialKernel::make_tabulated({0.3, 0.7, 1.2}, {2.0, 1.1, 0.4}, 2);
    const auto lo3 = tab.staircase(3);
    const auto up3 = tab.staircase(3, /*upper=*/true);
    for (double t = 0.0; t <= 1.5; t += 0.007) {
        CHECK(lo3.value(t) <= tab.value(t) + 1e-15);
        CHECK(tab.value(t) <= up3.value(t) + 1e-15);
        CHECK(up3.value(t) <= tab.value(t) + std::ldexp(1.0, -3) + 1e-15);
    }
}

TEST_CASE("staircase reconstruction converges monotonically in the second moment") {
    const auto expo = RadialKernel::make_exponential(1.0, 2);
    double prev = 0.0;
    for (int n : {2, 3, 4, 5}) {
        const auto rebuilt = RadialKernel::from_staircase(expo.staircase(n), 2);
        const double c = rebuilt.c_phi();
        CHECK(c >= prev - 1e-12);
        CHECK(c <= expo.c_phi() + 1e-10);
        prev = c;
    }

    // Compact profile: lower and upper reconstructions bracket the true value
    // and the bracket width obeys the 2^{1-n} slab bound.
    const auto tab = RadialKernel::make_tabulated({0.3, 0.7, 1.2}, {2.0, 1.1, 0.4}, 2);
    const double exact = tab.c_phi();
    const double R = tab.support_radius();
    for (int n : {3, 5, 7}) {
        const double lo = RadialKernel::from_staircase(tab.staircase(n), 2).c_phi();
        const double hi = RadialKernel::from_staircase(tab.staircase(n, true), 2).c_phi();
        CHECK(lo <= exact + 1e-10);
        CHECK(hi >= exact - 1e-10);
        const double width_bound = 2.0 * std::ldexp(1.0, -n) * kPi * std::pow(R, 4.0) / 4.0;
        CHECK(hi - lo <= width_bound + 1e-10);
    }
}

TEST_CASE("staircase reconstruction is pointwise exact") {
    const auto tab = RadialKernel::make_tabulated({0.25, 0.5, 1.0}, {1.5, 1.0, 0.25}, 2);
    const auto st = tab.staircase(4);
    const auto rebuilt = RadialKernel::from_staircase(st, 2);
    for (double t = 0.0; t <= 1.25; t += 0.003) {
        CHECK(rebuilt.value(t) == doctest::Approx(st.value(t)).epsilon(1e-15));
    }
    // Values that are multiples of 2^{-4} are reproduced without loss.
    CHECK(rebuilt.value(0.1) == 1.5);
    CHECK(rebuilt.value(0.4) == 1.0);
    CHECK(rebuilt.value(0.9) == 0.25);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS((void)RadialKernel::make_indicator(0.0, 2), perfhom::config_error);
    CHECK_THROWS_AS((void)RadialKernel::make_indicator(1.0, 5), perfhom::config_error);
    CHECK_THROWS_AS((void)RadialKernel::make_exponential(-1.0, 2), perfhom::config_error);
    CHECK_THROWS_AS((void)RadialKernel::make_tabulated({0.5, 1.0}, {0.5, 1.0}, 2),
                    perfhom::config_error);  // increasing profile
    CHECK_THROWS_AS((void)RadialKernel::make_tabulated({1.0, 0.5}, {1.0, 0.5}, 2),
                    perfhom::config_error);  // breakpoints out of order
    CHECK_THROWS_AS((void)RadialKernel::make_tabulated({0.5}, {-1.0}, 2), perfhom::config_error);
}

TEST_CASE("tabulated profile round-trips through CSV") {
    const std::string path = "kernel_profile_roundtrip.csv";
    {
        std::ofstream out(path);
        out << "t,phi0\n0,2.0\n0.5,2.0\n1.0,1.0\n2.0,0.0\n";
    }
    const auto k = RadialKernel::tabulated_from_csv(path, 2);
    CHECK(k.value(0.0) == 2.0);
    CHECK(k.value(0.5) == 2.0);
    CHECK(k.value(0.75) == 1.0);
    CHECK(k.value(1.0) == 1.0);
    CHECK(k.value(1.5) == 0.0);
    CHECK(k.support_radius() == 1.0);
    CHECK_THROWS_AS((void)RadialKernel::tabulated_from_csv("does_not_exist.csv", 2),
                    perfhom::config_error);
    std::remove(path.c_str());
}
