#include <cmath>

#include "doctest.h"
#include "perfhom/errors.hpp"
#include "perfhom/grid.hpp"
#include "perfhom/shape.hpp"

using namespace perfhom;

namespace {

Box box2(double ax, double bx, double ay, double by) {
    Box b;
    b.dim = 2;
    b.lo[0] = ax;
    b.hi[0] = bx;
    b.lo[1] = ay;
    b.hi[1] = by;
    return b;
}

}  // namespace

TEST_CASE("grid construction and node placement") {
    const Grid g(box2(0.0, 1.0, 0.0, 2.0), 0.25);
    CHECK(g.dimension() == 2);
    CHECK(g.nodes_along(0) == 4);
    CHECK(g.nodes_along(1) == 8);
    CHECK(g.node_count() == 32);
    CHECK(g.cell_measure() == doctest::Approx(0.0625).epsilon(1e-15));

    const Vec first = g.node(LatticeVec{0, 0, 0});
    CHECK(first[0] == doctest::Approx(0.125));
    CHECK(first[1] == doctest::Approx(0.125));
    const Vec last = g.node(LatticeVec{3, 7, 0});
    CHECK(last[0] == doctest::Approx(0.875));
    CHECK(last[1] == doctest::Approx(1.875));

    // Axis 0 varies fastest in the flat order.
    CHECK(g.flatten(LatticeVec{1, 0, 0}) == 1);
    CHECK(g.flatten(LatticeVec{0, 1, 0}) == 4);
    for (std::size_t flat = 0; flat < g.node_count(); ++flat) {
        CHECK(g.flatten(g.unflatten(flat)) == flat);
    }

    CHECK(g == Grid(box2(0.0, 1.0, 0.0, 2.0), 0.25));
    CHECK(!(g == Grid(box2(0.0, 1.0, 0.0, 2.0), 0.125)));

    CHECK_THROWS_AS(Grid(box2(0.0, 1.0, 0.0, 1.0), 0.3), config_error);
    CHECK_THROWS_AS(Grid(box2(0.0, 1.0, 0.0, 1.0), 0.0), config_error);
    CHECK_THROWS_AS(Grid(box2(0.0, 1.0, 0.0, 1.0), -0.1), config_error);
}

TEST_CASE("sampling fills values and the perforation mask") {
    const PerforatedSet set(InclusionShape::ball(0.25, 2));
    const Grid g(unit_box(2), 0.005);
    const auto u = sample(
        g, [](const Vec& x) { return x[0] + 2.0 * x[1]; }, set, 0.1);
    CHECK(u.values.size() == g.node_count());
    CHECK(u.mask.size() == g.node_count());

    // The node pattern is 20-periodic per axis relative to the inclusions,
    // and one period holds exactly 80 masked nodes; 10x10 periods total.
    CHECK(u.masked_count() == 8000);
    // Masked fraction approximates the inclusion volume fraction |K|.
    const double fraction =
        static_cast<double>(u.masked_count()) / static_cast<double>(g.node_count());
    CHECK(fraction == doctest::Approx(M_PI / 16.0).epsilon(0.02));

    const std::size_t flat = g.flatten(LatticeVec{3, 5, 0});
    const Vec x = g.node(flat);
    CHECK(u.values[flat] == doctest::Approx(x[0] + 2.0 * x[1]).epsilon(1e-15));

    const auto w = sample_unmasked(g, [](const Vec&) { return 1.0; });
    CHECK(w.masked_count() == g.node_count());
}

TEST_CASE("masked L2 distance and norm") {
    const Grid g(unit_box(2), 0.25);
    auto u = sample_unmasked(g, [](const Vec&) { return 3.0; });
    auto v = sample_unmasked(g, [](const Vec&) { return 1.0; });

    CHECK(masked_l2_distance(u, u, g.box()) == 0.0);
    CHECK(masked_l2_distance(u, v, g.box()) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(masked_l2_norm(u, g.box()) == doctest::Approx(3.0).epsilon(1e-14));

    // Restricting the region to the left half keeps half the squared mass.
    const Box half = box2(0.0, 0.5, 0.0, 1.0);
    CHECK(masked_l2_norm(u, half) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-14));

    // Nodes masked out in either argument do not contribute.
    auto vm = v;
    for (auto& m : vm.mask) m = 0;
    CHECK(masked_l2_distance(u, vm, g.box()) == 0.0);

    const Grid g2(unit_box(2), 0.125);
    const auto w = sample_unmasked(g2, [](const Vec&) { return 0.0; });
    CHECK_THROWS_AS(masked_l2_distance(u, w, g.box()), config_error);
}

TEST_CASE("resolution rule: four nodes across the narrowest inclusion axis") {
    const auto ball = InclusionShape::ball(0.25, 2);
    // delta=0.1: limit h <= 0.1 * 0.5 / 4 = 0.0125.
    CHECK_NOTHROW(validate_resolution(Grid(unit_box(2), 0.0125), ball, 0.1));
    CHECK_NOTHROW(validate_resolution(Grid(unit_box(2), 0.01), ball, 0.1));
    CHECK_THROWS_AS(validate_resolution(Grid(unit_box(2), 0.02), ball, 0.1), config_error);

    const auto full = InclusionShape::mask(1, {1}, 2);
    CHECK_NOTHROW(validate_resolution(Grid(unit_box(2), 0.25), full, 1.0));
    CHECK_THROWS_AS(validate_resolution(Grid(unit_box(2), 0.5), full, 1.0), config_error);
}
