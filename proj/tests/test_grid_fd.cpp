#include <catch2/catch_amalgamated.hpp>

#include "rbvp/fd.hpp"
#include "rbvp/fields.hpp"
#include "rbvp/grid.hpp"

using namespace rbvp;

TEST_CASE("grid construction and node classification", "[grid]") {
  auto geo = ModelGeometry::make(GeometryKind::flat_slab);
  auto g = build_grid(geo, {16, 16, 17});
  CHECK(g.n_nodes == 16 * 16 * 17);
  CHECK(g.n_boundary == 16 * 16 * 2);
  CHECK(g.n_interior == 16 * 16 * 15);

  // every node classified exactly once; faces last, face a before face b
  std::vector<int> seen(g.n_nodes, 0);
  int n_bd = 0;
  for (int ix = 0; ix < 16; ++ix)
    for (int iy = 0; iy < 16; ++iy)
      for (int it = 0; it < 17; ++it) {
        const int nd = g.node(ix, iy, it);
        seen[nd]++;
        if (it == 0 || it == 16) {
          ++n_bd;
          CHECK(g.is_boundary_node(nd));
          CHECK(g.face_of(nd) == (it == 0 ? 0 : 1));
        } else {
          CHECK_FALSE(g.is_boundary_node(nd));
        }
      }
  CHECK(n_bd == g.n_boundary);
  for (int c : seen) CHECK(c == 1);
}

TEST_CASE("grid spacings", "[grid]") {
  auto geo = ModelGeometry::make(GeometryKind::hyperbolic_slab);
  auto g = build_grid(geo, {9, 9, 17});
  CHECK(g.spacing[2] == Catch::Approx(1.0 / 16.0));
  CHECK(g.spacing[0] == Catch::Approx(1.0 / 9.0));
  CHECK(g.coord_t(16) == Catch::Approx(1.0));
}

TEST_CASE("grid rejects degenerate input", "[grid]") {
  auto geo = ModelGeometry::make(GeometryKind::spherical_band);
  geo.a = 0.0;  // cos/sin degenerate at 0
  CHECK_THROWS_AS(build_grid(geo, {9, 9, 9}), std::invalid_argument);

  auto flat = ModelGeometry::make(GeometryKind::flat_slab);
  flat.b = flat.a;
  CHECK_THROWS_AS(build_grid(flat, {9, 9, 9}), std::invalid_argument);

  auto ok = ModelGeometry::make(GeometryKind::flat_slab);
  CHECK_THROWS_AS(build_grid(ok, {9, 9, 4}), std::invalid_argument);
}

TEST_CASE("fornberg weights reproduce classic stencils", "[grid]") {
  auto w = fornberg_weights({-1, 0, 1}, 2);
  CHECK(w[0] == Catch::Approx(1.0));
  CHECK(w[1] == Catch::Approx(-2.0));
  CHECK(w[2] == Catch::Approx(1.0));
  w = fornberg_weights({-2, -1, 0, 1, 2}, 1);
  CHECK(w[0] == Catch::Approx(1.0 / 12));
  CHECK(w[1] == Catch::Approx(-8.0 / 12));
  CHECK(w[3] == Catch::Approx(8.0 / 12));
}

TEST_CASE("partial derivatives: constants, polynomials, trig", "[grid]") {
  auto geo = ModelGeometry::make(GeometryKind::flat_slab);
  auto g = build_grid(geo, {9, 9, 17});
  FdTables T = FdTables::build(g);

  SECTION("derivative of a constant is exactly zero") {
    ScalarField f(g);
    for (auto& x : f.v) x = 3.25;
    for (int ax = 0; ax < 3; ++ax) {
      // zero to rounding: weights sum to zero, products with the constant round
      CHECK(partial_derivative(f, ax, 1, T).sup_norm() < 1e-12);
      CHECK(partial_derivative(f, ax, 2, T).sup_norm() < 1e-10);
    }
  }

  SECTION("radial stencils exact on low-degree polynomials") {
    ScalarField f(g), d1(g), d2(g);
    for (int ix = 0; ix < 9; ++ix)
      for (int iy = 0; iy < 9; ++iy)
        for (int it = 0; it < 17; ++it) {
          const double t = g.coord_t(it);
          const int nd = g.node(ix, iy, it);
          f.at(nd) = 1 + t + t * t + t * t * t + 0.5 * t * t * t * t;
          d1.at(nd) = 1 + 2 * t + 3 * t * t + 2 * t * t * t;
          d2.at(nd) = 2 + 6 * t + 6 * t * t;
        }
    auto D1 = partial_derivative(f, 2, 1, T);
    auto D2 = partial_derivative(f, 2, 2, T);
    for (int nd = 0; nd < g.n_nodes; ++nd) {
      CHECK(D1.at(nd) == Catch::Approx(d1.at(nd)).margin(1e-10));
      CHECK(D2.at(nd) == Catch::Approx(d2.at(nd)).margin(1e-8));
    }
  }

  SECTION("d_t sin(pi t) is pi cos(pi t) to 4th order") {
    ScalarField f(g);
    for (int ix = 0; ix < 9; ++ix)
      for (int iy = 0; iy < 9; ++iy)
        for (int it = 0; it < 17; ++it)
          f.at(g.node(ix, iy, it)) = std::sin(M_PI * g.coord_t(it));
    auto D1 = partial_derivative(f, 2, 1, T);
    double err = 0;
    for (int it = 0; it < 17; ++it) {
      const double t = g.coord_t(it);
      err = std::max(err, std::abs(D1.at(g.node(4, 4, it)) - M_PI * std::cos(M_PI * t)));
    }
    CHECK(err < 4e-4);  // -h^4/30 pi^5 cos(pi t)
    // value pinned by the spec example: derivative at t = 1/2 is 0; the odd
    // derivatives of sin(pi t) all vanish there, so the error is far smaller
    CHECK(std::abs(D1.at(g.node(0, 0, 8))) < 1e-6);
  }

  SECTION("tangential Fourier mode: d_x acts as frequency multiplier") {
    ScalarField re(g), im(g);
    for (int ix = 0; ix < 9; ++ix)
      for (int iy = 0; iy < 9; ++iy)
        for (int it = 0; it < 17; ++it) {
          const double x = g.coord_tang(0, ix);
          re.at(g.node(ix, iy, it)) = std::cos(2 * M_PI * x);
          im.at(g.node(ix, iy, it)) = std::sin(2 * M_PI * x);
        }
    auto Dre = partial_derivative(re, 0, 1, T);
    auto Dim = partial_derivative(im, 0, 1, T);
    // d/dx e^{2pi i x} = 2pi i e^{2pi i x}: Re' = -2pi sin, Im' = 2pi cos
    double err = 0;
    for (int ix = 0; ix < 9; ++ix) {
      const double x = g.coord_tang(0, ix);
      const int nd = g.node(ix, 3, 5);
      err = std::max(err, std::abs(Dre.at(nd) + 2 * M_PI * std::sin(2 * M_PI * x)));
      err = std::max(err, std::abs(Dim.at(nd) - 2 * M_PI * std::cos(2 * M_PI * x)));
    }
    CHECK(err < 0.07);  // h^4/30 (2pi)^5 at 9 points per period
  }
}
