#include <catch2/catch_amalgamated.hpp>

#include "rbvp/background.hpp"
#include "rbvp/boundary.hpp"
#include "rbvp/oracle.hpp"
#include "test_util.hpp"

using namespace rbvp;

namespace {
struct Setup {
  ModelGeometry geo;
  ChartGrid grid;
  FdTables T;
  MetricField g;
  MetricJet J;
  Setup(GeometryKind k, std::array<int, 3> res = {9, 9, 17})
      : geo(ModelGeometry::make(k)),
        grid(build_grid(geo, res)),
        T(FdTables::build(grid)),
        g(background_metric(geo, grid)),
        J(MetricJet::build(g, T)) {}
};
}  // namespace

TEST_CASE("induced metric on the faces", "[boundary]") {
  Setup flat(GeometryKind::flat_slab);
  auto gT = induced_metric(flat.g);
  for_boundary(flat.grid, [&](int nd, int, int, int) {
    CHECK(gT.atb(nd, 0, 0) == 1.0);
    CHECK(gT.atb(nd, 1, 1) == 1.0);
    CHECK(gT.atb(nd, 0, 1) == 0.0);
  });
  Setup hyp(GeometryKind::hyperbolic_slab);
  auto gTh = induced_metric(hyp.g);
  const double e2 = std::exp(2.0);
  for_boundary(hyp.grid, [&](int nd, int face, int, int) {
    if (face == 1) CHECK(gTh.atb(nd, 0, 0) == Catch::Approx(e2));
  });
}

TEST_CASE("outward normal is unit and orthogonal, exactly, for perturbed metrics",
          "[boundary]") {
  Setup s(GeometryKind::hyperbolic_slab);
  MetricField g = s.g;
  auto h = testutil::random_smooth_sym2(s.grid, 7, 0.05);
  add_scaled(g, 1.0, h);
  REQUIRE(positive_definite(g));
  auto gi = metric_inverse(g);
  auto nu = outward_normal(g, gi);
  double e_unit = 0, e_orth = 0;
  for_boundary(s.grid, [&](int nd, int face, int, int) {
    double nn = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) nn += g.ats(nd, i, j) * nu.at_b(nd, i) * nu.at_b(nd, j);
    e_unit = std::max(e_unit, std::abs(nn - 1.0));
    for (int A = 0; A < 2; ++A) {
      double nt = 0;
      for (int i = 0; i < 3; ++i) nt += g.ats(nd, i, A) * nu.at_b(nd, i);
      e_orth = std::max(e_orth, std::abs(nt));
    }
    // orientation: nu points toward decreasing t at t=a, increasing at t=b
    CHECK(face_sign(face) * nu.at_b(nd, 2) > 0);
  });
  CHECK(e_unit < 1e-13);
  CHECK(e_orth < 1e-13);
}

TEST_CASE("second fundamental form and mean curvature on the catalog", "[boundary]") {
  SECTION("flat slab: totally geodesic, II = 0, H = 0") {
    Setup s(GeometryKind::flat_slab);
    CHECK(second_fundamental_form(s.J).sup_norm() < 1e-14);
    CHECK(mean_curvature(s.J).sup_norm() < 1e-14);
  }
  SECTION("hyperbolic slab: H = -2 on the outer face, +2 on the inner") {
    Setup s(GeometryKind::hyperbolic_slab);
    auto H = mean_curvature(s.J);
    auto II = second_fundamental_form(s.J);
    for_boundary(s.grid, [&](int nd, int face, int, int) {
      CHECK(H.at_b(nd) ==
            Catch::Approx(oracle::warped_mean_curvature(s.geo, face)).margin(2e-5));
      CHECK(II.atb(nd, 0, 0) ==
            Catch::Approx(oracle::warped_II_xx(s.geo, face)).margin(1e-4));
    });
    CHECK(oracle::warped_mean_curvature(s.geo, 1) == Catch::Approx(-2.0));
    CHECK(oracle::warped_mean_curvature(s.geo, 0) == Catch::Approx(2.0));
  }
  SECTION("band: H matches the oracle on both faces") {
    Setup s(GeometryKind::spherical_band);
    auto H = mean_curvature(s.J);
    for_boundary(s.grid, [&](int nd, int face, int, int) {
      CHECK(H.at_b(nd) ==
            Catch::Approx(oracle::warped_mean_curvature(s.geo, face)).margin(2e-5));
    });
  }
}

TEST_CASE("conformal representative", "[boundary]") {
  Setup s(GeometryKind::spherical_band);
  auto gT = induced_metric(s.g);

  BoundaryTang2 gamma(s.grid);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-0.2, 0.2);
  for_boundary(s.grid, [&](int nd, int, int, int) {
    gamma.atb(nd, 0, 0) = gT.atb(nd, 0, 0) * (1.0 + U(rng));
    gamma.atb(nd, 1, 1) = gT.atb(nd, 1, 1) * (1.0 + U(rng));
    gamma.atb(nd, 0, 1) = 0.1 * U(rng);
  });

  auto rep = conformal_representative(gamma, gT);
  SECTION("unit determinant relative to the background") {
    for_boundary(s.grid, [&](int nd, int, int, int) {
      const double rel = det2(tang2_at(rep, nd)) / det2(tang2_at(gT, nd));
      CHECK(rel == Catch::Approx(1.0).margin(1e-12));
    });
  }
  SECTION("idempotent and scale invariant") {
    auto rep2 = conformal_representative(rep, gT);
    BoundaryTang2 scaled = gamma;
    for (auto& x : scaled.v) x *= 3.7;
    auto rep3 = conformal_representative(scaled, gT);
    double e = 0;
    for (size_t i = 0; i < rep.v.size(); ++i) {
      e = std::max(e, std::abs(rep.v[i] - rep2.v[i]));
      e = std::max(e, std::abs(rep.v[i] - rep3.v[i]));
    }
    CHECK(e < 1e-13);
  }
  SECTION("representative of c gT is gT") {
    BoundaryTang2 cg = gT;
    for (auto& x : cg.v) x *= 2.5;
    auto r = conformal_representative(cg, gT);
    double e = 0;
    for (size_t i = 0; i < r.v.size(); ++i) e = std::max(e, std::abs(r.v[i] - gT.v[i]));
    CHECK(e < 1e-13);
  }
}

TEST_CASE("dh_linearization against a metric-direction finite difference", "[boundary]") {
  for (auto k : {GeometryKind::flat_slab, GeometryKind::spherical_band}) {
    Setup s(k, {9, 9, 9});
    auto h = testutil::random_smooth_sym2(s.grid, 23, 1.0);
    auto dH = dh_linearization(h, s.J, s.T);
    auto fd = testutil::richardson_dir(
        [&](double eps) {
          MetricField gp = s.g;
          add_scaled(gp, eps, h);
          return mean_curvature(MetricJet::build(gp, s.T));
        },
        1e-4);
    double num = 0, den = 0;
    for (size_t i = 0; i < dH.v.size(); ++i) {
      num = std::max(num, std::abs(dH.v[i] - fd.v[i]));
      den = std::max(den, std::abs(fd.v[i]));
    }
    CAPTURE(to_string(k), num, den);
    CHECK(num <= 1e-6 * std::max(den, 1.0));
  }
}

TEST_CASE("dh_linearization special values", "[boundary]") {
  Setup s(GeometryKind::hyperbolic_slab);
  SECTION("h = 0 gives 0") {
    SymTensor2Field z(s.grid);
    CHECK(dh_linearization(z, s.J, s.T).sup_norm() == 0.0);
  }
  SECTION("h = g gives -H/2 (Remark 3.6), exactly for the exact linearization") {
    auto dH = dh_linearization(s.g, s.J, s.T);
    auto H = mean_curvature(s.J);
    double e = 0;
    for_boundary(s.grid, [&](int nd, int, int, int) {
      e = std::max(e, std::abs(2 * dH.at_b(nd) + H.at_b(nd)));
    });
    CHECK(e < 1e-12);
  }
}

TEST_CASE("mean-curvature scaling identity and Remark 3.6 via the display formula",
          "[boundary]") {
  for (auto k : {GeometryKind::hyperbolic_slab, GeometryKind::spherical_band}) {
    Setup s(k);
    DYNAMIC_SECTION("H((1+t)^2 g) = (1+t)^{-1} H(g) exactly, " << to_string(k)) {
      const double t = 0.23;
      MetricField gt = s.g;
      for (auto& x : gt.v) x *= (1 + t) * (1 + t);
      auto Ht = mean_curvature(MetricJet::build(gt, s.T));
      auto H = mean_curvature(s.J);
      double e = 0;
      for_boundary(s.grid, [&](int nd, int, int, int) {
        e = std::max(e, std::abs(Ht.at_b(nd) - H.at_b(nd) / (1 + t)));
      });
      CHECK(e < 1e-12);
    }
    DYNAMIC_SECTION("2 DH(g)g + H(g) -> 0 at FD order, display formula, " << to_string(k)) {
      auto dH = dh_mean_curvature_formula(s.g, s.J, s.T);
      auto H = mean_curvature(s.J);
      double e = 0;
      for_boundary(s.grid, [&](int nd, int, int, int) {
        e = std::max(e, std::abs(2 * dH.at_b(nd) + H.at_b(nd)));
      });
      CHECK(e < 5e-4);
    }
  }
}

TEST_CASE("display formula agrees with the exact linearization", "[boundary]") {
  // the identity is algebraic once nabla g = 0 holds exactly, so the two
  // code paths agree to rounding
  for (auto k : {GeometryKind::hyperbolic_slab, GeometryKind::spherical_band}) {
    Setup s(k, {9, 9, 9});
    auto h = testutil::random_smooth_sym2(s.grid, 5, 1.0);
    auto a = dh_linearization(h, s.J, s.T);
    auto b = dh_mean_curvature_formula(h, s.J, s.T);
    double e = 0;
    for (size_t i = 0; i < a.v.size(); ++i) e = std::max(e, std::abs(a.v[i] - b.v[i]));
    CHECK(e < 1e-12);
  }
}

TEST_CASE("sign-flip hook breaks Remark 3.6 (negative control)", "[boundary]") {
  Setup s(GeometryKind::hyperbolic_slab);
  auto dH = dh_mean_curvature_formula(s.g, s.J, s.T, /*flip_ii_sign=*/true);
  auto H = mean_curvature(s.J);
  double e = 0;
  for_boundary(s.grid, [&](int nd, int, int, int) {
    e = std::max(e, std::abs(2 * dH.at_b(nd) + H.at_b(nd)));
  });
  CHECK(e > 0.5);  // identity residual jumps to O(H)
}

TEST_CASE("boundary target validation", "[boundary]") {
  Setup s(GeometryKind::flat_slab);
  auto target = BoundaryTarget::background(s.J);
  auto gT = induced_metric(s.g);
  CHECK_NOTHROW(target.validate(gT));
  target.gamma_normalized.v[0] *= 1.5;  // determinant off
  CHECK_THROWS_AS(target.validate(gT), std::invalid_argument);
}
