#pragma once
//! \file oracle.hpp
//! Independent oracles: closed-form warped-product curvature, manufactured
//! problems, FD linearization checks and convergence studies.
//!
//! The closed forms below were derived by hand for metrics
//! diag(f(t)^2, q(t)^2, 1) and cross-checked with a separate symbolic
//! derivation; they deliberately share no code with tensor_calc.hpp.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rbvp/background.hpp"
#include "rbvp/fields.hpp"
#include "rbvp/grid.hpp"

namespace rbvp::oracle {

// ---------------------------------------------------------------------------
// closed-form curvature of the warped catalog metrics
// ---------------------------------------------------------------------------

/// Gamma^t_xx = -f f', Gamma^t_yy = -q q', Gamma^x_xt = f'/f, Gamma^y_yt = q'/q
inline ChristoffelField warped_christoffel(const ModelGeometry& geo, const ChartGrid& grid) {
  ChristoffelField gam(grid);
  for (int ix = 0; ix < grid.res[0]; ++ix)
    for (int iy = 0; iy < grid.res[1]; ++iy)
      for (int it = 0; it < grid.res[2]; ++it) {
        const int nd = grid.node(ix, iy, it);
        const double t = grid.coord_t(it);
        const double f = geo.warp_f(t), f1 = geo.warp_f1(t);
        const double q = geo.warp_q(t), q1 = geo.warp_q1(t);
        gam.atc(nd, 2, 0, 0) = -f * f1;
        gam.atc(nd, 2, 1, 1) = -q * q1;
        gam.atc(nd, 0, 0, 2) = f1 / f;
        gam.atc(nd, 1, 1, 2) = q1 / q;
      }
  return gam;
}

/// Ric = diag(-f f'' - f f' q'/q, -q q'' - q q' f'/f, -f''/f - q''/q)
inline SymTensor2Field warped_ricci(const ModelGeometry& geo, const ChartGrid& grid) {
  SymTensor2Field ric(grid);
  for (int ix = 0; ix < grid.res[0]; ++ix)
    for (int iy = 0; iy < grid.res[1]; ++iy)
      for (int it = 0; it < grid.res[2]; ++it) {
        const int nd = grid.node(ix, iy, it);
        const double t = grid.coord_t(it);
        const double f = geo.warp_f(t), f1 = geo.warp_f1(t), f2 = geo.warp_f2(t);
        const double q = geo.warp_q(t), q1 = geo.warp_q1(t), q2 = geo.warp_q2(t);
        ric.ats(nd, 0, 0) = -f * f2 - f * f1 * q1 / q;
        ric.ats(nd, 1, 1) = -q * q2 - q * q1 * f1 / f;
        ric.ats(nd, 2, 2) = -f2 / f - q2 / q;
      }
  return ric;
}

inline ScalarField warped_scalar_curvature(const ModelGeometry& geo, const ChartGrid& grid) {
  ScalarField R(grid);
  for (int ix = 0; ix < grid.res[0]; ++ix)
    for (int iy = 0; iy < grid.res[1]; ++iy)
      for (int it = 0; it < grid.res[2]; ++it) {
        const int nd = grid.node(ix, iy, it);
        const double t = grid.coord_t(it);
        const double f = geo.warp_f(t), f1 = geo.warp_f1(t), f2 = geo.warp_f2(t);
        const double q = geo.warp_q(t), q1 = geo.warp_q1(t), q2 = geo.warp_q2(t);
        R.at(nd) = -2 * f2 / f - 2 * q2 / q - 2 * f1 * q1 / (f * q);
      }
  return R;
}

/// lowered Riemann; independent components R_xtxt = -f f'', R_ytyt = -q q'',
/// R_xyxy = -f q f' q', filled with all (0,4) symmetries
inline Tensor04Field warped_riemann04(const ModelGeometry& geo, const ChartGrid& grid) {
  Tensor04Field R(grid);
  auto fill = [&R](int nd, int i, int j, int k, int l, double v) {
    R.at4(nd, i, j, k, l) = v;
    R.at4(nd, j, i, k, l) = -v;
    R.at4(nd, i, j, l, k) = -v;
    R.at4(nd, j, i, l, k) = v;
    R.at4(nd, k, l, i, j) = v;
    R.at4(nd, l, k, i, j) = -v;
    R.at4(nd, k, l, j, i) = -v;
    R.at4(nd, l, k, j, i) = v;
  };
  for (int ix = 0; ix < grid.res[0]; ++ix)
    for (int iy = 0; iy < grid.res[1]; ++iy)
      for (int it = 0; it < grid.res[2]; ++it) {
        const int nd = grid.node(ix, iy, it);
        const double t = grid.coord_t(it);
        const double f = geo.warp_f(t), f1 = geo.warp_f1(t), f2 = geo.warp_f2(t);
        const double q = geo.warp_q(t), q1 = geo.warp_q1(t), q2 = geo.warp_q2(t);
        fill(nd, 0, 2, 0, 2, -f * f2);
        fill(nd, 1, 2, 1, 2, -q * q2);
        fill(nd, 0, 1, 0, 1, -f * q * f1 * q1);
      }
  return R;
}

/// sectional curvatures as functions of t (planes of the coordinate frame)
inline double warped_K_xt(const ModelGeometry& geo, double t) {
  return -geo.warp_f2(t) / geo.warp_f(t);
}
inline double warped_K_yt(const ModelGeometry& geo, double t) {
  return -geo.warp_q2(t) / geo.warp_q(t);
}
inline double warped_K_xy(const ModelGeometry& geo, double t) {
  return -geo.warp_f1(t) * geo.warp_q1(t) / (geo.warp_f(t) * geo.warp_q(t));
}

/// second fundamental form on a face (paper sign, outward normal):
/// II_xx = -s f f', II_yy = -s q q', s = -1 at t=a, +1 at t=b
inline double warped_II_xx(const ModelGeometry& geo, int face) {
  const double t = face == 0 ? geo.a : geo.b;
  const double s = face == 0 ? -1.0 : 1.0;
  return -s * geo.warp_f(t) * geo.warp_f1(t);
}
inline double warped_II_yy(const ModelGeometry& geo, int face) {
  const double t = face == 0 ? geo.a : geo.b;
  const double s = face == 0 ? -1.0 : 1.0;
  return -s * geo.warp_q(t) * geo.warp_q1(t);
}

/// mean curvature H = -s (f'/f + q'/q) on the face
inline double warped_mean_curvature(const ModelGeometry& geo, int face) {
  const double t = face == 0 ? geo.a : geo.b;
  const double s = face == 0 ? -1.0 : 1.0;
  return -s * (geo.warp_f1(t) / geo.warp_f(t) + geo.warp_q1(t) / geo.warp_q(t));
}

}  // namespace rbvp::oracle
