#pragma once
//! \file background.hpp
//! Closed-form background metrics of the geometry catalog, sampled on a grid.

#include "rbvp/fields.hpp"
#include "rbvp/grid.hpp"

namespace rbvp {

/// Samples the warped-product metric diag(f(t)^2, q(t)^2, 1) at every node.
inline MetricField background_metric(const ModelGeometry& geo, const ChartGrid& grid) {
  geo.validate();
  MetricField g(grid);
  for (int ix = 0; ix < grid.res[0]; ++ix)
    for (int iy = 0; iy < grid.res[1]; ++iy)
      for (int it = 0; it < grid.res[2]; ++it) {
        const int nd = grid.node(ix, iy, it);
        const double t = grid.coord_t(it);
        const double f = geo.warp_f(t), q = geo.warp_q(t);
        g.ats(nd, 0, 0) = f * f;
        g.ats(nd, 1, 1) = q * q;
        g.ats(nd, 2, 2) = 1.0;
        g.ats(nd, 0, 1) = g.ats(nd, 0, 2) = g.ats(nd, 1, 2) = 0.0;
      }
  return g;
}

inline MetricField background_metric(const ChartGrid& grid) {
  return background_metric(grid.geometry, grid);
}

/// true if g is positive definite at every node
inline bool positive_definite(const MetricField& g) {
  for (int nd = 0; nd < g.grid->n_nodes; ++nd)
    if (sym3_min_eigenvalue(sym3_at(g, nd)) <= 0) return false;
  return true;
}

}  // namespace rbvp
