#pragma once
//! \file grid.hpp
//! Model geometries and their discretization as a single periodic-by-interval
//! chart T^{n-1} x [a,b].
//!
//! Coordinate and component order is (x, y, t) with the radial coordinate t
//! stored LAST (axis n-1).  The first n-1 axes wrap periodically; the radial
//! axis does not.  Nodes are enumerated interior-first, then the face t=a,
//! then the face t=b (lexicographic within each block), so boundary unknowns
//! and boundary rows form a trailing block.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbvp {

inline constexpr int kDim = 3;        // manifold dimension n
inline constexpr int kSym = 6;        // n(n+1)/2 packed symmetric components
inline constexpr int kTangAxes = 2;   // n-1 tangential axes
inline constexpr int kRadialAxis = 2; // t is the last axis

enum class GeometryKind { flat_slab, hyperbolic_slab, spherical_band };

inline std::string to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::flat_slab: return "flat_slab";
    case GeometryKind::hyperbolic_slab: return "hyperbolic_slab";
    case GeometryKind::spherical_band: return "spherical_band";
  }
  return "?";
}

inline GeometryKind geometry_kind_from_string(const std::string& s) {
  if (s == "flat_slab") return GeometryKind::flat_slab;
  if (s == "hyperbolic_slab") return GeometryKind::hyperbolic_slab;
  if (s == "spherical_band") return GeometryKind::spherical_band;
  throw std::invalid_argument("unknown geometry kind: " + s);
}

/// One of the catalog warped-product Einstein backgrounds
///   flat_slab:       dt^2 + dx^2 + dy^2                  lambda = 0
///   hyperbolic_slab: dt^2 + e^{2t}(dx^2 + dy^2)          lambda = -(n-1)
///   spherical_band:  dt^2 + cos^2(t)dx^2 + sin^2(t)dy^2  lambda = +(n-1)
struct ModelGeometry {
  GeometryKind kind = GeometryKind::flat_slab;
  double a = 0.0, b = 1.0;                  // radial interval
  std::array<double, kTangAxes> periods{1.0, 1.0};

  static ModelGeometry make(GeometryKind k) {
    ModelGeometry g;
    g.kind = k;
    if (k == GeometryKind::spherical_band) {
      g.a = M_PI / 8.0;
      g.b = 3.0 * M_PI / 8.0;
      g.periods = {2.0 * M_PI, 2.0 * M_PI};
    }
    return g;
  }

  void validate() const {
    if (!(a < b)) throw std::invalid_argument("geometry: interval requires a < b");
    for (double p : periods)
      if (!(p > 0)) throw std::invalid_argument("geometry: periods must be positive");
    if (kind == GeometryKind::spherical_band) {
      if (!(a > 0.0 && b < M_PI / 2.0))
        throw std::invalid_argument(
            "spherical_band: interval must lie strictly inside (0, pi/2), "
            "cos/sin warp factors degenerate at the endpoints");
    }
  }

  // warp factors of the metric diag(f^2, q^2, 1); derivatives up to 2nd order
  double warp_f(double t) const {
    switch (kind) {
      case GeometryKind::flat_slab: return 1.0;
      case GeometryKind::hyperbolic_slab: return std::exp(t);
      case GeometryKind::spherical_band: return std::cos(t);
    }
    return 1.0;
  }
  double warp_q(double t) const {
    switch (kind) {
      case GeometryKind::flat_slab: return 1.0;
      case GeometryKind::hyperbolic_slab: return std::exp(t);
      case GeometryKind::spherical_band: return std::sin(t);
    }
    return 1.0;
  }
  double warp_f1(double t) const {  // f'
    switch (kind) {
      case GeometryKind::flat_slab: return 0.0;
      case GeometryKind::hyperbolic_slab: return std::exp(t);
      case GeometryKind::spherical_band: return -std::sin(t);
    }
    return 0.0;
  }
  double warp_q1(double t) const {  // q'
    switch (kind) {
      case GeometryKind::flat_slab: return 0.0;
      case GeometryKind::hyperbolic_slab: return std::exp(t);
      case GeometryKind::spherical_band: return std::cos(t);
    }
    return 0.0;
  }
  double warp_f2(double t) const {  // f''
    switch (kind) {
      case GeometryKind::flat_slab: return 0.0;
      case GeometryKind::hyperbolic_slab: return std::exp(t);
      case GeometryKind::spherical_band: return -std::cos(t);
    }
    return 0.0;
  }
  double warp_q2(double t) const {  // q''
    switch (kind) {
      case GeometryKind::flat_slab: return 0.0;
      case GeometryKind::hyperbolic_slab: return std::exp(t);
      case GeometryKind::spherical_band: return -std::sin(t);
    }
    return 0.0;
  }
};

/// Einstein constant lambda with Ric(g) = lambda g for the catalog metrics.
inline double analytic_einstein_constant(const ModelGeometry& geo) {
  geo.validate();
  switch (geo.kind) {
    case GeometryKind::flat_slab: return 0.0;
    case GeometryKind::hyperbolic_slab: return -(kDim - 1);
    case GeometryKind::spherical_band: return kDim - 1;
  }
  return 0.0;
}

/// Structured grid on the chart.  resolution = points per axis in the order
/// (x, y, t); tangential spacing = period/res (wrap), radial spacing =
/// (b-a)/(res_t - 1) with nodes at both endpoints.
struct ChartGrid {
  int n = kDim;
  ModelGeometry geometry;
  std::array<int, kDim> res{};
  std::array<double, kDim> spacing{};
  int fd_order = 4;

  int n_nodes = 0, n_interior = 0, n_boundary = 0;
  std::vector<int32_t> node_of_lex;  // lex -> node id (interior first, faces last)
  std::vector<int32_t> lex_of_node;  // node id -> lex

  int lex(int ix, int iy, int it) const { return (ix * res[1] + iy) * res[2] + it; }
  int node(int ix, int iy, int it) const { return node_of_lex[lex(ix, iy, it)]; }
  void lex_coords(int l, int& ix, int& iy, int& it) const {
    it = l % res[2];
    l /= res[2];
    iy = l % res[1];
    ix = l / res[1];
  }
  bool boundary_it(int it) const { return it == 0 || it == res[2] - 1; }
  bool is_boundary_node(int nd) const { return nd >= n_interior; }

  double coord_t(int it) const { return geometry.a + it * spacing[2]; }
  double coord_tang(int axis, int i) const { return i * spacing[axis]; }

  /// boundary node ids are [n_interior, n_nodes): face t=a first, then t=b
  int boundary_begin() const { return n_interior; }
  int face_a_begin() const { return n_interior; }
  int face_b_begin() const { return n_interior + n_boundary / 2; }
  /// face of a boundary node: 0 = t=a, 1 = t=b
  int face_of(int nd) const { return nd >= face_b_begin() ? 1 : 0; }
};

/// Builds the grid; rejects degenerate intervals and resolutions below the
/// stencil width of the configured order.
inline ChartGrid build_grid(const ModelGeometry& geo, std::array<int, kDim> resolution,
                            int fd_order = 4) {
  geo.validate();
  if (fd_order != 2 && fd_order != 4)
    throw std::invalid_argument("fd_order must be 2 or 4");
  // widest stencil: the error-matched one-sided second derivative closure
  const int min_res = fd_order == 4 ? 9 : 8;
  for (int ax = 0; ax < kDim; ++ax) {
    if (resolution[ax] < 8 || resolution[ax] < min_res)
      throw std::invalid_argument("resolution below stencil width on axis " +
                                  std::to_string(ax));
  }
  ChartGrid g;
  g.geometry = geo;
  g.res = resolution;
  g.fd_order = fd_order;
  g.spacing[0] = geo.periods[0] / resolution[0];
  g.spacing[1] = geo.periods[1] / resolution[1];
  g.spacing[2] = (geo.b - geo.a) / (resolution[2] - 1);

  g.n_nodes = resolution[0] * resolution[1] * resolution[2];
  g.n_boundary = 2 * resolution[0] * resolution[1];
  g.n_interior = g.n_nodes - g.n_boundary;
  g.node_of_lex.assign(g.n_nodes, -1);
  g.lex_of_node.assign(g.n_nodes, -1);

  int next_interior = 0;
  int next_face_a = g.n_interior;
  int next_face_b = g.n_interior + g.n_boundary / 2;
  for (int ix = 0; ix < resolution[0]; ++ix)
    for (int iy = 0; iy < resolution[1]; ++iy)
      for (int it = 0; it < resolution[2]; ++it) {
        const int l = g.lex(ix, iy, it);
        int id;
        if (it == 0)
          id = next_face_a++;
        else if (it == resolution[2] - 1)
          id = next_face_b++;
        else
          id = next_interior++;
        g.node_of_lex[l] = id;
        g.lex_of_node[id] = l;
      }
  return g;
}

}  // namespace rbvp
