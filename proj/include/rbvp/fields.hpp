#pragma once
//! \file fields.hpp
//! Grid-sampled tensor fields.  Storage is node-major, component-minor;
//! symmetric 2-tensors use the packed order
//!   (0,0) (0,1) (0,2) (1,1) (1,2) (2,2).

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rbvp/grid.hpp"

namespace rbvp {

namespace sym {
// packed index tables for n = 3
inline constexpr int idx_table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
inline constexpr int row_of[kSym] = {0, 0, 0, 1, 1, 2};
inline constexpr int col_of[kSym] = {0, 1, 2, 1, 2, 2};
inline constexpr int idx(int i, int j) { return idx_table[i][j]; }
}  // namespace sym

namespace detail {
template <int NC>
struct FieldBase {
  const ChartGrid* grid = nullptr;
  std::vector<double> v;

  FieldBase() = default;
  explicit FieldBase(const ChartGrid& g) : grid(&g), v(static_cast<size_t>(g.n_nodes) * NC, 0.0) {}

  static constexpr int ncomp = NC;
  double& at(int node, int c = 0) { return v[static_cast<size_t>(node) * NC + c]; }
  double at(int node, int c = 0) const { return v[static_cast<size_t>(node) * NC + c]; }

  double sup_norm() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};
}  // namespace detail

struct ScalarField : detail::FieldBase<1> {
  using FieldBase::FieldBase;
};

struct OneFormField : detail::FieldBase<kDim> {
  using FieldBase::FieldBase;
};

/// general (not necessarily symmetric) 2-tensor, component c = i*n + j
struct Tensor2Field : detail::FieldBase<kDim * kDim> {
  using FieldBase::FieldBase;
  double& at2(int node, int i, int j) { return at(node, i * kDim + j); }
  double at2(int node, int i, int j) const { return at(node, i * kDim + j); }
};

/// general 3-tensor, component c = (a*n + i)*n + j  (first slot = derivative axis)
struct Tensor3Field : detail::FieldBase<kDim * kDim * kDim> {
  using FieldBase::FieldBase;
  double& at3(int node, int a, int i, int j) { return at(node, (a * kDim + i) * kDim + j); }
  double at3(int node, int a, int i, int j) const { return at(node, (a * kDim + i) * kDim + j); }
};

struct SymTensor2Field : detail::FieldBase<kSym> {
  using FieldBase::FieldBase;
  double& ats(int node, int i, int j) { return at(node, sym::idx(i, j)); }
  double ats(int node, int i, int j) const { return at(node, sym::idx(i, j)); }
};

/// contravariant symmetric 2-tensor (both indices up); same packed layout
struct ContraSymTensor2Field : detail::FieldBase<kSym> {
  using FieldBase::FieldBase;
  double& ats(int node, int i, int j) { return at(node, sym::idx(i, j)); }
  double ats(int node, int i, int j) const { return at(node, sym::idx(i, j)); }
};

using MetricField = SymTensor2Field;

/// Christoffel symbols Gamma^k_{ij}, symmetric in (i,j): c = k*6 + sym(i,j)
struct ChristoffelField : detail::FieldBase<kDim * kSym> {
  using FieldBase::FieldBase;
  double& atc(int node, int k, int i, int j) { return at(node, k * kSym + sym::idx(i, j)); }
  double atc(int node, int k, int i, int j) const { return at(node, k * kSym + sym::idx(i, j)); }
};

/// gradient of a symmetric 2-tensor: c = a*6 + sym(i,j), a = derivative axis
struct GradSym2Field : detail::FieldBase<kDim * kSym> {
  using FieldBase::FieldBase;
  double& atg(int node, int a, int i, int j) { return at(node, a * kSym + sym::idx(i, j)); }
  double atg(int node, int a, int i, int j) const { return at(node, a * kSym + sym::idx(i, j)); }
};

/// (1,3) Riemann tensor R^i_{jkl}, antisymmetric in (k,l) by construction.
/// Packed over the antisymmetric pair: pairs (k,l) in order (0,1),(0,2),(1,2);
/// component c = (i*n + j)*3 + pair.  Accessor unpacks the sign.
struct Tensor13Field : detail::FieldBase<kDim * kDim * 3> {
  using FieldBase::FieldBase;
  static constexpr int pair_table[3][3] = {{-1, 0, 1}, {0, -1, 2}, {1, 2, -1}};
  static int pair(int k, int l) { return pair_table[k][l]; }
  static double sign(int k, int l) { return k < l ? 1.0 : (k > l ? -1.0 : 0.0); }
  double& at_pair(int node, int i, int j, int p) { return at(node, (i * kDim + j) * 3 + p); }
  double r(int node, int i, int j, int k, int l) const {
    if (k == l) return 0.0;
    return sign(k, l) * at(node, (i * kDim + j) * 3 + pair_table[std::min(k, l)][std::max(k, l)]);
  }
};

/// full (0,4) storage, c = ((i*n + j)*n + k)*n + l
struct Tensor04Field : detail::FieldBase<kDim * kDim * kDim * kDim> {
  using FieldBase::FieldBase;
  double& at4(int node, int i, int j, int k, int l) {
    return at(node, ((i * kDim + j) * kDim + k) * kDim + l);
  }
  double at4(int node, int i, int j, int k, int l) const {
    return at(node, ((i * kDim + j) * kDim + k) * kDim + l);
  }
};

// ---------------------------------------------------------------------------
// small per-node symmetric 3x3 helpers (closed-form inverse with det guard)
// ---------------------------------------------------------------------------

using Sym3 = std::array<double, kSym>;

inline double sym3_get(const Sym3& m, int i, int j) { return m[sym::idx(i, j)]; }

inline double sym3_det(const Sym3& m) {
  const double a = m[0], b = m[1], c = m[2], d = m[3], e = m[4], f = m[5];
  return a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
}

inline constexpr double kDetGuard = 1e-12;

inline Sym3 sym3_inverse(const Sym3& m) {
  const double a = m[0], b = m[1], c = m[2], d = m[3], e = m[4], f = m[5];
  const double det = sym3_det(m);
  if (!(std::abs(det) > kDetGuard))
    throw std::domain_error("metric inversion: |det| <= 1e-12 at a node");
  const double inv = 1.0 / det;
  Sym3 r;
  r[0] = (d * f - e * e) * inv;
  r[1] = (c * e - b * f) * inv;
  r[2] = (b * e - c * d) * inv;
  r[3] = (a * f - c * c) * inv;
  r[4] = (b * c - a * e) * inv;
  r[5] = (a * d - b * b) * inv;
  return r;
}

inline Sym3 sym3_at(const SymTensor2Field& g, int node) {
  Sym3 m;
  for (int c = 0; c < kSym; ++c) m[c] = g.at(node, c);
  return m;
}

inline Sym3 sym3_at(const ContraSymTensor2Field& g, int node) {
  Sym3 m;
  for (int c = 0; c < kSym; ++c) m[c] = g.at(node, c);
  return m;
}

/// smallest eigenvalue of a symmetric 3x3 (Jacobi sweep, used for SPD checks)
inline double sym3_min_eigenvalue(const Sym3& m) {
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = sym3_get(m, i, j);
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off < 1e-14) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  return std::min({a[0][0], a[1][1], a[2][2]});
}

// pointwise arithmetic used all over the solvers
template <typename F>
inline F axpy(double alpha, const F& x, const F& y) {  // alpha*x + y
  F r = y;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] += alpha * x.v[i];
  return r;
}

template <typename F>
inline void add_scaled(F& y, double alpha, const F& x) {
  for (size_t i = 0; i < y.v.size(); ++i) y.v[i] += alpha * x.v[i];
}

}  // namespace rbvp
