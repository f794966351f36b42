#pragma once
//! \file fd.hpp
//! Finite-difference stencils on the chart grid.
//!
//! Interior stencils are centered with the configured accuracy order (2 or 4).
//! Near the radial faces the stencils become one-sided/skewed; those carry one
//! extra node, i.e. accuracy order+1, which keeps the sup-norm error of
//! curvature quantities dominated by the interior.  Tangential axes wrap.
//! Weights come from Fornberg's algorithm.

#include <vector>

#include "rbvp/fields.hpp"
#include "rbvp/grid.hpp"

namespace rbvp {

struct Stencil {
  int first = 0;            // first offset relative to the evaluation node
  std::vector<double> w;    // weights, already divided by spacing^deriv
};

/// Fornberg weights for the m-th derivative at z=0 on nodes at `offsets`
/// (in units of the spacing).  Returns one weight per node.
inline std::vector<double> fornberg_weights(const std::vector<double>& offsets, int m) {
  const int nn = static_cast<int>(offsets.size()) - 1;
  std::vector<std::vector<double>> c(nn + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = offsets[0];
  c[0][0] = 1.0;
  for (int i = 1; i <= nn; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = offsets[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nn + 1);
  for (int i = 0; i <= nn; ++i) w[i] = c[i][m];
  return w;
}

namespace detail {

inline void enforce_zero_sum(Stencil& s) {
  double sum = 0;
  for (double x : s.w) sum += x;
  s.w[-s.first] -= sum;  // adjust the weight at the node itself
}

inline Stencil make_centered(int r, int deriv, double h) {
  std::vector<double> off(2 * r + 1);
  for (int i = 0; i <= 2 * r; ++i) off[i] = i - r;
  Stencil s;
  s.first = -r;
  s.w = fornberg_weights(off, deriv);
  const double scale = 1.0 / std::pow(h, deriv);
  for (double& x : s.w) x *= scale;
  enforce_zero_sum(s);
  return s;
}

/// Boundary closure that reproduces the centered stencil's leading truncation
/// moments.  Moment conditions: sum w x^k = k! for k = deriv, = m_k for the
/// centered stencil's error moments, 0 otherwise.  Keeping the leading error
/// coefficient identical across all rows makes the truncation error a smooth
/// function of t, so composed derivatives (Gamma -> Riemann) stay at full
/// order up to the faces.
inline Stencil make_closure(int first, int count, int deriv, int order, double h) {
  // moments of the centered stencil of this order/deriv, k = 0..count-1
  std::vector<long double> rhs(count, 0.0L);
  auto fact = [](int k) {
    long double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  rhs[deriv] = fact(deriv);
  if (order == 4) {
    if (deriv == 1) { rhs[5] = -4.0L; rhs[7] = -20.0L; }   // centered 5-pt D1 moments
    if (deriv == 2) { rhs[6] = -8.0L; rhs[8] = -40.0L; }   // centered 5-pt D2 moments
  } else {
    if (deriv == 1) { rhs[3] = 1.0L; rhs[5] = 1.0L; }      // centered 3-pt D1 moments
    if (deriv == 2) { rhs[4] = 2.0L; rhs[6] = 2.0L; }      // centered 3-pt D2 moments
  }
  // Vandermonde solve (row k: sum_j w_j x_j^k = rhs_k), partial pivoting
  std::vector<std::vector<long double>> A(count, std::vector<long double>(count + 1, 0.0L));
  for (int k = 0; k < count; ++k) {
    for (int j = 0; j < count; ++j) {
      long double p = 1;
      for (int e = 0; e < k; ++e) p *= (first + j);
      A[k][j] = p;
    }
    A[k][count] = rhs[k];
  }
  for (int c = 0; c < count; ++c) {
    int piv = c;
    for (int r2 = c + 1; r2 < count; ++r2)
      if (std::abs((double)A[r2][c]) > std::abs((double)A[piv][c])) piv = r2;
    std::swap(A[c], A[piv]);
    for (int r2 = 0; r2 < count; ++r2) {
      if (r2 == c) continue;
      const long double m = A[r2][c] / A[c][c];
      for (int j = c; j <= count; ++j) A[r2][j] -= m * A[c][j];
    }
  }
  Stencil s;
  s.first = first;
  s.w.resize(count);
  const long double scale = 1.0L / powl((long double)h, deriv);
  for (int j = 0; j < count; ++j) s.w[j] = (double)(A[j][count] / A[j][j] * scale);
  enforce_zero_sum(s);
  return s;
}

}  // namespace detail

struct AxisStencils {
  bool uniform = true;               // tangential axes use one centered stencil
  std::vector<Stencil> per_pos;      // size 1 if uniform, else res entries
  const Stencil& at(int pos) const { return uniform ? per_pos[0] : per_pos[pos]; }
};

/// stencil tables for one grid: [axis][deriv-1], deriv in {1,2}
struct FdTables {
  AxisStencils s[kDim][2];

  static FdTables build(const ChartGrid& g) {
    FdTables T;
    const int p = g.fd_order;
    const int r = p / 2;  // centered half-width
    for (int ax = 0; ax < kDim; ++ax) {
      for (int deriv = 1; deriv <= 2; ++deriv) {
        AxisStencils& A = T.s[ax][deriv - 1];
        const double h = g.spacing[ax];
        if (ax != kRadialAxis) {
          A.uniform = true;
          A.per_pos.push_back(detail::make_centered(r, deriv, h));
        } else {
          A.uniform = false;
          const int res = g.res[2];
          // error-matched closure width: centered conditions + matched moments
          const int W = p == 4 ? (deriv == 1 ? 8 : 9) : (deriv == 1 ? 6 : 7);
          for (int it = 0; it < res; ++it) {
            if (it - r >= 0 && it + r <= res - 1) {
              A.per_pos.push_back(detail::make_centered(r, deriv, h));
            } else {
              const int start = it < r ? 0 : res - W;
              A.per_pos.push_back(detail::make_closure(start - it, W, deriv, p, h));
            }
          }
        }
      }
    }
    return T;
  }
};

/// componentwise partial derivative along one axis; deriv = derivative order
/// (1 or 2).  The output has the same component layout; building the
/// higher-covariance object is the caller's contraction.
template <typename FieldT>
inline FieldT partial_derivative(const FieldT& f, int axis, int deriv, const FdTables& T) {
  const ChartGrid& g = *f.grid;
  FieldT out(g);
  const AxisStencils& A = T.s[axis][deriv - 1];
  const int nc = FieldT::ncomp;
  for (int ix = 0; ix < g.res[0]; ++ix)
    for (int iy = 0; iy < g.res[1]; ++iy)
      for (int it = 0; it < g.res[2]; ++it) {
        const int nd = g.node(ix, iy, it);
        const int pos = axis == 0 ? ix : (axis == 1 ? iy : it);
        const Stencil& s = A.at(pos);
        for (int c = 0; c < nc; ++c) {
          double acc = 0;
          for (size_t k = 0; k < s.w.size(); ++k) {
            int q = pos + s.first + static_cast<int>(k);
            if (axis != kRadialAxis) q = (q % g.res[axis] + g.res[axis]) % g.res[axis];
            const int nq = axis == 0 ? g.node(q, iy, it)
                                     : (axis == 1 ? g.node(ix, q, it) : g.node(ix, iy, q));
            acc += s.w[k] * f.at(nq, c);
          }
          out.at(nd, c) = acc;
        }
      }
  return out;
}

template <typename FieldT>
inline FieldT partial_derivative(const FieldT& f, int axis, int deriv = 1) {
  FdTables T = FdTables::build(*f.grid);
  return partial_derivative(f, axis, deriv, T);
}

/// Visits the stencil of (axis, deriv) at a node: fn(neighbor_node, weight).
/// This is the single source of truth shared by field evaluation and matrix
/// assembly, so assembled operators reproduce the field path to rounding.
template <typename Fn>
inline void for_stencil(const ChartGrid& g, const FdTables& T, int axis, int deriv, int ix,
                        int iy, int it, Fn&& fn) {
  const AxisStencils& A = T.s[axis][deriv - 1];
  const int pos = axis == 0 ? ix : (axis == 1 ? iy : it);
  const Stencil& s = A.at(pos);
  for (size_t k = 0; k < s.w.size(); ++k) {
    int q = pos + s.first + static_cast<int>(k);
    if (axis != kRadialAxis) q = (q % g.res[axis] + g.res[axis]) % g.res[axis];
    const int nq =
        axis == 0 ? g.node(q, iy, it) : (axis == 1 ? g.node(ix, q, it) : g.node(ix, iy, q));
    fn(nq, s.w[k]);
  }
}

}  // namespace rbvp
