#pragma once
//! \file tensor_calc.hpp
//! Christoffel symbols, curvature tensors and pointwise tensor algebra.
//!
//! Conventions (see docs/conventions.md):
//!   Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
//!   R^i_jkl    = d_k Gamma^i_lj - d_l Gamma^i_kj
//!              + Gamma^i_km Gamma^m_lj - Gamma^i_lm Gamma^m_kj
//!   Ric_jl     = R^k_jkl   (gives Ric = +2 g on the round band)
//!   R_ijkl     = g_im R^m_jkl

#include <array>
#include <cmath>

#include "rbvp/fd.hpp"
#include "rbvp/fields.hpp"
#include "rbvp/grid.hpp"

namespace rbvp {

inline ContraSymTensor2Field metric_inverse(const MetricField& g) {
  ContraSymTensor2Field gi(*g.grid);
  for (int nd = 0; nd < g.grid->n_nodes; ++nd) {
    const Sym3 inv = sym3_inverse(sym3_at(g, nd));
    for (int c = 0; c < kSym; ++c) gi.at(nd, c) = inv[c];
  }
  return gi;
}

/// lowered Christoffel symbols Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
inline ChristoffelField christoffel_lowered(const MetricField& g, const FdTables& T) {
  const ChartGrid& grid = *g.grid;
  std::array<SymTensor2Field, kDim> dg;
  for (int a = 0; a < kDim; ++a) dg[a] = partial_derivative(g, a, 1, T);
  ChristoffelField low(grid);
  for (int nd = 0; nd < grid.n_nodes; ++nd)
    for (int l = 0; l < kDim; ++l)
      for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j)
          low.atc(nd, l, i, j) =
              0.5 * (dg[i].ats(nd, j, l) + dg[j].ats(nd, i, l) - dg[l].ats(nd, i, j));
  return low;
}

inline ChristoffelField christoffel(const MetricField& g, const ContraSymTensor2Field& ginv,
                                    const FdTables& T) {
  const ChartGrid& grid = *g.grid;
  const ChristoffelField low = christoffel_lowered(g, T);
  ChristoffelField gam(grid);
  for (int nd = 0; nd < grid.n_nodes; ++nd)
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
          double acc = 0;
          for (int l = 0; l < kDim; ++l) acc += ginv.ats(nd, k, l) * low.atc(nd, l, i, j);
          gam.atc(nd, k, i, j) = acc;
        }
  return gam;
}

inline ChristoffelField christoffel(const MetricField& g, const FdTables& T) {
  return christoffel(g, metric_inverse(g), T);
}

inline ChristoffelField christoffel(const MetricField& g) {
  return christoffel(g, FdTables::build(*g.grid));
}

// ---------------------------------------------------------------------------
// covariant derivatives (Koszul index rules, one connection term per slot)
// ---------------------------------------------------------------------------

inline OneFormField covariant_derivative(const ScalarField& f, const FdTables& T) {
  OneFormField out(*f.grid);
  for (int a = 0; a < kDim; ++a) {
    ScalarField d = partial_derivative(f, a, 1, T);
    for (int nd = 0; nd < f.grid->n_nodes; ++nd) out.at(nd, a) = d.at(nd);
  }
  return out;
}

/// (nabla omega)_{a i} = d_a omega_i - Gamma^k_{a i} omega_k
inline Tensor2Field covariant_derivative(const OneFormField& w, const ChristoffelField& gam,
                                         const FdTables& T) {
  const ChartGrid& grid = *w.grid;
  Tensor2Field out(grid);
  for (int a = 0; a < kDim; ++a) {
    OneFormField d = partial_derivative(w, a, 1, T);
    for (int nd = 0; nd < grid.n_nodes; ++nd)
      for (int i = 0; i < kDim; ++i) {
        double acc = d.at(nd, i);
        for (int k = 0; k < kDim; ++k) acc -= gam.atc(nd, k, a, i) * w.at(nd, k);
        out.at2(nd, a, i) = acc;
      }
  }
  return out;
}

/// (nabla T)_{a i j} = d_a T_ij - Gamma^k_{a i} T_kj - Gamma^k_{a j} T_ik
inline Tensor3Field covariant_derivative(const Tensor2Field& t, const ChristoffelField& gam,
                                         const FdTables& T) {
  const ChartGrid& grid = *t.grid;
  Tensor3Field out(grid);
  for (int a = 0; a < kDim; ++a) {
    Tensor2Field d = partial_derivative(t, a, 1, T);
    for (int nd = 0; nd < grid.n_nodes; ++nd)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
          double acc = d.at2(nd, i, j);
          for (int k = 0; k < kDim; ++k)
            acc -= gam.atc(nd, k, a, i) * t.at2(nd, k, j) +
                   gam.atc(nd, k, a, j) * t.at2(nd, i, k);
          out.at3(nd, a, i, j) = acc;
        }
  }
  return out;
}

/// (nabla h)_{a ij} for symmetric h; output keeps the (i,j) symmetry packed
inline GradSym2Field covariant_derivative(const SymTensor2Field& h, const ChristoffelField& gam,
                                          const FdTables& T) {
  const ChartGrid& grid = *h.grid;
  GradSym2Field out(grid);
  for (int a = 0; a < kDim; ++a) {
    SymTensor2Field d = partial_derivative(h, a, 1, T);
    for (int nd = 0; nd < grid.n_nodes; ++nd)
      for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
          double acc = d.ats(nd, i, j);
          for (int k = 0; k < kDim; ++k)
            acc -= gam.atc(nd, k, a, i) * h.ats(nd, k, j) +
                   gam.atc(nd, k, a, j) * h.ats(nd, i, k);
          out.atg(nd, a, i, j) = acc;
        }
  }
  return out;
}

// ---------------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------------

/// caches shared by the curvature routines; everything the finite differences
/// touch is a metric component, all inverse-metric factors enter pointwise
struct MetricJet {
  const MetricField* g = nullptr;
  ContraSymTensor2Field ginv;
  std::array<SymTensor2Field, kDim> dg;        // D1_a g
  std::array<SymTensor2Field, kSym> ddg;       // sym pair (a,b): D2 or D1a(D1b)
  std::array<ContraSymTensor2Field, kDim> dginv;  // -ginv (D1_a g) ginv, pointwise
  ChristoffelField gamma_low;                  // Gamma_{l,ij}
  ChristoffelField gamma;                      // Gamma^k_{ij}

  double dd(int nd, int a, int b, int i, int j) const {
    return ddg[sym::idx(a, b)].ats(nd, i, j);
  }

  static MetricJet build(const MetricField& gm, const FdTables& T) {
    const ChartGrid& grid = *gm.grid;
    MetricJet J;
    J.g = &gm;
    J.ginv = metric_inverse(gm);
    for (int a = 0; a < kDim; ++a) J.dg[a] = partial_derivative(gm, a, 1, T);
    for (int a = 0; a < kDim; ++a)
      for (int b = a; b < kDim; ++b)
        J.ddg[sym::idx(a, b)] =
            a == b ? partial_derivative(gm, a, 2, T) : partial_derivative(J.dg[b], a, 1, T);
    for (int a = 0; a < kDim; ++a) {
      J.dginv[a] = ContraSymTensor2Field(grid);
      for (int nd = 0; nd < grid.n_nodes; ++nd)
        for (int i = 0; i < kDim; ++i)
          for (int j = i; j < kDim; ++j) {
            double acc = 0;
            for (int k = 0; k < kDim; ++k)
              for (int l = 0; l < kDim; ++l)
                acc -= J.ginv.ats(nd, i, k) * J.dg[a].ats(nd, k, l) * J.ginv.ats(nd, l, j);
            J.dginv[a].ats(nd, i, j) = acc;
          }
    }
    J.gamma_low = ChristoffelField(grid);
    for (int nd = 0; nd < grid.n_nodes; ++nd)
      for (int l = 0; l < kDim; ++l)
        for (int i = 0; i < kDim; ++i)
          for (int j = i; j < kDim; ++j)
            J.gamma_low.atc(nd, l, i, j) = 0.5 * (J.dg[i].ats(nd, j, l) +
                                                  J.dg[j].ats(nd, i, l) -
                                                  J.dg[l].ats(nd, i, j));
    J.gamma = ChristoffelField(grid);
    for (int nd = 0; nd < grid.n_nodes; ++nd)
      for (int k = 0; k < kDim; ++k)
        for (int i = 0; i < kDim; ++i)
          for (int j = i; j < kDim; ++j) {
            double acc = 0;
            for (int l = 0; l < kDim; ++l)
              acc += J.ginv.ats(nd, k, l) * J.gamma_low.atc(nd, l, i, j);
            J.gamma.atc(nd, k, i, j) = acc;
          }
    return J;
  }
};

/// R^i_jkl assembled from the metric jet.  The derivative of Gamma is
/// expanded as d(g^{im}) Gamma_{m,..} + g^{im} d(Gamma_{m,..}) with the
/// inverse-metric derivative taken pointwise, so stencils act on metric
/// components only.  (k,l) antisymmetry is manifest.
inline Tensor13Field riemann13(const MetricJet& J) {
  const ChartGrid& grid = *J.g->grid;
  Tensor13Field R(grid);
  for (int nd = 0; nd < grid.n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int p = 0; p < 3; ++p) {
          static constexpr int pk[3] = {0, 0, 1}, pl[3] = {1, 2, 2};
          const int k = pk[p], l = pl[p];
          double acc = 0;
          for (int m = 0; m < kDim; ++m) {
            acc += J.dginv[k].ats(nd, i, m) * J.gamma_low.atc(nd, m, l, j) -
                   J.dginv[l].ats(nd, i, m) * J.gamma_low.atc(nd, m, k, j);
            acc += 0.5 * J.ginv.ats(nd, i, m) *
                   (J.dd(nd, k, j, l, m) - J.dd(nd, k, m, l, j) -
                    J.dd(nd, l, j, k, m) + J.dd(nd, l, m, k, j));
            acc += J.gamma.atc(nd, i, k, m) * J.gamma.atc(nd, m, l, j) -
                   J.gamma.atc(nd, i, l, m) * J.gamma.atc(nd, m, k, j);
          }
          R.at_pair(nd, i, j, p) = acc;
        }
  return R;
}

inline Tensor13Field riemann13(const MetricField& g, const FdTables& T) {
  return riemann13(MetricJet::build(g, T));
}

inline Tensor04Field lower_riemann(const MetricField& g, const Tensor13Field& R13) {
  const ChartGrid& grid = *g.grid;
  Tensor04Field R(grid);
  for (int nd = 0; nd < grid.n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l) {
            double acc = 0;
            for (int m = 0; m < kDim; ++m) acc += g.ats(nd, i, m) * R13.r(nd, m, j, k, l);
            R.at4(nd, i, j, k, l) = acc;
          }
  return R;
}

/// Ric_jl = R^k_jkl, symmetrized exactly into packed storage
inline SymTensor2Field ricci_from(const Tensor13Field& R13) {
  const ChartGrid& grid = *R13.grid;
  SymTensor2Field ric(grid);
  for (int nd = 0; nd < grid.n_nodes; ++nd)
    for (int j = 0; j < kDim; ++j)
      for (int l = j; l < kDim; ++l) {
        double a = 0, b = 0;
        for (int k = 0; k < kDim; ++k) {
          a += R13.r(nd, k, j, k, l);
          b += R13.r(nd, k, l, k, j);
        }
        ric.ats(nd, j, l) = 0.5 * (a + b);
      }
  return ric;
}

inline SymTensor2Field ricci(const MetricField& g, const FdTables& T) {
  return ricci_from(riemann13(MetricJet::build(g, T)));
}

inline SymTensor2Field ricci(const MetricJet& J) { return ricci_from(riemann13(J)); }

inline SymTensor2Field ricci(const MetricField& g) { return ricci(g, FdTables::build(*g.grid)); }

inline ScalarField scalar_curvature(const MetricField& g, const ContraSymTensor2Field& ginv,
                                    const SymTensor2Field& ric) {
  ScalarField R(*g.grid);
  for (int nd = 0; nd < g.grid->n_nodes; ++nd) {
    double acc = 0;
    for (int j = 0; j < kDim; ++j)
      for (int l = 0; l < kDim; ++l) acc += ginv.ats(nd, j, l) * ric.ats(nd, j, l);
    R.at(nd) = acc;
  }
  return R;
}

inline ScalarField scalar_curvature(const MetricField& g, const FdTables& T) {
  return scalar_curvature(g, metric_inverse(g), ricci(g, T));
}

/// Ric_Lambda(g) = Ric(g) + Lambda g
inline SymTensor2Field ric_lambda(const MetricField& g, double Lambda, const FdTables& T) {
  SymTensor2Field r = ricci(g, T);
  add_scaled(r, Lambda, g);
  return r;
}

/// contravariant shifted Ricci: g^{ik} g^{jl} Ric_kl + Lambda g^{ij}
inline ContraSymTensor2Field ric_lambda_contravariant(const MetricField& g, double Lambda,
                                                      const FdTables& T) {
  const ChartGrid& grid = *g.grid;
  const ContraSymTensor2Field gi = metric_inverse(g);
  const SymTensor2Field ric = ricci(g, T);
  ContraSymTensor2Field out(grid);
  for (int nd = 0; nd < grid.n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        double acc = Lambda * gi.ats(nd, i, j);
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l)
            acc += gi.ats(nd, i, k) * gi.ats(nd, j, l) * ric.ats(nd, k, l);
        out.ats(nd, i, j) = acc;
      }
  return out;
}

// ---------------------------------------------------------------------------
// pointwise algebra
// ---------------------------------------------------------------------------

inline ScalarField trace(const SymTensor2Field& h, const ContraSymTensor2Field& ginv) {
  ScalarField t(*h.grid);
  for (int nd = 0; nd < h.grid->n_nodes; ++nd) {
    double acc = 0;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) acc += ginv.ats(nd, i, j) * h.ats(nd, i, j);
    t.at(nd) = acc;
  }
  return t;
}

inline ScalarField inner(const SymTensor2Field& h, const SymTensor2Field& k,
                         const ContraSymTensor2Field& ginv) {
  ScalarField t(*h.grid);
  for (int nd = 0; nd < h.grid->n_nodes; ++nd) {
    double acc = 0;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int a = 0; a < kDim; ++a)
          for (int b = 0; b < kDim; ++b)
            acc += ginv.ats(nd, i, a) * ginv.ats(nd, j, b) * h.ats(nd, i, j) * k.ats(nd, a, b);
    t.at(nd) = acc;
  }
  return t;
}

inline ContraSymTensor2Field raise_both(const SymTensor2Field& h,
                                        const ContraSymTensor2Field& ginv) {
  ContraSymTensor2Field out(*h.grid);
  for (int nd = 0; nd < h.grid->n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        double acc = 0;
        for (int a = 0; a < kDim; ++a)
          for (int b = 0; b < kDim; ++b)
            acc += ginv.ats(nd, i, a) * ginv.ats(nd, j, b) * h.ats(nd, a, b);
        out.ats(nd, i, j) = acc;
      }
  return out;
}

inline SymTensor2Field lower_both(const ContraSymTensor2Field& h, const MetricField& g) {
  SymTensor2Field out(*h.grid);
  for (int nd = 0; nd < h.grid->n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        double acc = 0;
        for (int a = 0; a < kDim; ++a)
          for (int b = 0; b < kDim; ++b)
            acc += g.ats(nd, i, a) * g.ats(nd, j, b) * h.ats(nd, a, b);
        out.ats(nd, i, j) = acc;
      }
  return out;
}

inline OneFormField raise_index(const OneFormField& w, const ContraSymTensor2Field& ginv) {
  OneFormField out(*w.grid);
  for (int nd = 0; nd < w.grid->n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i) {
      double acc = 0;
      for (int j = 0; j < kDim; ++j) acc += ginv.ats(nd, i, j) * w.at(nd, j);
      out.at(nd, i) = acc;
    }
  return out;
}

inline SymTensor2Field traceless_part(const SymTensor2Field& h, const MetricField& g,
                                      const ContraSymTensor2Field& ginv) {
  const ScalarField tr = trace(h, ginv);
  SymTensor2Field out = h;
  for (int nd = 0; nd < h.grid->n_nodes; ++nd)
    for (int c = 0; c < kSym; ++c) out.at(nd, c) -= tr.at(nd) / kDim * g.at(nd, c);
  return out;
}

/// (A ^o^ B)_ijkl = A_ik B_jl + A_jl B_ik - A_il B_jk - A_jk B_il
inline Tensor04Field kulkarni_nomizu(const SymTensor2Field& A, const SymTensor2Field& B) {
  Tensor04Field out(*A.grid);
  for (int nd = 0; nd < A.grid->n_nodes; ++nd)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l)
            out.at4(nd, i, j, k, l) = A.ats(nd, i, k) * B.ats(nd, j, l) +
                                      A.ats(nd, j, l) * B.ats(nd, i, k) -
                                      A.ats(nd, i, l) * B.ats(nd, j, k) -
                                      A.ats(nd, j, k) * B.ats(nd, i, l);
  return out;
}

/// integral of f dmu_g over the chart: plain periodic sums tangentially,
/// trapezoid radially, fixed lexicographic summation order
inline double integrate(const ScalarField& f, const MetricField& g) {
  const ChartGrid& grid = *f.grid;
  double acc = 0;
  for (int ix = 0; ix < grid.res[0]; ++ix)
    for (int iy = 0; iy < grid.res[1]; ++iy)
      for (int it = 0; it < grid.res[2]; ++it) {
        const int nd = grid.node(ix, iy, it);
        const double wt = grid.boundary_it(it) ? 0.5 : 1.0;
        acc += wt * f.at(nd) * std::sqrt(sym3_det(sym3_at(g, nd)));
      }
  return acc * grid.spacing[0] * grid.spacing[1] * grid.spacing[2];
}

}  // namespace rbvp
