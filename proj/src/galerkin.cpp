#include "extremal/applications.hpp"

#include <algorithm>
#include <cmath>

namespace extremal {

namespace {

// Legendre P_k(x) on [-1,1] and its derivative, by the three-term recurrence.
std::pair<double, double> legendre_pair(int k, double x) {
  double p0 = 1.0, p1 = x;
  if (k == 0) return {1.0, 0.0};
  for (int j = 2; j <= k; ++j) {
    double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  double dp = k * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

double legendre(int k, double x) {
  double p0 = 1.0, p1 = x;
  if (k == 0) return p0;
  for (int j = 2; j <= k; ++j) {
    double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  QuadratureRule q;
  q.nodes.resize(order);
  q.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Chebyshev-style initial guess, then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre_pair(order, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    auto [p, dp] = legendre_pair(order, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]
    q.nodes[i] = 0.5 * (x + 1.0);
    q.weights[i] = 0.5 * w;
  }
  return q;
}

double shifted_legendre(int k, double u) {
  return std::sqrt(2.0 * k + 1.0) * legendre(k, 2.0 * u - 1.0);
}

GalerkinBasis legendre_basis(int m) {
  if (m < 1) throw std::invalid_argument("legendre_basis: size must be >= 1");
  GalerkinBasis b;
  b.size = m;
  b.quadrature_order = m + 1;
  return b;
}

RealMatrix GalerkinBasis::gram() const {
  QuadratureRule q = gauss_legendre(quadrature_order);
  RealMatrix g = RealMatrix::Zero(size, size);
  for (int t = 0; t < q.nodes.size(); ++t) {
    RealVector vals(size);
    for (int k = 0; k < size; ++k) vals[k] = shifted_legendre(k, q.nodes[t]);
    g += q.weights[t] * vals * vals.transpose();
  }
  return g;
}

std::vector<HermitianMatrix> galerkin_moment_operators(int m, const std::vector<int>& degrees) {
  if (m < 1) throw std::invalid_argument("galerkin_moment_operators: m must be >= 1");
  if (degrees.empty())
    throw std::invalid_argument("galerkin_moment_operators: degrees list empty");
  int max_j = 0;
  for (int j : degrees) {
    if (j < 0) throw std::invalid_argument("galerkin_moment_operators: degree must be >= 0");
    max_j = std::max(max_j, j);
  }
  // Integrands have degree 2(m-1) + j; this order integrates them exactly.
  const int order = m + (max_j + 2) / 2 + 1;
  QuadratureRule q = gauss_legendre(order);

  RealMatrix vals(q.nodes.size(), m);
  for (int t = 0; t < q.nodes.size(); ++t)
    for (int k = 0; k < m; ++k) vals(t, k) = shifted_legendre(k, q.nodes[t]);

  std::vector<HermitianMatrix> out;
  out.reserve(degrees.size());
  for (int j : degrees) {
    RealMatrix mj = RealMatrix::Zero(m, m);
    for (int t = 0; t < q.nodes.size(); ++t) {
      double wu = q.weights[t] * std::pow(q.nodes[t], j);
      mj += wu * vals.row(t).transpose() * vals.row(t);
    }
    out.emplace_back(Field::Real, mj);
  }
  return out;
}

IntervalCoverBasis build_cover_basis(const std::vector<Interval>& intervals, int p) {
  if (intervals.empty()) throw std::invalid_argument("build_cover_basis: no intervals");
  if (p < 1) throw std::invalid_argument("build_cover_basis: p must be >= 1");
  for (const auto& [lo, hi] : intervals)
    if (!(0.0 <= lo && lo < hi && hi <= 1.0))
      throw std::invalid_argument("build_cover_basis: invalid interval");

  std::vector<double> pts = {0.0, 1.0};
  for (const auto& [lo, hi] : intervals) {
    pts.push_back(lo);
    pts.push_back(hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14; }),
            pts.end());

  IntervalCoverBasis basis;
  basis.intervals = intervals;
  basis.per_cell = p;
  for (size_t i = 0; i + 1 < pts.size(); ++i) basis.cells.emplace_back(pts[i], pts[i + 1]);
  basis.size = static_cast<int>(basis.cells.size()) * p;

  // Cell-local orthonormal Legendre on cell t, degree a:
  //   sqrt((2a+1)/len) P_a(2(u-lo)/len - 1), global index t*p + a.
  // Interval basis e_jk: orthonormal Legendre of degree k on I_j, extended by
  // zero. Its restriction to a cell inside I_j has degree <= p-1, so the
  // expansion below is exact at this quadrature order.
  QuadratureRule q = gauss_legendre(p + 1);
  basis.e_tilde.resize(intervals.size());
  for (size_t j = 0; j < intervals.size(); ++j) {
    const auto [jlo, jhi] = intervals[j];
    const double jlen = jhi - jlo;
    basis.e_tilde[j].resize(p, RealVector::Zero(basis.size));
    for (int k = 0; k < p; ++k) {
      RealVector& coef = basis.e_tilde[j][k];
      for (size_t t = 0; t < basis.cells.size(); ++t) {
        const auto [clo, chi] = basis.cells[t];
        if (clo < jlo - 1e-14 || chi > jhi + 1e-14) continue;
        const double clen = chi - clo;
        for (int a = 0; a < p; ++a) {
          double acc = 0.0;
          for (int s = 0; s < q.nodes.size(); ++s) {
            double u = clo + clen * q.nodes[s];
            double ejk = std::sqrt((2.0 * k + 1.0) / jlen) *
                         legendre(k, 2.0 * (u - jlo) / jlen - 1.0);
            double cell = std::sqrt((2.0 * a + 1.0) / clen) *
                          legendre(a, 2.0 * (u - clo) / clen - 1.0);
            acc += q.weights[s] * clen * ejk * cell;
          }
          coef[static_cast<int>(t) * p + a] = acc;
        }
      }
    }
  }
  return basis;
}

MomentMap moments_from_covariance(const IntervalCoverBasis& basis, const RealMatrix& p) {
  if (p.rows() != basis.size || p.cols() != basis.size)
    throw std::invalid_argument("moments_from_covariance: covariance size mismatch");
  MomentMap m;
  for (size_t j = 0; j < basis.e_tilde.size(); ++j)
    for (int k = 0; k < basis.per_cell; ++k)
      for (int l = k; l < basis.per_cell; ++l)
        m[{static_cast<int>(j), k, l}] = basis.e_tilde[j][k].dot(p * basis.e_tilde[j][l]);
  return m;
}

Spectrahedron pca_cover_constraints(const IntervalCoverBasis& basis, double trace_target,
                                    const MomentMap& moments) {
  const int n = basis.size;
  std::vector<Constraint> ks;
  ks.push_back({"trace", HermitianMatrix::identity(Field::Real, n), trace_target});
  for (size_t j = 0; j < basis.e_tilde.size(); ++j)
    for (int k = 0; k < basis.per_cell; ++k)
      for (int l = k; l < basis.per_cell; ++l) {
        auto it = moments.find({static_cast<int>(j), k, l});
        if (it == moments.end())
          throw std::invalid_argument("pca_cover_constraints: missing moment (" +
                                      std::to_string(j) + "," + std::to_string(k) + "," +
                                      std::to_string(l) + ")");
        const RealVector& v = basis.e_tilde[j][k];
        const RealVector& w = basis.e_tilde[j][l];
        RealMatrix a = 0.5 * (v * w.transpose() + w * v.transpose());
        std::string label = "m_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
                            std::to_string(l);
        ks.push_back({std::move(label), HermitianMatrix(Field::Real, a), it->second});
      }
  return Spectrahedron(Field::Real, n, std::move(ks));
}

double pca_rank_bound(int r, int p) {
  return std::sqrt(2.0 * r * p * p + 9.0 / 4.0) - 0.5;
}

}  // namespace extremal
