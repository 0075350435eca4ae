#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "extremal/extremality.hpp"

namespace extremal {

// ---------------------------------------------------------------------------
// Galerkin discretization of L^2[0,1]
// ---------------------------------------------------------------------------

struct QuadratureRule {
  RealVector nodes;    // on [0,1]
  RealVector weights;
};

/// Gauss-Legendre rule with the given number of nodes, mapped to [0,1].
/// Exact for polynomials of degree <= 2*order - 1.
QuadratureRule gauss_legendre(int order);

/// Orthonormal shifted-Legendre basis phi_k(u) = sqrt(2k+1) P_k(2u-1).
struct GalerkinBasis {
  int size = 0;
  int quadrature_order = 0;
  /// Gram matrix under the quadrature rule; identity within 1e-12 by design.
  RealMatrix gram() const;
};

GalerkinBasis legendre_basis(int m);

/// Evaluate the k-th orthonormal shifted-Legendre function at u in [0,1].
double shifted_legendre(int k, double u);

/// Matrices of multiplication by u^j in the orthonormal shifted-Legendre
/// basis, entries computed by exact Gauss-Legendre quadrature.
std::vector<HermitianMatrix> galerkin_moment_operators(int m, const std::vector<int>& degrees);

// ---------------------------------------------------------------------------
// Interval-cover discretization for the PCA sensitivity study
// ---------------------------------------------------------------------------

using Interval = std::pair<double, double>;

/// Global basis: the partition of [0,1] refined by all interval endpoints,
/// with per-cell orthonormal Legendre functions up to degree p-1. Each
/// interval-local basis function is exactly representable in it.
struct IntervalCoverBasis {
  std::vector<Interval> intervals;
  std::vector<Interval> cells;
  int per_cell = 0;  // Legendre degrees per cell, = p
  int size = 0;      // global dimension = cells * per_cell
  /// e_tilde[j][k]: coefficients of the k-th basis function of L^2(I_j),
  /// extended by zero, in the global basis.
  std::vector<std::vector<RealVector>> e_tilde;
};

IntervalCoverBasis build_cover_basis(const std::vector<Interval>& intervals, int p);

/// Keys are (interval j, k, l) with k <= l, all zero-based.
using MomentMap = std::map<std::tuple<int, int, int>, double>;

/// Moments <P e_jk, e_jl> of a covariance given in the global basis.
MomentMap moments_from_covariance(const IntervalCoverBasis& basis, const RealMatrix& p);

/// Trace constraint (I, trace_target) plus the symmetrized rank-<=2
/// constraints e_jk (x) e_jl for k <= l.
Spectrahedron pca_cover_constraints(const IntervalCoverBasis& basis, double trace_target,
                                    const MomentMap& moments);

/// The unsimplified rank bound sqrt(2 r p^2 + 9/4) - 1/2 (a real number).
double pca_rank_bound(int r, int p);

// ---------------------------------------------------------------------------
// Low-rank solvers
// ---------------------------------------------------------------------------

struct SolveOptions {
  int restarts = 8;
  int max_iters = 400;
  double step = 0.5;  // c in the c/sqrt(iter) rule
  std::uint64_t seed = 0;
  double tol = 1e-8;
};

struct SolveResult {
  HermitianMatrix p_opt;
  double objective = 0.0;
  int rank_bound_used = 0;
  int restarts = 0;
  bool converged = false;
  std::vector<double> restart_objectives;
  MembershipReport feasibility;
};

/// Maximize lambda_1(P) over the spectrahedron by subgradient ascent on a
/// factor V with P = V V*, with periodic feasibility restoration. The result
/// is a lower bound on the maximum, not a certified optimum.
SolveResult max_lambda1_lowrank(const Spectrahedron& c, int rank_bound,
                                const SolveOptions& opts = {});

struct EntropyResult {
  SolveResult solve;
  double alpha = 0.0;
  RealVector psi;
  RealVector phi;
};

/// Minimize the von Neumann entropy of P = alpha psi (x) psi + (1-alpha)
/// phi (x) phi subject to the moment constraints int u^j dP = m_j, j = 1..3,
/// and Tr P = 1, in an m-dimensional shifted-Legendre basis. Penalty method
/// with multi-start plus a rank-one Gauss-Newton phase for the alpha in {0,1}
/// boundary candidates.
EntropyResult min_entropy_rank2(double m1, double m2, double m3, int basis_size,
                                const SolveOptions& opts = {});

}  // namespace extremal
