#pragma once

#include <optional>

#include "extremal/spectrahedron.hpp"

namespace extremal {

struct Tolerances {
  double feas = 1e-8;                      // membership / PSD tolerance
  std::optional<double> rank_tol_p;        // rank threshold for P (default convention)
  std::optional<double> rank_tol_gram;     // rank threshold for the Gram matrix
  double witness_floor_scale = 1e-12;      // witness floor = scale * ||P||_F
};

struct ExtremalityReport {
  int rank_p = 0;
  int gram_rank = 0;
  int dim_x = 0;  // r(r+1)/2 real, r^2 complex
  bool is_extreme = false;
  int facial_dimension = 0;
  double rank_threshold_p = 0.0;
  double rank_threshold_gram = 0.0;
};

struct PerturbationWitness {
  HermitianMatrix X;  // range inside range(P), operator norm <= 1/2
  HermitianMatrix H;  // = sqrt(P) X sqrt(P)
  double norm_x = 0.0;
  MembershipReport feasibility_plus;
  MembershipReport feasibility_minus;
};

/// Thrown when a point fails the feasibility precondition of a test.
struct InfeasibleError : std::domain_error {
  InfeasibleError(const std::string& what, MembershipReport r)
      : std::domain_error(what), report(std::move(r)) {}
  MembershipReport report;
};

/// Real dimension of Hermitian matrices of size r over the field.
int hermitian_space_dim(int r, Field field);

/// Gram matrix G_ij = Tr(P A_i P A_j) of the family {sqrt(P) A_i sqrt(P)}.
/// Real symmetric PSD for PSD P and Hermitian constraints.
RealMatrix perturbation_gram(const HermitianMatrix& p, const Spectrahedron& c,
                             double tol_psd = 1e-8);

/// Orthonormal basis (trace inner product) of the self-adjoint matrices whose
/// range lies inside the span of the given orthonormal columns. Real field:
/// {f_i f_i*} and symmetric pairs; complex field adds antisymmetric i-pairs.
std::vector<Matrix> range_space_basis(const Matrix& range_vectors, Field field);

ExtremalityReport extremality_rank_test(const HermitianMatrix& p, const Spectrahedron& c,
                                        const Tolerances& tol = {});

int facial_dimension(const HermitianMatrix& p, const Spectrahedron& c,
                     const Tolerances& tol = {});

/// Largest r with r(r+1)/2 <= n (real) or r^2 <= n (complex).
int bp_rank_bound(int n_constraints, Field field);

/// Solve H = sqrt(P) X sqrt(P) for X with range in range(P). Requires P +- H PSD.
HermitianMatrix douglas_factor(const HermitianMatrix& p, const HermitianMatrix& h,
                               double tol = 1e-8);

/// Null-space search over X(P) for an even perturbation respecting the
/// constraints. Returns nothing exactly when P is extreme.
std::optional<PerturbationWitness> find_even_perturbation(const HermitianMatrix& p,
                                                          const Spectrahedron& c,
                                                          const Tolerances& tol = {});

/// True iff x x* is a rank-one extreme point: <A_j x, x> = c_j for all j and
/// the targets are not all zero.
bool rank_one_extreme_check(const Spectrahedron& c, const CplxVector& x, double tol = 1e-8);

}  // namespace extremal
