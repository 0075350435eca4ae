#pragma once

#include <cstdint>

#include "extremal/extremality.hpp"

namespace extremal {

/// PSD matrix with unit diagonal. The diagonal is snapped to exactly 1 on
/// construction; inputs off by more than tol are rejected.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(HermitianMatrix p, double tol = 1e-8);

  const HermitianMatrix& matrix() const { return p_; }
  Field field() const { return p_.field(); }
  int dim() const { return p_.dim(); }

 private:
  HermitianMatrix p_;
};

/// Entrywise square A ⊙ A. Complex entries are squared without conjugation;
/// for Hermitian input the result is again Hermitian.
Matrix hadamard_square(const Matrix& a);
HermitianMatrix hadamard_square(const HermitianMatrix& a);

/// Entrywise squared moduli |A_ij|^2. This is the matrix [Tr A E_i A E_j]
/// of the perturbation Gram construction for diagonal constraints; it
/// coincides with hadamard_square on real inputs and is the quantity the
/// rank-based elliptope tests use.
HermitianMatrix hadamard_abs_square(const HermitianMatrix& a);

/// Extremality of a correlation matrix decided directly from the rank of its
/// Hadamard square, bypassing the Gram matrix construction.
ExtremalityReport elliptope_extreme_test(const CorrelationMatrix& p, Field field,
                                         const Tolerances& tol = {});

struct CorrelationNormalization {
  HermitianMatrix p;        // B A B
  RealVector b_diag;        // 1/sqrt(A_jj) on the positive diagonal, 0 elsewhere
  double tol_diag;
};

CorrelationNormalization normalize_to_correlation(const HermitianMatrix& a,
                                                  double tol_psd = 1e-8);

struct HadamardRankCheck {
  int rank_a = 0;
  int lhs_rank = 0;        // rank(A ⊙ A)
  int rhs_bound = 0;       // rank_a^2
  int real_bound = 0;      // rank_a (rank_a + 1) / 2, recorded for real inputs
  bool equality = false;   // lhs_rank == rhs_bound
  bool extreme_in_diagonal_spectrahedron = false;  // over the complex field
};

/// Checks rank(A ⊙ A) <= (rank A)^2 and evaluates the equality case against
/// the diagonal-constrained spectrahedron {P >= 0 : P_jj = A_jj} over C.
HadamardRankCheck hadamard_inequality_check(const HermitianMatrix& a, Field field,
                                            const Tolerances& tol = {});

/// P = V V* with V an n x r matrix of independent Gaussian rows normalized to
/// unit length; deterministic given the seed.
CorrelationMatrix random_correlation(int n, int target_rank, Field field,
                                     std::uint64_t seed);

}  // namespace extremal
