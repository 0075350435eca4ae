#pragma once

#include <string>
#include <vector>

#include "extremal/linalg.hpp"

namespace extremal {

struct Constraint {
  std::string label;
  HermitianMatrix A;
  double c;  // target; always real (Tr(A P) is real for Hermitian A, PSD P)
};

/// Symmetrized constraint matrix (A + A*)/2. Accepts any square matrix.
HermitianMatrix symmetrize_constraint(Field field, const Matrix& a);

/// The constraint set {P >= 0 : Tr(A_k P) = c_k}. Constraints keep user order.
class Spectrahedron {
 public:
  Spectrahedron(Field field, int dim, std::vector<Constraint> constraints);

  /// Correlation matrices: n constraints (e_j x e_j, 1).
  static Spectrahedron elliptope(int n, Field field);
  /// Density operators: the single constraint (I, 1).
  static Spectrahedron density(int n, Field field);
  /// User constraints; matrices are symmetrized on ingestion.
  static Spectrahedron custom(Field field, int dim,
                              std::vector<std::pair<Matrix, double>> raw,
                              std::vector<std::string> labels = {});

  Field field() const { return field_; }
  int dim() const { return dim_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int n_constraints() const { return static_cast<int>(constraints_.size()); }
  bool all_targets_zero() const;

 private:
  Field field_;
  int dim_;
  std::vector<Constraint> constraints_;
};

struct MembershipReport {
  double psd_violation = 0.0;
  std::vector<double> constraint_residuals;
  bool feasible = false;
  double tol = 0.0;
};

/// Per-constraint residual scale max(1, |c_k|, ||A_k||_2).
double constraint_scale(const Constraint& k);

MembershipReport membership(const Spectrahedron& c, const HermitianMatrix& p, double tol);

}  // namespace extremal
