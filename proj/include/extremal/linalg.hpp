#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace extremal {

enum class Field { Real, Complex };

inline const char* field_name(Field f) {
  return f == Field::Real ? "real" : "complex";
}

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using CplxVector = Eigen::VectorXcd;

/// Dense self-adjoint matrix over R or C. Entries are stored as complex;
/// for the real field the imaginary parts are identically zero.
/// Hermiticity is enforced at construction by averaging with the conjugate
/// transpose; inputs whose asymmetry exceeds 1e-8 * ||M||_F are rejected.
class HermitianMatrix {
 public:
  /// Empty 0x0 real matrix; placeholder for report structs filled later.
  HermitianMatrix() : field_(Field::Real), m_(0, 0) {}
  HermitianMatrix(Field field, Matrix entries);
  HermitianMatrix(Field field, const RealMatrix& entries);

  static HermitianMatrix identity(Field field, int n);
  static HermitianMatrix zero(Field field, int n);
  /// Rank-one projector x ⊗ x (no normalization applied).
  static HermitianMatrix outer(Field field, const CplxVector& x);

  Field field() const { return field_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

  double frobenius() const { return m_.norm(); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix scaled(double s) const { return HermitianMatrix(field_, Matrix(s * m_)); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.field_, Matrix(a.m_ + b.m_));
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.field_, Matrix(a.m_ - b.m_));
  }

 private:
  Field field_;
  Matrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // sorted descending
  Matrix eigenvectors;     // orthonormal columns, same order
};

struct RankDecision {
  int rank = 0;
  RealVector singular_values;  // descending
  double threshold_used = 0.0;
};

/// Default reconstruction tolerance for eigh-based identities.
inline double recon_tol(const HermitianMatrix& m) {
  return 1e-10 * std::max(1.0, m.frobenius()) * m.dim();
}

/// Default SVD-style rank threshold: n * eps * sigma_max.
double default_rank_threshold(int n, double sigma_max);

EigenDecomposition eigh(const HermitianMatrix& m);

/// Spectral power P^alpha over retained eigenvalues. For alpha < 0 only
/// eigenvalues above the rank threshold contribute (pseudo-power).
HermitianMatrix psd_power(const HermitianMatrix& p, double alpha,
                          double tol_psd = 1e-9,
                          std::optional<double> rank_tol = std::nullopt);

RankDecision numerical_rank(const HermitianMatrix& m,
                            std::optional<double> tol = std::nullopt);

/// Standard Schatten p-norm (sum sigma_j^p)^(1/p); p=1 trace norm, p=2 Frobenius.
double schatten_norm(const HermitianMatrix& m, double p);

bool is_psd(const HermitianMatrix& m, double tol);

/// Most negative eigenvalue clamped at zero, as a nonnegative magnitude.
double psd_violation(const HermitianMatrix& m);

}  // namespace extremal
