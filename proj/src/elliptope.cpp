#include "extremal/elliptope.hpp"

#include <cmath>
#include <random>

namespace extremal {

CorrelationMatrix::CorrelationMatrix(HermitianMatrix p, double tol) : p_(std::move(p)) {
  const Matrix& m = p_.entries();
  const int n = p_.dim();
  for (int i = 0; i < n; ++i)
    if (std::abs(m(i, i) - Cplx(1.0)) > tol)
      throw std::domain_error("CorrelationMatrix: diagonal entry " + std::to_string(i) +
                              " is not 1 within tolerance");
  if (!is_psd(p_, tol))
    throw std::domain_error("CorrelationMatrix: input not PSD within tolerance");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(m(i, j)) > 1.0 + tol)
        throw std::domain_error("CorrelationMatrix: off-diagonal magnitude exceeds 1");
  Matrix snapped = m;
  snapped.diagonal().setConstant(1.0);
  p_ = HermitianMatrix(p_.field(), std::move(snapped));
}

Matrix hadamard_square(const Matrix& a) {
  return a.cwiseProduct(a);
}

HermitianMatrix hadamard_square(const HermitianMatrix& a) {
  return HermitianMatrix(a.field(), hadamard_square(a.entries()));
}

HermitianMatrix hadamard_abs_square(const HermitianMatrix& a) {
  return HermitianMatrix(a.field(),
                         Matrix(a.entries().cwiseAbs2().cast<Cplx>()));
}

ExtremalityReport elliptope_extreme_test(const CorrelationMatrix& p, Field field,
                                         const Tolerances& tol) {
  ExtremalityReport rep;
  RankDecision rp = numerical_rank(p.matrix(), tol.rank_tol_p);
  rep.rank_p = rp.rank;
  rep.rank_threshold_p = rp.threshold_used;
  rep.dim_x = hermitian_space_dim(rp.rank, field);
  RankDecision rg = numerical_rank(hadamard_abs_square(p.matrix()), tol.rank_tol_gram);
  rep.rank_threshold_gram = rg.threshold_used;
  rep.gram_rank = std::min(rg.rank, rep.dim_x);
  rep.is_extreme = rep.gram_rank == rep.dim_x;
  rep.facial_dimension = rep.dim_x - rep.gram_rank;
  return rep;
}

CorrelationNormalization normalize_to_correlation(const HermitianMatrix& a,
                                                  double tol_psd) {
  if (!is_psd(a, tol_psd))
    throw std::domain_error("normalize_to_correlation: input not PSD");
  const int n = a.dim();
  const Matrix& m = a.entries();
  double max_diag = 0.0;
  for (int j = 0; j < n; ++j) max_diag = std::max(max_diag, m(j, j).real());
  const double tol_diag = 1e-12 * max_diag;
  RealVector b(n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j).real();
    b[j] = d > tol_diag ? 1.0 / std::sqrt(d) : 0.0;
  }
  Matrix scaled = b.cast<Cplx>().asDiagonal() * m * b.cast<Cplx>().asDiagonal();
  for (int j = 0; j < n; ++j)
    if (b[j] > 0.0) scaled(j, j) = 1.0;
  return {HermitianMatrix(a.field(), std::move(scaled)), std::move(b), tol_diag};
}

HadamardRankCheck hadamard_inequality_check(const HermitianMatrix& a, Field field,
                                            const Tolerances& tol) {
  if (!is_psd(a, tol.feas))
    throw std::domain_error("hadamard_inequality_check: input not PSD");
  HadamardRankCheck out;
  out.rank_a = numerical_rank(a, tol.rank_tol_p).rank;
  out.lhs_rank = numerical_rank(hadamard_abs_square(a), tol.rank_tol_gram).rank;
  out.rhs_bound = out.rank_a * out.rank_a;
  out.real_bound = field == Field::Real ? out.rank_a * (out.rank_a + 1) / 2 : 0;
  out.equality = out.lhs_rank == out.rhs_bound;

  // Equality case lives over C regardless of the scalar field of the input.
  const int n = a.dim();
  std::vector<std::pair<Matrix, double>> raw;
  raw.reserve(n);
  for (int j = 0; j < n; ++j) {
    Matrix e = Matrix::Zero(n, n);
    e(j, j) = 1.0;
    raw.emplace_back(std::move(e), a.entries()(j, j).real());
  }
  Spectrahedron diag_spec = Spectrahedron::custom(Field::Complex, n, std::move(raw));
  HermitianMatrix a_complex(Field::Complex, Matrix(a.entries()));
  out.extreme_in_diagonal_spectrahedron =
      extremality_rank_test(a_complex, diag_spec, tol).is_extreme;
  return out;
}

CorrelationMatrix random_correlation(int n, int target_rank, Field field,
                                     std::uint64_t seed) {
  if (target_rank < 1 || target_rank > n)
    throw std::invalid_argument("random_correlation: target rank out of range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix v(n, target_rank);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < target_rank; ++j) {
      double re = gauss(rng);
      double im = field == Field::Complex ? gauss(rng) : 0.0;
      v(i, j) = Cplx(re, im);
    }
    double norm = v.row(i).norm();
    if (norm == 0.0) v(i, 0) = 1.0;  // measure-zero; keep the row unit
    else v.row(i) /= norm;
  }
  Matrix p = v * v.adjoint();
  p.diagonal().setConstant(1.0);
  return CorrelationMatrix(HermitianMatrix(field, std::move(p)));
}

}  // namespace extremal
