#include "extremal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extremal {

HermitianMatrix::HermitianMatrix(Field field, Matrix entries) : field_(field) {
  if (entries.rows() != entries.cols() || entries.rows() < 1)
    throw std::invalid_argument("HermitianMatrix: entries must be square, n >= 1");
  if (field == Field::Real && entries.imag().norm() > 1e-12 * std::max(1.0, entries.norm()))
    throw std::invalid_argument("HermitianMatrix: real field but nonzero imaginary parts");
  Matrix sym = 0.5 * (entries + entries.adjoint());
  double asym = (entries - sym).norm();
  if (asym > 1e-8 * std::max(1.0, entries.norm()))
    throw std::invalid_argument("HermitianMatrix: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance; symmetrize explicitly first");
  if (field == Field::Real) sym.imag().setZero();
  m_ = std::move(sym);
}

HermitianMatrix::HermitianMatrix(Field field, const RealMatrix& entries)
    : HermitianMatrix(field, Matrix(entries.cast<Cplx>())) {}

HermitianMatrix HermitianMatrix::identity(Field field, int n) {
  return HermitianMatrix(field, Matrix(Matrix::Identity(n, n)));
}

HermitianMatrix HermitianMatrix::zero(Field field, int n) {
  return HermitianMatrix(field, Matrix(Matrix::Zero(n, n)));
}

HermitianMatrix HermitianMatrix::outer(Field field, const CplxVector& x) {
  return HermitianMatrix(field, Matrix(x * x.adjoint()));
}

double default_rank_threshold(int n, double sigma_max) {
  return n * std::numeric_limits<double>::epsilon() * sigma_max;
}

EigenDecomposition eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigen-solver did not converge on dim " +
                             std::to_string(m.dim()));
  const int n = m.dim();
  EigenDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < n; ++i) {
    d.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
    d.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return d;
}

HermitianMatrix psd_power(const HermitianMatrix& p, double alpha, double tol_psd,
                          std::optional<double> rank_tol) {
  EigenDecomposition d = eigh(p);
  const double lambda_min = d.eigenvalues[p.dim() - 1];
  if (lambda_min < -tol_psd)
    throw std::domain_error("psd_power: input not PSD, most negative eigenvalue " +
                            std::to_string(lambda_min));
  const double sigma_max = std::max(d.eigenvalues[0], 0.0);
  const double cutoff = rank_tol.value_or(default_rank_threshold(p.dim(), sigma_max));
  Matrix out = Matrix::Zero(p.dim(), p.dim());
  for (int j = 0; j < p.dim(); ++j) {
    const double lambda = d.eigenvalues[j];
    if (lambda <= cutoff && (alpha < 0 || lambda <= 0.0)) continue;
    out += std::pow(lambda, alpha) * d.eigenvectors.col(j) * d.eigenvectors.col(j).adjoint();
  }
  return HermitianMatrix(p.field(), std::move(out));
}

RankDecision numerical_rank(const HermitianMatrix& m, std::optional<double> tol) {
  EigenDecomposition d = eigh(m);
  RankDecision r;
  r.singular_values = d.eigenvalues.cwiseAbs();
  std::sort(r.singular_values.begin(), r.singular_values.end(), std::greater<double>());
  const double sigma_max = r.singular_values.size() ? r.singular_values[0] : 0.0;
  r.threshold_used = tol.value_or(default_rank_threshold(m.dim(), sigma_max));
  r.rank = 0;
  for (int i = 0; i < r.singular_values.size(); ++i)
    if (r.singular_values[i] > r.threshold_used) ++r.rank;
  return r;
}

double schatten_norm(const HermitianMatrix& m, double p) {
  if (p < 1.0) throw std::domain_error("schatten_norm: p must be >= 1");
  EigenDecomposition d = eigh(m);
  double sum = 0.0;
  for (int i = 0; i < m.dim(); ++i) sum += std::pow(std::abs(d.eigenvalues[i]), p);
  return std::pow(sum, 1.0 / p);
}

bool is_psd(const HermitianMatrix& m, double tol) {
  EigenDecomposition d = eigh(m);
  return d.eigenvalues[m.dim() - 1] >= -tol;
}

double psd_violation(const HermitianMatrix& m) {
  EigenDecomposition d = eigh(m);
  return std::max(0.0, -d.eigenvalues[m.dim() - 1]);
}

}  // namespace extremal
