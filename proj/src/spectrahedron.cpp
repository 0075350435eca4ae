#include "extremal/spectrahedron.hpp"

#include <cmath>

namespace extremal {

HermitianMatrix symmetrize_constraint(Field field, const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("symmetrize_constraint: input must be square");
  return HermitianMatrix(field, Matrix(0.5 * (a + a.adjoint())));
}

Spectrahedron::Spectrahedron(Field field, int dim, std::vector<Constraint> constraints)
    : field_(field), dim_(dim), constraints_(std::move(constraints)) {
  if (dim < 1) throw std::invalid_argument("Spectrahedron: dim must be >= 1");
  for (const auto& k : constraints_) {
    if (k.A.dim() != dim)
      throw std::invalid_argument("Spectrahedron: constraint '" + k.label +
                                  "' has dimension " + std::to_string(k.A.dim()) +
                                  ", expected " + std::to_string(dim));
    if (k.A.field() != field)
      throw std::invalid_argument("Spectrahedron: constraint '" + k.label +
                                  "' field mismatch");
    if (!std::isfinite(k.c))
      throw std::invalid_argument("Spectrahedron: nonfinite target");
  }
}

Spectrahedron Spectrahedron::elliptope(int n, Field field) {
  std::vector<Constraint> ks;
  ks.reserve(n);
  for (int j = 0; j < n; ++j) {
    Matrix a = Matrix::Zero(n, n);
    a(j, j) = 1.0;
    ks.push_back({"diag_" + std::to_string(j), HermitianMatrix(field, std::move(a)), 1.0});
  }
  return Spectrahedron(field, n, std::move(ks));
}

Spectrahedron Spectrahedron::density(int n, Field field) {
  std::vector<Constraint> ks;
  ks.push_back({"trace", HermitianMatrix::identity(field, n), 1.0});
  return Spectrahedron(field, n, std::move(ks));
}

Spectrahedron Spectrahedron::custom(Field field, int dim,
                                    std::vector<std::pair<Matrix, double>> raw,
                                    std::vector<std::string> labels) {
  if (raw.empty()) throw std::invalid_argument("Spectrahedron::custom: empty constraint list");
  std::vector<Constraint> ks;
  ks.reserve(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    std::string label = i < labels.size() ? labels[i] : "c" + std::to_string(i);
    ks.push_back({std::move(label), symmetrize_constraint(field, raw[i].first), raw[i].second});
  }
  return Spectrahedron(field, dim, std::move(ks));
}

bool Spectrahedron::all_targets_zero() const {
  for (const auto& k : constraints_)
    if (k.c != 0.0) return false;
  return true;
}

double constraint_scale(const Constraint& k) {
  // ||A||_2 for Hermitian A is the largest |eigenvalue|.
  EigenDecomposition d = eigh(k.A);
  double opnorm = std::max(std::abs(d.eigenvalues[0]), std::abs(d.eigenvalues[k.A.dim() - 1]));
  return std::max({1.0, std::abs(k.c), opnorm});
}

MembershipReport membership(const Spectrahedron& c, const HermitianMatrix& p, double tol) {
  if (p.dim() != c.dim())
    throw std::invalid_argument("membership: dimension mismatch");
  MembershipReport r;
  r.tol = tol;
  r.psd_violation = psd_violation(p);
  bool ok = r.psd_violation <= tol;
  r.constraint_residuals.reserve(c.constraints().size());
  for (const auto& k : c.constraints()) {
    double value = (k.A.entries() * p.entries()).trace().real();
    double resid = std::abs(value - k.c);
    r.constraint_residuals.push_back(resid);
    if (resid > tol * constraint_scale(k)) ok = false;
  }
  r.feasible = ok;
  return r;
}

}  // namespace extremal
