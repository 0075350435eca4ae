#pragma once

#include <random>

#include "extremal/linalg.hpp"

namespace extremal::testing {

inline Matrix random_square(int n, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  return a;
}

inline HermitianMatrix random_hermitian(int n, Field field, std::mt19937_64& rng) {
  Matrix a = random_square(n, field, rng);
  return HermitianMatrix(field, Matrix(0.5 * (a + a.adjoint())));
}

inline HermitianMatrix random_psd(int n, int rank, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix v(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j)
      v(i, j) = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  return HermitianMatrix(field, Matrix(v * v.adjoint()));
}

inline Matrix random_unitary(int n, Field field, std::mt19937_64& rng) {
  Matrix a = random_square(n, field, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (field == Field::Real) q.imag().setZero();
  return q;
}

inline CplxVector random_unit_vector(int n, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CplxVector x(n);
  for (int i = 0; i < n; ++i)
    x[i] = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  x.normalize();
  return x;
}

}  // namespace extremal::testing
