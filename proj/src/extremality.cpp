#include "extremal/extremality.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace extremal {

namespace {

struct RangeData {
  int rank = 0;
  double threshold = 0.0;
  Matrix range_vectors;  // n x rank, orthonormal
  Matrix sqrt_p;         // principal square root on the retained range
};

RangeData range_data(const HermitianMatrix& p, std::optional<double> rank_tol) {
  EigenDecomposition d = eigh(p);
  const int n = p.dim();
  RangeData rd;
  rd.threshold = rank_tol.value_or(default_rank_threshold(n, std::abs(d.eigenvalues[0])));
  for (int j = 0; j < n; ++j)
    if (d.eigenvalues[j] > rd.threshold) ++rd.rank;
  rd.range_vectors = d.eigenvectors.leftCols(rd.rank);
  Matrix sq = Matrix::Zero(n, n);
  for (int j = 0; j < rd.rank; ++j)
    sq += std::sqrt(d.eigenvalues[j]) * d.eigenvectors.col(j) * d.eigenvectors.col(j).adjoint();
  rd.sqrt_p = std::move(sq);
  return rd;
}

}  // namespace

int hermitian_space_dim(int r, Field field) {
  return field == Field::Real ? r * (r + 1) / 2 : r * r;
}

RealMatrix perturbation_gram(const HermitianMatrix& p, const Spectrahedron& c,
                             double tol_psd) {
  if (p.dim() != c.dim())
    throw std::invalid_argument("perturbation_gram: dimension mismatch");
  if (!is_psd(p, tol_psd))
    throw std::domain_error("perturbation_gram: P not PSD within tolerance");
  const Matrix sq = psd_power(p, 0.5, tol_psd).entries();
  const int k = c.n_constraints();
  std::vector<Matrix> s;
  s.reserve(k);
  for (const auto& con : c.constraints()) s.push_back(sq * con.A.entries() * sq);
  RealMatrix g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      double v = (s[i] * s[j]).trace().real();
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

std::vector<Matrix> range_space_basis(const Matrix& f, Field field) {
  const int r = static_cast<int>(f.cols());
  std::vector<Matrix> basis;
  basis.reserve(hermitian_space_dim(r, field));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < r; ++i) basis.emplace_back(f.col(i) * f.col(i).adjoint());
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      basis.emplace_back(inv_sqrt2 *
                         (f.col(i) * f.col(j).adjoint() + f.col(j) * f.col(i).adjoint()));
      if (field == Field::Complex)
        basis.emplace_back(Cplx(0.0, inv_sqrt2) *
                           (f.col(i) * f.col(j).adjoint() - f.col(j) * f.col(i).adjoint()));
    }
  return basis;
}

ExtremalityReport extremality_rank_test(const HermitianMatrix& p, const Spectrahedron& c,
                                        const Tolerances& tol) {
  MembershipReport mem = membership(c, p, tol.feas);
  if (!mem.feasible)
    throw InfeasibleError("extremality_rank_test: point not feasible", std::move(mem));

  ExtremalityReport rep;
  RankDecision rp = numerical_rank(p, tol.rank_tol_p);
  rep.rank_p = rp.rank;
  rep.rank_threshold_p = rp.threshold_used;
  rep.dim_x = hermitian_space_dim(rp.rank, c.field());

  RealMatrix g = perturbation_gram(p, c, tol.feas);
  RankDecision rg = numerical_rank(HermitianMatrix(Field::Real, g), tol.rank_tol_gram);
  rep.rank_threshold_gram = rg.threshold_used;
  // rank(G) <= dim X(P) holds exactly; clamp any numerical excess.
  rep.gram_rank = std::min(rg.rank, rep.dim_x);
  rep.is_extreme = rep.gram_rank == rep.dim_x;
  rep.facial_dimension = rep.dim_x - rep.gram_rank;
  return rep;
}

int facial_dimension(const HermitianMatrix& p, const Spectrahedron& c,
                     const Tolerances& tol) {
  return extremality_rank_test(p, c, tol).facial_dimension;
}

int bp_rank_bound(int n_constraints, Field field) {
  if (n_constraints < 0) throw std::invalid_argument("bp_rank_bound: negative count");
  int r = 0;
  while (hermitian_space_dim(r + 1, field) <= n_constraints) ++r;
  return r;
}

HermitianMatrix douglas_factor(const HermitianMatrix& p, const HermitianMatrix& h,
                               double tol) {
  if (p.dim() != h.dim())
    throw std::invalid_argument("douglas_factor: dimension mismatch");
  if (!is_psd(p, tol)) throw std::domain_error("douglas_factor: P not PSD");
  if (!is_psd(p + h, tol)) throw std::domain_error("douglas_factor: P + H not PSD");
  if (!is_psd(p - h, tol)) throw std::domain_error("douglas_factor: P - H not PSD");
  HermitianMatrix pinv_sqrt = psd_power(p, -0.5, tol);
  Matrix x = pinv_sqrt.entries() * h.entries() * pinv_sqrt.entries();
  return HermitianMatrix(p.field(), Matrix(0.5 * (x + x.adjoint())));
}

std::optional<PerturbationWitness> find_even_perturbation(const HermitianMatrix& p,
                                                          const Spectrahedron& c,
                                                          const Tolerances& tol) {
  MembershipReport mem = membership(c, p, tol.feas);
  if (!mem.feasible)
    throw InfeasibleError("find_even_perturbation: point not feasible", std::move(mem));

  RangeData rd = range_data(p, tol.rank_tol_p);
  const Field field = c.field();
  const int dim_x = hermitian_space_dim(rd.rank, field);
  if (dim_x == 0) return std::nullopt;  // P = 0 is extreme iff feasible

  std::vector<Matrix> basis = range_space_basis(rd.range_vectors, field);
  const int k = c.n_constraints();
  RealMatrix l(k, dim_x);
  for (int i = 0; i < k; ++i) {
    Matrix s = rd.sqrt_p * c.constraints()[i].A.entries() * rd.sqrt_p;
    for (int m = 0; m < dim_x; ++m) l(i, m) = (s * basis[m]).trace().real();
  }

  Eigen::JacobiSVD<RealMatrix> svd(l, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() ? sigma[0] : 0.0;
  // Null space decided at the Gram scale: sigma^2 against the G threshold,
  // G = L L^T being the perturbation Gram matrix.
  const double gram_threshold =
      tol.rank_tol_gram.value_or(default_rank_threshold(k, sigma_max * sigma_max));
  int rank_l = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma[i] * sigma[i] > gram_threshold) ++rank_l;
  if (rank_l >= dim_x) return std::nullopt;

  RealVector v = svd.matrixV().col(rank_l);
  Matrix x0 = Matrix::Zero(p.dim(), p.dim());
  for (int m = 0; m < dim_x; ++m) x0 += v[m] * basis[m];
  x0 = 0.5 * (x0 + x0.adjoint());

  HermitianMatrix x_raw(field, std::move(x0));
  double opnorm;
  {
    EigenDecomposition d = eigh(x_raw);
    opnorm = std::max(std::abs(d.eigenvalues[0]), std::abs(d.eigenvalues[x_raw.dim() - 1]));
  }
  if (opnorm <= 0.0) return std::nullopt;
  HermitianMatrix x = x_raw.scaled(0.5 / opnorm);
  HermitianMatrix h(field, Matrix(rd.sqrt_p * x.entries() * rd.sqrt_p));

  const double witness_floor = tol.witness_floor_scale * p.frobenius();
  if (h.frobenius() <= witness_floor) return std::nullopt;

  PerturbationWitness w{x, h, 0.5, membership(c, p + h, tol.feas),
                        membership(c, p - h, tol.feas)};
  return w;
}

bool rank_one_extreme_check(const Spectrahedron& c, const CplxVector& x, double tol) {
  if (x.size() != c.dim())
    throw std::invalid_argument("rank_one_extreme_check: dimension mismatch");
  if (x.norm() == 0.0) throw std::domain_error("rank_one_extreme_check: zero vector");
  if (c.all_targets_zero()) return false;  // no rank-one extreme points
  for (const auto& k : c.constraints()) {
    double value = (x.adjoint() * k.A.entries() * x).value().real();
    if (std::abs(value - k.c) > tol * constraint_scale(k)) return false;
  }
  return true;
}

}  // namespace extremal
