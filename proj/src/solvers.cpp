#include "extremal/applications.hpp"

#include <cmath>
#include <random>

namespace extremal {

namespace {

// Least-norm affine correction: P <- P + sum_k mu_k A_k zeroing the residuals.
void affine_restore(const Spectrahedron& c, Matrix& p) {
  const int k = c.n_constraints();
  RealMatrix gram(k, k);
  RealVector resid(k);
  for (int i = 0; i < k; ++i) {
    const Matrix& ai = c.constraints()[i].A.entries();
    resid[i] = c.constraints()[i].c - (ai * p).trace().real();
    for (int j = i; j < k; ++j) {
      double g = (ai * c.constraints()[j].A.entries()).trace().real();
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }
  RealVector mu = gram.ldlt().solve(resid);
  for (int i = 0; i < k; ++i)
    p += Cplx(mu[i]) * c.constraints()[i].A.entries();
}

// Rank-bounded PSD truncation: keep the top-R nonnegative eigenvalues.
Matrix truncate_factor(const Matrix& p, int rank_bound, Field field) {
  HermitianMatrix hp(field, Matrix(0.5 * (p + p.adjoint())));
  EigenDecomposition d = eigh(hp);
  const int r = std::min<int>(rank_bound, hp.dim());
  Matrix v = Matrix::Zero(hp.dim(), rank_bound);
  for (int j = 0; j < r; ++j) {
    double lambda = std::max(0.0, d.eigenvalues[j]);
    v.col(j) = std::sqrt(lambda) * d.eigenvectors.col(j);
  }
  return v;
}

Matrix restore_feasible(const Spectrahedron& c, Matrix v, int rank_bound, int rounds) {
  for (int t = 0; t < rounds; ++t) {
    Matrix p = v * v.adjoint();
    affine_restore(c, p);
    v = truncate_factor(p, rank_bound, c.field());
  }
  return v;
}

double top_eigenvalue(const Spectrahedron& c, const Matrix& v, CplxVector* vec = nullptr) {
  HermitianMatrix p(c.field(), Matrix(v * v.adjoint()));
  EigenDecomposition d = eigh(p);
  if (vec) *vec = d.eigenvectors.col(0);
  return d.eigenvalues[0];
}

Matrix random_factor(int n, int r, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix v(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j)
      v(i, j) = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  return v;
}

}  // namespace

SolveResult max_lambda1_lowrank(const Spectrahedron& c, int rank_bound,
                                const SolveOptions& opts) {
  if (rank_bound < 1) throw std::invalid_argument("max_lambda1_lowrank: rank bound < 1");
  const int n = c.dim();
  const Field field = c.field();

  std::optional<Matrix> best_v;
  double best_obj = -std::numeric_limits<double>::infinity();
  std::vector<double> restart_objectives;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(restart));
    Matrix v = random_factor(n, rank_bound, field, rng);
    v = restore_feasible(c, std::move(v), rank_bound, 200);
    if (!membership(c, HermitianMatrix(field, Matrix(v * v.adjoint())), opts.tol * 100)
             .feasible) {
      restart_objectives.push_back(-std::numeric_limits<double>::infinity());
      continue;  // this start found no feasible point
    }

    double local_best = top_eigenvalue(c, v);
    Matrix local_best_v = v;
    for (int iter = 1; iter <= opts.max_iters; ++iter) {
      CplxVector x;
      top_eigenvalue(c, v, &x);
      // Subgradient of lambda_1(VV*) in V: 2 (x x*) V, projected onto the
      // tangent space of the trace constraints.
      Matrix g = 2.0 * (x * (x.adjoint() * v));
      std::vector<Matrix> dirs;
      for (const auto& k : c.constraints()) dirs.push_back(2.0 * (k.A.entries() * v));
      // Gram-Schmidt the constraint gradients, then deflate g (real inner product).
      for (size_t i = 0; i < dirs.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
          dirs[i] -= (dirs[j].cwiseProduct(dirs[i].conjugate())).sum().real() * dirs[j];
        double norm = dirs[i].norm();
        if (norm < 1e-12) {
          dirs[i].setZero();
          continue;
        }
        dirs[i] /= norm;
        g -= (dirs[i].cwiseProduct(g.conjugate())).sum().real() * dirs[i];
      }
      double gnorm = g.norm();
      if (gnorm < 1e-14) break;
      v += (opts.step / std::sqrt(static_cast<double>(iter))) * (g / gnorm);
      if (iter % 10 == 0) {
        v = restore_feasible(c, std::move(v), rank_bound, 30);
        double obj = top_eigenvalue(c, v);
        if (obj > local_best &&
            membership(c, HermitianMatrix(field, Matrix(v * v.adjoint())), opts.tol * 100)
                .feasible) {
          local_best = obj;
          local_best_v = v;
        }
      }
    }
    Matrix polished = restore_feasible(c, local_best_v, rank_bound, 100);
    double obj = top_eigenvalue(c, polished);
    restart_objectives.push_back(obj);
    if (obj > best_obj) {
      best_obj = obj;
      best_v = std::move(polished);
    }
  }

  if (!best_v)
    throw std::runtime_error("max_lambda1_lowrank: no feasible point found in any restart");

  HermitianMatrix p_opt(field, Matrix(*best_v * best_v->adjoint()));
  MembershipReport feas = membership(c, p_opt, opts.tol);
  SolveResult res{p_opt,          best_obj, rank_bound, opts.restarts,
                  feas.feasible, std::move(restart_objectives), feas};
  return res;
}

namespace {

double binary_entropy(double a) {
  auto term = [](double t) { return t <= 0.0 || t >= 1.0 ? 0.0 : -t * std::log(t); };
  return term(a) + term(1.0 - a);
}

struct MomentProblem {
  std::vector<RealMatrix> m_ops;  // multiplication by u^j, j = 1..3
  RealVector targets;             // m1, m2, m3
};

RealVector rank1_residuals(const MomentProblem& prob, const RealVector& psi) {
  RealVector r(4);
  for (int j = 0; j < 3; ++j) r[j] = psi.dot(prob.m_ops[j] * psi) - prob.targets[j];
  r[3] = psi.squaredNorm() - 1.0;
  return r;
}

// Levenberg-Marquardt on the 3 moment residuals plus the unit-norm residual.
bool rank1_gauss_newton(const MomentProblem& prob, RealVector& psi, double tol) {
  const int m = static_cast<int>(psi.size());
  double lambda = 1e-3;
  for (int iter = 0; iter < 200; ++iter) {
    RealVector r = rank1_residuals(prob, psi);
    if (r.norm() < tol) return true;
    RealMatrix jac(4, m);
    for (int j = 0; j < 3; ++j) jac.row(j) = 2.0 * (prob.m_ops[j] * psi).transpose();
    jac.row(3) = 2.0 * psi.transpose();
    RealMatrix jtj = jac.transpose() * jac;
    RealVector jtr = jac.transpose() * r;
    RealVector step =
        (jtj + lambda * RealMatrix::Identity(m, m)).ldlt().solve(jtr);
    RealVector cand = psi - step;
    if (rank1_residuals(prob, cand).norm() < r.norm()) {
      psi = cand;
      lambda = std::max(lambda * 0.3, 1e-12);
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) return false;
    }
  }
  return rank1_residuals(prob, psi).norm() < tol;
}

struct Rank2State {
  double logit_alpha = 0.0;
  RealVector psi;
  RealVector phi;
};

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

RealVector rank2_residuals(const MomentProblem& prob, const Rank2State& s) {
  const double a = sigmoid(s.logit_alpha);
  RealVector r(6);
  for (int j = 0; j < 3; ++j)
    r[j] = a * s.psi.dot(prob.m_ops[j] * s.psi) +
           (1.0 - a) * s.phi.dot(prob.m_ops[j] * s.phi) - prob.targets[j];
  r[3] = s.psi.squaredNorm() - 1.0;
  r[4] = s.phi.squaredNorm() - 1.0;
  r[5] = s.psi.dot(s.phi);
  return r;
}

double rank2_objective(const MomentProblem& prob, const Rank2State& s, double weight) {
  return binary_entropy(sigmoid(s.logit_alpha)) +
         weight * rank2_residuals(prob, s).squaredNorm();
}

// Numerically differentiated gradient step is too slow here; the analytic
// gradient of the penalty objective.
void rank2_gradient(const MomentProblem& prob, const Rank2State& s, double weight,
                    double& g_logit, RealVector& g_psi, RealVector& g_phi) {
  const double a = sigmoid(s.logit_alpha);
  const double da = a * (1.0 - a);
  RealVector r = rank2_residuals(prob, s);
  // entropy term
  g_logit = (a <= 0.0 || a >= 1.0) ? 0.0 : -std::log(a / (1.0 - a)) * da;
  g_psi = RealVector::Zero(s.psi.size());
  g_phi = RealVector::Zero(s.phi.size());
  for (int j = 0; j < 3; ++j) {
    double qpsi = s.psi.dot(prob.m_ops[j] * s.psi);
    double qphi = s.phi.dot(prob.m_ops[j] * s.phi);
    g_logit += 2.0 * weight * r[j] * (qpsi - qphi) * da;
    g_psi += 2.0 * weight * r[j] * a * 2.0 * (prob.m_ops[j] * s.psi);
    g_phi += 2.0 * weight * r[j] * (1.0 - a) * 2.0 * (prob.m_ops[j] * s.phi);
  }
  g_psi += 2.0 * weight * r[3] * 2.0 * s.psi + 2.0 * weight * r[5] * s.phi;
  g_phi += 2.0 * weight * r[4] * 2.0 * s.phi + 2.0 * weight * r[5] * s.psi;
}

}  // namespace

EntropyResult min_entropy_rank2(double m1, double m2, double m3, int basis_size,
                                const SolveOptions& opts) {
  if (basis_size < 2) throw std::invalid_argument("min_entropy_rank2: basis size < 2");
  MomentProblem prob;
  auto ops = galerkin_moment_operators(basis_size, {1, 2, 3});
  for (const auto& op : ops) prob.m_ops.push_back(op.entries().real());
  prob.targets.resize(3);
  prob.targets << m1, m2, m3;

  struct Candidate {
    double alpha;
    RealVector psi;
    RealVector phi;
    double residual;
    double entropy;
  };
  std::vector<Candidate> candidates;

  // Boundary candidates alpha = 1: pure-state Gauss-Newton from the constant
  // function and from random starts.
  {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int start = 0; start <= opts.restarts; ++start) {
      RealVector psi;
      if (start == 0) {
        psi = RealVector::Zero(basis_size);
        psi[0] = 1.0;  // the constant function
      } else {
        psi = RealVector::NullaryExpr(basis_size, [&](Eigen::Index) { return gauss(rng); });
        psi.normalize();
      }
      if (rank1_gauss_newton(prob, psi, 1e-12)) {
        RealVector phi = RealVector::Zero(basis_size);
        phi[psi.cwiseAbs().maxCoeff() == std::abs(psi[0]) ? 1 : 0] = 1.0;
        phi -= psi.dot(phi) * psi / psi.squaredNorm();
        phi.normalize();
        candidates.push_back({1.0, psi, phi, rank1_residuals(prob, psi).norm(), 0.0});
      }
    }
  }

  // Rank-2 penalty phase, multi-start, penalty weight doubling over 8 rounds.
  for (int restart = 0; restart < opts.restarts; ++restart) {
    std::mt19937_64 rng(opts.seed + 1000 + static_cast<std::uint64_t>(restart));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Rank2State s;
    s.logit_alpha = gauss(rng);
    s.psi = RealVector::NullaryExpr(basis_size, [&](Eigen::Index) { return gauss(rng); });
    s.phi = RealVector::NullaryExpr(basis_size, [&](Eigen::Index) { return gauss(rng); });
    s.psi.normalize();
    s.phi.normalize();

    double weight = 10.0;
    for (int round = 0; round < 8; ++round, weight *= 2.0) {
      double lr = 0.02;
      for (int iter = 0; iter < opts.max_iters; ++iter) {
        double g_logit;
        RealVector g_psi, g_phi;
        rank2_gradient(prob, s, weight, g_logit, g_psi, g_phi);
        Rank2State cand = s;
        cand.logit_alpha -= lr * g_logit;
        cand.psi -= lr * g_psi;
        cand.phi -= lr * g_phi;
        if (rank2_objective(prob, cand, weight) < rank2_objective(prob, s, weight)) {
          s = cand;
          lr = std::min(lr * 1.1, 0.2);
        } else {
          lr *= 0.5;
          if (lr < 1e-12) break;
        }
      }
    }
    double a = sigmoid(s.logit_alpha);
    candidates.push_back({a, s.psi, s.phi, rank2_residuals(prob, s).norm(),
                          binary_entropy(a)});
  }

  if (candidates.empty())
    throw std::runtime_error("min_entropy_rank2: no candidate produced");

  // Prefer feasible candidates (residual below tol); among those the lowest
  // entropy; otherwise the lowest residual.
  const double feas_tol = std::max(opts.tol, 1e-10);
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (!best) {
      best = &c;
      continue;
    }
    bool cf = c.residual <= feas_tol, bf = best->residual <= feas_tol;
    if (cf != bf) {
      if (cf) best = &c;
    } else if (cf) {
      if (c.entropy < best->entropy) best = &c;
    } else if (c.residual < best->residual) {
      best = &c;
    }
  }

  // Orthonormalize (psi, phi) and assemble P.
  RealVector psi = best->psi / best->psi.norm();
  RealVector phi = best->phi - psi.dot(best->phi) * psi;
  if (phi.norm() < 1e-12) {
    phi = RealVector::Zero(basis_size);
    phi[psi.cwiseAbs().minCoeff() == std::abs(psi[0]) ? 0 : basis_size - 1] = 1.0;
    phi -= psi.dot(phi) * psi;
  }
  phi.normalize();
  const double alpha = best->alpha;
  RealMatrix p = alpha * psi * psi.transpose() + (1.0 - alpha) * phi * phi.transpose();
  HermitianMatrix p_opt(Field::Real, p);

  // Feasibility against the moment spectrahedron (trace + three moments).
  std::vector<Constraint> ks;
  ks.push_back({"trace", HermitianMatrix::identity(Field::Real, basis_size), 1.0});
  for (int j = 0; j < 3; ++j)
    ks.push_back({"moment_" + std::to_string(j + 1),
                  HermitianMatrix(Field::Real, prob.m_ops[j]), prob.targets[j]});
  Spectrahedron spec(Field::Real, basis_size, std::move(ks));
  MembershipReport feas = membership(spec, p_opt, std::max(opts.tol, best->residual * 10));

  EntropyResult out;
  out.solve = SolveResult{p_opt,
                          best->entropy,
                          2,
                          opts.restarts,
                          best->residual <= feas_tol,
                          {},
                          feas};
  out.alpha = alpha;
  out.psi = psi;
  out.phi = phi;
  return out;
}

}  // namespace extremal
