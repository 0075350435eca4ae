#include "extremal/batch.hpp"

#include <chrono>
#include <random>

#include "extremal/elliptope.hpp"

namespace extremal {

namespace {

CplxVector random_unit(int n, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CplxVector x(n);
  for (int i = 0; i < n; ++i)
    x[i] = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  x.normalize();
  return x;
}

Matrix random_hermitian(int n, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  return 0.5 * (a + a.adjoint());
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, int max_dim, int max_constraints) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
  std::uniform_int_distribution<int> pick_family(0, 2);
  std::uniform_int_distribution<int> pick_dim(2, max_dim);
  std::uniform_int_distribution<int> pick_field(0, 1);

  const auto family = static_cast<InstanceFamily>(pick_family(rng));
  const int n = pick_dim(rng);
  const Field field = pick_field(rng) ? Field::Complex : Field::Real;

  switch (family) {
    case InstanceFamily::Elliptope: {
      std::uniform_int_distribution<int> pick_rank(1, n);
      CorrelationMatrix p = random_correlation(n, pick_rank(rng), field, rng());
      return {family, Spectrahedron::elliptope(n, field), p.matrix()};
    }
    case InstanceFamily::Density: {
      std::uniform_int_distribution<int> pick_k(1, 4);
      const int k = pick_k(rng);
      std::uniform_real_distribution<double> unif(0.1, 1.0);
      RealVector w(k);
      for (int i = 0; i < k; ++i) w[i] = unif(rng);
      w /= w.sum();
      Matrix p = Matrix::Zero(n, n);
      for (int i = 0; i < k; ++i) {
        CplxVector x = random_unit(n, field, rng);
        p += Cplx(w[i]) * x * x.adjoint();
      }
      return {family, Spectrahedron::density(n, field), HermitianMatrix(field, std::move(p))};
    }
    case InstanceFamily::Custom:
    default: {
      std::uniform_int_distribution<int> pick_rank(1, n);
      std::uniform_int_distribution<int> pick_count(1, max_constraints);
      const int r = pick_rank(rng);
      Matrix v(n, r);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j)
          v(i, j) = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
      HermitianMatrix p(field, Matrix(v * v.adjoint()));
      const int count = pick_count(rng);
      std::vector<std::pair<Matrix, double>> raw;
      raw.reserve(count);
      for (int i = 0; i < count; ++i) {
        Matrix a = random_hermitian(n, field, rng);
        double c = (a * p.entries()).trace().real();  // feasible by construction
        raw.emplace_back(std::move(a), c);
      }
      return {family, Spectrahedron::custom(field, n, std::move(raw)), p};
    }
  }
}

InstanceOutcome evaluate_instance(const RandomInstance& inst, const Tolerances& tol) {
  InstanceOutcome out;
  out.field = inst.spectrahedron.field();
  out.n_constraints = inst.spectrahedron.n_constraints();

  ExtremalityReport rep = extremality_rank_test(inst.point, inst.spectrahedron, tol);
  out.rank_test_extreme = rep.is_extreme;
  out.rank_p = rep.rank_p;

  auto witness = find_even_perturbation(inst.point, inst.spectrahedron, tol);
  out.witness_found = witness.has_value();
  if (witness) {
    const auto& w = *witness;
    out.witness_norm_x = w.norm_x;
    bool ok = w.feasibility_plus.feasible && w.feasibility_minus.feasible &&
              w.norm_x <= 0.5 + 1e-10 && w.H.frobenius() > 0.0;
    HermitianMatrix x_rt = douglas_factor(inst.point, w.H, tol.feas);
    out.witness_roundtrip_err =
        (x_rt.entries() - w.X.entries()).norm() / std::max(1e-300, w.X.entries().norm());
    if (out.witness_roundtrip_err > 1e-8) ok = false;
    out.witness_valid = ok;
  }
  return out;
}

OracleCompareResult run_oracle_compare(const OracleCompareOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleCompareResult res;
  res.instances = opts.instances;

  std::vector<InstanceOutcome> outcomes(opts.instances);

#ifdef EXTREMAL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
#endif
  for (int i = 0; i < opts.instances; ++i) {
    RandomInstance inst =
        random_instance(opts.seed + static_cast<std::uint64_t>(i), opts.max_dim,
                        opts.max_constraints);
    outcomes[i] = evaluate_instance(inst, opts.tol);
  }

  for (int i = 0; i < opts.instances; ++i) {
    const auto& o = outcomes[i];
    if (o.rank_test_extreme == o.witness_found) {
      ++res.disagreements;
      res.disagree_seeds.push_back(opts.seed + static_cast<std::uint64_t>(i));
    }
    if (o.rank_test_extreme) {
      ++res.extreme_count;
      if (o.rank_p > bp_rank_bound(o.n_constraints, o.field)) ++res.bp_violations;
    }
    if (o.witness_found) {
      ++res.witness_count;
      if (!o.witness_valid) ++res.witness_failures;
      res.max_witness_roundtrip_err =
          std::max(res.max_witness_roundtrip_err, o.witness_roundtrip_err);
      res.max_witness_norm_x = std::max(res.max_witness_norm_x, o.witness_norm_x);
    }
  }

  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace extremal
