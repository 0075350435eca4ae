// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "extremal/applications.hpp"
#include "extremal/batch.hpp"
#include "extremal/elliptope.hpp"

using namespace extremal;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CplxVector random_unit(int n, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CplxVector v(n);
  for (int i = 0; i < n; ++i)
    v[i] = Cplx(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
  return v / v.norm();
}

struct Criterion {
  const char* name;
  bool (*run)(std::string& detail);
};

// 1. Density operators: extreme iff the mixture collapses to rank one.
bool crit_density_law(std::string& detail) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> kdist(1, 4);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  int disagreements = 0, bp_violations = 0, total = 0;
  for (int n = 2; n <= 8; ++n) {
    for (Field f : {Field::Real, Field::Complex}) {
      Spectrahedron c = Spectrahedron::density(n, f);
      for (int trial = 0; trial < 50; ++trial) {
        int k = kdist(rng);
        Matrix p = Matrix::Zero(n, n);
        double total_w = 0.0;
        for (int i = 0; i < k; ++i) {
          CplxVector v = random_unit(n, f, rng);
          double w = unif(rng);
          p += w * (v * v.adjoint());
          total_w += w;
        }
        p /= total_w;
        HermitianMatrix hp(f, std::move(p));
        ExtremalityReport rep = extremality_rank_test(hp, c);
        bool rank_one = numerical_rank(hp).rank == 1;
        if (rep.is_extreme != rank_one) ++disagreements;
        if (rep.is_extreme && rep.rank_p > bp_rank_bound(c.n_constraints(), f))
          ++bp_violations;
        ++total;
      }
    }
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d instances, %d disagreements, %d bound breaches, %.2fs",
                total, disagreements, bp_violations, dt);
  detail = buf;
  return disagreements == 0 && bp_violations == 0 && dt < 10.0;
}

// Shared between criteria 2, 5 and 6.
OracleCompareResult& oracle_result() {
  static OracleCompareResult r = [] {
    OracleCompareOptions opts;
    opts.instances = 1000;
    opts.max_dim = 8;
    opts.seed = 2002;
    return run_oracle_compare(opts);
  }();
  return r;
}

// 2. Rank-test verdict equals the null-space witness verdict everywhere.
bool crit_oracle_equivalence(std::string& detail) {
  const OracleCompareResult& r = oracle_result();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d instances, %d disagreements, %.2fs", r.instances,
                r.disagreements, r.seconds);
  detail = buf;
  return r.instances >= 1000 && r.disagreements == 0 && r.seconds < 60.0;
}

// 3. Gram matrix of the elliptope equals the Hadamard square.
bool crit_elliptope_identity(std::string& detail) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int n = 2 + static_cast<int>(seed % 7);
    int r = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n));
    CorrelationMatrix p = random_correlation(n, r, Field::Real, 3000 + seed);
    RealMatrix g = perturbation_gram(p.matrix(), Spectrahedron::elliptope(n, Field::Real));
    RealMatrix h = hadamard_square(p.matrix()).entries().real();
    worst = std::max(worst, (g - h).cwiseAbs().maxCoeff());
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max entrywise deviation %.3e over 200 matrices", worst);
  detail = buf;
  return worst <= 1e-10;
}

// 4. The trine configuration is extreme; the identity has facial dimension 3.
bool crit_trine(std::string& detail) {
  RealMatrix t(3, 3);
  t << 1, -0.5, -0.5, -0.5, 1, -0.5, -0.5, -0.5, 1;
  CorrelationMatrix trine(HermitianMatrix(Field::Real, t));
  ExtremalityReport rep = elliptope_extreme_test(trine, Field::Real);
  bool ok = rep.is_extreme && rep.rank_p == 2 && rep.gram_rank == 3 && rep.dim_x == 3 &&
            rep.facial_dimension == 0;
  ok = ok && !find_even_perturbation(trine.matrix(),
                                     Spectrahedron::elliptope(3, Field::Real))
                  .has_value();
  CorrelationMatrix id(HermitianMatrix::identity(Field::Real, 3));
  ExtremalityReport idrep = elliptope_extreme_test(id, Field::Real);
  ok = ok && !idrep.is_extreme && idrep.facial_dimension == 3 && idrep.dim_x == 6 &&
       idrep.gram_rank == 3;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "trine: rank %d, gram %d/%d; identity facial dimension %d", rep.rank_p,
                rep.gram_rank, rep.dim_x, idrep.facial_dimension);
  detail = buf;
  return ok;
}

// 5. Every witness is feasible both ways, small in norm, and factorizable.
bool crit_witness_feasibility(std::string& detail) {
  const OracleCompareResult& r = oracle_result();
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d witnesses, %d failures, max ||X|| %.6f, max round-trip %.3e",
                r.witness_count, r.witness_failures, r.max_witness_norm_x,
                r.max_witness_roundtrip_err);
  detail = buf;
  return r.witness_count > 0 && r.witness_failures == 0 &&
         r.max_witness_norm_x <= 0.5 + 1e-10 && r.max_witness_roundtrip_err <= 1e-8;
}

// 6. Barvinok-Pataki bounds hold for every extreme verdict.
bool crit_bp_bounds(std::string& detail) {
  const OracleCompareResult& r = oracle_result();
  bool four_complex = bp_rank_bound(4, Field::Complex) == 2;
  char buf[128];
  std::snprintf(buf, sizeof buf, "bound(4, complex) = %d; %d breaches over %d instances",
                bp_rank_bound(4, Field::Complex), r.bp_violations, r.instances);
  detail = buf;
  return four_complex && r.bp_violations == 0;
}

// 7. Hadamard rank inequality and its equality case.
bool crit_hadamard_inequality(std::string& detail) {
  std::mt19937_64 rng(7007);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int violations = 0, equality_mismatches = 0, total = 0;
  for (Field f : {Field::Real, Field::Complex}) {
    for (int trial = 0; trial < 500; ++trial) {
      int r = 1 + trial % 4;
      int n = std::max(r + 1, 2 + trial % 9);  // sizes up to 10
      Matrix v(n, r);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j)
          v(i, j) = Cplx(gauss(rng), f == Field::Complex ? gauss(rng) : 0.0);
      HermitianMatrix a(f, Matrix(v * v.adjoint()));
      HadamardRankCheck c = hadamard_inequality_check(a, f);
      if (c.lhs_rank > c.rank_a * c.rank_a) ++violations;
      if (f == Field::Real && c.lhs_rank > c.rank_a * (c.rank_a + 1) / 2) ++violations;
      if (c.equality != c.extreme_in_diagonal_spectrahedron) ++equality_mismatches;
      ++total;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d matrices, %d bound breaches, %d equality mismatches",
                total, violations, equality_mismatches);
  detail = buf;
  return violations == 0 && equality_mismatches == 0;
}

// 8. Entropy minimization with the constant-state moments.
bool crit_entropy_study(std::string& detail) {
  auto t0 = Clock::now();
  SolveOptions opts;
  opts.restarts = 6;
  opts.max_iters = 300;
  EntropyResult r = min_entropy_rank2(0.5, 1.0 / 3.0, 0.25, 8, opts);
  double dt = seconds_since(t0);
  double worst_res = 0.0;
  for (double res : r.solve.feasibility.constraint_residuals)
    worst_res = std::max(worst_res, res);
  char buf[128];
  std::snprintf(buf, sizeof buf, "entropy %.3e, max residual %.3e, %.2fs",
                r.solve.objective, worst_res, dt);
  detail = buf;
  return r.solve.objective <= 1e-4 && worst_res <= 1e-6 && dt < 30.0;
}

// 9. Largest-eigenvalue study on the elliptope and the interval-cover toy.
bool crit_lambda1_study(std::string& detail) {
  SolveOptions opts;
  opts.restarts = 8;
  opts.max_iters = 400;
  SolveResult e = max_lambda1_lowrank(Spectrahedron::elliptope(2, Field::Real), 1, opts);
  bool elliptope_ok = e.objective >= 2.0 - 1e-6 && e.feasibility.feasible;

  const int r = 2, p = 2;
  IntervalCoverBasis basis = build_cover_basis({{0.0, 0.6}, {0.4, 1.0}}, p);
  std::mt19937_64 rng(9009);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix v(basis.size, r);
  for (int i = 0; i < basis.size; ++i)
    for (int j = 0; j < r; ++j) v(i, j) = gauss(rng);
  RealMatrix planted = v * v.transpose();
  double planted_l1 =
      eigh(HermitianMatrix(Field::Real, planted)).eigenvalues[0];
  Spectrahedron cover =
      pca_cover_constraints(basis, planted.trace(), moments_from_covariance(basis, planted));
  int rank_bound = static_cast<int>(std::floor(pca_rank_bound(r, p)));
  SolveResult s = max_lambda1_lowrank(cover, rank_bound, opts);
  bool cover_ok = s.objective >= planted_l1 - 1e-6 && s.rank_bound_used == 3 &&
                  rank_bound == 3;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "elliptope objective %.8f; cover %.8f vs planted %.8f, rank bound %d",
                e.objective, s.objective, planted_l1, rank_bound);
  detail = buf;
  return elliptope_ok && cover_ok;
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"density-operator extremality law", crit_density_law},
      {"rank-test / witness-search equivalence", crit_oracle_equivalence},
      {"elliptope Gram = Hadamard square", crit_elliptope_identity},
      {"trine extremality and identity facial dimension", crit_trine},
      {"witness feasibility and Douglas round-trip", crit_witness_feasibility},
      {"Barvinok-Pataki rank bounds", crit_bp_bounds},
      {"Hadamard rank inequality and equality case", crit_hadamard_inequality},
      {"moment-constrained entropy minimization", crit_entropy_study},
      {"lambda_1 maximization studies", crit_lambda1_study},
  };
  int failures = 0;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, c.name,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
