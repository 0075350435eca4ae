#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extremal/extremality.hpp"

namespace extremal {

enum class InstanceFamily { Elliptope, Density, Custom };

struct RandomInstance {
  InstanceFamily family;
  Spectrahedron spectrahedron;
  HermitianMatrix point;  // feasible by construction
};

/// Deterministic random feasible instance; both fields, n <= max_dim,
/// 1..max_constraints constraints for the custom family.
RandomInstance random_instance(std::uint64_t seed, int max_dim = 8,
                               int max_constraints = 10);

struct OracleCompareOptions {
  int instances = 1000;
  int max_dim = 8;
  int max_constraints = 10;
  std::uint64_t seed = 0;
  bool parallel = true;  // OpenMP fan-out over instances
  Tolerances tol;
};

struct InstanceOutcome {
  bool rank_test_extreme = false;
  bool witness_found = false;  // verdicts agree iff these differ
  bool witness_valid = true;   // feasibility, norm and Douglas round-trip checks
  int rank_p = 0;
  int n_constraints = 0;
  Field field = Field::Real;
  double witness_roundtrip_err = 0.0;
  double witness_norm_x = 0.0;
};

struct OracleCompareResult {
  int instances = 0;
  int disagreements = 0;
  int extreme_count = 0;
  int witness_count = 0;
  int witness_failures = 0;
  int bp_violations = 0;  // extreme verdicts exceeding the Barvinok-Pataki bound
  double max_witness_roundtrip_err = 0.0;
  double max_witness_norm_x = 0.0;
  double seconds = 0.0;
  std::vector<std::uint64_t> disagree_seeds;
};

InstanceOutcome evaluate_instance(const RandomInstance& inst, const Tolerances& tol);

/// Runs the Thm 3.2 <-> Thm 3.3 equivalence suite over random instances.
/// The parallel path and the serial path produce identical counts; the
/// serial one is kept as the reference (see bench_batch).
OracleCompareResult run_oracle_compare(const OracleCompareOptions& opts);

}  // namespace extremal
