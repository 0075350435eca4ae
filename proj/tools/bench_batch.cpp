// Timing comparison of the serial and OpenMP paths of the batch oracle
// suite. The two paths must report identical counts; the serial run is the
// reference.

#include <cstdio>
#include <cstdlib>

#include "extremal/batch.hpp"

int main(int argc, char** argv) {
  using namespace extremal;
  int instances = argc > 1 ? std::atoi(argv[1]) : 500;

  OracleCompareOptions opts;
  opts.instances = instances;
  opts.seed = 42;

  opts.parallel = false;
  OracleCompareResult serial = run_oracle_compare(opts);
  opts.parallel = true;
  OracleCompareResult parallel = run_oracle_compare(opts);

  std::printf("instances            %d\n", instances);
  std::printf("serial   %8.3f s  (disagreements %d, extreme %d)\n", serial.seconds,
              serial.disagreements, serial.extreme_count);
  std::printf("parallel %8.3f s  (disagreements %d, extreme %d)\n", parallel.seconds,
              parallel.disagreements, parallel.extreme_count);
  std::printf("speedup  %8.2fx\n", serial.seconds / parallel.seconds);

  if (serial.disagreements != parallel.disagreements ||
      serial.extreme_count != parallel.extreme_count ||
      serial.witness_count != parallel.witness_count) {
    std::printf("MISMATCH between serial and parallel results\n");
    return 1;
  }
  return 0;
}
