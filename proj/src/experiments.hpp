#pragma once

#include "blockcur/types.hpp"
#include "csv.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace blockcur {

/// Error study on Hilbert matrices: for each size, decompose with k selected
/// rows/columns for k = 1..maxSelected and record the relative error.
struct HilbertExperimentConfig {
  std::vector<Index> sizes{256, 512, 1024};
  Index maxSelected = 20;
  Index blocks = 0;  // 0: use threads
  int threads = 0;   // 0: hardware concurrency
  double tol = 1e-12;
};

std::vector<ExperimentRecord> run_hilbert_experiment(const HilbertExperimentConfig& config);

/// Error study on synthetic low-rank matrices over (size, generator rank)
/// pairs, with selected counts 1..rank+extraSelected.
struct LowrankExperimentConfig {
  std::vector<Index> sizes{256, 512, 1024};
  std::vector<Index> ranks{5, 10, 15, 20};
  Index extraSelected = 5;
  Index blocks = 0;
  int threads = 0;
  double tol = 1e-12;
};

std::vector<ExperimentRecord> run_lowrank_experiment(const LowrankExperimentConfig& config);

/// Wall-time scaling study: blockwise decompose at each thread count (one
/// record per repetition) plus the sequential cross-approximation baseline,
/// recorded exactly once. Timing covers selection and assembly only; matrix
/// generation is excluded. tol defaults to 0 so every run executes the full
/// fixed iteration count.
struct ScalingBenchConfig {
  Index size = 4096;
  Index rank = 32;
  Index blocks = 0;                // 0: one block per thread count in use
  std::vector<int> threadCounts;   // empty: {1, 2, 4, ...} up to hardware
  int repetitions = 3;
  double tol = 0.0;
  bool includeBaseline = true;
};

std::vector<ExperimentRecord> run_scaling_bench(const ScalingBenchConfig& config);

/// Instance battery for the two cross-approximation error bounds: seeded
/// random matrices plus small Hilbert matrices, each checked at every rank in
/// `ranks` with the exhaustive maxvol oracle.
struct VerifyBatteryConfig {
  int randomCount = 100;
  Index randomRows = 6;
  Index randomCols = 6;
  std::vector<Index> hilbertSizes{5, 6, 7, 8};
  std::vector<Index> ranks{1, 2, 3};
  std::uint64_t seed = 12345;
};

struct VerifyRow {
  std::string instance;
  Index rank = 0;
  double lhs = 0.0;
  double rhs1 = 0.0;
  double rhs2 = 0.0;
  bool holds1 = false;
  bool holds2 = false;
  bool rhsOrdered = false;
  bool skipped = false;
};

struct VerifyOutcome {
  std::vector<VerifyRow> rows;
  int failures = 0;
  int skips = 0;
};

VerifyOutcome run_verify_battery(const VerifyBatteryConfig& config);

void print_verify_table(std::ostream& out, const VerifyOutcome& outcome);

}  // namespace blockcur
