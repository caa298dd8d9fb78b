#include "experiments.hpp"

#include "blockcur/aca.hpp"
#include "blockcur/cur.hpp"
#include "blockcur/generators.hpp"
#include "blockcur/oracle.hpp"
#include "blockcur/worker_pool.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>

namespace blockcur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int resolve_threads(int threads) {
  return threads > 0 ? threads : WorkerPool::hardware_threads();
}

Index resolve_blocks(Index blocks, int threads, Index dimCap) {
  Index b = blocks > 0 ? blocks : static_cast<Index>(threads);
  return std::min(b, dimCap);
}

}  // namespace

std::vector<ExperimentRecord> run_hilbert_experiment(const HilbertExperimentConfig& config) {
  const int threads = resolve_threads(config.threads);
  std::vector<ExperimentRecord> records;
  for (Index n : config.sizes) {
    const RowMatrixXd H = gen_hilbert(n);
    const Index b = resolve_blocks(config.blocks, threads, n);
    for (Index k = 1; k <= config.maxSelected; ++k) {
      const auto start = Clock::now();
      const CurFactors<double> f = decompose(H, k, k, b, config.tol, threads);
      const double wall = seconds_since(start);
      ExperimentRecord rec;
      rec.experiment = "hilbert-error";
      rec.matrixFamily = "hilbert";
      rec.n = static_cast<std::uint64_t>(n);
      rec.rank = 0;
      rec.selected = static_cast<std::uint64_t>(k);
      rec.blocks = static_cast<std::uint64_t>(b);
      rec.threads = static_cast<std::uint64_t>(threads);
      rec.relError = relative_error(H, f);
      rec.wallSeconds = wall;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<ExperimentRecord> run_lowrank_experiment(const LowrankExperimentConfig& config) {
  const int threads = resolve_threads(config.threads);
  std::vector<ExperimentRecord> records;
  for (Index n : config.sizes) {
    for (Index rank : config.ranks) {
      const RowMatrixXd H = gen_synthetic_lowrank(n, rank);
      const Index b = resolve_blocks(config.blocks, threads, n);
      for (Index k = 1; k <= rank + config.extraSelected; ++k) {
        const auto start = Clock::now();
        const CurFactors<double> f = decompose(H, k, k, b, config.tol, threads);
        const double wall = seconds_since(start);
        ExperimentRecord rec;
        rec.experiment = "lowrank-error";
        rec.matrixFamily = "synthetic-lowrank";
        rec.n = static_cast<std::uint64_t>(n);
        rec.rank = static_cast<std::uint64_t>(rank);
        rec.selected = static_cast<std::uint64_t>(k);
        rec.blocks = static_cast<std::uint64_t>(b);
        rec.threads = static_cast<std::uint64_t>(threads);
        rec.relError = relative_error(H, f);
        rec.wallSeconds = wall;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

std::vector<ExperimentRecord> run_scaling_bench(const ScalingBenchConfig& config) {
  std::vector<int> threadCounts = config.threadCounts;
  if (threadCounts.empty()) {
    const int hw = WorkerPool::hardware_threads();
    for (int t = 1; t <= hw; t *= 2) {
      threadCounts.push_back(t);
    }
  }
  const Index n = config.size;
  const Index r = config.rank;
  const RowMatrixXd H = gen_synthetic_lowrank(n, r);

  std::vector<ExperimentRecord> records;
  for (int threads : threadCounts) {
    const Index b = resolve_blocks(config.blocks, std::max(threads, 2), n);
    for (int rep = 0; rep < config.repetitions; ++rep) {
      const auto start = Clock::now();
      const CurFactors<double> f = decompose(H, r, r, b, config.tol, threads);
      const double wall = seconds_since(start);
      ExperimentRecord rec;
      rec.experiment = "scaling-blockwise";
      rec.matrixFamily = "synthetic-lowrank";
      rec.n = static_cast<std::uint64_t>(n);
      rec.rank = static_cast<std::uint64_t>(r);
      rec.selected = static_cast<std::uint64_t>(f.rowIndices.size());
      rec.blocks = static_cast<std::uint64_t>(b);
      rec.threads = static_cast<std::uint64_t>(threads);
      rec.wallSeconds = wall;
      records.push_back(std::move(rec));
    }
  }

  if (config.includeBaseline) {
    const auto start = Clock::now();
    const AcaResult<double> aca = aca_sequential(H, r, config.tol);
    const CurFactors<double> f = assemble(H, aca.rowIndices, aca.colIndices);
    const double wall = seconds_since(start);
    ExperimentRecord rec;
    rec.experiment = "scaling-aca-baseline";
    rec.matrixFamily = "synthetic-lowrank";
    rec.n = static_cast<std::uint64_t>(n);
    rec.rank = static_cast<std::uint64_t>(r);
    rec.selected = static_cast<std::uint64_t>(f.rowIndices.size());
    rec.blocks = 1;
    rec.threads = 1;
    rec.wallSeconds = wall;
    records.push_back(std::move(rec));
  }
  return records;
}

VerifyOutcome run_verify_battery(const VerifyBatteryConfig& config) {
  VerifyOutcome outcome;

  auto check_instance = [&](const std::string& name, const RowMatrixXd& A) {
    for (Index r : config.ranks) {
      const TheoremCheck<double> t1 = verify_theorem1(A, r);
      const TheoremCheck<double> t2 = verify_theorem2(A, r);
      VerifyRow row;
      row.instance = name;
      row.rank = r;
      row.skipped = t1.skipped || t2.skipped;
      row.lhs = t1.lhs;
      row.rhs1 = t1.rhs;
      row.rhs2 = t2.rhs;
      row.holds1 = t1.holds;
      row.holds2 = t2.holds;
      row.rhsOrdered = row.skipped || t2.rhs <= t1.rhs * (1.0 + 1e-12);
      if (row.skipped) {
        ++outcome.skips;
      } else if (!row.holds1 || !row.holds2 || !row.rhsOrdered) {
        ++outcome.failures;
      }
      outcome.rows.push_back(std::move(row));
    }
  };

  for (int i = 1; i <= config.randomCount; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "random-%03d", i);
    check_instance(name, gen_uniform(config.randomRows, config.randomCols,
                                     config.seed + static_cast<std::uint64_t>(i)));
  }
  for (Index n : config.hilbertSizes) {
    check_instance("hilbert-" + std::to_string(n), gen_hilbert(n));
  }
  return outcome;
}

void print_verify_table(std::ostream& out, const VerifyOutcome& outcome) {
  out << std::left << std::setw(14) << "instance" << std::right << std::setw(4) << "r"
      << std::setw(14) << "lhs" << std::setw(14) << "rhs1" << std::setw(14) << "rhs2"
      << std::setw(10) << "status" << "\n";
  for (const auto& row : outcome.rows) {
    const char* status = row.skipped ? "skipped"
                         : (row.holds1 && row.holds2 && row.rhsOrdered) ? "pass"
                                                                        : "FAIL";
    out << std::left << std::setw(14) << row.instance << std::right << std::setw(4) << row.rank
        << std::setw(14) << std::scientific << std::setprecision(3) << row.lhs << std::setw(14)
        << row.rhs1 << std::setw(14) << row.rhs2 << std::setw(10) << status << "\n";
  }
  out << outcome.rows.size() << " checks, " << outcome.failures << " failures, " << outcome.skips
      << " skipped\n";
}

}  // namespace blockcur
