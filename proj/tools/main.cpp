#include "blockcur/blockcur.hpp"
#include "csv.hpp"
#include "experiments.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

using namespace blockcur;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerifyFailure = 3;

constexpr const char* kThreadsEnvVar = "BLOCKCUR_THREADS";

/// Thread count resolution: BLOCKCUR_THREADS overrides the flag; 0 means
/// hardware concurrency. The resolved value is what lands in the CSV.
int resolve_threads(int flagValue) {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 4096) {
      throw InvalidArgument(std::string(kThreadsEnvVar) + ": bad thread count \"" + env + "\"");
    }
    return static_cast<int>(v);
  }
  return flagValue > 0 ? flagValue : WorkerPool::hardware_threads();
}

MatrixFormat parse_format(const std::string& name) {
  if (name == "mm") {
    return MatrixFormat::MatrixMarket;
  }
  if (name == "bin") {
    return MatrixFormat::RawBinary;
  }
  throw InvalidArgument("unknown matrix format \"" + name + "\" (expected mm or bin)");
}

void write_records(const std::vector<ExperimentRecord>& records, const std::string& outPath) {
  if (outPath == "-") {
    write_csv(std::cout, records);
    return;
  }
  std::ofstream out(outPath);
  if (!out) {
    throw IoError(outPath + ": cannot open for writing");
  }
  write_csv(out, records);
  if (!out) {
    throw IoError(outPath + ": write failed");
  }
  std::cout << records.size() << " records written to " << outPath << "\n";
}

struct DecomposeArgs {
  std::string input;
  std::string format = "bin";
  Index rank = 0;
  Index colRank = 0;
  Index blocks = 0;
  double tol = 1e-12;
  int threads = 0;
  std::string out = "cur";
};

int cmd_decompose(const DecomposeArgs& args) {
  const int threads = resolve_threads(args.threads);
  const Index colRank = args.colRank > 0 ? args.colRank : args.rank;
  const MatrixFormat format = parse_format(args.format);

  const RowMatrixXd A = load_matrix(args.input, format);
  const Index blocks = args.blocks > 0
                           ? args.blocks
                           : std::min<Index>(threads, std::min(A.rows(), A.cols()));

  const auto start = std::chrono::steady_clock::now();
  const CurFactors<double> f = decompose(A, args.rank, colRank, blocks, args.tol, threads);
  const double selectionSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double relError = relative_error(A, f);

  store_matrix(f.C, args.out + ".C.bin", MatrixFormat::RawBinary);
  store_matrix(f.core, args.out + ".core.bin", MatrixFormat::RawBinary);
  store_matrix(f.R, args.out + ".R.bin", MatrixFormat::RawBinary);

  std::ofstream meta(args.out + ".meta.txt");
  if (!meta) {
    throw IoError(args.out + ".meta.txt: cannot open for writing");
  }
  meta.precision(std::numeric_limits<double>::max_digits10);
  meta << "input = " << args.input << "\n"
       << "rows = " << A.rows() << "\n"
       << "cols = " << A.cols() << "\n"
       << "rank-requested = " << args.rank << "\n"
       << "col-rank-requested = " << colRank << "\n"
       << "selected = " << f.rowIndices.size() << "\n"
       << "blocks = " << blocks << "\n"
       << "threads = " << threads << "\n"
       << "tol = " << args.tol << "\n"
       << "relative-error = " << relError << "\n"
       << "selection-seconds = " << selectionSeconds << "\n";
  meta << "I =";
  for (Index i : f.rowIndices.indices) {
    meta << " " << i;
  }
  meta << "\nJ =";
  for (Index j : f.colIndices.indices) {
    meta << " " << j;
  }
  meta << "\n";
  if (!meta) {
    throw IoError(args.out + ".meta.txt: write failed");
  }

  std::cout << "decomposed " << A.rows() << " x " << A.cols() << " matrix: " << f.rowIndices.size()
            << " rows, " << f.colIndices.size() << " cols selected, relative error " << relError
            << " (" << selectionSeconds << " s selection)\n"
            << "factors written to " << args.out << ".{C,core,R}.bin, metadata to " << args.out
            << ".meta.txt\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CUR low-rank matrix approximation via blockwise parallel cross selection"};
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* decCmd = app.add_subcommand("decompose", "Decompose a stored matrix into CUR factors");
  decCmd->add_option("--input", dec.input, "Input matrix file")->required();
  decCmd->add_option("--format", dec.format, "Input format: mm (MatrixMarket) or bin (raw binary)")
      ->check(CLI::IsMember({"mm", "bin"}));
  decCmd->add_option("--rank", dec.rank, "Number of rows to select")
      ->required()
      ->check(CLI::PositiveNumber);
  decCmd->add_option("--col-rank", dec.colRank, "Number of columns to select (default: --rank)")
      ->check(CLI::PositiveNumber);
  decCmd->add_option("--blocks", dec.blocks, "Block count (default: thread count)")
      ->check(CLI::PositiveNumber);
  decCmd->add_option("--tol", dec.tol, "Early-termination tolerance")->check(CLI::NonNegativeNumber);
  decCmd->add_option("--threads", dec.threads, "Worker threads (default: hardware)");
  decCmd->add_option("--out", dec.out, "Output prefix");

  HilbertExperimentConfig hil;
  std::string hilOut = "hilbert_error.csv";
  int hilThreadsFlag = 0;
  auto* hilCmd = app.add_subcommand("experiment-hilbert", "Error study on Hilbert matrices");
  hilCmd->add_option("--sizes", hil.sizes, "Matrix sizes (default: 256 512 1024)");
  hilCmd->add_option("--max-selected", hil.maxSelected, "Largest selected count (default: 20)")
      ->check(CLI::PositiveNumber);
  hilCmd->add_option("--blocks", hil.blocks, "Block count (default: thread count)");
  hilCmd->add_option("--tol", hil.tol, "Early-termination tolerance");
  hilCmd->add_option("--threads", hilThreadsFlag, "Worker threads (default: hardware)");
  hilCmd->add_option("--out", hilOut, "Output CSV path, - for stdout");

  LowrankExperimentConfig low;
  std::string lowOut = "lowrank_error.csv";
  int lowThreadsFlag = 0;
  auto* lowCmd =
      app.add_subcommand("experiment-lowrank", "Error study on synthetic low-rank matrices");
  lowCmd->add_option("--sizes", low.sizes, "Matrix sizes (default: 256 512 1024)");
  lowCmd->add_option("--ranks", low.ranks, "Generator ranks (default: 5 10 15 20)");
  lowCmd->add_option("--extra-selected", low.extraSelected,
                     "Selected counts run up to rank + this (default: 5)");
  lowCmd->add_option("--blocks", low.blocks, "Block count (default: thread count)");
  lowCmd->add_option("--tol", low.tol, "Early-termination tolerance");
  lowCmd->add_option("--threads", lowThreadsFlag, "Worker threads (default: hardware)");
  lowCmd->add_option("--out", lowOut, "Output CSV path, - for stdout");

  ScalingBenchConfig bench;
  std::string benchOut = "scaling.csv";
  bool paperScale = false;
  auto* benchCmd = app.add_subcommand("bench-scaling", "Wall-time scaling study");
  auto* benchSizeOpt =
      benchCmd->add_option("--size", bench.size, "Matrix size (default: 4096)")
          ->check(CLI::PositiveNumber);
  benchCmd->add_flag("--paper-scale", paperScale, "Use the 16384 x 16384 problem size");
  benchCmd->add_option("--rank", bench.rank, "Selected rows/columns (default: 32)")
      ->check(CLI::PositiveNumber);
  benchCmd->add_option("--blocks", bench.blocks, "Block count (default: per-run thread count)");
  benchCmd->add_option("--threads-list", bench.threadCounts,
                       "Thread counts to benchmark (default: 1 2 4 ... hardware)");
  benchCmd->add_option("--reps", bench.repetitions, "Repetitions per configuration (default: 3)")
      ->check(CLI::PositiveNumber);
  benchCmd->add_option("--tol", bench.tol, "Early-termination tolerance (default: 0, fixed count)");
  benchCmd->add_option("--out", benchOut, "Output CSV path, - for stdout");

  VerifyBatteryConfig verify;
  auto* verifyCmd =
      app.add_subcommand("verify", "Check the cross-approximation error bounds on a battery");
  verifyCmd->add_option("--seed", verify.seed, "Battery seed (default: 12345)");
  verifyCmd->add_option("--count", verify.randomCount, "Number of random instances (default: 100)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (decCmd->parsed()) {
      return cmd_decompose(dec);
    }
    if (hilCmd->parsed()) {
      hil.threads = resolve_threads(hilThreadsFlag);
      const auto records = run_hilbert_experiment(hil);
      write_records(records, hilOut);
      return kExitOk;
    }
    if (lowCmd->parsed()) {
      low.threads = resolve_threads(lowThreadsFlag);
      const auto records = run_lowrank_experiment(low);
      write_records(records, lowOut);
      return kExitOk;
    }
    if (benchCmd->parsed()) {
      if (paperScale && benchSizeOpt->count() == 0) {
        bench.size = 16384;
      }
      if (bench.threadCounts.empty()) {
        const int hw = WorkerPool::hardware_threads();
        for (int t = 1; t <= hw; t *= 2) {
          bench.threadCounts.push_back(t);
        }
      }
      if (std::getenv(kThreadsEnvVar)) {
        bench.threadCounts = {resolve_threads(0)};
      }
      const auto records = run_scaling_bench(bench);
      write_records(records, benchOut);
      double baseline = -1.0;
      for (const auto& rec : records) {
        if (rec.experiment == "scaling-aca-baseline") {
          baseline = rec.wallSeconds;
        }
      }
      for (int t : bench.threadCounts) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& rec : records) {
          if (rec.experiment == "scaling-blockwise" &&
              rec.threads == static_cast<std::uint64_t>(t)) {
            best = std::min(best, rec.wallSeconds);
          }
        }
        std::cout << "threads " << t << ": min " << best << " s over " << bench.repetitions
                  << " reps\n";
      }
      if (baseline >= 0) {
        std::cout << "sequential cross-approximation baseline: " << baseline << " s\n";
      }
      return kExitOk;
    }
    if (verifyCmd->parsed()) {
      const VerifyOutcome outcome = run_verify_battery(verify);
      print_verify_table(std::cout, outcome);
      return outcome.failures == 0 ? kExitOk : kExitVerifyFailure;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}
