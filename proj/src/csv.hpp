#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace blockcur {

/// One row of an error or timing experiment: one record per configuration and
/// repetition, never aggregated. rank is the generator rank (0 when the
/// matrix family has none).
struct ExperimentRecord {
  std::string experiment;
  std::string matrixFamily;
  std::uint64_t n = 0;
  std::uint64_t rank = 0;
  std::uint64_t selected = 0;
  std::uint64_t blocks = 0;
  std::uint64_t threads = 0;
  double relError = 0.0;
  double wallSeconds = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "experiment,matrixFamily,n,rank,selected,blocks,threads,relError,wallSeconds,seed";

/// Header row plus one line per record; reals carry 17 significant digits so
/// doubles round-trip exactly through the text.
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Inverse of write_csv; throws IoError on a schema or parse mismatch, with
/// the offending line in the message.
std::vector<ExperimentRecord> read_csv(std::istream& in);

}  // namespace blockcur
