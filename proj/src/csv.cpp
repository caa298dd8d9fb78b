#include "csv.hpp"

#include "blockcur/types.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace blockcur {

namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_count(const std::string& s, std::size_t lineNo) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw IoError("csv: line " + std::to_string(lineNo) + ": bad count field \"" + s + "\"");
  }
  if (pos != s.size()) {
    throw IoError("csv: line " + std::to_string(lineNo) + ": bad count field \"" + s + "\"");
  }
  return v;
}

double parse_real(const std::string& s, std::size_t lineNo) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    throw IoError("csv: line " + std::to_string(lineNo) + ": bad real field \"" + s + "\"");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.experiment << ',' << r.matrixFamily << ',' << r.n << ',' << r.rank << ','
        << r.selected << ',' << r.blocks << ',' << r.threads << ',' << format_real(r.relError)
        << ',' << format_real(r.wallSeconds) << ',' << r.seed << "\n";
  }
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("csv: empty input, expected header row");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kCsvHeader) {
    throw IoError("csv: line 1: header mismatch, expected \"" + std::string(kCsvHeader) + "\"");
  }
  std::vector<ExperimentRecord> records;
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 10) {
      throw IoError("csv: line " + std::to_string(lineNo) + ": expected 10 fields, got " +
                    std::to_string(fields.size()));
    }
    ExperimentRecord r;
    r.experiment = fields[0];
    r.matrixFamily = fields[1];
    r.n = parse_count(fields[2], lineNo);
    r.rank = parse_count(fields[3], lineNo);
    r.selected = parse_count(fields[4], lineNo);
    r.blocks = parse_count(fields[5], lineNo);
    r.threads = parse_count(fields[6], lineNo);
    r.relError = parse_real(fields[7], lineNo);
    r.wallSeconds = parse_real(fields[8], lineNo);
    r.seed = parse_count(fields[9], lineNo);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace blockcur
