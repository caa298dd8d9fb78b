#pragma once

#include "blockcur/types.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace blockcur {

enum class MatrixFormat { MatrixMarket, RawBinary };

static_assert(std::endian::native == std::endian::little,
              "raw-binary matrix format assumes a little-endian host");

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

inline void check_finite(const RowMatrixXd& A, const std::string& path) {
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      if (!std::isfinite(A(i, j))) {
        throw IoError(path + ": non-finite entry at row " + std::to_string(i) + ", col " +
                      std::to_string(j));
      }
    }
  }
}

inline RowMatrixXd load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(path + ": cannot open for reading");
  }
  std::string banner;
  if (!std::getline(in, banner)) {
    throw IoError(path + ": empty file, expected MatrixMarket banner");
  }
  std::istringstream bs(banner);
  std::string tag, object, fmt, field, symmetry;
  bs >> tag >> object >> fmt >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(fmt) != "array" ||
      lower(field) != "real" || lower(symmetry) != "general") {
    throw IoError(path + ": line 1: unsupported MatrixMarket banner \"" + banner +
                  "\" (expected: %%MatrixMarket matrix array real general)");
  }
  std::string line;
  std::size_t lineNo = 1;
  // Skip comment lines between banner and size line.
  do {
    if (!std::getline(in, line)) {
      throw IoError(path + ": unexpected end of file before size line");
    }
    ++lineNo;
  } while (!line.empty() && line[0] == '%');

  std::istringstream ss(line);
  long long rows = 0, cols = 0;
  if (!(ss >> rows >> cols) || rows < 1 || cols < 1) {
    throw IoError(path + ": line " + std::to_string(lineNo) + ": bad size line \"" + line + "\"");
  }
  RowMatrixXd A(rows, cols);
  // Array format lists entries column by column.
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      double v;
      if (!(in >> v)) {
        throw IoError(path + ": truncated data, expected " +
                      std::to_string(A.rows() * A.cols()) + " entries, failed at entry " +
                      std::to_string(j * A.rows() + i));
      }
      A(i, j) = v;
    }
  }
  check_finite(A, path);
  return A;
}

inline void store_matrix_market(const RowMatrixXd& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  out << "%%MatrixMarket matrix array real general\n";
  out << A.rows() << " " << A.cols() << "\n";
  out.precision(std::numeric_limits<double>::max_digits10);
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      out << A(i, j) << "\n";
    }
  }
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

inline RowMatrixXd load_raw_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path + ": cannot open for reading");
  }
  std::uint64_t dims[2];
  if (!in.read(reinterpret_cast<char*>(dims), sizeof(dims))) {
    throw IoError(path + ": truncated header, expected 16 bytes");
  }
  constexpr std::uint64_t kMaxDim = std::uint64_t(1) << 31;
  if (dims[0] < 1 || dims[1] < 1 || dims[0] > kMaxDim || dims[1] > kMaxDim) {
    throw IoError(path + ": implausible dimensions " + std::to_string(dims[0]) + " x " +
                  std::to_string(dims[1]));
  }
  RowMatrixXd A(static_cast<Index>(dims[0]), static_cast<Index>(dims[1]));
  const std::streamsize bytes = static_cast<std::streamsize>(A.size()) *
                                static_cast<std::streamsize>(sizeof(double));
  if (!in.read(reinterpret_cast<char*>(A.data()), bytes)) {
    throw IoError(path + ": truncated payload, expected " + std::to_string(A.size()) +
                  " real-64 values, got " + std::to_string(in.gcount() / 8));
  }
  check_finite(A, path);
  return A;
}

inline void store_raw_binary(const RowMatrixXd& A, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path + ": cannot open for writing");
  }
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(A.rows()),
                                 static_cast<std::uint64_t>(A.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  out.write(reinterpret_cast<const char*>(A.data()),
            static_cast<std::streamsize>(A.size()) * static_cast<std::streamsize>(sizeof(double)));
  if (!out) {
    throw IoError(path + ": write failed");
  }
}

}  // namespace detail

/// Reads a dense matrix. MatrixMarket array files round-trip to within text
/// precision; raw-binary files (16-byte header of two little-endian uint64
/// dims, then row-major real-64 payload) round-trip bit-exactly. Non-finite
/// entries and truncated files are rejected.
inline RowMatrixXd load_matrix(const std::string& path, MatrixFormat format) {
  return format == MatrixFormat::MatrixMarket ? detail::load_matrix_market(path)
                                              : detail::load_raw_binary(path);
}

inline void store_matrix(const RowMatrixXd& A, const std::string& path, MatrixFormat format) {
  if (format == MatrixFormat::MatrixMarket) {
    detail::store_matrix_market(A, path);
  } else {
    detail::store_raw_binary(A, path);
  }
}

}  // namespace blockcur
