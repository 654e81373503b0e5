#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "owpt/sweep.hpp"

namespace owpt {

/// Column names in output order. Currents are magnitude [A] / phase [deg] pairs.
const std::vector<std::string>& csv_columns();
std::string csv_header();

/// One header row then one row per record, numbers as %.16e.
void write_csv(std::ostream& out, std::span<const SweepRecord> records);

/// Writes to `path`. Throws InvalidConfig on empty input (nothing is created) and
/// IoError when the file cannot be written.
void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path);

/// Parsed data row; the inverse of write_csv up to the phasor polar round trip.
struct CsvRow {
  std::vector<double> values;  ///< every column except `error`
  std::string error;
};

/// Reads a file produced by write_csv. Throws IoError on a header mismatch or a
/// malformed row.
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace owpt
