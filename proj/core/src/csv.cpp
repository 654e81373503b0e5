#include "owpt/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "owpt/error.hpp"
#include "owpt/units.hpp"

namespace owpt {

namespace {

std::vector<std::string> build_columns() {
  std::vector<std::string> c{"angle_deg", "M1_uH", "M2_uH", "M3_uH", "gamma1", "gamma2",
                             "gamma3",    "s1",    "s2",    "s3"};
  auto phasor = [&c](const std::string& name) {
    c.push_back(name + "_A");
    c.push_back(name + "_deg");
  };
  for (int i = 1; i <= 3; ++i) phasor("ITx" + std::to_string(i));
  for (int i = 1; i <= 3; ++i) phasor("IRp" + std::to_string(i));
  phasor("IRx");
  for (const char* tail : {"Msum_uH", "Pout_W", "eta", "ctrl_iters", "error"}) c.emplace_back(tail);
  return c;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

void put_phasor(std::ostream& out, Complex i) {
  out << ',' << num(std::abs(i)) << ',' << num(rad_to_deg(std::arg(i)));
}

// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted_field = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted_field) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted_field = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted_field = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = build_columns();
  return columns;
}

std::string csv_header() {
  std::string h;
  for (const auto& c : csv_columns()) h += (h.empty() ? "" : ",") + c;
  return h;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << csv_header() << '\n';
  for (const auto& r : records) {
    out << num(r.angle_deg);
    for (double m : r.m) out << ',' << num(m * 1e6);
    for (double g : r.gamma) out << ',' << num(g);
    for (int s : r.signs.signs()) out << ',' << s;
    for (const auto& i : r.solution.i_tx) put_phasor(out, i);
    for (const auto& i : r.solution.i_rp) put_phasor(out, i);
    put_phasor(out, r.solution.i_rx);
    out << ',' << num(r.m_sum_abs * 1e6) << ',' << num(r.p_out) << ',' << num(r.eta) << ','
        << r.controller_iterations << ',' << quoted(r.error) << '\n';
  }
}

void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path) {
  if (records.empty()) throw InvalidConfig("no records to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(out, records);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw IoError("unexpected CSV header");
  const std::size_t width = csv_columns().size();
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != width) {
      throw IoError("CSV row " + std::to_string(rows.size() + 1) + " has " +
                    std::to_string(fields.size()) + " fields");
    }
    CsvRow row;
    row.error = fields.back();
    fields.pop_back();
    for (const auto& f : fields) {
      try {
        std::size_t used = 0;
        row.values.push_back(std::stod(f, &used));
        if (used != f.size()) throw std::invalid_argument(f);
      } catch (const std::exception&) {
        throw IoError("CSV field '" + f + "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace owpt
