#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "aiduco/trace_io.hpp"

namespace aiduco {

namespace {

constexpr std::size_t kColumns = 1 + 4 * 6 + 3;

void append_number(std::string& line, double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("write_csv: could not format a number");
  }
  line.append(buf.data(), end);
}

double parse_number(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::runtime_error("parse_csv: line " + std::to_string(line_no) + ": bad number '" +
                             std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string csv_header() {
  std::string h = "t";
  for (const char* name : {"v", "vhat", "mhat", "tau"}) {
    for (int i = 1; i <= 6; ++i) {
      h += ',';
      h += name;
      h += std::to_string(i);
    }
  }
  h += ",lyapunov,gram_min_eig,gram_max_eig";
  return h;
}

void write_csv(const SimTrace& trace, std::ostream& out) {
  out << csv_header() << '\n';
  std::string line;
  for (const TraceRow& row : trace.rows) {
    line.clear();
    append_number(line, row.t);
    for (const Vec6* block : {&row.v, &row.v_hat, &row.m_hat, &row.tau}) {
      for (int i = 0; i < 6; ++i) {
        line += ',';
        append_number(line, (*block)(i));
      }
    }
    line += ',';
    append_number(line, row.lyapunov);
    line += ',';
    if (row.gram_min_eig) {
      append_number(line, *row.gram_min_eig);
    }
    line += ',';
    if (row.gram_max_eig) {
      append_number(line, *row.gram_max_eig);
    }
    out << line << '\n';
  }
}

void export_csv(const SimTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("export_csv: cannot open " + path.string() + " for writing");
  }
  write_csv(trace, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("export_csv: write to " + path.string() + " failed");
  }
}

SimTrace parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("parse_csv: missing header");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != csv_header()) {
    throw std::runtime_error("parse_csv: unexpected header");
  }

  SimTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string_view> fields = split(line);
    if (fields.size() != kColumns) {
      throw std::runtime_error("parse_csv: line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kColumns) + " fields, got " +
                               std::to_string(fields.size()));
    }
    TraceRow row;
    std::size_t f = 0;
    row.t = parse_number(fields[f++], line_no);
    for (Vec6* block : {&row.v, &row.v_hat, &row.m_hat, &row.tau}) {
      for (int i = 0; i < 6; ++i) {
        (*block)(i) = parse_number(fields[f++], line_no);
      }
    }
    row.lyapunov = parse_number(fields[f++], line_no);
    if (!fields[f].empty()) {
      row.gram_min_eig = parse_number(fields[f], line_no);
    }
    ++f;
    if (!fields[f].empty()) {
      row.gram_max_eig = parse_number(fields[f], line_no);
    }
    trace.rows.push_back(row);
  }
  return trace;
}

SimTrace read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_csv: cannot open " + path.string());
  }
  return parse_csv(in);
}

SimTrace slice_trace(const SimTrace& trace, double from, double to, std::size_t every) {
  if (every == 0) {
    throw std::invalid_argument("slice_trace: every must be at least 1");
  }
  SimTrace out;
  std::size_t kept = 0;
  for (const TraceRow& row : trace.rows) {
    if (row.t < from || row.t > to) {
      continue;
    }
    if (kept++ % every == 0) {
      out.rows.push_back(row);
    }
  }
  return out;
}

}  // namespace aiduco
