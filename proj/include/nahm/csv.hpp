#pragma once
// Minimal CSV emission and parsing. Floats use 15 significant digits; big
// integers are written in full decimal.

#include <gmpxx.h>

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nahm::csv {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string fmt(const mpz_class& x) { return x.get_str(10); }
inline std::string fmt(const std::string& s) { return s; }
inline std::string fmt(const char* s) { return s; }
inline std::string fmt(bool b) { return b ? "true" : "false"; }

template <class T>
  requires std::is_integral_v<T>
std::string fmt(T v) {
  return std::to_string(v);
}

/** Round a double to what fmt() would emit. */
inline double round15(double x) { return std::stod(fmt(x)); }

class Writer {
 public:
  Writer(std::ostream& os, const std::vector<std::string>& header) : os_(os) { row_strings(header); }

  template <class... Ts>
  void row(const Ts&... cols) {
    std::vector<std::string> v{fmt(cols)...};
    row_strings(v);
  }

  void row_strings(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os_ << ',';
      os_ << cols[i];
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

using Table = std::vector<std::vector<std::string>>;

/** Parse comma-separated rows; lines starting with '#' are skipped. Fields never contain commas. */
inline Table read(std::istream& is) {
  Table t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    t.push_back(std::move(row));
  }
  return t;
}

}  // namespace nahm::csv
