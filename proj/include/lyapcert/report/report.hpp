#pragma once

// Machine-readable run reports. Interval endpoints are written twice: as
// directed-rounded decimals for reading and as hex floats for exact
// round-tripping; downstream comparisons should use the hex fields.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lyapcert/core/interval.hpp"

namespace lyapcert::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline json interval(const Interval& x) {
  return {{"lo", decimal::format_directed(x.lo(), false)},
          {"hi", decimal::format_directed(x.hi(), true)},
          {"lo_hex", decimal::hex(x.lo())},
          {"hi_hex", decimal::hex(x.hi())}};
}

// Interval from the hex fields of interval().
inline Interval parse_interval(const json& j) {
  const double lo = std::strtod(j.at("lo_hex").get<std::string>().c_str(), nullptr);
  const double hi = std::strtod(j.at("hi_hex").get<std::string>().c_str(), nullptr);
  return Interval(lo, hi);
}

// Finite doubles as numbers, infinities as null.
inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct RunReport {
  std::string command;
  std::string status = "certified";  // certified | verification_failed | positivity_failed | usage_error
  json params = json::object();
  json enclosures = json::object();
  json bounds = json::object();
  json oracle = json::array();
  json rows = json::array();
  json messages = json::array();
  double wall_time_s = 0.0;

  json to_json() const {
    return {{"schema_version", kSchemaVersion}, {"command", command},      {"code_version", kCodeVersion},
            {"status", status},                 {"params", params},        {"enclosures", enclosures},
            {"bounds", bounds},                 {"oracle", oracle},        {"rows", rows},
            {"messages", messages},             {"wall_time_s", wall_time_s}};
  }
};

// RFC 4180 CSV.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void write(std::ostream& os) const {
    line(os, header_);
    for (const auto& r : rows_) line(os, r);
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
  static void line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << quote(cells[i]);
    os << "\r\n";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string lo_str(const Interval& x) { return decimal::format_directed(x.lo(), false); }
inline std::string hi_str(const Interval& x) { return decimal::format_directed(x.hi(), true); }

}  // namespace lyapcert::report
