#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vprs/csv.hpp"
#include "vprs/decision_table.hpp"
#include "vprs/error.hpp"

namespace vprs {

enum class RiskLevel : Level { Low = 0, Moderate = 1, High = 2 };

inline constexpr std::array<std::string_view, 3> kRiskNames{"Low", "Moderate", "High"};

inline std::string_view to_string(RiskLevel r) { return kRiskNames[static_cast<std::size_t>(r)]; }

inline std::optional<RiskLevel> parse_risk(std::string_view s) {
  for (std::size_t i = 0; i < kRiskNames.size(); ++i) {
    if (s == kRiskNames[i]) return static_cast<RiskLevel>(i);
  }
  return std::nullopt;
}

// Positive class of the binary evaluation: Moderate and High.
inline bool is_positive(Level decision_code) { return decision_code > 0; }

enum class Gender : Level { male = 1, female = 2 };
enum class RoadSegment : Level { corridor = 1, intersection = 2, viaduct = 3, tunnel = 4 };
enum class TrafficFlow : Level { congested = 1, moderate = 2, free = 3 };

// One near-crash observation in sensor units.
struct RawEvent {
  Gender gender = Gender::male;
  int age = 37;
  bool acc_pedal = false;
  bool brake_switch = false;
  bool turn_indicator = false;
  std::optional<double> ttc_occupied;  // s; absent = no obstacle ahead
  std::optional<double> ttc_neighbor;  // s
  double velocity = 0.0;               // km/h
  RoadSegment road_segment = RoadSegment::corridor;
  TrafficFlow traffic_flow = TrafficFlow::moderate;
  double friction = 0.8;
  double decel = 0.0;  // m/s^2, negative when braking
};

inline constexpr std::size_t kConditionCount = 9;
inline constexpr std::array<std::string_view, kConditionCount> kConditionNames{"c1", "c2", "c3", "c4", "c5",
                                                                               "c6", "c7", "c8", "c9"};
// c1 driver action (acc*4 + brake*2 + turn), c2 gender, c3 age group, c4 velocity,
// c5 TTC occupied lane, c6 TTC neighbor lane, c7 road segment, c8 traffic flow, c9 slipperiness.
inline constexpr std::array<LevelRange, kConditionCount> kConditionDomains{
    LevelRange{0, 7}, LevelRange{1, 2}, LevelRange{1, 4}, LevelRange{1, 4}, LevelRange{1, 3},
    LevelRange{1, 3}, LevelRange{1, 4}, LevelRange{1, 3}, LevelRange{1, 3}};

struct QuantizedRecord {
  std::array<Level, kConditionCount> c{};
  RiskLevel risk = RiskLevel::Low;
};

// Deceleration grading; values beyond (-8, 0] fall into the end bands.
inline RiskLevel risk_label(double decel) {
  if (!std::isfinite(decel)) throw DomainError("decel must be finite");
  if (decel <= -5.0) return RiskLevel::High;
  if (decel <= -2.0) return RiskLevel::Moderate;
  return RiskLevel::Low;
}

inline Level ttc_level(const std::optional<double>& ttc, std::string_view field) {
  if (!ttc) return 1;
  if (!std::isfinite(*ttc) || *ttc <= 0.0) throw DomainError(std::string(field) + " must be positive when present");
  if (*ttc > 5.0) return 1;
  if (*ttc > 2.0) return 2;
  return 3;
}

inline Level velocity_level(double kmh) {
  if (!std::isfinite(kmh) || kmh < 0.0) throw DomainError("velocity must be finite and non-negative");
  if (kmh <= 40.0) return 1;
  if (kmh <= 50.0) return 2;
  if (kmh <= 60.0) return 3;
  return 4;
}

inline Level age_group(int age) {
  if (age < 18) throw DomainError("age " + std::to_string(age) + " is below the youngest driver group (18)");
  if (age <= 30) return 1;
  if (age <= 45) return 2;
  if (age <= 60) return 3;
  return 4;
}

inline Level slipperiness_level(double friction) {
  if (!std::isfinite(friction) || friction < 0.0 || friction > 1.0) throw DomainError("friction must lie in [0, 1]");
  if (friction >= 0.7) return 1;
  if (friction >= 0.4) return 2;
  return 3;
}

inline Level driver_action_code(bool acc, bool brake, bool turn) {
  return (acc ? 4 : 0) + (brake ? 2 : 0) + (turn ? 1 : 0);
}

inline QuantizedRecord quantize_event(const RawEvent& e) {
  QuantizedRecord q;
  q.c[0] = driver_action_code(e.acc_pedal, e.brake_switch, e.turn_indicator);
  const auto g = static_cast<Level>(e.gender);
  if (g < 1 || g > 2) throw DomainError("gender out of range");
  q.c[1] = g;
  q.c[2] = age_group(e.age);
  q.c[3] = velocity_level(e.velocity);
  q.c[4] = ttc_level(e.ttc_occupied, "ttc_occupied");
  q.c[5] = ttc_level(e.ttc_neighbor, "ttc_neighbor");
  const auto seg = static_cast<Level>(e.road_segment);
  if (seg < 1 || seg > 4) throw DomainError("road_segment out of range");
  q.c[6] = seg;
  const auto flow = static_cast<Level>(e.traffic_flow);
  if (flow < 1 || flow > 3) throw DomainError("traffic_flow out of range");
  q.c[7] = flow;
  q.c[8] = slipperiness_level(e.friction);
  q.risk = risk_label(e.decel);
  return q;
}

inline DecisionTable to_decision_table(const std::vector<QuantizedRecord>& records, std::vector<std::string> ids = {}) {
  std::vector<std::vector<Level>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    std::vector<Level> row(r.c.begin(), r.c.end());
    row.push_back(static_cast<Level>(r.risk));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> names(kConditionNames.begin(), kConditionNames.end());
  std::vector<std::string> labels(kRiskNames.begin(), kRiskNames.end());
  return DecisionTable(std::move(names), "risk", rows, std::move(ids),
                       std::vector<LevelRange>(kConditionDomains.begin(), kConditionDomains.end()), std::move(labels));
}

// ---- CSV formats -----------------------------------------------------------

inline constexpr std::array<std::string_view, 12> kRawHeader{
    "gender",   "age",          "acc_pedal",    "brake_switch", "turn_indicator", "ttc_occupied",
    "ttc_neighbor", "velocity", "road_segment", "traffic_flow", "friction",       "decel"};

namespace detail {

inline double parse_double(const std::string& s, std::string_view field) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw DomainError("field " + std::string(field) + ": '" + s + "' is not a number");
  return v;
}

inline int parse_int(const std::string& s, std::string_view field) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw DomainError("field " + std::string(field) + ": '" + s + "' is not an integer");
  return v;
}

inline bool parse_bool(const std::string& s, std::string_view field) {
  if (s == "0") return false;
  if (s == "1") return true;
  throw DomainError("field " + std::string(field) + ": expected 0 or 1, got '" + s + "'");
}

inline std::string format_opt(const std::optional<double>& v) { return v ? csv::format_fixed(*v, 2) : std::string{}; }

}  // namespace detail

inline std::string_view to_string(Gender g) { return g == Gender::male ? "male" : "female"; }
inline std::string_view to_string(RoadSegment s) {
  static constexpr std::array<std::string_view, 4> names{"corridor", "intersection", "viaduct", "tunnel"};
  return names[static_cast<std::size_t>(s) - 1];
}
inline std::string_view to_string(TrafficFlow f) {
  static constexpr std::array<std::string_view, 3> names{"congested", "moderate", "free"};
  return names[static_cast<std::size_t>(f) - 1];
}

inline bool is_raw_header(const std::vector<std::string>& header) {
  if (header.size() != kRawHeader.size()) return false;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != kRawHeader[i]) return false;
  }
  return true;
}

inline RawEvent parse_raw_row(const std::vector<std::string>& f) {
  RawEvent e;
  if (f[0] == "male") e.gender = Gender::male;
  else if (f[0] == "female") e.gender = Gender::female;
  else throw DomainError("field gender: unknown value '" + f[0] + "'");
  e.age = detail::parse_int(f[1], "age");
  if (e.age < 16) throw DomainError("field age: must be at least 16");
  e.acc_pedal = detail::parse_bool(f[2], "acc_pedal");
  e.brake_switch = detail::parse_bool(f[3], "brake_switch");
  e.turn_indicator = detail::parse_bool(f[4], "turn_indicator");
  if (!f[5].empty()) e.ttc_occupied = detail::parse_double(f[5], "ttc_occupied");
  if (!f[6].empty()) e.ttc_neighbor = detail::parse_double(f[6], "ttc_neighbor");
  e.velocity = detail::parse_double(f[7], "velocity");
  const std::array<std::string_view, 4> segs{"corridor", "intersection", "viaduct", "tunnel"};
  const std::array<std::string_view, 3> flows{"congested", "moderate", "free"};
  bool ok = false;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (f[8] == segs[i]) {
      e.road_segment = static_cast<RoadSegment>(i + 1);
      ok = true;
    }
  }
  if (!ok) throw DomainError("field road_segment: unknown value '" + f[8] + "'");
  ok = false;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (f[9] == flows[i]) {
      e.traffic_flow = static_cast<TrafficFlow>(i + 1);
      ok = true;
    }
  }
  if (!ok) throw DomainError("field traffic_flow: unknown value '" + f[9] + "'");
  e.friction = detail::parse_double(f[10], "friction");
  e.decel = detail::parse_double(f[11], "decel");
  return e;
}

inline std::vector<RawEvent> parse_raw_events(const csv::Table& t) {
  if (!is_raw_header(t.header)) throw DomainError("raw event CSV header mismatch");
  std::vector<RawEvent> out;
  out.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    try {
      out.push_back(parse_raw_row(t.rows[i]));
    } catch (const DomainError& e) {
      throw DomainError("row " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

inline std::string format_raw_events(const std::vector<RawEvent>& events) {
  std::string out;
  for (std::size_t i = 0; i < kRawHeader.size(); ++i) {
    if (i) out += ',';
    out += kRawHeader[i];
  }
  out += '\n';
  for (const auto& e : events) {
    out += to_string(e.gender);
    out += ',' + std::to_string(e.age);
    out += ',' + std::to_string(e.acc_pedal ? 1 : 0);
    out += ',' + std::to_string(e.brake_switch ? 1 : 0);
    out += ',' + std::to_string(e.turn_indicator ? 1 : 0);
    out += ',' + detail::format_opt(e.ttc_occupied);
    out += ',' + detail::format_opt(e.ttc_neighbor);
    out += ',' + csv::format_fixed(e.velocity, 1);
    out += ',';
    out += to_string(e.road_segment);
    out += ',';
    out += to_string(e.traffic_flow);
    out += ',' + csv::format_fixed(e.friction, 2);
    out += ',' + csv::format_fixed(e.decel, 2);
    out += '\n';
  }
  return out;
}

inline std::string format_quantized(const std::vector<QuantizedRecord>& records) {
  std::string out = "c1,c2,c3,c4,c5,c6,c7,c8,c9,risk\n";
  for (const auto& r : records) {
    for (Level v : r.c) out += std::to_string(v) + ',';
    out += to_string(r.risk);
    out += '\n';
  }
  return out;
}

// Decision table from any CSV of integer-coded attributes. An optional leading
// "id" column names the objects; the decision is the column `decision_name`
// (default: "risk" when present, otherwise the last column). Risk names
// (Low/Moderate/High) are accepted in the decision column, and the built-in
// domains are used when the conditions are exactly c1..c9.
inline DecisionTable table_from_csv(const csv::Table& t, std::string decision_name = {}) {
  if (t.header.empty()) throw DomainError("CSV has no header");
  std::vector<std::string> ids;
  std::size_t first = 0;
  if (t.header.front() == "id") first = 1;
  if (decision_name.empty()) decision_name = t.column("risk") >= 0 ? "risk" : t.header.back();
  const auto dec_col = t.column(decision_name);
  if (dec_col < 0) throw DomainError("decision column '" + decision_name + "' not found");
  if (static_cast<std::size_t>(dec_col) < first) throw DomainError("decision column cannot be the id column");

  std::vector<std::string> names;
  std::vector<std::size_t> cols;
  for (std::size_t c = first; c < t.header.size(); ++c) {
    if (static_cast<std::ptrdiff_t>(c) == dec_col) continue;
    names.push_back(t.header[c]);
    cols.push_back(c);
  }

  bool risk_coded = !t.rows.empty();
  for (const auto& row : t.rows) {
    if (!parse_risk(row[static_cast<std::size_t>(dec_col)])) {
      risk_coded = false;
      break;
    }
  }

  std::vector<std::vector<Level>> rows;
  rows.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (first) ids.push_back(row[0]);
    std::vector<Level> values;
    values.reserve(cols.size() + 1);
    for (std::size_t c : cols) values.push_back(detail::parse_int(row[c], t.header[c]));
    const auto& dv = row[static_cast<std::size_t>(dec_col)];
    values.push_back(risk_coded ? static_cast<Level>(*parse_risk(dv)) : detail::parse_int(dv, decision_name));
    rows.push_back(std::move(values));
  }

  std::vector<LevelRange> domains;
  const bool table2 = names.size() == kConditionCount &&
                      std::equal(names.begin(), names.end(), kConditionNames.begin(), kConditionNames.end());
  if (table2) domains.assign(kConditionDomains.begin(), kConditionDomains.end());
  std::vector<std::string> labels;
  if (risk_coded || (table2 && decision_name == "risk")) labels.assign(kRiskNames.begin(), kRiskNames.end());
  return DecisionTable(std::move(names), decision_name, rows, std::move(ids), std::move(domains), std::move(labels));
}

}  // namespace vprs
