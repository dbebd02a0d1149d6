#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vprs/error.hpp"
#include "vprs/kinematics.hpp"
#include "vprs/quantizer.hpp"

namespace vprs::synth {

// Levels of the planted relevant attributes (c1, c4, c5, c6, c9).
using Pattern = std::array<Level, 5>;
inline constexpr std::array<std::size_t, 5> kRelevantAttrs{0, 3, 4, 5, 8};

inline std::string pattern_name(const Pattern& p) {
  return std::to_string(p[0]) + "." + std::to_string(p[1]) + "." + std::to_string(p[2]) + "." + std::to_string(p[3]) +
         "." + std::to_string(p[4]);
}

// Deceleration interval in hundredths of m/s^2, both ends inclusive.
struct DecelRange {
  int lo = 0;
  int hi = 0;
};

struct PlantedRule {
  RiskLevel band = RiskLevel::Low;
  DecelRange decel;
};

// Grid of each risk band; Low stops at the +1.8 m/s^2 top of the observed range.
inline DecelRange band_range(RiskLevel band) {
  switch (band) {
    case RiskLevel::High: return {-799, -500};
    case RiskLevel::Moderate: return {-499, -200};
    case RiskLevel::Low: return {-199, 180};
  }
  return {};
}

inline constexpr int kDecelTriggerCenti = -150;  // decel <= -1.5 m/s^2
inline constexpr double kTtcTrigger = 3.0;       // ttc < 3 s

inline bool is_near_crash(const RawEvent& e) {
  return e.decel <= kDecelTriggerCenti / 100.0 || (e.ttc_occupied && *e.ttc_occupied < kTtcTrigger);
}

inline std::vector<RawEvent> trigger_filter(const std::vector<RawEvent>& events) {
  std::vector<RawEvent> out;
  for (const auto& e : events) {
    if (is_near_crash(e)) out.push_back(e);
  }
  return out;
}

// Built-in dependency structure: a risk score over the relevant levels cut into bands.
inline RiskLevel default_band(const Pattern& p) {
  const int action = p[0];
  const double score = 2.0 * ((action >> 2) & 1) + 0.5 * (action & 1) - 1.5 * ((action >> 1) & 1) + (p[1] - 1) +
                       1.5 * (p[2] - 1) + 0.75 * (p[3] - 1) + (p[4] - 1);
  if (score < 3.5) return RiskLevel::Low;
  if (score < 6.5) return RiskLevel::Moderate;
  return RiskLevel::High;
}

struct SimConfig {
  std::size_t sample_count = 1000;
  bool exhaustive = false;  // one event per combination of all nine attribute levels
  std::uint64_t seed = 42;
  double label_noise = 0.0;
  std::array<std::vector<double>, kConditionCount> marginals{{
      {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125},
      {0.88, 0.12},
      {0.30, 0.45, 0.20, 0.05},
      {0.25, 0.25, 0.25, 0.25},
      {1.0 / 3, 1.0 / 3, 1.0 / 3},
      {1.0 / 3, 1.0 / 3, 1.0 / 3},
      {0.40, 0.30, 0.20, 0.10},
      {0.30, 0.40, 0.30},
      {0.50, 0.30, 0.20},
  }};
  std::map<Pattern, DecelRange> rule_overrides;
};

// TTC level 1 never satisfies the TTC trigger, so the deceleration alone must.
inline DecelRange feasible(DecelRange r, Level ttc_level) {
  if (ttc_level == 1) r.hi = std::min(r.hi, kDecelTriggerCenti);
  return r;
}

inline RiskLevel band_of(DecelRange r) {
  for (auto band : {RiskLevel::Low, RiskLevel::Moderate, RiskLevel::High}) {
    const auto b = band_range(band);
    if (r.lo >= b.lo && r.hi <= b.hi) return band;
  }
  throw ConfigError("range spans several risk bands");
}

inline PlantedRule planted_rule(const SimConfig& cfg, const Pattern& p) {
  if (const auto it = cfg.rule_overrides.find(p); it != cfg.rule_overrides.end()) {
    return {band_of(it->second), it->second};
  }
  const auto band = default_band(p);
  return {band, feasible(band_range(band), p[2])};
}

inline void validate(const SimConfig& cfg) {
  if (!(cfg.label_noise >= 0.0 && cfg.label_noise < 1.0)) throw ConfigError("label_noise must lie in [0, 1)");
  if (!cfg.exhaustive && cfg.sample_count == 0) throw ConfigError("sample_count must be positive");
  for (std::size_t a = 0; a < kConditionCount; ++a) {
    const auto& w = cfg.marginals[a];
    if (w.size() != kConditionDomains[a].width()) {
      throw ConfigError("marginal " + std::string(kConditionNames[a]) + " needs " +
                        std::to_string(kConditionDomains[a].width()) + " weights");
    }
    double total = 0.0;
    for (double x : w) {
      if (!(x >= 0.0)) throw ConfigError("marginal " + std::string(kConditionNames[a]) + " has a negative weight");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("marginal " + std::string(kConditionNames[a]) + " does not sum to 1");
  }
  for (const auto& [p, r] : cfg.rule_overrides) {
    const std::string name = "rule " + pattern_name(p);
    const std::array<std::size_t, 5> attrs = kRelevantAttrs;
    for (std::size_t i = 0; i < 5; ++i) {
      if (!kConditionDomains[attrs[i]].contains(p[i])) throw ConfigError(name + ": level outside the attribute domain");
    }
    if (r.lo > r.hi) throw ConfigError(name + ": empty deceleration range");
    try {
      (void)band_of(r);
    } catch (const ConfigError&) {
      throw ConfigError(name + ": deceleration range spans several risk bands");
    }
    if (p[2] == 1 && r.hi > kDecelTriggerCenti) {
      throw ConfigError(name + ": deceleration up to " + csv::format_fixed(r.hi / 100.0, 2) +
                        " m/s^2 cannot meet the near-crash trigger when TTC exceeds 5 s");
    }
  }
}

namespace detail {

// Portable draws from a 64-bit Mersenne Twister (no implementation-defined distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform_int(int lo, int hi) {
    const auto range = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<int>(x % range);
  }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t categorical(const std::vector<double>& weights) {
    const double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    for (std::size_t i = weights.size(); i-- > 0;) {
      if (weights[i] > 0.0) return i;
    }
    return 0;
  }

 private:
  std::mt19937_64 engine_;
};

inline double centi(int v) { return v / 100.0; }

inline RawEvent realize(const std::array<Level, kConditionCount>& lv, const SimConfig& cfg, Rng& rng) {
  const Pattern pattern{lv[0], lv[3], lv[4], lv[5], lv[8]};
  const auto rule = planted_rule(cfg, pattern);

  RawEvent e;
  e.acc_pedal = (lv[0] & 4) != 0;
  e.brake_switch = (lv[0] & 2) != 0;
  e.turn_indicator = (lv[0] & 1) != 0;
  e.gender = static_cast<Gender>(lv[1]);
  static constexpr std::array<std::array<int, 2>, 4> ages{{{18, 30}, {31, 45}, {46, 60}, {61, 75}}};
  e.age = rng.uniform_int(ages[lv[2] - 1][0], ages[lv[2] - 1][1]);
  static constexpr std::array<std::array<int, 2>, 4> speeds{{{0, 400}, {401, 500}, {501, 600}, {601, 1200}}};
  e.velocity = rng.uniform_int(speeds[lv[3] - 1][0], speeds[lv[3] - 1][1]) / 10.0;
  e.road_segment = static_cast<RoadSegment>(lv[6]);
  e.traffic_flow = static_cast<TrafficFlow>(lv[7]);
  static constexpr std::array<std::array<int, 2>, 3> frictions{{{70, 100}, {40, 69}, {0, 39}}};
  e.friction = centi(rng.uniform_int(frictions[lv[8] - 1][0], frictions[lv[8] - 1][1]));

  DecelRange range = rule.decel;
  if (cfg.label_noise > 0.0 && rng.uniform01() < cfg.label_noise) {
    const int shift = rng.uniform_int(1, 2);
    const auto other = static_cast<RiskLevel>((static_cast<int>(rule.band) + shift) % 3);
    range = feasible(band_range(other), lv[4]);
  }
  const int decel_centi = rng.uniform_int(range.lo, range.hi);
  e.decel = centi(decel_centi);

  static constexpr std::array<std::array<int, 2>, 3> ttcs{{{501, 1000}, {201, 500}, {1, 200}}};
  auto ttc_draw = [&](Level level, bool needs_trigger) -> std::optional<double> {
    int lo = ttcs[level - 1][0];
    int hi = ttcs[level - 1][1];
    if (level == 1 && rng.uniform01() < 0.25) return std::nullopt;
    if (needs_trigger && level == 2) hi = 299;  // (2, 3) s keeps the TTC trigger
    const int t = rng.uniform_int(lo, hi);
    // Closing speed and gap consistent with the drawn TTC.
    const double closing = rng.uniform_int(10, 150) / 10.0;
    const double gap = centi(t) * closing;
    const auto recomputed = kinematics::ttc(gap, closing);
    return std::round(*recomputed * 100.0) / 100.0;
  };
  e.ttc_occupied = ttc_draw(lv[4], decel_centi > kDecelTriggerCenti);
  e.ttc_neighbor = ttc_draw(lv[5], false);
  return e;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace detail

inline std::vector<RawEvent> generate(const SimConfig& cfg) {
  validate(cfg);
  detail::Rng rng(cfg.seed);
  std::vector<RawEvent> out;
  std::array<Level, kConditionCount> lv{};
  if (cfg.exhaustive) {
    std::size_t total = 1;
    for (const auto& d : kConditionDomains) total *= d.width();
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      // c1 varies slowest, c9 fastest.
      std::size_t rest = idx;
      for (std::size_t a = kConditionCount; a-- > 0;) {
        const auto w = kConditionDomains[a].width();
        lv[a] = kConditionDomains[a].min + static_cast<Level>(rest % w);
        rest /= w;
      }
      out.push_back(detail::realize(lv, cfg, rng));
    }
  } else {
    out.reserve(cfg.sample_count);
    for (std::size_t i = 0; i < cfg.sample_count; ++i) {
      for (std::size_t a = 0; a < kConditionCount; ++a) {
        lv[a] = kConditionDomains[a].min + static_cast<Level>(rng.categorical(cfg.marginals[a]));
      }
      out.push_back(detail::realize(lv, cfg, rng));
    }
  }
  return out;
}

// Key-value config with optional [marginals] and [rules] sections:
//
//   sample_count = 5000
//   exhaustive = false
//   seed = 42
//   label_noise = 0.05
//   [marginals]
//   c2 = 0.88, 0.12
//   [rules]
//   7.4.3.3.3 = high          # c1.c4.c5.c6.c9 = band name, or "lo hi" in m/s^2
inline SimConfig parse_sim_config(std::istream& in) {
  SimConfig cfg;
  std::string line, section;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) { throw ConfigError("config line " + std::to_string(line_no) + ": " + msg); };
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      fail("'" + s + "' is not a number");
    }
    if (used != s.size()) fail("'" + s + "' is not a number");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "marginals" && section != "rules") fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (section.empty()) {
      if (key == "sample_count") {
        const double v = number(value);
        if (v < 1 || v != std::floor(v)) fail("sample_count must be a positive integer");
        cfg.sample_count = static_cast<std::size_t>(v);
      } else if (key == "exhaustive") {
        if (value != "true" && value != "false") fail("exhaustive must be true or false");
        cfg.exhaustive = value == "true";
      } else if (key == "seed") {
        try {
          std::size_t used = 0;
          cfg.seed = std::stoull(value, &used);
          if (used != value.size()) fail("seed must be an unsigned integer");
        } catch (const std::logic_error&) {
          fail("seed must be an unsigned integer");
        }
      } else if (key == "label_noise") {
        cfg.label_noise = number(value);
      } else {
        fail("unknown key '" + key + "'");
      }
    } else if (section == "marginals") {
      std::size_t attr = kConditionCount;
      for (std::size_t a = 0; a < kConditionCount; ++a) {
        if (key == kConditionNames[a]) attr = a;
      }
      if (attr == kConditionCount) fail("unknown attribute '" + key + "'");
      std::vector<double> weights;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) weights.push_back(number(detail::trim(item)));
      cfg.marginals[attr] = std::move(weights);
    } else {
      Pattern p{};
      std::stringstream ss(key);
      std::string item;
      std::size_t i = 0;
      while (std::getline(ss, item, '.')) {
        if (i == 5) fail("rule pattern needs five levels (c1.c4.c5.c6.c9)");
        p[i++] = static_cast<Level>(number(item));
      }
      if (i != 5) fail("rule pattern needs five levels (c1.c4.c5.c6.c9)");
      DecelRange r;
      if (value == "low" || value == "moderate" || value == "high") {
        const auto band = value == "low" ? RiskLevel::Low : value == "moderate" ? RiskLevel::Moderate : RiskLevel::High;
        r = band_range(band);
      } else {
        std::stringstream vs(value);
        std::string lo, hi, extra;
        vs >> lo >> hi;
        if (lo.empty() || hi.empty() || (vs >> extra)) fail("rule value must be a band name or 'lo hi'");
        r = {static_cast<int>(std::lround(number(lo) * 100.0)), static_cast<int>(std::lround(number(hi) * 100.0))};
      }
      cfg.rule_overrides[p] = r;
    }
  }
  return cfg;
}

inline SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_sim_config(in);
}

}  // namespace vprs::synth
