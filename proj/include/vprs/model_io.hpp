#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "vprs/csv.hpp"
#include "vprs/error.hpp"
#include "vprs/rules.hpp"

namespace vprs {

namespace detail {

// Round to 12 significant digits so the shortest round-trip printout is stable.
inline double round12(double v) { return std::strtod(csv::format_g(v, 12).c_str(), nullptr); }

}  // namespace detail

// Field order: beta, reduct, weights, ranges, rules, decision.
inline nlohmann::ordered_json model_to_json(const VprsModel& m) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["beta"] = detail::round12(m.beta.value());
  j["reduct"] = m.reduct;
  ordered_json weights = ordered_json::array();
  for (double w : m.weights) weights.push_back(detail::round12(w));
  j["weights"] = weights;
  ordered_json ranges = ordered_json::object();
  for (std::size_t i = 0; i < m.reduct.size(); ++i) ranges[m.reduct[i]] = {m.ranges[i].min, m.ranges[i].max};
  j["ranges"] = ranges;
  ordered_json rules = ordered_json::array();
  for (const auto& r : m.rules) {
    ordered_json rule;
    ordered_json ante = ordered_json::object();
    for (std::size_t i = 0; i < m.reduct.size(); ++i) ante[m.reduct[i]] = r.antecedent[i];
    rule["antecedent"] = ante;
    ordered_json beliefs = ordered_json::object();
    for (std::size_t k = 0; k < r.beliefs.size(); ++k) beliefs[m.decision_labels[k]] = detail::round12(r.beliefs[k]);
    rule["beliefs"] = beliefs;
    rule["theta"] = detail::round12(r.theta);
    rule["support"] = r.support;
    rules.push_back(rule);
  }
  j["rules"] = rules;
  j["decision"] = {{"name", m.decision_name}, {"labels", m.decision_labels}};
  return j;
}

inline std::string model_to_string(const VprsModel& m) { return model_to_json(m).dump(2) + "\n"; }

inline VprsModel model_from_json(const nlohmann::ordered_json& j) {
  try {
    VprsModel m;
    const double beta = j.at("beta").get<double>();
    if (!(beta > 0.5 && beta <= 1.0)) throw ModelFormatError("beta outside (0.5, 1]");
    m.beta = Ratio::approximate(beta);
    m.reduct = j.at("reduct").get<std::vector<std::string>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    const auto& ranges = j.at("ranges");
    for (const auto& name : m.reduct) {
      const auto& r = ranges.at(name);
      if (!r.is_array() || r.size() != 2) throw ModelFormatError("range of '" + name + "' must be [min, max]");
      m.ranges.push_back({r[0].get<Level>(), r[1].get<Level>()});
    }
    const auto& dec = j.at("decision");
    m.decision_name = dec.at("name").get<std::string>();
    m.decision_labels = dec.at("labels").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rules")) {
      Rule r;
      const auto& ante = jr.at("antecedent");
      for (const auto& name : m.reduct) r.antecedent.push_back(ante.at(name).get<Level>());
      const auto& beliefs = jr.at("beliefs");
      for (const auto& label : m.decision_labels) r.beliefs.push_back(beliefs.at(label).get<double>());
      r.theta = jr.at("theta").get<double>();
      r.support = jr.at("support").get<std::size_t>();
      m.rules.push_back(std::move(r));
    }
    m.validate();
    return m;
  } catch (const ModelFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw ModelFormatError(std::string("malformed model: ") + e.what());
  }
}

inline VprsModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot open model file " + path.string());
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ModelFormatError("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

inline void save_model(const std::filesystem::path& path, const VprsModel& m) {
  csv::write_atomic(path, model_to_string(m));
}

}  // namespace vprs
