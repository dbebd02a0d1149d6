#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "vprs/decision_table.hpp"
#include "vprs/error.hpp"
#include "vprs/ratio.hpp"

namespace vprs {

// IF antecedent THEN {(D_j, belief_j)} with rule weight theta.
struct Rule {
  std::vector<Level> antecedent;  // aligned with the model's reduct order
  std::vector<double> beliefs;    // indexed by decision code, sums to 1
  double theta = 0.0;             // support / |U|
  std::size_t support = 0;

  // Most believed decision; equal beliefs resolve to the higher (riskier) code.
  [[nodiscard]] Level decision() const {
    std::size_t best = 0;
    for (std::size_t j = 1; j < beliefs.size(); ++j) {
      if (beliefs[j] >= beliefs[best]) best = j;
    }
    return static_cast<Level>(best);
  }

  [[nodiscard]] double positive_mass() const {
    double m = 0.0;
    for (std::size_t j = 1; j < beliefs.size(); ++j) m += beliefs[j];
    return m;
  }
};

struct VprsModel {
  Ratio beta{1, 1};
  std::vector<std::string> reduct;  // attribute names, in table order
  std::vector<double> weights;      // one per reduct attribute, sums to 1
  std::vector<LevelRange> ranges;   // level range per reduct attribute
  std::vector<Rule> rules;          // sorted by antecedent
  std::string decision_name = "risk";
  std::vector<std::string> decision_labels;

  void validate() const {
    const std::size_t n = reduct.size();
    if (weights.size() != n) throw DomainError("model weights do not match the reduct");
    if (ranges.size() != n) throw DomainError("model ranges do not match the reduct");
    if (decision_labels.empty()) throw DomainError("model has no decision levels");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& r = rules[i];
      if (r.antecedent.size() != n) throw DomainError("rule " + std::to_string(i) + " does not cover the reduct");
      if (r.beliefs.size() != decision_labels.size()) throw DomainError("rule " + std::to_string(i) + " has wrong belief count");
      if (r.support == 0) throw DomainError("rule " + std::to_string(i) + " has zero support");
      if (i > 0 && !(rules[i - 1].antecedent < r.antecedent)) {
        throw DomainError("rule antecedents must be distinct and sorted");
      }
    }
    for (const auto& range : ranges) {
      if (range.min > range.max) throw DomainError("model range with min > max");
    }
  }
};

enum class MatchKind { exact, similarity };

inline std::string_view to_string(MatchKind m) { return m == MatchKind::exact ? "exact" : "similarity"; }

struct Prediction {
  Level decision = 0;
  double belief = 0.0;
  MatchKind matched = MatchKind::exact;
  double similarity_score = 1.0;
  double diagnostic_score = 0.0;  // theta * sum(w_i S_i) of the chosen rule
  double risk_score = 0.0;        // belief mass on positive decisions, for ROC sweeps
  std::size_t rule_index = 0;
};

// One rule per condition block of a table restricted to the reduct.
inline std::vector<Rule> extract_rules(const DecisionTable& dt_reduced) {
  if (dt_reduced.empty()) throw DomainError("cannot extract rules from an empty decision table");
  const auto attrs = dt_reduced.condition_attrs();
  const auto part = partition(dt_reduced, attrs);
  const auto k = dt_reduced.decision_level_count();
  const auto n = static_cast<double>(dt_reduced.size());

  std::vector<Rule> rules;
  rules.reserve(part.blocks.size());
  for (const auto& block : part.blocks) {
    Rule r;
    for (AttrIndex a : attrs) r.antecedent.push_back(dt_reduced.value(block.front(), a));
    std::vector<std::size_t> counts(k, 0);
    for (ObjectIndex o : block) ++counts[static_cast<std::size_t>(dt_reduced.decision(o))];
    r.beliefs.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      r.beliefs[j] = static_cast<double>(counts[j]) / static_cast<double>(block.size());
    }
    r.support = block.size();
    r.theta = static_cast<double>(block.size()) / n;
    rules.push_back(std::move(r));
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.antecedent < b.antecedent; });
  return rules;
}

// Per-attribute similarity 1 - |vi - vj| / (max - min), clamped to [0, 1].
// A constant attribute only distinguishes equal from unequal.
inline double similarity(Level vi, Level vj, LevelRange range) {
  if (range.max == range.min) return vi == vj ? 1.0 : 0.0;
  const double s = 1.0 - std::abs(static_cast<double>(vi - vj)) / static_cast<double>(range.max - range.min);
  return std::clamp(s, 0.0, 1.0);
}

inline double weighted_similarity(std::span<const Level> sample, std::span<const Level> other, const VprsModel& model) {
  if (sample.size() != model.reduct.size() || other.size() != model.reduct.size()) {
    throw DomainError("sample does not cover every reduct attribute");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) s += model.weights[i] * similarity(sample[i], other[i], model.ranges[i]);
  return s;
}

inline double weighted_similarity(std::span<const Level> sample, const Rule& rule, const VprsModel& model) {
  return weighted_similarity(sample, std::span<const Level>(rule.antecedent), model);
}

// Exact antecedent match first; otherwise the rule with the largest weighted
// similarity (ties: larger theta, then earlier rule).
inline Prediction classify(const VprsModel& model, std::span<const Level> sample) {
  if (model.rules.empty()) throw DomainError("model has no rules");
  if (sample.size() != model.reduct.size()) throw DomainError("sample does not cover every reduct attribute");

  const std::vector<Level> key(sample.begin(), sample.end());
  const auto it = std::lower_bound(model.rules.begin(), model.rules.end(), key,
                                   [](const Rule& r, const std::vector<Level>& k) { return r.antecedent < k; });
  Prediction p;
  if (it != model.rules.end() && it->antecedent == key) {
    p.rule_index = static_cast<std::size_t>(it - model.rules.begin());
    p.matched = MatchKind::exact;
    p.similarity_score = 1.0;
    p.risk_score = it->positive_mass();
  } else {
    std::size_t best = 0;
    double best_s = -1.0;
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
      const double s = weighted_similarity(sample, model.rules[i], model);
      if (s > best_s) {
        best_s = s;
        best = i;
        top.assign(1, i);
      } else if (s == best_s) {
        top.push_back(i);
        if (model.rules[i].theta > model.rules[best].theta) best = i;
      }
    }
    p.rule_index = best;
    p.matched = MatchKind::similarity;
    p.similarity_score = best_s;
    double mass = 0.0, weight = 0.0;
    for (auto i : top) {
      mass += model.rules[i].theta * model.rules[i].positive_mass();
      weight += model.rules[i].theta;
    }
    p.risk_score = mass / weight;
  }
  const Rule& rule = model.rules[p.rule_index];
  p.decision = rule.decision();
  p.belief = rule.beliefs[static_cast<std::size_t>(p.decision)];
  p.diagnostic_score = rule.theta * p.similarity_score;
  return p;
}

// Levels of one table object in the model's reduct order.
inline std::vector<Level> project_sample(const VprsModel& model, const DecisionTable& dt, ObjectIndex obj) {
  std::vector<Level> out;
  out.reserve(model.reduct.size());
  for (const auto& name : model.reduct) out.push_back(dt.value(obj, dt.attr_index(name)));
  return out;
}

// Names of reduct attributes missing from `dt`, empty when the schema fits.
inline std::vector<std::string> missing_attributes(const VprsModel& model, const DecisionTable& dt) {
  std::vector<std::string> missing;
  for (const auto& name : model.reduct) {
    bool found = false;
    for (AttrIndex a = 0; a < dt.condition_count(); ++a) found = found || dt.attr_name(a) == name;
    if (!found) missing.push_back(name);
  }
  return missing;
}

}  // namespace vprs
