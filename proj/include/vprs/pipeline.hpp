#pragma once

#include <optional>
#include <set>
#include <vector>

#include "vprs/approximation.hpp"
#include "vprs/entropy.hpp"
#include "vprs/reduct.hpp"
#include "vprs/rules.hpp"

namespace vprs {

struct TrainOptions {
  std::optional<Ratio> beta;  // nullopt: derive from the β bound of the full condition set
  std::size_t exhaustive_cap = kExhaustiveReductCap;
};

struct TrainResult {
  VprsModel model;
  Ratio raw_bound{1, 1};  // β bound of the full condition set, before clamping
  ReductResult reduct;
};

// The bound is always above 1/2 by construction; the clamp only guards the contract.
inline Ratio clamp_beta(Ratio bound) {
  if (bound > Ratio{1, 1}) return Ratio{1, 1};
  if (!(bound > Ratio{1, 2})) return Ratio{501, 1000};
  return bound.reduced();
}

inline TrainResult train(const DecisionTable& dt, const TrainOptions& options = {}) {
  if (dt.empty()) throw DomainError("training table is empty");
  std::set<Level> classes;
  for (ObjectIndex r = 0; r < dt.size(); ++r) classes.insert(dt.decision(r));
  if (classes.size() < 2) {
    throw DegenerateDataError("training data contains a single decision class; nothing to discriminate");
  }

  TrainResult out;
  const auto all = dt.condition_attrs();
  out.raw_bound = beta_bound(dt, all);
  const VprsParams params(options.beta ? *options.beta : clamp_beta(out.raw_bound));
  out.reduct = select_reduct(dt, params, options.exhaustive_cap);

  VprsModel& m = out.model;
  m.beta = params.beta();
  m.decision_name = dt.decision_name();
  m.decision_labels = dt.decision_labels();
  for (AttrIndex a : out.reduct.attrs) {
    m.reduct.push_back(dt.attr_name(a));
    m.ranges.push_back(dt.domain(a));
  }
  if (!out.reduct.attrs.empty()) m.weights = attribute_weights(dt, out.reduct.attrs).weights;
  m.rules = extract_rules(dt.restrict_to(out.reduct.attrs));
  m.validate();
  return out;
}

inline std::vector<Prediction> classify_table(const VprsModel& model, const DecisionTable& dt) {
  const auto missing = missing_attributes(model, dt);
  if (!missing.empty()) {
    std::string list;
    for (const auto& n : missing) list += (list.empty() ? "" : ", ") + n;
    throw DomainError("data lacks reduct attributes: " + list);
  }
  std::vector<AttrIndex> cols;
  for (const auto& name : model.reduct) cols.push_back(dt.attr_index(name));
  std::vector<Prediction> out;
  out.reserve(dt.size());
  std::vector<Level> sample(cols.size());
  for (ObjectIndex r = 0; r < dt.size(); ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) sample[i] = dt.value(r, cols[i]);
    out.push_back(classify(model, sample));
  }
  return out;
}

}  // namespace vprs
