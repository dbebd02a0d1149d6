#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "vprs/decision_table.hpp"

namespace vprs {

// Significance values below this (in bits) are raised to it before ratios are formed.
inline constexpr double kSignificanceFloor = 1.0 / 1048576.0;  // 2^-20

namespace detail {

inline double plogp(std::size_t part, std::size_t whole) {
  if (part == 0) return 0.0;
  const double p = static_cast<double>(part) / static_cast<double>(whole);
  return p * std::log2(p);
}

}  // namespace detail

// Shannon entropy (bits) of a partition of a universe of `universe_size` objects.
inline double entropy(const Partition& p, std::size_t universe_size) {
  if (universe_size == 0) throw DomainError("entropy of an empty universe is undefined");
  double h = 0.0;
  for (const auto& block : p.blocks) h -= detail::plogp(block.size(), universe_size);
  return h;
}

inline double decision_entropy(const DecisionTable& dt) {
  if (dt.empty()) throw DomainError("entropy of an empty universe is undefined");
  double h = 0.0;
  const auto totals = contingency(dt, AttrSet{}).decision_totals;
  for (auto c : totals) h -= detail::plogp(c, dt.size());
  return h;
}

// H(D | X) in bits.
inline double conditional_entropy(const DecisionTable& dt, std::span<const AttrIndex> attrs_x) {
  if (dt.empty()) throw DomainError("entropy of an empty universe is undefined");
  for (AttrIndex a : attrs_x) {
    if (a >= dt.condition_count()) throw DomainError("attribute index " + std::to_string(a) + " is not a condition attribute");
  }
  const auto table = contingency(dt, attrs_x);
  double h = 0.0;
  for (std::size_t b = 0; b < table.block_size.size(); ++b) {
    double inner = 0.0;
    for (auto c : table.counts[b]) inner -= detail::plogp(c, table.block_size[b]);
    h += static_cast<double>(table.block_size[b]) / static_cast<double>(table.universe) * inner;
  }
  return h;
}

// I(X, D) = H(D) - H(D | X), evaluated from joint counts so that an attribute
// set independent of the decision yields exactly zero.
inline double mutual_information(const DecisionTable& dt, std::span<const AttrIndex> attrs_x) {
  if (dt.empty()) throw DomainError("entropy of an empty universe is undefined");
  for (AttrIndex a : attrs_x) {
    if (a >= dt.condition_count()) throw DomainError("attribute index " + std::to_string(a) + " is not a condition attribute");
  }
  const auto table = contingency(dt, attrs_x);
  const auto n = static_cast<double>(table.universe);
  double mi = 0.0;
  for (std::size_t b = 0; b < table.block_size.size(); ++b) {
    for (std::size_t d = 0; d < table.counts[b].size(); ++d) {
      const auto joint = table.counts[b][d];
      if (joint == 0) continue;
      const double num = static_cast<double>(joint) * n;
      const double den = static_cast<double>(table.block_size[b]) * static_cast<double>(table.decision_totals[d]);
      mi += static_cast<double>(joint) / n * std::log2(num / den);
    }
  }
  return std::max(mi, 0.0);
}

// |H(D | X - {attr}) - H(D | X)|.
inline double significance(const DecisionTable& dt, AttrIndex attr, std::span<const AttrIndex> attrs_x) {
  if (std::find(attrs_x.begin(), attrs_x.end(), attr) == attrs_x.end()) {
    throw DomainError("attribute '" + dt.attr_name(attr) + "' is not in the attribute set");
  }
  AttrSet rest;
  for (AttrIndex a : attrs_x) {
    if (a != attr) rest.push_back(a);
  }
  return std::abs(conditional_entropy(dt, rest) - conditional_entropy(dt, attrs_x));
}

struct WeightVector {
  AttrSet attrs;
  std::vector<double> weights;       // normalized, sum 1
  std::vector<double> significance;  // raw, before flooring
};

// Geometric-mean weighting of relative significances, normalized to sum 1:
// w_i = (prod_q sig_i / sig_q)^(1/n), eps_i = w_i / sum w. Evaluated in log space.
inline std::vector<double> weights_from_significance(std::span<const double> sig) {
  if (sig.empty()) throw DomainError("cannot weight an empty attribute set");
  const auto n = static_cast<double>(sig.size());
  std::vector<double> log_sig(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) log_sig[i] = std::log(std::max(sig[i], kSignificanceFloor));
  std::vector<double> omega(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    double log_prod = 0.0;
    for (double lq : log_sig) log_prod += log_sig[i] - lq;
    omega[i] = std::exp(log_prod / n);
  }
  const double total = std::accumulate(omega.begin(), omega.end(), 0.0);
  for (auto& w : omega) w /= total;
  return omega;
}

inline WeightVector attribute_weights(const DecisionTable& dt, std::span<const AttrIndex> attrs_b) {
  if (attrs_b.empty()) throw DomainError("cannot weight an empty attribute set");
  WeightVector out;
  out.attrs.assign(attrs_b.begin(), attrs_b.end());
  out.significance.reserve(attrs_b.size());
  for (AttrIndex a : attrs_b) out.significance.push_back(significance(dt, a, attrs_b));
  out.weights = weights_from_significance(out.significance);
  return out;
}

}  // namespace vprs
