#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vprs/approximation.hpp"
#include "vprs/decision_table.hpp"

namespace vprs {

inline constexpr std::size_t kExhaustiveReductCap = 16;

enum class ReductMethod { exhaustive, greedy };

struct ReductResult {
  AttrSet attrs;
  Ratio beta;
  Ratio quality;
  ReductMethod method = ReductMethod::exhaustive;
};

namespace detail {

inline AttrSet mask_to_attrs(std::uint32_t mask) {
  AttrSet out;
  for (AttrIndex i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

inline std::uint32_t attrs_to_mask(const DecisionTable& dt, std::span<const AttrIndex> attrs) {
  require_conditions(dt, attrs);
  if (dt.condition_count() > 31) throw CapacityError("subset tests support at most 31 condition attributes");
  std::uint32_t mask = 0;
  for (AttrIndex a : attrs) {
    const std::uint32_t bit = 1U << a;
    if (mask & bit) throw DomainError("attribute '" + dt.attr_name(a) + "' listed twice");
    mask |= bit;
  }
  return mask;
}

inline Ratio quality_of_mask(const DecisionTable& dt, std::uint32_t mask, const VprsParams& params) {
  const auto attrs = mask_to_attrs(mask);
  return classification_quality(dt, attrs, params);
}

// All masks over `m` bits with `k` bits set, in lexicographic order of their sorted index lists.
inline std::vector<std::uint32_t> combinations(std::size_t m, std::size_t k) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return out;
  while (true) {
    std::uint32_t mask = 0;
    for (auto i : idx) mask |= 1U << i;
    out.push_back(mask);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

// True iff `subset` keeps γ^β(C) exactly and no non-empty proper subset does.
inline bool is_beta_reduct(const DecisionTable& dt, std::span<const AttrIndex> subset, const VprsParams& params) {
  if (subset.empty()) throw DomainError("a beta-reduct candidate must be non-empty");
  const std::uint32_t mask = detail::attrs_to_mask(dt, subset);
  const auto all = dt.condition_attrs();
  const Ratio target = classification_quality(dt, all, params);
  if (!(detail::quality_of_mask(dt, mask, params) == target)) return false;
  for (std::uint32_t sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) {
    if (detail::quality_of_mask(dt, sub, params) == target) return false;
  }
  return true;
}

// Every β-reduct, by increasing cardinality then lexicographically.
inline std::vector<AttrSet> find_all_reducts(const DecisionTable& dt, const VprsParams& params,
                                             std::size_t cap = kExhaustiveReductCap) {
  const std::size_t m = dt.condition_count();
  if (m > cap || m > 31) {
    throw CapacityError(std::to_string(m) + " condition attributes exceed the exhaustive cap of " + std::to_string(cap) +
                        "; use find_reduct_greedy");
  }
  const auto all = dt.condition_attrs();
  const Ratio target = classification_quality(dt, all, params);

  std::vector<std::uint32_t> found;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::uint32_t mask : detail::combinations(m, k)) {
      // A superset of a reduct cannot be minimal; any non-minimal candidate
      // with equal quality contains a smaller reduct that was found earlier.
      const bool dominated = std::any_of(found.begin(), found.end(), [mask](std::uint32_t r) { return (r & mask) == r; });
      if (dominated) continue;
      if (detail::quality_of_mask(dt, mask, params) == target) found.push_back(mask);
    }
  }
  std::vector<AttrSet> out;
  out.reserve(found.size());
  for (auto mask : found) out.push_back(detail::mask_to_attrs(mask));
  return out;
}

// Forward selection by largest quality (ties to the lower index) until γ^β(C)
// is matched, then drop attributes in reverse index order while quality holds.
inline ReductResult find_reduct_greedy(const DecisionTable& dt, const VprsParams& params) {
  if (dt.empty()) throw DomainError("cannot search reducts of an empty decision table");
  const auto all = dt.condition_attrs();
  const Ratio target = classification_quality(dt, all, params);

  AttrSet chosen;
  std::vector<bool> used(all.size(), false);
  Ratio current = classification_quality(dt, chosen, params);
  while (!(current == target) && chosen.size() < all.size()) {
    std::size_t best = all.size();
    Ratio best_quality{0, 1};
    for (AttrIndex a = 0; a < all.size(); ++a) {
      if (used[a]) continue;
      AttrSet trial = chosen;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), a), a);
      const Ratio q = classification_quality(dt, trial, params);
      if (best == all.size() || q > best_quality) {
        best = a;
        best_quality = q;
      }
    }
    used[best] = true;
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), best), best);
    current = best_quality;
  }

  for (auto it = chosen.rbegin(); it != chosen.rend();) {
    AttrSet trial;
    for (AttrIndex a : chosen) {
      if (a != *it) trial.push_back(a);
    }
    if (classification_quality(dt, trial, params) == target) {
      chosen = std::move(trial);
      it = chosen.rbegin();  // restart scan from the highest remaining index
      continue;
    }
    ++it;
  }
  return ReductResult{chosen, params.beta(), classification_quality(dt, chosen, params), ReductMethod::greedy};
}

// Reduct used for training: the first minimal-cardinality reduct from the
// exhaustive search, or the greedy result once the attribute count exceeds `cap`.
inline ReductResult select_reduct(const DecisionTable& dt, const VprsParams& params,
                                  std::size_t cap = kExhaustiveReductCap) {
  if (dt.condition_count() > cap) return find_reduct_greedy(dt, params);
  const auto reducts = find_all_reducts(dt, params, cap);
  const AttrSet pick = reducts.empty() ? AttrSet{} : reducts.front();
  return ReductResult{pick, params.beta(), classification_quality(dt, pick, params), ReductMethod::exhaustive};
}

}  // namespace vprs
