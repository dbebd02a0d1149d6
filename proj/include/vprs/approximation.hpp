#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "vprs/decision_table.hpp"
#include "vprs/ratio.hpp"

namespace vprs {

// Precision parameter of the variable precision model, 0.5 < beta <= 1, kept exact.
class VprsParams {
 public:
  explicit VprsParams(Ratio beta) : beta_(beta.reduced()) {
    if (!(beta_ > Ratio{1, 2}) || beta_ > Ratio{1, 1}) {
      throw DomainError("beta must lie in (0.5, 1], got " + beta_.str());
    }
  }
  explicit VprsParams(double beta) : VprsParams(Ratio::approximate(beta)) {}

  [[nodiscard]] Ratio beta() const { return beta_; }

 private:
  Ratio beta_;
};

namespace detail {

inline void require_conditions(const DecisionTable& dt, std::span<const AttrIndex> attrs) {
  for (AttrIndex a : attrs) {
    if (a >= dt.condition_count()) throw DomainError("attribute index " + std::to_string(a) + " is not a condition attribute");
  }
}

// count/size >= beta, exactly.
inline bool meets_lower(std::size_t count, std::size_t size, Ratio beta) {
  return static_cast<std::int64_t>(count) * beta.den >= beta.num * static_cast<std::int64_t>(size);
}

// count/size > 1 - beta, exactly.
inline bool meets_upper(std::size_t count, std::size_t size, Ratio beta) {
  return static_cast<std::int64_t>(count) * beta.den > (beta.den - beta.num) * static_cast<std::int64_t>(size);
}

template <typename Pred>
ObjectSet collect_blocks(const DecisionTable& dt, std::span<const AttrIndex> attrs, Level dec_value, Pred keep) {
  require_conditions(dt, attrs);
  const auto assignment = assign_blocks(dt, attrs);
  std::vector<std::size_t> size(assignment.block_count, 0), hit(assignment.block_count, 0);
  for (ObjectIndex r = 0; r < dt.size(); ++r) {
    ++size[assignment.block_of[r]];
    if (dt.decision(r) == dec_value) ++hit[assignment.block_of[r]];
  }
  ObjectSet out;
  for (ObjectIndex r = 0; r < dt.size(); ++r) {
    const auto b = assignment.block_of[r];
    if (keep(hit[b], size[b])) out.push_back(r);
  }
  return out;
}

}  // namespace detail

// β-lower approximation of the decision class `dec_value`: union of condition
// blocks whose inclusion degree in that class is at least β.
inline ObjectSet lower_approx(const DecisionTable& dt, std::span<const AttrIndex> attrs, Level dec_value,
                              const VprsParams& params) {
  const Ratio beta = params.beta();
  return detail::collect_blocks(dt, attrs, dec_value,
                                [beta](std::size_t hit, std::size_t size) { return detail::meets_lower(hit, size, beta); });
}

// β-upper approximation: blocks whose inclusion degree exceeds 1 - β.
inline ObjectSet upper_approx(const DecisionTable& dt, std::span<const AttrIndex> attrs, Level dec_value,
                              const VprsParams& params) {
  const Ratio beta = params.beta();
  return detail::collect_blocks(dt, attrs, dec_value,
                                [beta](std::size_t hit, std::size_t size) { return detail::meets_upper(hit, size, beta); });
}

// γ^β(attrs, D): share of the universe covered by the β-lower approximations of all decision classes.
inline Ratio classification_quality(const DecisionTable& dt, std::span<const AttrIndex> attrs, const VprsParams& params) {
  if (dt.empty()) throw DomainError("classification quality of an empty decision table is undefined");
  detail::require_conditions(dt, attrs);
  const auto table = contingency(dt, attrs);
  const Ratio beta = params.beta();
  std::size_t covered = 0;
  for (std::size_t b = 0; b < table.block_size.size(); ++b) {
    // β > 0.5, so at most one class can reach β inside a block.
    for (std::size_t c : table.counts[b]) {
      if (c > 0 && detail::meets_lower(c, table.block_size[b], beta)) {
        covered += table.block_size[b];
        break;
      }
    }
  }
  return Ratio{static_cast<std::int64_t>(covered), static_cast<std::int64_t>(dt.size())};
}

// Largest β at which the majority-inclusion structure of `attrs` is unchanged:
// min(1 - max{P < 1/2}, min{P > 1/2}) over all block/class inclusion degrees,
// with an empty defining set contributing 1.
inline Ratio beta_bound(const DecisionTable& dt, std::span<const AttrIndex> attrs) {
  if (dt.empty()) throw DomainError("beta bound of an empty decision table is undefined");
  detail::require_conditions(dt, attrs);
  const auto table = contingency(dt, attrs);
  const Ratio half{1, 2};
  Ratio m1{1, 1};
  Ratio m2{1, 1};
  for (std::size_t b = 0; b < table.block_size.size(); ++b) {
    const auto size = static_cast<std::int64_t>(table.block_size[b]);
    for (std::size_t c : table.counts[b]) {
      const Ratio p{static_cast<std::int64_t>(c), size};
      if (p < half) {
        m1 = std::min(m1, p.complement());
      } else if (p > half) {
        m2 = std::min(m2, p);
      }
    }
  }
  return std::min(m1, m2).reduced();
}

}  // namespace vprs
