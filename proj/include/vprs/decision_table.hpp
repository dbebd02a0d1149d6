#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vprs/error.hpp"
#include "vprs/ratio.hpp"

namespace vprs {

using Level = int;
using AttrIndex = std::size_t;
using ObjectIndex = std::size_t;
// Sorted ascending, no duplicates.
using ObjectSet = std::vector<ObjectIndex>;
using AttrSet = std::vector<AttrIndex>;

struct LevelRange {
  Level min = 0;
  Level max = 0;

  [[nodiscard]] bool contains(Level v) const { return v >= min && v <= max; }
  [[nodiscard]] std::size_t width() const { return static_cast<std::size_t>(max - min) + 1; }
};

// A finite universe of objects described by discrete condition attributes and
// one decision attribute. Attribute indices 0..m-1 are the condition
// attributes, index m is the decision. Values are stored column-major.
//
// Decision values are codes 0..k-1 with one label per code. Risk tables use
// Low=0, Moderate=1, High=2; generic integer tables use the code itself as label.
class DecisionTable {
 public:
  DecisionTable() = default;

  // rows[i] holds the m condition levels followed by the decision code.
  // Empty condition_domains/decision_labels mean "infer from the data".
  DecisionTable(std::vector<std::string> condition_names, std::string decision_name,
                const std::vector<std::vector<Level>>& rows, std::vector<std::string> object_ids = {},
                std::vector<LevelRange> condition_domains = {}, std::vector<std::string> decision_labels = {})
      : names_(std::move(condition_names)), ids_(std::move(object_ids)), domains_(std::move(condition_domains)),
        decision_labels_(std::move(decision_labels)) {
    names_.push_back(std::move(decision_name));
    const std::size_t width = names_.size();
    for (std::size_t i = 0; i < width; ++i) {
      for (std::size_t j = i + 1; j < width; ++j) {
        if (names_[i] == names_[j]) throw DomainError("duplicate attribute identifier '" + names_[i] + "'");
      }
    }
    columns_.assign(width, std::vector<Level>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != width) {
        throw DomainError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                          " values, expected " + std::to_string(width));
      }
      for (std::size_t c = 0; c < width; ++c) columns_[c][r] = rows[r][c];
    }
    if (ids_.empty()) {
      ids_.reserve(rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) ids_.push_back("u" + std::to_string(r + 1));
    } else if (ids_.size() != rows.size()) {
      throw DomainError("object id count does not match row count");
    }
    finalize_domains();
  }

  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  [[nodiscard]] bool empty() const { return ids_.empty(); }
  [[nodiscard]] std::size_t condition_count() const { return names_.empty() ? 0 : names_.size() - 1; }
  [[nodiscard]] AttrIndex decision_index() const { return condition_count(); }
  [[nodiscard]] std::size_t attribute_count() const { return names_.size(); }

  [[nodiscard]] AttrSet condition_attrs() const {
    AttrSet out(condition_count());
    std::iota(out.begin(), out.end(), AttrIndex{0});
    return out;
  }

  [[nodiscard]] Level value(ObjectIndex obj, AttrIndex attr) const { return columns_[attr][obj]; }
  [[nodiscard]] const std::vector<Level>& column(AttrIndex attr) const {
    check_attr(attr);
    return columns_[attr];
  }
  [[nodiscard]] Level decision(ObjectIndex obj) const { return columns_.back()[obj]; }

  [[nodiscard]] const std::string& attr_name(AttrIndex attr) const {
    check_attr(attr);
    return names_[attr];
  }
  [[nodiscard]] const std::string& decision_name() const { return names_.back(); }
  [[nodiscard]] const std::string& object_id(ObjectIndex obj) const { return ids_[obj]; }
  [[nodiscard]] const std::vector<std::string>& object_ids() const { return ids_; }

  [[nodiscard]] AttrIndex attr_index(std::string_view name) const {
    for (AttrIndex i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    throw DomainError("unknown attribute '" + std::string(name) + "'");
  }

  [[nodiscard]] AttrSet attr_indices(std::span<const std::string> names) const {
    AttrSet out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(attr_index(n));
    return out;
  }

  void check_attr(AttrIndex attr) const {
    if (attr >= names_.size()) throw DomainError("unknown attribute index " + std::to_string(attr));
  }

  // Declared domain of any attribute (decision domain is [0, k-1]).
  [[nodiscard]] LevelRange domain(AttrIndex attr) const {
    check_attr(attr);
    if (attr == decision_index()) return {0, static_cast<Level>(decision_labels_.size()) - 1};
    return domains_[attr];
  }

  [[nodiscard]] std::size_t decision_level_count() const { return decision_labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& decision_labels() const { return decision_labels_; }
  [[nodiscard]] const std::vector<LevelRange>& condition_domains() const { return domains_; }
  [[nodiscard]] std::vector<std::string> condition_names() const {
    return {names_.begin(), names_.end() - (names_.empty() ? 0 : 1)};
  }

  // Table over the given condition attributes (in the given order) plus the decision.
  [[nodiscard]] DecisionTable restrict_to(std::span<const AttrIndex> attrs) const {
    DecisionTable out;
    for (AttrIndex a : attrs) {
      if (a >= condition_count()) throw DomainError("attribute index " + std::to_string(a) + " is not a condition attribute");
      out.names_.push_back(names_[a]);
      out.columns_.push_back(columns_[a]);
      out.domains_.push_back(domains_[a]);
    }
    out.names_.push_back(names_.back());
    out.columns_.push_back(columns_.back());
    out.ids_ = ids_;
    out.decision_labels_ = decision_labels_;
    return out;
  }

  [[nodiscard]] DecisionTable select_rows(std::span<const ObjectIndex> objects) const {
    DecisionTable out;
    out.names_ = names_;
    out.domains_ = domains_;
    out.decision_labels_ = decision_labels_;
    out.columns_.assign(columns_.size(), std::vector<Level>(objects.size()));
    out.ids_.reserve(objects.size());
    for (std::size_t r = 0; r < objects.size(); ++r) {
      if (objects[r] >= size()) throw DomainError("object index " + std::to_string(objects[r]) + " out of range");
      for (std::size_t c = 0; c < columns_.size(); ++c) out.columns_[c][r] = columns_[c][objects[r]];
      out.ids_.push_back(ids_[objects[r]]);
    }
    return out;
  }

 private:
  void finalize_domains() {
    const std::size_t m = condition_count();
    if (domains_.empty()) {
      domains_.resize(m);
      for (std::size_t c = 0; c < m; ++c) {
        const auto& col = columns_[c];
        if (col.empty()) {
          domains_[c] = {0, 0};
        } else {
          const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
          domains_[c] = {*lo, *hi};
        }
      }
    } else if (domains_.size() != m) {
      throw DomainError("condition domain count does not match attribute count");
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (domains_[c].min > domains_[c].max) throw DomainError("empty domain for attribute '" + names_[c] + "'");
      for (std::size_t r = 0; r < columns_[c].size(); ++r) {
        if (!domains_[c].contains(columns_[c][r])) {
          throw DomainError("level " + std::to_string(columns_[c][r]) + " of attribute '" + names_[c] + "' at object " +
                            ids_[r] + " outside domain [" + std::to_string(domains_[c].min) + ", " +
                            std::to_string(domains_[c].max) + "]");
        }
      }
    }
    const auto& dec = columns_.back();
    if (decision_labels_.empty()) {
      Level hi = 0;
      for (Level v : dec) {
        if (v < 0) throw DomainError("decision codes must be non-negative");
        hi = std::max(hi, v);
      }
      for (Level v = 0; v <= hi; ++v) decision_labels_.push_back(std::to_string(v));
    }
    for (std::size_t r = 0; r < dec.size(); ++r) {
      if (dec[r] < 0 || static_cast<std::size_t>(dec[r]) >= decision_labels_.size()) {
        throw DomainError("decision code " + std::to_string(dec[r]) + " at object " + ids_[r] + " outside domain");
      }
    }
  }

  std::vector<std::string> names_;
  std::vector<std::vector<Level>> columns_;
  std::vector<std::string> ids_;
  std::vector<LevelRange> domains_;
  std::vector<std::string> decision_labels_;
};

// The quotient set U/IND(B).
struct Partition {
  std::vector<ObjectSet> blocks;
  AttrSet source_attrs;
};

namespace detail {

// Block id of every object under IND(attrs); ids are numbered in order of each
// block's smallest member, so block 0 contains object 0.
struct BlockAssignment {
  std::vector<std::size_t> block_of;
  std::size_t block_count = 0;
};

inline BlockAssignment assign_blocks(const DecisionTable& dt, std::span<const AttrIndex> attrs) {
  for (AttrIndex a : attrs) dt.check_attr(a);
  const std::size_t n = dt.size();
  BlockAssignment out;
  out.block_of.resize(n);
  if (n == 0) return out;

  // Mixed-radix key over the declared domains.
  constexpr std::uint64_t kDirectLimit = std::uint64_t{1} << 22;
  std::uint64_t space = 1;
  bool fits = true;
  std::vector<std::uint64_t> stride(attrs.size());
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    stride[i] = space;
    const std::uint64_t w = dt.domain(attrs[i]).width();
    if (space > std::numeric_limits<std::uint64_t>::max() / w) {
      fits = false;
      break;
    }
    space *= w;
  }

  if (fits) {
    std::vector<std::uint64_t> keys(n, 0);
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      const auto& col = dt.column(attrs[i]);
      const Level lo = dt.domain(attrs[i]).min;
      for (std::size_t r = 0; r < n; ++r) keys[r] += static_cast<std::uint64_t>(col[r] - lo) * stride[i];
    }
    constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
    if (space <= kDirectLimit) {
      std::vector<std::size_t> lookup(space, kUnassigned);
      for (std::size_t r = 0; r < n; ++r) {
        auto& slot = lookup[keys[r]];
        if (slot == kUnassigned) slot = out.block_count++;
        out.block_of[r] = slot;
      }
    } else {
      std::unordered_map<std::uint64_t, std::size_t> lookup;
      lookup.reserve(n);
      for (std::size_t r = 0; r < n; ++r) {
        auto [it, inserted] = lookup.try_emplace(keys[r], out.block_count);
        if (inserted) ++out.block_count;
        out.block_of[r] = it->second;
      }
    }
    return out;
  }

  std::map<std::vector<Level>, std::size_t> lookup;
  std::vector<Level> key(attrs.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < attrs.size(); ++i) key[i] = dt.value(r, attrs[i]);
    auto [it, inserted] = lookup.try_emplace(key, out.block_count);
    if (inserted) ++out.block_count;
    out.block_of[r] = it->second;
  }
  return out;
}

}  // namespace detail

// Per-block object counts split by decision code, in partition block order.
struct Contingency {
  std::vector<std::size_t> block_size;
  std::vector<std::vector<std::size_t>> counts;  // [block][decision code]
  std::vector<std::size_t> decision_totals;
  std::size_t universe = 0;
};

inline Contingency contingency(const DecisionTable& dt, std::span<const AttrIndex> attrs) {
  const auto assignment = detail::assign_blocks(dt, attrs);
  const std::size_t k = dt.decision_level_count();
  Contingency out;
  out.universe = dt.size();
  out.block_size.assign(assignment.block_count, 0);
  out.counts.assign(assignment.block_count, std::vector<std::size_t>(k, 0));
  out.decision_totals.assign(k, 0);
  for (ObjectIndex r = 0; r < dt.size(); ++r) {
    const auto b = assignment.block_of[r];
    const auto d = static_cast<std::size_t>(dt.decision(r));
    ++out.block_size[b];
    ++out.counts[b][d];
    ++out.decision_totals[d];
  }
  return out;
}

inline Partition partition(const DecisionTable& dt, std::span<const AttrIndex> attrs) {
  for (AttrIndex a : attrs) dt.check_attr(a);
  if (dt.empty()) throw DomainError("cannot partition an empty decision table");
  const auto assignment = detail::assign_blocks(dt, attrs);
  Partition out;
  out.source_attrs.assign(attrs.begin(), attrs.end());
  out.blocks.resize(assignment.block_count);
  for (ObjectIndex r = 0; r < dt.size(); ++r) out.blocks[assignment.block_of[r]].push_back(r);
  return out;
}

inline Partition partition(const DecisionTable& dt, std::initializer_list<std::string_view> names) {
  AttrSet attrs;
  for (auto n : names) attrs.push_back(dt.attr_index(n));
  return partition(dt, attrs);
}

// |cond ∩ dec| / |cond| for sorted object sets.
inline Ratio inclusion_degree(std::span<const ObjectIndex> cond_block, std::span<const ObjectIndex> dec_block) {
  if (cond_block.empty()) throw DomainError("inclusion degree of an empty condition block is undefined");
  std::size_t common = 0;
  auto i = cond_block.begin();
  auto j = dec_block.begin();
  while (i != cond_block.end() && j != dec_block.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return Ratio{static_cast<std::int64_t>(common), static_cast<std::int64_t>(cond_block.size())};
}

// Objects whose decision equals `code`.
inline ObjectSet decision_class(const DecisionTable& dt, Level code) {
  ObjectSet out;
  for (ObjectIndex r = 0; r < dt.size(); ++r) {
    if (dt.decision(r) == code) out.push_back(r);
  }
  return out;
}

}  // namespace vprs
