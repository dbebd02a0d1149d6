#pragma once

// Fixtures, random generators and independent oracles shared by the unit
// tests and the acceptance binary. Oracles here deliberately avoid the
// library's partition/contingency code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vprs/vprs.hpp"

namespace vprs::testing {

// u1(a0,b0,d0) u2(a0,b0,d0) u3(a0,b0,d1) u4(a0,b1,d1)
// u5(a1,b0,d0) u6(a1,b1,d1) u7(a1,b1,d1) u8(a1,b1,d0)
inline DecisionTable t8() {
  return DecisionTable({"a", "b"}, "d",
                       {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}, {1, 1, 1}, {1, 1, 0}});
}

struct RandomTableShape {
  std::size_t max_objects = 12;
  std::size_t max_attrs = 4;
  int max_levels = 3;    // condition levels drawn from 0..k-1 with k in {2, max_levels}
  int max_classes = 3;
};

inline DecisionTable random_table(std::mt19937_64& rng, const RandomTableShape& shape = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t n = pick(1, shape.max_objects);
  const std::size_t m = pick(1, shape.max_attrs);
  std::vector<int> levels(m);
  for (auto& k : levels) k = static_cast<int>(pick(2, static_cast<std::size_t>(shape.max_levels)));
  const int classes = static_cast<int>(pick(2, static_cast<std::size_t>(shape.max_classes)));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) names.push_back("x" + std::to_string(a));
  std::vector<std::vector<Level>> rows(n);
  for (auto& row : rows) {
    for (std::size_t a = 0; a < m; ++a) row.push_back(static_cast<Level>(pick(0, static_cast<std::size_t>(levels[a] - 1))));
    row.push_back(static_cast<Level>(pick(0, static_cast<std::size_t>(classes - 1))));
  }
  return DecisionTable(names, "d", rows);
}

inline AttrSet random_subset(std::mt19937_64& rng, std::size_t m) {
  AttrSet s;
  for (AttrIndex a = 0; a < m; ++a) {
    if (rng() & 1U) s.push_back(a);
  }
  return s;
}

inline bool same_on(const DecisionTable& dt, ObjectIndex x, ObjectIndex y, const AttrSet& attrs) {
  for (AttrIndex a : attrs) {
    if (dt.value(x, a) != dt.value(y, a)) return false;
  }
  return true;
}

// Classical rough-set lower approximation by pairwise comparison:
// x is in the lower approximation of class d when every object
// indiscernible from x also carries decision d.
inline ObjectSet pawlak_lower(const DecisionTable& dt, const AttrSet& attrs, Level d) {
  ObjectSet out;
  for (ObjectIndex x = 0; x < dt.size(); ++x) {
    bool inside = true;
    for (ObjectIndex y = 0; y < dt.size() && inside; ++y) {
      if (same_on(dt, x, y, attrs) && dt.decision(y) != d) inside = false;
    }
    if (inside) out.push_back(x);
  }
  return out;
}

inline ObjectSet pawlak_upper(const DecisionTable& dt, const AttrSet& attrs, Level d) {
  ObjectSet out;
  for (ObjectIndex x = 0; x < dt.size(); ++x) {
    bool touches = false;
    for (ObjectIndex y = 0; y < dt.size() && !touches; ++y) {
      if (same_on(dt, x, y, attrs) && dt.decision(y) == d) touches = true;
    }
    if (touches) out.push_back(x);
  }
  return out;
}

// Positive-region fraction, as an unreduced ratio over |U|.
inline Ratio pawlak_quality(const DecisionTable& dt, const AttrSet& attrs) {
  std::int64_t covered = 0;
  for (Level d = 0; d < static_cast<Level>(dt.decision_level_count()); ++d) {
    covered += static_cast<std::int64_t>(pawlak_lower(dt, attrs, d).size());
  }
  return Ratio{covered, static_cast<std::int64_t>(dt.size())};
}

// Probability that a random positive outranks a random negative, ties 1/2.
inline double pair_auc(const std::vector<double>& scores, const std::vector<bool>& positive) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Entropy of D given X by explicit grouping of rows (no library partition code).
inline double naive_conditional_entropy(const DecisionTable& dt, const AttrSet& attrs) {
  std::vector<bool> seen(dt.size(), false);
  double h = 0.0;
  const double n = static_cast<double>(dt.size());
  for (ObjectIndex x = 0; x < dt.size(); ++x) {
    if (seen[x]) continue;
    std::vector<std::size_t> counts(dt.decision_level_count(), 0);
    std::size_t size = 0;
    for (ObjectIndex y = x; y < dt.size(); ++y) {
      if (!seen[y] && same_on(dt, x, y, attrs)) {
        seen[y] = true;
        ++size;
        ++counts[static_cast<std::size_t>(dt.decision(y))];
      }
    }
    for (auto c : counts) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / static_cast<double>(size);
      h -= static_cast<double>(size) / n * p * std::log2(p);
    }
  }
  return h;
}

// Outcome of one property check: empty message means it held.
struct PropertyResult {
  std::string name;
  std::size_t instances = 0;
  std::string failure;
  [[nodiscard]] bool ok() const { return failure.empty(); }
};

inline bool is_disjoint_cover(const Partition& p, std::size_t n) {
  std::vector<int> hits(n, 0);
  for (const auto& block : p.blocks) {
    if (block.empty()) return false;
    for (auto o : block) {
      if (o >= n) return false;
      ++hits[o];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

inline std::vector<PropertyResult> run_property_suites(std::size_t instances, std::uint64_t seed) {
  std::vector<PropertyResult> out;
  auto run = [&](const std::string& name, auto&& body) {
    PropertyResult r{name, instances, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < instances && r.ok(); ++i) {
      std::string why = body(rng);
      if (!why.empty()) r.failure = "instance " + std::to_string(i) + ": " + why;
    }
    out.push_back(std::move(r));
  };
  const RandomTableShape shape{40, 5, 4, 3};

  run("partition is a disjoint cover", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    const auto attrs = random_subset(rng, dt.condition_count());
    return is_disjoint_cover(partition(dt, attrs), dt.size()) ? "" : "blocks overlap or miss objects";
  });

  run("inclusion degrees sum to 1", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    const auto part = partition(dt, random_subset(rng, dt.condition_count()));
    for (const auto& block : part.blocks) {
      std::int64_t num = 0;
      for (Level d = 0; d < static_cast<Level>(dt.decision_level_count()); ++d) {
        const auto cls = decision_class(dt, d);
        const auto r = inclusion_degree(block, cls);
        if (r.den != static_cast<std::int64_t>(block.size())) return "unexpected denominator";
        num += r.num;
      }
      if (num != static_cast<std::int64_t>(block.size())) return "degrees do not sum to 1";
    }
    return "";
  });

  run("quality is anti-monotone in beta", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    const auto attrs = random_subset(rng, dt.condition_count());
    std::uniform_int_distribution<std::int64_t> num(51, 100);
    auto b1 = Ratio{num(rng), 100};
    auto b2 = Ratio{num(rng), 100};
    if (b2 < b1) std::swap(b1, b2);
    const auto q1 = classification_quality(dt, attrs, VprsParams(b1));
    const auto q2 = classification_quality(dt, attrs, VprsParams(b2));
    return q2 <= q1 ? "" : "quality rose from " + q1.str() + " to " + q2.str();
  });

  run("lower approximation within upper", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    const auto attrs = random_subset(rng, dt.condition_count());
    const VprsParams params(Ratio{std::uniform_int_distribution<std::int64_t>(51, 100)(rng), 100});
    for (Level d = 0; d < static_cast<Level>(dt.decision_level_count()); ++d) {
      const auto lo = lower_approx(dt, attrs, d, params);
      const auto up = upper_approx(dt, attrs, d, params);
      if (!std::includes(up.begin(), up.end(), lo.begin(), lo.end())) return "lower not within upper";
    }
    return "";
  });

  run("0 <= H(D|X) <= H(D) and I >= 0", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    const auto attrs = random_subset(rng, dt.condition_count());
    const double h = conditional_entropy(dt, attrs);
    const double hd = decision_entropy(dt);
    if (h < 0.0 || h > hd + 1e-12) return "H(D|X) outside [0, H(D)]";
    if (mutual_information(dt, attrs) < 0.0) return "negative mutual information";
    return "";
  });

  run("conditional entropy non-increasing under attribute addition", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    auto attrs = random_subset(rng, dt.condition_count());
    const double before = conditional_entropy(dt, attrs);
    const auto extra = static_cast<AttrIndex>(rng() % dt.condition_count());
    if (std::find(attrs.begin(), attrs.end(), extra) == attrs.end()) {
      attrs.insert(std::upper_bound(attrs.begin(), attrs.end(), extra), extra);
    }
    return conditional_entropy(dt, attrs) <= before + 1e-12 ? "" : "entropy increased";
  });

  run("weights sum to 1", [&](std::mt19937_64& rng) -> std::string {
    const auto dt = random_table(rng, shape);
    const auto all = dt.condition_attrs();
    const auto w = attribute_weights(dt, all).weights;
    double s = 0.0;
    for (double v : w) {
      if (!(v > 0.0)) return "non-positive weight";
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) return "table weights sum to " + csv::format_g(s, 17);
    std::vector<double> sig(1 + rng() % 9);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (auto& x : sig) x = (rng() % 5 == 0) ? 0.0 : u(rng);
    s = 0.0;
    for (double v : weights_from_significance(sig)) s += v;
    return std::abs(s - 1.0) <= 1e-12 ? "" : "significance weights sum to " + csv::format_g(s, 17);
  });

  run("similarity symmetric with S(u,u) = 1", [&](std::mt19937_64& rng) -> std::string {
    const std::size_t m = 1 + rng() % 6;
    VprsModel model;
    std::vector<double> sig(m);
    for (auto& x : sig) x = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    model.weights = weights_from_significance(sig);
    std::vector<Level> u(m), v(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Level lo = static_cast<Level>(rng() % 3);
      const Level hi = lo + static_cast<Level>(rng() % 4);
      model.reduct.push_back("x" + std::to_string(i));
      model.ranges.push_back({lo, hi});
      u[i] = lo + static_cast<Level>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
      v[i] = lo + static_cast<Level>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    const double uv = weighted_similarity(u, v, model);
    const double vu = weighted_similarity(v, u, model);
    if (uv != vu) return "S(u,v) != S(v,u)";
    if (std::abs(weighted_similarity(u, u, model) - 1.0) > 1e-12) return "S(u,u) != 1";
    if (uv < -1e-12 || uv > 1.0 + 1e-12) return "similarity outside [0,1]";
    return "";
  });

  run("AUC equals pair-ordering probability", [&](std::mt19937_64& rng) -> std::string {
    const std::size_t n = 2 + rng() % 499;
    std::vector<double> scores(n);
    std::vector<bool> pos(n);
    const int grid = 1 + static_cast<int>(rng() % 20);  // coarse grids force ties
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng() % static_cast<std::uint64_t>(grid)) / grid;
      pos[i] = (rng() & 1U) != 0;
    }
    pos[0] = true;
    pos[1] = false;
    auto flags = std::make_unique<bool[]>(n);
    for (std::size_t i = 0; i < n; ++i) flags[i] = pos[i];
    const double auc = eval::roc_auc(scores, std::span<const bool>(flags.get(), n)).auc;
    const double oracle = pair_auc(scores, pos);
    return std::abs(auc - oracle) <= 1e-12 ? "" : "auc " + csv::format_g(auc, 17) + " vs " + csv::format_g(oracle, 17);
  });

  return out;
}

}  // namespace vprs::testing
