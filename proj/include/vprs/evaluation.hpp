#pragma once

#include <algorithm>
#include <cstddef>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "vprs/csv.hpp"
#include "vprs/decision_table.hpp"
#include "vprs/error.hpp"
#include "vprs/quantizer.hpp"

namespace vprs::eval {

// Binary tallies with Moderate/High (codes > 0) as the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  [[nodiscard]] std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

inline ConfusionCounts confusion(std::span<const Level> predictions, std::span<const Level> labels) {
  if (predictions.size() != labels.size()) {
    throw DomainError("prediction count " + std::to_string(predictions.size()) + " does not match label count " +
                      std::to_string(labels.size()));
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool pred = is_positive(predictions[i]);
    const bool truth = is_positive(labels[i]);
    if (pred && truth) ++c.tp;
    else if (pred) ++c.fp;
    else if (truth) ++c.fn;
    else ++c.tn;
  }
  return c;
}

// Full k x k matrix, [actual][predicted].
inline std::vector<std::vector<std::size_t>> level_confusion(std::span<const Level> predictions,
                                                             std::span<const Level> labels, std::size_t levels) {
  if (predictions.size() != labels.size()) throw DomainError("prediction count does not match label count");
  std::vector<std::vector<std::size_t>> m(levels, std::vector<std::size_t>(levels, 0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto a = static_cast<std::size_t>(labels[i]);
    const auto p = static_cast<std::size_t>(predictions[i]);
    if (a >= levels || p >= levels) throw DomainError("decision code outside the level range");
    ++m[a][p];
  }
  return m;
}

struct Rates {
  double tpr = 0.0;
  double fpr = 0.0;
  double tnr = 0.0;
  double ocr = 0.0;
};

inline Rates rates(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) throw UndefinedMetricError("rates undefined: no positive (Moderate/High) samples");
  if (c.tn + c.fp == 0) throw UndefinedMetricError("rates undefined: no negative (Low) samples");
  Rates r;
  r.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  r.fpr = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
  r.tnr = 1.0 - r.fpr;
  r.ocr = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  return r;
}

struct RocPoint {
  double threshold = 0.0;  // score >= threshold counts as positive
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

// Threshold sweep over distinct scores, highest first. Equal scores move
// together, which makes the trapezoidal area equal to the Mann-Whitney
// statistic with ties counted as one half.
inline RocCurve roc_auc(std::span<const double> scores, std::span<const bool> positive) {
  if (scores.size() != positive.size()) throw DomainError("score count does not match label count");
  const auto pos = static_cast<std::size_t>(std::count(positive.begin(), positive.end(), true));
  const std::size_t neg = positive.size() - pos;
  if (pos == 0 || neg == 0) throw UndefinedMetricError("AUC undefined: labels contain a single class");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve roc;
  roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == s) {
      if (positive[order[j]]) ++tp;
      else ++fp;
      ++j;
    }
    roc.points.push_back({s, static_cast<double>(fp) / static_cast<double>(neg),
                          static_cast<double>(tp) / static_cast<double>(pos)});
    i = j;
  }
  for (std::size_t k = 1; k < roc.points.size(); ++k) {
    const auto& a = roc.points[k - 1];
    const auto& b = roc.points[k];
    roc.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
  }
  return roc;
}

inline RocCurve roc_auc(std::span<const double> scores, std::span<const Level> labels) {
  auto flags = std::make_unique<bool[]>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) flags[i] = is_positive(labels[i]);
  return roc_auc(scores, std::span<const bool>(flags.get(), labels.size()));
}

// One scored method for side-by-side comparison.
struct MethodOutput {
  std::string name;
  std::vector<Level> predictions;
  std::vector<double> scores;
};

struct ReportRow {
  std::string name;
  ConfusionCounts counts;
  Rates rates;
  RocCurve roc;
  std::vector<std::vector<std::size_t>> level_matrix;
};

struct Report {
  std::vector<ReportRow> rows;
  std::size_t samples = 0;
  std::size_t positives = 0;
  std::vector<std::string> level_labels;
};

inline Report compare_models(std::span<const MethodOutput> methods, std::span<const Level> labels,
                             std::vector<std::string> level_labels = {kRiskNames.begin(), kRiskNames.end()}) {
  Report rep;
  rep.samples = labels.size();
  rep.positives = static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), is_positive));
  rep.level_labels = std::move(level_labels);
  for (const auto& m : methods) {
    if (m.scores.size() != labels.size()) throw DomainError("method '" + m.name + "' has misaligned scores");
    ReportRow row;
    row.name = m.name;
    row.counts = confusion(m.predictions, labels);
    row.rates = rates(row.counts);
    row.roc = roc_auc(m.scores, labels);
    row.level_matrix = level_confusion(m.predictions, labels, rep.level_labels.size());
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline std::string format_report_csv(const Report& rep) {
  std::string out = "method,tp,fp,tn,fn,tpr,fpr,tnr,ocr,auc\n";
  for (const auto& r : rep.rows) {
    out += r.name + ',' + std::to_string(r.counts.tp) + ',' + std::to_string(r.counts.fp) + ',' +
           std::to_string(r.counts.tn) + ',' + std::to_string(r.counts.fn) + ',' + csv::format_fixed(r.rates.tpr, 6) + ',' +
           csv::format_fixed(r.rates.fpr, 6) + ',' + csv::format_fixed(r.rates.tnr, 6) + ',' +
           csv::format_fixed(r.rates.ocr, 6) + ',' + csv::format_fixed(r.roc.auc, 6) + '\n';
  }
  return out;
}

inline std::string format_report_text(const Report& rep) {
  auto pct = [](double v) { return csv::format_fixed(100.0 * v, 1); };
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::string out;
  out += "samples: " + std::to_string(rep.samples) + "  positive (Moderate+High): " + std::to_string(rep.positives) +
         "  prevalence: " + pct(rep.samples ? static_cast<double>(rep.positives) / static_cast<double>(rep.samples) : 0.0) +
         "%\n";
  out += "OCR counts raw samples (not class-balanced).\n\n";
  out += "method          TPR(%)  FPR(%)  TNR(%)  OCR(%)     AUC\n";
  for (const auto& r : rep.rows) {
    std::string name = r.name;
    name.resize(std::max<std::size_t>(name.size(), 14), ' ');
    out += name + pad(pct(r.rates.tpr), 8) + pad(pct(r.rates.fpr), 8) + pad(pct(r.rates.tnr), 8) +
           pad(pct(r.rates.ocr), 8) + pad(csv::format_fixed(r.roc.auc, 4), 8) + '\n';
  }
  for (const auto& r : rep.rows) {
    out += "\n" + r.name + " confusion by level (rows actual, columns predicted)\n";
    out += pad("", 10);
    for (const auto& l : rep.level_labels) out += pad(l, 10);
    out += '\n';
    for (std::size_t a = 0; a < r.level_matrix.size(); ++a) {
      out += pad(rep.level_labels[a], 10);
      for (auto v : r.level_matrix[a]) out += pad(std::to_string(v), 10);
      out += '\n';
    }
  }
  return out;
}

inline std::string format_roc_csv(const RocCurve& roc) {
  std::string out = "threshold,fpr,tpr\n";
  for (const auto& p : roc.points) {
    out += (std::isinf(p.threshold) ? std::string("inf") : csv::format_g(p.threshold, 12)) + ',' +
           csv::format_g(p.fpr, 12) + ',' + csv::format_g(p.tpr, 12) + '\n';
  }
  return out;
}

}  // namespace vprs::eval
