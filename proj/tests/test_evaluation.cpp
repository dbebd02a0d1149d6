#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace vprs;
using namespace vprs::eval;

namespace {
constexpr Level L = 0, M = 1, H = 2;

std::vector<bool> flags(std::initializer_list<int> v) {
  std::vector<bool> out;
  for (int x : v) out.push_back(x != 0);
  return out;
}

RocCurve auc_of(const std::vector<double>& s, const std::vector<bool>& pos) {
  auto raw = std::make_unique<bool[]>(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) raw[i] = pos[i];
  return roc_auc(s, std::span<const bool>(raw.get(), pos.size()));
}
}  // namespace

TEST(Evaluation, ConfusionExample) {
  const std::vector<Level> preds{H, M, L, L};
  const std::vector<Level> labels{H, L, L, M};
  EXPECT_EQ(confusion(preds, labels), (ConfusionCounts{1, 1, 1, 1}));
  const auto r = rates(confusion(preds, labels));
  EXPECT_DOUBLE_EQ(r.tpr, 0.5);
  EXPECT_DOUBLE_EQ(r.fpr, 0.5);
  EXPECT_DOUBLE_EQ(r.tnr, 0.5);
  EXPECT_DOUBLE_EQ(r.ocr, 0.5);
}

TEST(Evaluation, PerfectAndAllLow) {
  const std::vector<Level> labels{H, L, M, L};
  const auto c = confusion(labels, labels);
  EXPECT_EQ(c.fp, 0U);
  EXPECT_EQ(c.fn, 0U);
  const auto r = rates(c);
  EXPECT_DOUBLE_EQ(r.tpr, 1.0);
  EXPECT_DOUBLE_EQ(r.fpr, 0.0);
  EXPECT_DOUBLE_EQ(r.ocr, 1.0);
  const std::vector<Level> lows(3, L), highs(3, H);
  const auto z = confusion(lows, highs);
  EXPECT_EQ(z.tp, 0U);
  EXPECT_EQ(z.fn, 3U);
}

TEST(Evaluation, Errors) {
  const std::vector<Level> a{L, H}, b{L};
  EXPECT_THROW(confusion(a, b), DomainError);
  try {
    rates(ConfusionCounts{0, 1, 1, 0});
    FAIL();
  } catch (const UndefinedMetricError& e) {
    EXPECT_NE(std::string(e.what()).find("positive"), std::string::npos);
  }
  EXPECT_THROW(rates(ConfusionCounts{1, 0, 0, 1}), UndefinedMetricError);
  EXPECT_THROW(auc_of({0.1, 0.2}, flags({1, 1})), UndefinedMetricError);
}

TEST(Evaluation, AucExamples) {
  EXPECT_DOUBLE_EQ(auc_of({0.9, 0.8, 0.3, 0.1}, flags({1, 1, 0, 0})).auc, 1.0);
  EXPECT_DOUBLE_EQ(auc_of({0.9, 0.8, 0.3, 0.1}, flags({1, 0, 1, 0})).auc, 0.75);
  EXPECT_DOUBLE_EQ(auc_of({0.4, 0.4, 0.4, 0.4}, flags({1, 0, 1, 0})).auc, 0.5);
}

TEST(Evaluation, RocCurveShape) {
  const auto roc = auc_of({0.9, 0.8, 0.8, 0.1}, flags({1, 0, 1, 0}));
  ASSERT_EQ(roc.points.size(), 4U);
  EXPECT_TRUE(std::isinf(roc.points.front().threshold));
  EXPECT_DOUBLE_EQ(roc.points.front().tpr, 0.0);
  EXPECT_DOUBLE_EQ(roc.points.back().fpr, 1.0);
  EXPECT_DOUBLE_EQ(roc.points.back().tpr, 1.0);
  EXPECT_DOUBLE_EQ(roc.points[2].threshold, 0.8);
  EXPECT_DOUBLE_EQ(roc.points[2].fpr, 0.5);
}

TEST(Evaluation, AucMatchesPairCount) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 300;
    std::vector<double> s(n);
    std::vector<bool> pos(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = static_cast<double>(rng() % 13);
      pos[k] = (rng() % 3) == 0;
    }
    pos[0] = true;
    pos[1] = false;
    ASSERT_NEAR(auc_of(s, pos).auc, vprs::testing::pair_auc(s, pos), 1e-12);
  }
}

TEST(Evaluation, LevelOverloadUsesPositiveClass) {
  const std::vector<double> s{0.9, 0.5, 0.2};
  const std::vector<Level> labels{H, M, L};
  EXPECT_DOUBLE_EQ(roc_auc(s, std::span<const Level>(labels)).auc, 1.0);
}

TEST(Evaluation, CompareModelsReport) {
  const std::vector<Level> labels{H, L, L, M};
  const std::vector<MethodOutput> methods{{"a", {H, M, L, L}, {0.9, 0.6, 0.1, 0.2}},
                                          {"b", {H, M, L, L}, {0.9, 0.6, 0.1, 0.2}}};
  const auto rep = compare_models(methods, labels);
  ASSERT_EQ(rep.rows.size(), 2U);
  EXPECT_EQ(rep.positives, 2U);
  EXPECT_EQ(rep.rows[0].counts, rep.rows[1].counts);
  EXPECT_DOUBLE_EQ(rep.rows[0].roc.auc, rep.rows[1].roc.auc);
  EXPECT_EQ(rep.rows[0].level_matrix[2][2], 1U);
  EXPECT_EQ(rep.rows[0].level_matrix[1][0], 1U);
  const auto text = format_report_csv(rep);
  EXPECT_EQ(text.substr(0, text.find('\n')), "method,tp,fp,tn,fn,tpr,fpr,tnr,ocr,auc");
  EXPECT_NE(text.find("a,1,1,1,1,0.500000,0.500000,0.500000,0.500000,0.750000"), std::string::npos);
  EXPECT_NE(format_report_text(rep).find("prevalence: 50.0%"), std::string::npos);
  EXPECT_EQ(format_roc_csv(rep.rows[0].roc).substr(0, 25), "threshold,fpr,tpr\ninf,0,0");
}
