#include <sstream>

#include <gtest/gtest.h>

#include "vprs/quantizer.hpp"

using namespace vprs;

namespace {

RawEvent base_event() {
  RawEvent e;
  e.age = 37;
  e.velocity = 45.0;
  e.ttc_occupied = 1.5;
  e.ttc_neighbor = 6.0;
  e.friction = 0.55;
  e.decel = -2.64;
  return e;
}

csv::Table parse_text(const std::string& text) {
  std::istringstream in(text);
  return csv::parse(in);
}

}  // namespace

TEST(Quantizer, TableTwoExamples) {
  const auto q = quantize_event(base_event());
  EXPECT_EQ(q.c[3], 2);  // 45 km/h
  EXPECT_EQ(q.c[4], 3);  // ttc 1.5 s
  EXPECT_EQ(q.c[8], 2);  // friction 0.55
  EXPECT_EQ(q.c[2], 2);  // age 37
  EXPECT_EQ(q.c[5], 1);
  EXPECT_EQ(q.risk, RiskLevel::Moderate);
}

TEST(Quantizer, RiskLabelBands) {
  EXPECT_EQ(risk_label(-5.09), RiskLevel::High);
  EXPECT_EQ(risk_label(-5.0), RiskLevel::High);
  EXPECT_EQ(risk_label(-2.64), RiskLevel::Moderate);
  EXPECT_EQ(risk_label(-2.0), RiskLevel::Moderate);
  EXPECT_EQ(risk_label(-1.0), RiskLevel::Low);
  EXPECT_EQ(risk_label(1.8), RiskLevel::Low);
  EXPECT_THROW(risk_label(std::nan("")), DomainError);
}

TEST(Quantizer, BoundaryLevels) {
  EXPECT_EQ(ttc_level(5.0, "t"), 2);
  EXPECT_EQ(ttc_level(5.01, "t"), 1);
  EXPECT_EQ(ttc_level(2.0, "t"), 3);
  EXPECT_EQ(ttc_level(std::nullopt, "t"), 1);
  EXPECT_THROW(ttc_level(0.0, "t"), DomainError);
  EXPECT_EQ(velocity_level(40.0), 1);
  EXPECT_EQ(velocity_level(60.0), 3);
  EXPECT_EQ(velocity_level(60.1), 4);
  EXPECT_EQ(age_group(18), 1);
  EXPECT_EQ(age_group(30), 1);
  EXPECT_EQ(age_group(31), 2);
  EXPECT_EQ(age_group(61), 4);
  EXPECT_EQ(slipperiness_level(0.7), 1);
  EXPECT_EQ(slipperiness_level(0.4), 2);
  EXPECT_EQ(slipperiness_level(0.39), 3);
}

TEST(Quantizer, DriverActionBits) {
  EXPECT_EQ(driver_action_code(false, false, false), 0);
  EXPECT_EQ(driver_action_code(true, false, false), 4);
  EXPECT_EQ(driver_action_code(false, true, true), 3);
  EXPECT_EQ(driver_action_code(true, true, true), 7);
}

TEST(Quantizer, ErrorsNameTheField) {
  auto e = base_event();
  e.age = 17;
  EXPECT_THROW(quantize_event(e), DomainError);
  e = base_event();
  e.ttc_neighbor = -1.0;
  try {
    quantize_event(e);
    FAIL();
  } catch (const DomainError& err) {
    EXPECT_NE(std::string(err.what()).find("ttc_neighbor"), std::string::npos);
  }
  e = base_event();
  e.friction = 1.5;
  EXPECT_THROW(quantize_event(e), DomainError);
  e = base_event();
  e.velocity = -3.0;
  EXPECT_THROW(quantize_event(e), DomainError);
}

TEST(Quantizer, RawCsvRoundTrip) {
  auto a = base_event();
  auto b = base_event();
  b.gender = Gender::female;
  b.ttc_occupied.reset();
  b.road_segment = RoadSegment::tunnel;
  b.traffic_flow = TrafficFlow::free;
  b.acc_pedal = true;
  const auto text = format_raw_events({a, b});
  const auto events = parse_raw_events(parse_text(text));
  ASSERT_EQ(events.size(), 2U);
  EXPECT_EQ(format_raw_events(events), text);
  EXPECT_FALSE(events[1].ttc_occupied.has_value());
  EXPECT_EQ(quantize_event(events[1]).c[6], 4);
  EXPECT_EQ(quantize_event(events[1]).c[0], 4);
}

TEST(Quantizer, RawCsvErrorsNameRowAndField) {
  std::string text = format_raw_events({base_event()});
  const auto pos = text.find("corridor");
  text.replace(pos, 8, "runway");
  try {
    parse_raw_events(parse_text(text));
    FAIL();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 1"), std::string::npos);
    EXPECT_NE(msg.find("road_segment"), std::string::npos);
  }
}

TEST(Quantizer, DecisionTableUsesDeclaredDomains) {
  const auto dt = to_decision_table({quantize_event(base_event())});
  EXPECT_EQ(dt.condition_count(), 9U);
  EXPECT_EQ(dt.domain(0).max, 7);
  EXPECT_EQ(dt.domain(2).min, 1);
  EXPECT_EQ(dt.decision_labels().at(2), "High");
  EXPECT_EQ(dt.decision(0), 1);
}

TEST(Quantizer, TableFromCsvVariants) {
  const auto q = table_from_csv(parse_text("c1,c2,c3,c4,c5,c6,c7,c8,c9,risk\n0,1,2,2,3,1,1,2,2,Moderate\n"));
  EXPECT_EQ(q.decision(0), 1);
  EXPECT_EQ(q.domain(3).max, 4);
  const auto g = table_from_csv(parse_text("id,a,b,d\nx1,0,1,1\nx2,1,1,0\n"));
  EXPECT_EQ(g.condition_count(), 2U);
  EXPECT_EQ(g.object_id(1), "x2");
  EXPECT_EQ(g.decision_name(), "d");
  const auto h = table_from_csv(parse_text("a,y,b\n0,1,1\n1,0,1\n"), "y");
  EXPECT_EQ(h.attr_name(1), "b");
  EXPECT_EQ(h.decision(1), 0);
  EXPECT_THROW(table_from_csv(parse_text("a,b\n0,x\n")), DomainError);
  EXPECT_THROW(table_from_csv(parse_text("a,b\n0,1\n"), "zz"), DomainError);
}
