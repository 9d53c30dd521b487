#include "test_util.hpp"
#include "welfare/json_io.hpp"

using namespace welfare;
namespace wj = welfare::json;

TEST(JsonIo, ProfileRoundTrip) {
  const UtilityProfile p{0.1, 2.5, 1e-300, 123456789.125};
  EXPECT_EQ(wj::profile_from_json(wj::parse_document(wj::to_json(p).dump())), p);
  EXPECT_WELFARE_ERROR(wj::profile_from_json(wj::parse_document("{\"a\":1}")), ParseError);
  EXPECT_WELFARE_ERROR(wj::profile_from_json(wj::parse_document("[1, null]")), ParseError);
  EXPECT_WELFARE_ERROR(wj::parse_document("[1,"), ParseError);
}

TEST(JsonIo, ProfileLists) {
  const auto ps = wj::profiles_from_json(wj::parse_document(R"([[5,9], {"label":"B","values":[6,6]}])"));
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0], UtilityProfile({5, 9}));
  EXPECT_EQ(ps[1].label(), "B");
  EXPECT_WELFARE_ERROR(wj::profiles_from_json(wj::parse_document("[]")), ParseError);
  EXPECT_WELFARE_ERROR(wj::profiles_from_json(wj::parse_document(R"([{"label":"x"}])")), ParseError);
}

TEST(JsonIo, LorenzRoundTrip) {
  const auto c = lorenz_from_profile(UtilityProfile{10, 1, 1, 1});
  const auto back = wj::lorenz_from_json(wj::parse_document(wj::to_json(c).dump()));
  ASSERT_EQ(back.knots().size(), c.knots().size());
  for (std::size_t i = 0; i < c.knots().size(); ++i) EXPECT_EQ(back.knots()[i], c.knots()[i]);
  EXPECT_WELFARE_ERROR(wj::lorenz_from_json(wj::parse_document("[[0,0],[1]]")), ParseError);
}

TEST(JsonIo, RelationTable) {
  const auto t = wj::relation_table_from_json(
      wj::parse_document(R"({"alternatives":["A","B","C"],"judgments":[["B","A"],["C","B"],["A","C"]]})"));
  EXPECT_EQ(t.size(), 3u);
  EXPECT_TRUE(t.strictly_prefers(t.index_of("B"), t.index_of("A")));
  EXPECT_WELFARE_ERROR(wj::relation_table_from_json(wj::parse_document(R"({"alternatives":["A"]})")), ParseError);
  EXPECT_WELFARE_ERROR(
      wj::relation_table_from_json(wj::parse_document(R"({"alternatives":["A"],"judgments":[["A"]]})")),
      ParseError);
  EXPECT_WELFARE_ERROR(
      wj::relation_table_from_json(wj::parse_document(R"({"alternatives":["A"],"judgments":[["A","Q"]]})")),
      InvalidTable);
}

TEST(JsonIo, Scenarios) {
  const auto s = wj::scenarios_from_json(
      wj::parse_document(R"([{"p":0.1,"eps1":0.1,"q":0,"eps2":0.19},{"group_size":3,"p":0,"eps1":0,"q":0,"eps2":0}])"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].group_size, 5);
  EXPECT_EQ(s[1].group_size, 3);
  EXPECT_WELFARE_ERROR(wj::scenarios_from_json(wj::parse_document(R"([{"p":0.1}])")), ParseError);
  EXPECT_WELFARE_ERROR(wj::scenarios_from_json(wj::parse_document(R"([{"p":2,"eps1":0,"q":0,"eps2":0}])")),
                       InvalidScenario);
}

TEST(JsonIo, AuditReportRoundTrip) {
  ProfileGenerator gen;
  gen.samples = 60;
  gen.max_n = 5;
  gen.seed = 0xfeedfacecafebeefULL;
  for (const auto& spec : {AggregateSpec::make(MeasureDescriptor::gini(), 2.2),
                           AggregateSpec::make(MeasureDescriptor::atkinson(0.5), 1.0),
                           AggregateSpec::make(MeasureDescriptor::fairness(FairnessParams::power(-1, -2)), 0.1)}) {
    const auto report = monotonicity_audit(spec, gen, 5);
    const auto text = wj::to_json(report).dump();
    const auto back = wj::audit_report_from_json(wj::parse_document(text));
    EXPECT_EQ(wj::to_json(back).dump(), text);
    EXPECT_EQ(back.seed, gen.seed);
  }
}

TEST(JsonIo, ReportsSerialize) {
  const auto spec = AggregateSpec::make(MeasureDescriptor::variance(), 1.0);
  const auto sweep = sweep_scale_reversals(UtilityProfile{2, 1, 1, 1, 1, 1}, UtilityProfile{1, 1, 1, 1, 1, 1}, spec);
  const auto j = wj::to_json(sweep);
  EXPECT_EQ(j["base_order"], "a_better");
  EXPECT_EQ(j["witness"]["after"], "b_better");
  EXPECT_EQ(wj::profile_from_json(j["witness"]["profile_a"]), UtilityProfile({2, 1, 1, 1, 1, 1}));

  const auto collapse =
      wj::to_json(demonstrate_irbd_collapse(UtilityProfile{2, 2}, UtilityProfile{1, 100}, DiscountFactor(0.9), 1024));
  EXPECT_EQ(collapse["crossover_lambda"], 64);
  EXPECT_EQ(collapse["rungs"].size(), 11u);

  const auto ulbd = wj::to_json(build_ulbd_construction(1000, 100, DiscountFactor(0.5)));
  EXPECT_EQ(ulbd["w_a"], 3000.0);
  EXPECT_EQ(ulbd["anomaly"], true);
  EXPECT_EQ(ulbd["dist_a"]["counts"][0], 500);

  const auto m = wj::to_json(MeasureDescriptor::fairness(FairnessParams::log(0.5)));
  EXPECT_EQ(m["measure"], "fairness_log");
  EXPECT_EQ(m["fairness"]["generator"], "log");
}
