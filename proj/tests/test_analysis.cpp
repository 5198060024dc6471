#include <vector>

#include "doctest.h"
#include "pir/analysis.hpp"
#include "pir/construct.hpp"
#include "pir/errors.hpp"
#include "pir/rng.hpp"

using namespace pir;

TEST_CASE("retrievability: cyclic V with MDS parity passes, zero V fails") {
  const SystemParams params = SystemParams::square(5, 3, 1, 2);
  const ParityCheck p = make_mds_parity(3, 1, 5);
  CHECK(check_retrievability(p, cyclic_v(3, 1, 5), params));

  const PrimeField f = params.validate();
  const RetrievalMatrix zero_v(FieldMatrix(f, 3, 6), 1, 2);
  CHECK_FALSE(check_retrievability(p, zero_v, params));
}

TEST_CASE("privacy: selector-supported columns are caught with the failing set") {
  const SystemParams params = SystemParams::square(5, 3, 1, 2);
  const RetrievalMatrix cyc = cyclic_v(3, 1, 5);
  // Column (r=1, k=2) of the cyclic matrix is e_1, inside the selector space.
  const PrivacyResult res =
      check_privacy(cyc, CollusionPattern({{2}}, 3), params);
  CHECK_FALSE(res.ok);
  REQUIRE(res.failing_alpha.has_value());
  CHECK(*res.failing_alpha == CollusionPattern::Set{2});

  const PrivacyResult all = check_privacy(cyc, CollusionPattern::singletons(3), params);
  CHECK_FALSE(all.ok);
}

TEST_CASE("privacy: random V over a large field passes singletons") {
  const SystemParams params = SystemParams::square(65537, 4, 2, 2);
  int passes = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const RetrievalMatrix v = random_v(params, rng);
    passes += check_privacy(v, CollusionPattern::singletons(4), params).ok;
  }
  CHECK(passes >= 19);
}

TEST_CASE("privacy monotonicity: a passing set covers its subsets") {
  // R = 1, T = 3 leaves room for a two-node collusion block to keep full
  // rank in the mask rows.
  SystemParams params = SystemParams::square(65537, 4, 2, 2);
  params.node_queries = 1;
  params.mask_cols = 3;
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RetrievalMatrix v = random_v(params, rng);
    if (!check_privacy(v, CollusionPattern({{1, 2}}, 4), params).ok) continue;
    ++checked;
    CHECK(check_privacy(v, CollusionPattern({{1}}, 4), params).ok);
    CHECK(check_privacy(v, CollusionPattern({{2}}, 4), params).ok);
  }
  CHECK(checked > 0);
}

TEST_CASE("collusion pattern canonical form drops dominated subsets") {
  const CollusionPattern phi({{3, 1}, {1}, {1, 3}, {2}}, 3);
  CHECK(phi.sets() == std::vector<CollusionPattern::Set>{{1, 3}, {2}});
  CHECK_THROWS_AS(CollusionPattern({{}}, 3), ParamError);
  CHECK_THROWS_AS(CollusionPattern({{4}}, 3), ParamError);
}

TEST_CASE("proposition 1 inequality") {
  // Square parameters with beta empty hold with equality for MDS parity.
  const SystemParams square = SystemParams::square(7, 5, 2, 1);
  const ParityCheck mds = make_mds_parity(5, 2, 7);
  CHECK(check_prop1(mds, square).ok);

  // R > T + L makes the left side negative: trivially holds.
  SystemParams wide = square;
  wide.node_queries = 9;
  CHECK(check_prop1(mds, wide).ok);

  // An oversized T forces a violation at beta = {} for K=3, S=2.
  SystemParams bad;
  bad.q = 7;
  bad.nodes = 3;
  bad.parity_cols = 2;
  bad.record_rows = 1;
  bad.mask_cols = 5;
  bad.node_queries = 1;
  const ParityCheck uncoded = make_uncoded_parity(3, 7);
  const Prop1Result res = check_prop1(uncoded, bad);
  CHECK_FALSE(res.ok);
  REQUIRE(res.violating_beta.has_value());
  CHECK(res.violating_beta->empty());

  // Beyond K = 20 the sweep refuses; an explicit list still works.
  const SystemParams big = SystemParams::square(31, 21, 2, 1);
  const ParityCheck big_p = make_mds_parity(21, 2, 31);
  CHECK_THROWS_AS(check_prop1(big_p, big), ParamError);
  CHECK(check_prop1(big_p, big, {{}, {1}, {1, 2, 3}}).ok);
}

TEST_CASE("proposition 2 is R <= T") {
  SystemParams params = SystemParams::square(5, 3, 1, 1);
  params.node_queries = 2;
  params.mask_cols = 2;
  CHECK(check_prop2(params));
  params.node_queries = 3;
  CHECK_FALSE(check_prop2(params));
  CHECK(check_prop2(SystemParams::square(5, 4, 2, 1)));  // R = T always
}

TEST_CASE("tradeoff bound values") {
  const auto b1 = tradeoff_bound(Rational(1, 2), 3);
  REQUIRE(b1.has_value());
  CHECK(*b1 == Rational(1));

  const auto b2 = tradeoff_bound(Rational(1, 3), 5);  // sc = 1/(K-S) for S=2
  REQUIRE(b2.has_value());
  CHECK(*b2 == Rational(1, 2));

  const auto b3 = tradeoff_bound(Rational(1), 3);
  REQUIRE(b3.has_value());
  CHECK(*b3 == Rational(1, 2));

  CHECK_FALSE(tradeoff_bound(Rational(1, 3), 3).has_value());  // K*sc = 1
  CHECK_FALSE(tradeoff_bound(Rational(1, 4), 3).has_value());
}

TEST_CASE("cost report ties the bound to tightness") {
  const SystemParams params = SystemParams::square(65537, 5, 2, 2);
  const CostReport report = cost_report(params);
  CHECK(report.sc == Rational(1, 3));
  CHECK(report.rc == Rational(1, 2));
  REQUIRE(report.bound.has_value());
  CHECK(*report.bound == Rational(1, 2));
  CHECK(report.tight);
}

TEST_CASE("certification report implications on a certified scheme") {
  ConstructOptions options;
  options.q = 65537;
  options.nodes = 4;
  options.parity_cols = 2;
  options.seed = 5;
  const ConstructResult result = construct_scheme(options);
  CHECK(result.report.certified());
  CHECK(result.report.prop1_ok);
  CHECK(result.report.prop2_ok);
  CHECK_FALSE(result.report.failing_alpha.has_value());
}
