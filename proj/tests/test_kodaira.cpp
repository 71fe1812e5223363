#include <random>

#include <gtest/gtest.h>

#include <torfib/kodaira.hpp>

#include "oracles/oracles.hpp"

using namespace torfib;

namespace {

rational q(std::int64_t n, std::int64_t d = 1) { return rational(n) / d; }
laurent_poly mono(std::int64_t c, int e) { return laurent_poly::monomial(q(c), e); }
const laurent_poly t = laurent_poly::t();

rational eval(const laurent_poly& p, const rational& x) {
  rational acc = 0;
  for (const auto& [e, c] : p.terms()) {
    rational pw = 1;
    for (int i = 0; i < std::abs(e); ++i) pw *= x;
    acc += e >= 0 ? rational(c * pw) : rational(c / pw);
  }
  return acc;
}

// Discriminant checked against pointwise evaluation at several rationals.
void expect_discriminant_matches_evaluation(const weierstrass_model& m) {
  const auto d = discriminant(m);
  for (const rational& x : {q(1), q(-2), q(1, 3), q(5, 7), q(-11, 4)}) {
    EXPECT_EQ(eval(d, x), torfib_oracle::discriminant_at(eval(m.a, x), eval(m.b, x)));
  }
}

kodaira_type classify(const laurent_poly& a, const laurent_poly& b) { return classify_fiber({a, b}); }

} // namespace

TEST(Valuation, InfinityOrdersAboveIntegers) {
  EXPECT_GT(valuation::infinity(), valuation(1000000));
  EXPECT_EQ(valuation::infinity(), valuation::infinity());
  EXPECT_LT(valuation(-3), valuation(2));
  EXPECT_EQ(laurent_poly().val(), valuation::infinity());
  EXPECT_EQ((mono(3, -2) + mono(1, 5)).val(), valuation(-2));
}

TEST(LaurentPoly, ArithmeticDropsZeroCoefficients) {
  const auto p = mono(1, 1) + mono(2, 0);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(((t + 1) * (t - 1)), t * t - 1);
  EXPECT_EQ((t * t).shifted(-3), mono(1, -1));
}

TEST(Discriminant, Examples) {
  const weierstrass_model m1{-3, 2 + t};
  EXPECT_EQ(discriminant(m1), mono(-1728, 1) + mono(-432, 2));
  expect_discriminant_matches_evaluation(m1);

  const weierstrass_model m2{0, t};
  EXPECT_EQ(discriminant(m2), mono(-432, 2));
  expect_discriminant_matches_evaluation(m2);

  const weierstrass_model m3{t, 0};
  EXPECT_EQ(discriminant(m3), mono(-64, 3));
  expect_discriminant_matches_evaluation(m3);

  expect_discriminant_matches_evaluation({mono(3, -1) + q(1, 2) * t * t, mono(-7, 2) + mono(1, 4)});
}

TEST(Discriminant, DegenerateModel) {
  EXPECT_THROW(discriminant({0, 0}), degenerate_model);
  // 4(-3 t^2)^3 + 27 (2 t^3)^2 = 0
  EXPECT_THROW(discriminant({mono(-3, 2), mono(2, 3)}), degenerate_model);
  EXPECT_THROW(classify_fiber({0, 0}), degenerate_model);
}

TEST(Minimalize, Examples) {
  const auto m = minimalize({mono(1, 4), mono(1, 6)});
  EXPECT_EQ(m.a, laurent_poly(1));
  EXPECT_EQ(m.b, laurent_poly(1));

  const weierstrass_model already{-3, 2 + t};
  const auto same = minimalize(already);
  EXPECT_EQ(same.a, already.a);
  EXPECT_EQ(same.b, already.b);

  const auto m7 = minimalize({0, mono(1, 7)});
  EXPECT_TRUE(m7.a.is_zero());
  EXPECT_EQ(m7.b, t);

  // Negative valuations are cleared first.
  const auto neg = minimalize({mono(1, -4), mono(1, -5)});
  EXPECT_EQ(neg.a, laurent_poly(1));
  EXPECT_EQ(neg.b, t);
}

TEST(Minimalize, DropsDiscriminantBy12PerStep) {
  const weierstrass_model base{-3, 2 + t * t};
  for (int k = 0; k < 4; ++k) {
    const weierstrass_model scaled{base.a.shifted(4 * k), base.b.shifted(6 * k)};
    EXPECT_EQ(discriminant(scaled).val(), valuation(2 + 12 * k));
    EXPECT_EQ(discriminant(minimalize(scaled)).val(), valuation(2));
  }
}

TEST(ClassifyFiber, Examples) {
  EXPECT_EQ(classify(0, t), kodaira_type::of(fiber_kind::II));
  EXPECT_EQ(classify(t, 0), kodaira_type::of(fiber_kind::III));
  EXPECT_EQ(classify(-3, 2 + t), kodaira_type::I(1));
  EXPECT_EQ(classify(0, t * t), kodaira_type::of(fiber_kind::IV));
  EXPECT_EQ(classify(-3, 1), kodaira_type::I(0));
  EXPECT_EQ(classify(0, mono(1, 5)), kodaira_type::of(fiber_kind::II_star));
  EXPECT_EQ(classify(mono(1, 3), 0), kodaira_type::of(fiber_kind::III_star));
  EXPECT_EQ(classify(0, mono(1, 4)), kodaira_type::of(fiber_kind::IV_star));
  EXPECT_EQ(classify(0, mono(1, 3)), kodaira_type::I_star(0));
  EXPECT_EQ(classify(mono(1, 2), 0), kodaira_type::I_star(0));
  EXPECT_EQ(classify(mono(-3, 2), mono(2, 3) + mono(1, 5)), kodaira_type::I_star(2));
}

TEST(ClassifyFiber, UnmatchedValuationsThrow) {
  EXPECT_THROW(classify_valuations({valuation(1), valuation(1), 5}), unclassified_valuations);
  EXPECT_THROW(classify_valuations({valuation(2), valuation(2), 6}), unclassified_valuations);
}

TEST(ComponentMultiplicities, Catalog) {
  EXPECT_EQ(component_multiplicities(kodaira_type::I(0)), (multiplicity_vector{1}));
  EXPECT_EQ(component_multiplicities(kodaira_type::I(3)), (multiplicity_vector{1, 1, 1}));
  EXPECT_EQ(component_multiplicities(kodaira_type::of(fiber_kind::II)), (multiplicity_vector{1}));
  EXPECT_EQ(component_multiplicities(kodaira_type::of(fiber_kind::III)), (multiplicity_vector{1, 1}));
  EXPECT_EQ(component_multiplicities(kodaira_type::of(fiber_kind::IV)), (multiplicity_vector{1, 1, 1}));
  EXPECT_EQ(component_multiplicities(kodaira_type::I_star(0)), (multiplicity_vector{1, 1, 1, 1, 2}));
  EXPECT_EQ(component_multiplicities(kodaira_type::I_star(2)), (multiplicity_vector{1, 1, 1, 1, 2, 2, 2}));
  EXPECT_EQ(component_multiplicities(kodaira_type::of(fiber_kind::IV_star)), (multiplicity_vector{1, 1, 1, 2, 2, 2, 3}));
  EXPECT_EQ(component_multiplicities(kodaira_type::of(fiber_kind::III_star)),
            (multiplicity_vector{1, 1, 2, 2, 2, 3, 3, 4}));
  EXPECT_EQ(component_multiplicities(kodaira_type::of(fiber_kind::II_star)),
            (multiplicity_vector{1, 2, 2, 3, 3, 4, 4, 5, 6}));
  EXPECT_EQ(component_multiplicities(kodaira_type::multiple_I(3, 2)), (multiplicity_vector{3, 3}));
  EXPECT_EQ(component_multiplicities(kodaira_type::multiple_I(4, 0)), (multiplicity_vector{4}));
}

TEST(ComponentMultiplicities, MatchesEulerNumber) {
  // Component count is n for I_n (n >= 1) and v(disc) - 1 for additive types.
  for (const auto& type : kodaira_catalog()) {
    if (type.is_multiple()) continue;
    const auto count = static_cast<int>(component_multiplicities(type).size());
    const int vd = *discriminant_valuation(type);
    if (type.kind == fiber_kind::I) {
      EXPECT_EQ(count, std::max(vd, 1)) << type.tag();
    } else {
      EXPECT_EQ(count, vd - 1) << type.tag();
    }
  }
}

TEST(ComponentMultiplicities, NullRootOfExceptionalTypes) {
  // Multiplicities of the affine E6, E7, E8 diagrams sum to h = 12, 18, 30.
  auto sum = [](const multiplicity_vector& v) {
    std::int64_t s = 0;
    for (auto x : v) s += x;
    return s;
  };
  EXPECT_EQ(sum(component_multiplicities(kodaira_type::of(fiber_kind::IV_star))), 12);
  EXPECT_EQ(sum(component_multiplicities(kodaira_type::of(fiber_kind::III_star))), 18);
  EXPECT_EQ(sum(component_multiplicities(kodaira_type::of(fiber_kind::II_star))), 30);
}

TEST(LogTransform, Examples) {
  const auto t20 = log_transform(kodaira_type::I(0), 2);
  EXPECT_EQ(t20.tag(), "2I0");
  EXPECT_EQ(component_multiplicities(t20), (multiplicity_vector{2}));
  const auto t32 = log_transform(kodaira_type::I(2), 3);
  EXPECT_EQ(t32.tag(), "3I2");
  EXPECT_EQ(component_multiplicities(t32), (multiplicity_vector{3, 3}));
  EXPECT_THROW(log_transform(kodaira_type::of(fiber_kind::II), 2), unsupported_type);
  EXPECT_THROW(log_transform(kodaira_type::I_star(1), 2), unsupported_type);
  EXPECT_THROW(log_transform(kodaira_type::I(1), 1), domain_error);
}

TEST(FiberReport, Examples) {
  const auto ii_star = fiber_report({0, mono(1, 5)});
  EXPECT_EQ(ii_star.kodaira.tag(), "II*");
  EXPECT_EQ(ii_star.v_delta, 10);
  EXPECT_EQ(ii_star.min, 1);
  EXPECT_EQ(ii_star.gcd, 1);
  EXPECT_EQ(ii_star.component_count, 9U);

  const auto i3 = fiber_report({-3, 2 + t * t * t});
  EXPECT_EQ(i3.kodaira.tag(), "I3");
  EXPECT_EQ(i3.multiplicities, (multiplicity_vector{1, 1, 1}));
  EXPECT_EQ(i3.v_delta, 3);

  const auto smooth = fiber_report({-3, 1});
  EXPECT_EQ(smooth.kodaira.tag(), "I0");
  EXPECT_EQ(smooth.multiplicities, (multiplicity_vector{1}));
  EXPECT_EQ(smooth.min, 1);
  EXPECT_EQ(smooth.gcd, 1);
}

TEST(Catalog, MinEqualsGcd) {
  for (const auto& type : kodaira_catalog()) {
    const auto adm = admissibility_report(component_multiplicities(type));
    EXPECT_TRUE(adm.admissible) << type.tag();
    EXPECT_EQ(adm.min, type.m) << type.tag();
  }
}

namespace {

// Random rational with small height; nonzero when asked.
rational random_q(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 5);
  while (true) {
    rational r(num(rng), den(rng));
    if (!nonzero || r != 0) return r;
  }
}

// c t^v plus a few random higher-order terms.
laurent_poly leading(std::mt19937_64& rng, int v, const rational& c) {
  laurent_poly p = laurent_poly::monomial(c, v);
  for (int k = 1; k <= 3; ++k) p.add_term(v + k, random_q(rng, false));
  return p;
}

laurent_poly at_least(std::mt19937_64& rng, int v) { return leading(rng, v, random_q(rng, false)); }

} // namespace

TEST(ClassifyFiber, RandomModelsHitEveryRow) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const rational c = random_q(rng, true);
    const int n = 1 + trial % 7;
    struct row {
      weierstrass_model model;
      kodaira_type want;
    };
    std::vector<row> rows{
        {{-3, 2 + leading(rng, n, c)}, kodaira_type::I(n)},
        {{at_least(rng, 1), leading(rng, 1, c)}, kodaira_type::of(fiber_kind::II)},
        {{leading(rng, 1, c), at_least(rng, 2)}, kodaira_type::of(fiber_kind::III)},
        {{at_least(rng, 2), leading(rng, 2, c)}, kodaira_type::of(fiber_kind::IV)},
        {{at_least(rng, 3), leading(rng, 3, c)}, kodaira_type::I_star(0)},
        {{mono(-3, 2), mono(2, 3) + leading(rng, 3 + n, c)}, kodaira_type::I_star(n)},
        {{at_least(rng, 3), leading(rng, 4, c)}, kodaira_type::of(fiber_kind::IV_star)},
        {{leading(rng, 3, c), at_least(rng, 5)}, kodaira_type::of(fiber_kind::III_star)},
        {{at_least(rng, 4), leading(rng, 5, c)}, kodaira_type::of(fiber_kind::II_star)},
    };
    for (const auto& [model, want] : rows) {
      const auto data = fiber_report(model);
      EXPECT_EQ(data.kodaira, want) << model.a.str() << " | " << model.b.str();
      EXPECT_EQ(data.v_delta, *discriminant_valuation(want));
      // Non-minimal version of the same model.
      const int k = 1 + trial % 2;
      EXPECT_EQ(classify_fiber({model.a.shifted(4 * k), model.b.shifted(6 * k)}), want);
    }
  }
}

TEST(ClassifyFiber, InvariantUnderUnitRescaling) {
  std::mt19937_64 rng(9);
  const std::vector<weierstrass_model> models{
      {0, t}, {t, 0}, {0, t * t}, {-3, 2 + t}, {-3, 2 + t * t * t}, {0, mono(1, 5)}, {mono(-3, 2), mono(2, 3) + mono(1, 6)}};
  for (int trial = 0; trial < 1000; ++trial) {
    const rational u = random_q(rng, true);
    const rational u2 = u * u;
    const auto& m = models[static_cast<std::size_t>(trial) % models.size()];
    const weierstrass_model scaled{laurent_poly(u2 * u2) * m.a, laurent_poly(u2 * u2 * u2) * m.b};
    ASSERT_EQ(classify_fiber(scaled), classify_fiber(m));
  }
}

TEST(Minimalize, Idempotent) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const weierstrass_model m{at_least(rng, trial % 9), leading(rng, trial % 11, random_q(rng, true))};
    const auto once = minimalize(m);
    const auto twice = minimalize(once);
    EXPECT_EQ(once.a, twice.a);
    EXPECT_EQ(once.b, twice.b);
  }
}
