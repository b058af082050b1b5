#include <gtest/gtest.h>

#include <random>

#include "spekkens/toy_model.hpp"

using namespace spekkens;
using namespace spekkens::toy;
using phase::ZdMatrix;

namespace {

PhasePoint pt(int d, std::vector<int> c) { return PhasePoint(d, std::move(c)); }
ObservableFunctional fn(int d, std::vector<int> c) { return ObservableFunctional(d, std::move(c)); }

EpistemicState x_known(int value) { return make_epistemic(Subspace(2, 1, {fn(2, {1, 0})}), pt(2, {value, 0})); }

EpistemicState bell() {
  return make_epistemic(Subspace(2, 2, {fn(2, {1, 0, 1, 0}), fn(2, {0, 1, 0, 1})}), PhasePoint::zero(2, 2));
}

/// Random isotropic subspace built by greedily adding commuting functionals.
Subspace random_isotropic(int d, int n, std::mt19937_64& rng) {
  const auto size = phase::phase_space_size(d, n);
  std::uniform_int_distribution<std::uint64_t> pick(0, size - 1);
  const int target = std::uniform_int_distribution<int>(0, n)(rng);
  std::vector<ObservableFunctional> gens;
  for (int attempt = 0; attempt < 50 && static_cast<int>(gens.size()) < target; ++attempt) {
    const auto v = ObservableFunctional::from_index(d, n, pick(rng));
    if (v.is_zero() || Subspace(d, n, gens).contains(v)) continue;
    bool commutes = true;
    for (const auto& g : gens) commutes = commutes && phase::symplectic_product(g, v) == 0;
    if (commutes) gens.push_back(v);
  }
  return Subspace(d, n, gens);
}

EpistemicState random_state(int d, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, phase::phase_space_size(d, n) - 1);
  return make_epistemic(random_isotropic(d, n, rng), PhasePoint::from_index(d, n, pick(rng)));
}

}  // namespace

TEST(Epistemic, XKnownZeroState) {
  const auto s = x_known(0);
  EXPECT_EQ(s.support(), (std::vector<PhasePoint>{pt(2, {0, 0}), pt(2, {0, 1})}));
  EXPECT_EQ(s.weight(), Rational(1, 2));
}

TEST(Epistemic, MaximallyMixed) {
  const auto s = make_epistemic(Subspace(2, 1), PhasePoint::zero(2, 1));
  EXPECT_EQ(s.support_size(), 4u);
  EXPECT_EQ(s.weight(), Rational(1, 4));
}

TEST(Epistemic, BellAnalogue) {
  const auto s = bell();
  EXPECT_EQ(s.support_size(), 4u);
  EXPECT_EQ(s.weight(), Rational(1, 4));
  for (const auto& p : s.support()) {
    EXPECT_EQ(evaluate(fn(2, {1, 0, 1, 0}), p), 0);
    EXPECT_EQ(evaluate(fn(2, {0, 1, 0, 1}), p), 0);
  }
}

TEST(Epistemic, RejectsNonIsotropicKnowledge) {
  EXPECT_THROW(make_epistemic(Subspace(2, 1, {fn(2, {1, 0}), fn(2, {0, 1})}), pt(2, {0, 0})), EpistemicViolation);
}

TEST(Epistemic, FromSupportRoundTrip) {
  const auto s = bell();
  EXPECT_EQ(epistemic_from_support(s.support()), s);
  EXPECT_THROW(epistemic_from_support({pt(2, {0, 0}), pt(2, {1, 1}), pt(2, {0, 1})}), InvalidInput);
}

TEST(ApplyAffine, IdentityLeavesStateUnchanged) {
  const auto s = bell();
  EXPECT_EQ(apply_affine(s, AffineSymplectic::identity(2, 2)), s);
}

TEST(ApplyAffine, SwapMapsXKnownToPKnown) {
  const AffineSymplectic swap(ZdMatrix::from_columns(2, {{0, 1}, {1, 0}}), PhasePoint::zero(2, 1));
  const auto out = apply_affine(x_known(0), swap);
  EXPECT_EQ(out.support(), (std::vector<PhasePoint>{pt(2, {0, 0}), pt(2, {1, 0})}));
}

TEST(ApplyAffine, TranslationFlipsKnownValue) {
  EXPECT_EQ(apply_affine(x_known(0), AffineSymplectic::translation(pt(2, {1, 0}))), x_known(1));
}

TEST(Measurement, KnownVariableIsRepeatable) {
  const SharpMeasurement mx({fn(2, {1, 0})});
  const auto r = measure_sharp(x_known(1), mx, 3);
  EXPECT_EQ(r.outcome, std::vector<int>{1});
  EXPECT_EQ(r.posterior, x_known(1));
  EXPECT_EQ(r.table.size(), 2u);
  EXPECT_EQ(r.table.at({0}), Rational(0, 1));
  EXPECT_EQ(r.table.at({1}), Rational(1, 1));
}

TEST(Measurement, ComplementaryVariableIsUniform) {
  const SharpMeasurement mp({fn(2, {0, 1})});
  const auto branches = measurement_branches(x_known(0), mp);
  ASSERT_EQ(branches.size(), 2u);
  for (const auto& b : branches) {
    EXPECT_EQ(b.probability, Rational(1, 2));
    EXPECT_EQ(b.posterior.support_size(), 2u);
    for (const auto& p : b.posterior.support()) EXPECT_EQ(p.p(0), b.outcome.front());
  }
}

TEST(Measurement, XXOnBellIsDeterministic) {
  const auto branches = measurement_branches(bell(), SharpMeasurement({fn(2, {1, 0, 1, 0})}));
  ASSERT_EQ(branches.size(), 1u);
  EXPECT_EQ(branches.front().outcome, std::vector<int>{0});
  EXPECT_EQ(branches.front().probability, Rational(1, 1));
}

TEST(Statistics, EmptyCircuit) {
  const auto stats = statistics(bell(), {});
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats.begin()->first, std::vector<int>{});
  EXPECT_EQ(stats.begin()->second, Rational(1, 1));
}

TEST(Statistics, CnotAnalogueThenZZ) {
  // |+0> analogue: p0 = 0 and x1 = 0 known.
  const auto plus_zero =
      make_epistemic(Subspace(2, 2, {fn(2, {0, 1, 0, 0}), fn(2, {0, 0, 1, 0})}), PhasePoint::zero(2, 2));
  // CNOT(0,1): x1 += x0, p0 += p1.
  const ZdMatrix s = ZdMatrix::from_columns(2, {{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 1}});
  ASSERT_TRUE(phase::is_symplectic(s));
  const std::vector<Step> steps{AffineSymplectic(s, PhasePoint::zero(2, 2)),
                                SharpMeasurement({fn(2, {1, 0, 1, 0})})};
  const auto stats = statistics(plus_zero, steps);
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats.begin()->first, std::vector<int>{0});
}

TEST(Properties, RepeatabilitySupportAndBijectivity) {
  std::mt19937_64 rng(5);
  std::vector<AffineSymplectic> maps12;
  phase::enumerate_affine_symplectics(1, 2, [&](const AffineSymplectic& g) {
    maps12.push_back(g);
    return true;
  });
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const int n = 1 + (trial / 2) % 2;
    const auto s = random_state(d, n, rng);
    ASSERT_EQ(s.support_size(), phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(2 * n - s.known().dim())));
    ASSERT_EQ(s.weight(), Rational(1, static_cast<std::int64_t>(s.support_size())));

    std::uniform_int_distribution<std::uint64_t> pick(1, phase::phase_space_size(d, n) - 1);
    const SharpMeasurement m({ObservableFunctional::from_index(d, n, pick(rng))});
    for (const auto& b : measurement_branches(s, m)) {
      const auto again = measurement_branches(b.posterior, m);
      ASSERT_EQ(again.size(), 1u);
      ASSERT_EQ(again.front().outcome, b.outcome);
    }
    if (d == 2 && n == 1) {
      const auto& g = maps12[static_cast<std::size_t>(trial) % maps12.size()];
      ASSERT_EQ(apply_affine(s, g).support_size(), s.support_size());
    }
  }
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, 6).to_string(), "1/2");
  EXPECT_THROW(Rational(1, 0), InvalidInput);
}
