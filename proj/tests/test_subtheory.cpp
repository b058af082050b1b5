#include <gtest/gtest.h>

#include <random>

#include "spekkens/state_spec.hpp"
#include "spekkens/subtheory.hpp"

using namespace spekkens;
using namespace spekkens::subtheory;

namespace {

std::vector<std::string> labels(const std::vector<PauliLabel>& ls) {
  std::vector<std::string> out;
  for (const auto& l : ls) out.push_back(l.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

bool has_state(const std::vector<DenseState>& states, const DenseState& s) {
  return std::any_of(states.begin(), states.end(), [&](const DenseState& t) { return t.equal_up_to_phase(s); });
}

/// True when the label is a tensor of I/X only or I/Z only.
bool non_mixing(const PauliLabel& l) {
  bool has_x = false, has_z = false;
  for (int j = 0; j < l.n(); ++j) {
    has_x = has_x || l.q[static_cast<std::size_t>(j)] != 0;
    has_z = has_z || l.p[static_cast<std::size_t>(j)] != 0;
  }
  return !(has_x && has_z);
}

}  // namespace

TEST(Beta, ZeroPointAndOrdering) {
  const auto spec = WignerSpec::delfosse_rebit(1);
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(beta(PhasePoint::zero(2, 1), spec.point(i), spec), 0);
  const PhasePoint x(2, {1, 0});
  const PhasePoint z(2, {0, 1});
  EXPECT_NE(beta(x, z, spec), beta(z, x, spec));
}

TEST(Beta, GrossMatchesDenseProduct) {
  const auto spec = WignerSpec::gross(3, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, spec.points() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = spec.point(pick(rng));
    const auto b = spec.point(pick(rng));
    const int e = beta(a, b, spec);
    EXPECT_TRUE((wigner::weyl(a, spec) * wigner::weyl(b, spec))
                    .approx_equal(wigner::weyl(a + b, spec).scaled(dense::zeta(3, e)), 1e-9));
  }
}

TEST(AllowedObservables, RebitSingleQubit) {
  EXPECT_EQ(labels(allowed_observables(WignerSpec::delfosse_rebit(1))), (std::vector<std::string>{"+I", "+X", "+Z"}));
}

TEST(AllowedObservables, RebitTwoQubits) {
  EXPECT_EQ(labels(allowed_observables(WignerSpec::delfosse_rebit(2))),
            (std::vector<std::string>{"+II", "+IX", "+IZ", "+XI", "+XX", "+ZI", "+ZZ"}));
}

TEST(AllowedObservables, RebitIsNonMixingSetUpToThreeQubits) {
  for (int n = 1; n <= 3; ++n) {
    const auto spec = WignerSpec::delfosse_rebit(n);
    std::vector<std::string> expected;
    for (std::uint64_t i = 0; i < spec.points(); ++i) {
      const auto l = wigner::weyl_label(spec.point(i), spec);
      if (non_mixing(l)) expected.push_back(l.to_string());
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(labels(allowed_observables(spec)), expected) << "n=" << n;
  }
}

TEST(AllowedObservables, GrossQutritIsEverything) {
  EXPECT_EQ(allowed_observables(WignerSpec::gross(3, 1)).size(), 9u);
}

TEST(AllowedStates, Counts) {
  const auto one = allowed_states(WignerSpec::delfosse_rebit(1));
  ASSERT_EQ(one.size(), 4u);
  for (const auto* s : {"0", "1", "+", "-"}) EXPECT_TRUE(std::any_of(one.begin(), one.end(), [&](const AllowedState& a) {
    return a.state.equal_up_to_phase(state_spec::parse(s));
  })) << s;
  std::vector<DenseState> two;
  for (const auto& a : allowed_states(WignerSpec::delfosse_rebit(2))) two.push_back(a.state);
  EXPECT_EQ(two.size(), 20u);
  EXPECT_TRUE(has_state(two, state_spec::parse("+XX,+ZZ")));
  EXPECT_FALSE(has_state(two, state_spec::parse("+YI,+IZ")));
  EXPECT_FALSE(has_state(two, state_spec::parse("CZ|++>")));
  EXPECT_EQ(allowed_states(WignerSpec::gross(3, 1)).size(), 12u);
}

TEST(AllowedStates, EveryTableIsACosetIndicator) {
  for (const auto& spec : {WignerSpec::delfosse_rebit(2), WignerSpec::gross(3, 1), WignerSpec::gross(3, 2)}) {
    for (const auto& a : allowed_states(spec)) {
      ASSERT_TRUE(wigner::is_coset_indicator(wigner::wigner_of_state(a.state, spec))) << a.state.to_string();
    }
  }
}

TEST(AllowedGates, RebitFilter) {
  const auto verdicts = allowed_gates(WignerSpec::delfosse_rebit(2), clifford_generator_pool(2));
  std::map<std::string, bool> accepted;
  for (const auto& v : verdicts) accepted[v.gate.label()] = v.accepted;
  EXPECT_TRUE(accepted.at("X(0)"));
  EXPECT_TRUE(accepted.at("Z(1)"));
  EXPECT_TRUE(accepted.at("CNOT(0,1)"));
  EXPECT_TRUE(accepted.at("CNOT(1,0)"));
  EXPECT_TRUE(accepted.at("SWAP(0,1)"));
  EXPECT_FALSE(accepted.at("S(0)"));
  EXPECT_FALSE(accepted.at("CZ(0,1)"));
  EXPECT_FALSE(accepted.at("H(0)"));
}

TEST(AllowedGates, SRejectedByClosure) {
  const auto verdicts = allowed_gates(WignerSpec::delfosse_rebit(1), {named_gate("S", {0}, 1)});
  ASSERT_EQ(verdicts.size(), 1u);
  EXPECT_FALSE(verdicts[0].closure.closed);
  EXPECT_FALSE(verdicts[0].accepted);
}

TEST(Closure, MinimalRebitAndCounterexample) {
  for (int n : {1, 2}) EXPECT_TRUE(is_closed(minimal_rebit_subtheory(n)).closed);
  auto with_s = minimal_rebit_subtheory(1);
  with_s.gates.push_back(named_gate("S", {0}, 1));
  const auto r = is_closed(with_s);
  EXPECT_FALSE(r.closed);
  EXPECT_NE(r.counterexample.find("S(0)"), std::string::npos) << r.counterexample;
  EXPECT_TRUE(is_closed(gross_stabilizer_subtheory(1)).closed);
}

TEST(MinimalRebit, GroupContentsAtTwoQubits) {
  const auto sub = minimal_rebit_subtheory(2);
  std::vector<DenseOperator> gens;
  for (const auto& g : sub.gates) gens.push_back(g.op);
  const GateGroup group(gens);
  EXPECT_TRUE(group.contains(dense::gate("SWAP", {0, 1}, 2)));
  EXPECT_TRUE(group.contains(dense::gate("CNOT", {1, 0}, 2) * dense::gate("X", {0}, 2)));
  EXPECT_FALSE(group.contains(dense::gate("H", {0}, 2) * dense::gate("H", {1}, 2)));
  EXPECT_FALSE(group.contains(dense::gate("CZ", {0, 1}, 2)));
  EXPECT_FALSE(group.contains(dense::gate("S", {0}, 2)));
}

TEST(Spekkens, NamedSubtheoriesPass) {
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(is_spekkens_subtheory(minimal_rebit_subtheory(n)).passed()) << n;
  EXPECT_TRUE(is_spekkens_subtheory(css_rebit_subtheory(2)).passed());
  EXPECT_TRUE(is_spekkens_subtheory(gross_stabilizer_subtheory(1)).passed());
  EXPECT_TRUE(is_spekkens_subtheory(gross_stabilizer_subtheory(2)).passed());
}

TEST(Spekkens, FullQubitStabilizerFailsUnderEverySpec) {
  for (const auto& spec : {WignerSpec::delfosse_rebit(2), WignerSpec::factorisable_rebit(2)}) {
    const auto r = is_spekkens_subtheory(full_qubit_stabilizer_subtheory(2, spec));
    EXPECT_FALSE(r.passed()) << spec.label();
    EXPECT_FALSE(r.nonnegativity.pass) << spec.label();
  }
}

TEST(GateGroup, PhaseFreeKeys) {
  const auto x = dense::gate("X", {0}, 1);
  EXPECT_EQ(phase_free_key(x), phase_free_key(x.scaled({0, 1})));
  EXPECT_NE(phase_free_key(x), phase_free_key(dense::gate("Z", {0}, 1)));
  EXPECT_EQ(GateGroup({dense::gate("H", {0}, 1), dense::gate("S", {0}, 1)}).size(), 24u);
}
