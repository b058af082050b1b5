#include <gtest/gtest.h>

#include <random>

#include "spekkens/injection.hpp"
#include "spekkens/state_spec.hpp"

using namespace spekkens;
using namespace spekkens::injection;

namespace {

const Correction& correction_for(const InjectionScheme& s, std::vector<int> m) {
  for (const auto& c : s.corrections) {
    if (c.m == m) return c;
  }
  throw std::runtime_error("missing correction");
}

}  // namespace

TEST(Build, ZCorrectionsArePauli) {
  const auto s = build_injection("Z");
  ASSERT_EQ(s.corrections.size(), 2u);
  EXPECT_EQ(correction_for(s, {0}).name, "I");
  const auto& c = correction_for(s, {1});
  EXPECT_EQ(c.kind, CorrectionKind::Pauli);
  ASSERT_TRUE(c.pauli.has_value());
  EXPECT_EQ(c.pauli->to_string(), "+X");
}

TEST(Build, SCorrectionIsY) {
  const auto s = build_injection("S");
  const auto& c = correction_for(s, {1});
  EXPECT_EQ(c.kind, CorrectionKind::Pauli);
  EXPECT_EQ(c.pauli->to_string(), "+Y");
  EXPECT_EQ(c.tier(), 1);
}

TEST(Build, CzReferenceBranch) {
  const auto s = build_injection("CZ");
  const auto& c = correction_for(s, {0, 1});
  EXPECT_EQ(c.name, "X(1)·Z(0)");
  EXPECT_EQ(c.pauli->to_string(), "+ZX");
}

TEST(Build, CczReferenceBranch) {
  const auto s = build_injection("CCZ");
  const auto& c = correction_for(s, {1, 0, 0});
  EXPECT_EQ(c.kind, CorrectionKind::PauliCZ);
  EXPECT_EQ(c.name, "X(0)·CZ(1,2)");
  EXPECT_EQ(c.tier(), 2);
}

TEST(Build, TCorrectionLeavesHost) {
  const auto s = build_injection("T");
  const auto& c = correction_for(s, {1});
  EXPECT_EQ(c.kind, CorrectionKind::Clifford);
  EXPECT_EQ(c.tier(), 0);
}

TEST(Build, CorrectionsMatchOperatorIdentity) {
  for (const std::string g : {"Z", "S", "T", "CZ", "CCZ"}) {
    const auto s = build_injection(g);
    EXPECT_EQ(s.corrections.size(), std::size_t{1} << s.n) << g;
    for (const auto& c : s.corrections) {
      auto xm = DenseOperator::identity(2, s.n);
      for (int w = 0; w < s.n; ++w) {
        if (c.m[static_cast<std::size_t>(w)] != 0) xm = xm * dense::gate("X", {w}, s.n);
      }
      EXPECT_TRUE(c.op.approx_equal(s.u * xm * s.u.adjoint(), 1e-12)) << g << " " << c.name;
      EXPECT_TRUE(c.verified) << g << " " << c.name;
    }
  }
}

TEST(Build, RejectsNonDiagonal) {
  EXPECT_THROW(build_injection("H", dense::gate("H", {0}, 1)), InvalidInput);
  EXPECT_THROW(build_injection("FOO"), InvalidInput);
}

TEST(Run, SOnPlus) {
  const auto r = run_injection(build_injection("S"), state_spec::parse("+"));
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_TRUE(r.succeeded());
  EXPECT_TRUE(r.audit.passed());
  for (const auto& rec : r.records) EXPECT_TRUE(rec.state.equal_up_to_phase(state_spec::parse("S|+>")));
}

TEST(Run, CzOnPlusPlus) {
  const auto r = run_injection(build_injection("CZ"), state_spec::parse("++"));
  EXPECT_EQ(r.records.size(), 4u);
  EXPECT_TRUE(r.succeeded());
  EXPECT_TRUE(r.audit.passed());
  EXPECT_NEAR(r.probability_sum(), 1.0, 1e-12);
}

TEST(Run, CczOnBasisState) {
  const auto r = run_injection(build_injection("CCZ"), state_spec::parse("110"));
  EXPECT_TRUE(r.succeeded());
  for (const auto& rec : r.records) EXPECT_TRUE(rec.state.equal_up_to_phase(state_spec::parse("110")));
}

TEST(Run, RandomInputsEveryDiagonalGate) {
  std::mt19937_64 rng(50);
  for (const std::string g : {"Z", "S", "T", "CZ", "CCZ"}) {
    const auto scheme = build_injection(g);
    for (int trial = 0; trial < 50; ++trial) {
      const auto input = dense::random_state(2, scheme.n, rng);
      const auto r = run_injection(scheme, input);
      ASSERT_NEAR(r.probability_sum(), 1.0, 1e-9) << g;
      ASSERT_GE(r.min_fidelity(), 1.0 - 1e-9) << g;
    }
  }
}

TEST(Run, TInjectionFlagsItsCorrection) {
  const auto r = run_injection(build_injection("T"), state_spec::parse("+"));
  EXPECT_GE(r.min_fidelity(), 1.0 - 1e-9);
  EXPECT_FALSE(r.audit.passed());
}

TEST(Hadamard, FrozenInputs) {
  for (const auto& [in, out] :
       std::vector<std::pair<std::string, std::string>>{{"0", "+"}, {"+", "0"}, {"[1, i]", "[1+i, 1-i]"}}) {
    const auto r = hadamard_via_cz(state_spec::parse(in));
    EXPECT_TRUE(r.audit.passed()) << in;
    EXPECT_GE(r.min_fidelity(), 1.0 - 1e-9) << in;
    for (const auto& rec : r.records) EXPECT_TRUE(rec.state.equal_up_to_phase(state_spec::parse(out))) << in;
  }
}

TEST(Ccz, DemoOnPlusStates) {
  const auto r = ccz_scheme_demo(state_spec::parse("+++"));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cz_stage.records.size(), 4u);
  EXPECT_EQ(r.ccz_stage.records.size(), 125u);
  EXPECT_TRUE(r.ccz_stage.audit.passed());
  const auto worst = r.ccz_stage.max_resources();
  EXPECT_EQ(worst.at("CCZ|+++>"), 1);
  EXPECT_EQ(worst.at("CZ|++>"), 3);
  for (const auto& [element, count] : r.ccz_stage.audit.elements) {
    EXPECT_TRUE(HostElements::minimal_rebit().allows(element)) << element << " x" << count;
  }
}

TEST(Ccz, EigenstateInput) {
  const auto r = ccz_scheme_demo(state_spec::parse("111"));
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.ccz_stage.min_fidelity(), 1.0 - 1e-9);
}

TEST(Completion, StepOrderAndGroup) {
  const auto r = clifford_completion_demo();
  EXPECT_TRUE(r.passed());
  ASSERT_GE(r.steps.size(), 3u);
  EXPECT_NE(r.steps[0].step.find("CZ"), std::string::npos);
  EXPECT_NE(r.steps[1].step.find("H"), std::string::npos);
  EXPECT_NE(r.steps[2].step.find("S"), std::string::npos);
  EXPECT_EQ(r.clifford_group_size, 11520u);
  EXPECT_NE(r.universality_note.find("CCZ"), std::string::npos);
}

TEST(Minimality, RemovingAnyHostElementBreaksAScheme) {
  const auto plus = state_spec::parse("+");
  const auto pp = state_spec::parse("++");
  const auto host = HostElements::minimal_rebit();
  const auto all_pass = [&](const HostElements& h) {
    return run_injection(build_injection("S"), plus, h).audit.passed() &&
           run_injection(build_injection("CZ"), pp, h).audit.passed() && hadamard_via_cz(plus, h).audit.passed();
  };
  EXPECT_TRUE(all_pass(host));
  for (const std::string element : {"CNOT", "X", "Z", "MEAS Z", "MEAS X"}) {
    EXPECT_FALSE(all_pass(host.without(element))) << element;
  }
}
