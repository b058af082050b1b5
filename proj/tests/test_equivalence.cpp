#include <gtest/gtest.h>

#include "spekkens/equivalence.hpp"
#include "spekkens/state_spec.hpp"

using namespace spekkens;
using namespace spekkens::equivalence;
using circuit::parse_circuit;

TEST(Host, MinimalRebitContents) {
  const auto host = host_model("minimal-rebit", 2);
  EXPECT_EQ(host.d(), 2);
  EXPECT_EQ(host.n(), 2);
  EXPECT_EQ(host.gates, (std::set<std::string>{"I", "X", "Z", "CNOT", "SWAP"}));
  EXPECT_EQ(host.observables.size(), 7u);
  EXPECT_EQ(host.states.size(), 20u);
  EXPECT_THROW(host_model("minimal-rebit", 1, 3), InvalidInput);
  EXPECT_THROW(host_model("nonsense", 1), InvalidInput);
  EXPECT_EQ(host_model("gross-stabilizer", 1, 3).states.size(), 12u);
}

TEST(Audit, FlagsOffenders) {
  const auto host = host_model("minimal-rebit", 2);
  EXPECT_TRUE(audit_circuit(parse_circuit("GATE CNOT 0 1\nMEAS ZZ 0 1 -> m\nCORR X 1 IF m"), host).empty());
  const auto bad = audit_circuit(parse_circuit("GATE S 0\nMEAS Y 1 -> m\nGATE H 1"), host);
  ASSERT_EQ(bad.size(), 3u);
  EXPECT_NE(bad[0].find("GATE S 0"), std::string::npos) << bad[0];
  EXPECT_NE(bad[1].find("Y"), std::string::npos) << bad[1];
  EXPECT_FALSE(audit_circuit(parse_circuit("MEAS XZ 0 1 -> m"), host).empty());
}

TEST(Functional, LabelsAndOffsets) {
  const auto spec = wigner::WignerSpec::delfosse_rebit(1);
  const auto z = functional_of(dense::PauliLabel::parse("+Z"), spec);
  EXPECT_EQ(z.functional, phase::ObservableFunctional(2, {1, 0}));
  EXPECT_EQ(z.offset, 0);
  EXPECT_EQ(functional_of(dense::PauliLabel::parse("-Z"), spec).offset, 1);
  EXPECT_EQ(functional_of(dense::PauliLabel::parse("+X"), spec).functional, phase::ObservableFunctional(2, {0, 1}));
}

TEST(Compare, BellCircuit) {
  ToySimulator sim(host_model("minimal-rebit", 2));
  const auto c = parse_circuit("GATE CNOT 0 1\nMEAS ZZ 0 1 -> a\nMEAS XX 0 1 -> b");
  const auto r = compare(sim, c, state_spec::parse("+0"));
  EXPECT_LT(r.max_deviation, 1e-12);
  ASSERT_EQ(r.toy.size(), 1u);
  EXPECT_DOUBLE_EQ(r.toy.at("00"), 1.0);
  EXPECT_NEAR(r.quantum.at("00"), 1.0, 1e-12);
}

TEST(Compare, EmptyCircuit) {
  ToySimulator sim(host_model("minimal-rebit", 1));
  const auto r = compare(sim, parse_circuit(""), state_spec::parse("+"));
  EXPECT_EQ(r.toy.size(), 1u);
  EXPECT_LT(r.max_deviation, 1e-12);
}

TEST(Compare, ConditionedCorrections) {
  ToySimulator sim(host_model("minimal-rebit", 2));
  const auto c = parse_circuit("MEAS X 0 -> m\nCORR Z 0 IF m\nMEAS X 0 -> k\nGATE CNOT 0 1\nMEAS Z 1 -> z");
  const auto r = compare(sim, c, state_spec::parse("0+"));
  EXPECT_LT(r.max_deviation, 1e-12);
  for (const auto& [key, p] : r.toy) EXPECT_EQ(key[1], '0') << key;
}

TEST(Sweep, RebitHosts) {
  for (int n = 1; n <= 3; ++n) {
    ToySimulator sim(host_model("minimal-rebit", n));
    const auto r = random_sweep(sim, 60, 100 + static_cast<std::uint64_t>(n));
    EXPECT_EQ(r.circuits, 60);
    EXPECT_LT(r.max_deviation, 1e-9) << r.worst;
  }
}

TEST(Sweep, GrossHosts) {
  for (int n = 1; n <= 2; ++n) {
    ToySimulator sim(host_model("gross-stabilizer", n, 3));
    const auto r = random_sweep(sim, 60, 7);
    EXPECT_LT(r.max_deviation, 1e-9) << r.worst;
  }
}

TEST(Sweep, Deterministic) {
  ToySimulator a(host_model("minimal-rebit", 2));
  ToySimulator b(host_model("minimal-rebit", 2));
  std::mt19937_64 r1(5), r2(5);
  EXPECT_EQ(random_host_circuit(a.host(), r1, 6).to_text(), random_host_circuit(b.host(), r2, 6).to_text());
  EXPECT_EQ(random_sweep(a, 10, 5).max_deviation, random_sweep(b, 10, 5).max_deviation);
}

TEST(Sensitivity, ForwardGateConventionFails) {
  ToySimulator sim(host_model("gross-stabilizer", 1, 3));
  const auto& g = sim.gate_map("S", {0});
  ASSERT_NE(g, g.inverse());
  const auto s = dense::gate("S", {0}, 1, 3);
  bool forward_mismatch = false;
  for (const auto& psi : sim.host().states) {
    const auto image = sim.embed(psi.evolved(s));
    EXPECT_EQ(toy::apply_affine(sim.embed(psi), g.inverse()), image);
    forward_mismatch = forward_mismatch || toy::apply_affine(sim.embed(psi), g) != image;
  }
  EXPECT_TRUE(forward_mismatch);
}
