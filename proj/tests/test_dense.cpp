#include <gtest/gtest.h>

#include <random>

#include "spekkens/dense.hpp"

using namespace spekkens;
using namespace spekkens::dense;

namespace {

constexpr double kTol = 1e-12;

DenseState ket(int d, std::vector<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  const int n = d == 2 ? static_cast<int>(std::log2(amps.size()) + 0.5) : 1;
  return DenseState(d, n, v);
}

PauliLabel random_label(int d, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, d - 1);
  PauliLabel l;
  l.d = d;
  for (int j = 0; j < n; ++j) {
    l.q.push_back(digit(rng));
    l.p.push_back(digit(rng));
  }
  l.phase = std::uniform_int_distribution<int>(0, phase_order(d) - 1)(rng);
  return l;
}

/// The label equal to `m` up to a power of ζ, if any.
std::optional<PauliLabel> as_pauli(const DenseOperator& m) {
  const int d = m.d();
  const int n = m.n();
  const auto points = phase::phase_space_size(d, n);
  for (std::uint64_t i = 0; i < points; ++i) {
    const auto base = PauliLabel::from_point(phase::PhasePoint::from_index(d, n, i));
    for (int ph = 0; ph < phase_order(d); ++ph) {
      auto l = base;
      l.phase = ph;
      if (pauli(l).approx_equal(m, 1e-9)) return l;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST(Pauli, FrozenExamples) {
  EXPECT_TRUE(pauli({0}, {0}, 2).approx_equal(DenseOperator::identity(2, 1), kTol));
  Matrix zx(2, 2);
  zx << 0, 1, -1, 0;
  EXPECT_TRUE(pauli({1}, {1}, 2).approx_equal(DenseOperator(2, 1, zx), kTol));
  EXPECT_EQ(PauliLabel::parse("Y").to_string(), "+Y");
  EXPECT_EQ(PauliLabel::parse("-XZ").to_string(), "-XZ");
}

TEST(Pauli, ParseErrorsCarryColumns) {
  try {
    PauliLabel::parse("+XQ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(PauliLabel::parse("Y", 3), ParseError);
  EXPECT_THROW(PauliLabel::parse("-Z", 3), ParseError);
}

TEST(Pauli, MultiplyMatchesDenseProduct) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const int n = 1 + trial % 2;
    const auto a = random_label(d, n, rng);
    const auto b = random_label(d, n, rng);
    ASSERT_TRUE((pauli(a) * pauli(b)).approx_equal(pauli(multiply(a, b)), 1e-10))
        << a.to_string() << " * " << b.to_string();
  }
}

TEST(Gates, UnitaryAndDiagonal) {
  for (const std::string name : {"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "CCZ", "SWAP"}) {
    std::vector<int> wires(static_cast<std::size_t>(gate_arity(name)));
    for (std::size_t i = 0; i < wires.size(); ++i) wires[i] = static_cast<int>(i);
    EXPECT_TRUE(gate(name, wires, 3).is_unitary()) << name;
  }
  for (const std::string name : {"X", "Z", "H", "S", "CNOT", "CZ", "SWAP"}) {
    std::vector<int> wires(static_cast<std::size_t>(gate_arity(name)));
    for (std::size_t i = 0; i < wires.size(); ++i) wires[i] = static_cast<int>(i);
    EXPECT_TRUE(gate(name, wires, 2, 3).is_unitary()) << name;
  }
  EXPECT_TRUE(gate("CZ", {0, 1}, 2).is_diagonal());
  EXPECT_TRUE(gate("CCZ", {0, 1, 2}, 3).is_diagonal());
  EXPECT_THROW(gate("T", {0}, 1, 3), InvalidInput);
  EXPECT_THROW(gate("CNOT", {0}, 2), InvalidInput);
}

TEST(Gates, CliffordConjugationGivesSignedPaulisExhaustive) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<DenseOperator> cliffords;
    for (int a = 0; a < n; ++a) {
      for (const std::string name : {"X", "Y", "Z", "H", "S"}) cliffords.push_back(gate(name, {a}, n));
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        cliffords.push_back(gate("CNOT", {a, b}, n));
        if (a < b) {
          cliffords.push_back(gate("CZ", {a, b}, n));
          cliffords.push_back(gate("SWAP", {a, b}, n));
        }
      }
    }
    const auto points = phase::phase_space_size(2, n);
    for (const auto& u : cliffords) {
      for (std::uint64_t i = 0; i < points; ++i) {
        const auto p = pauli(hermitian_label(PauliLabel::from_point(phase::PhasePoint::from_index(2, n, i)).q,
                                             PauliLabel::from_point(phase::PhasePoint::from_index(2, n, i)).p));
        const auto image = as_pauli(u * p * u.adjoint());
        ASSERT_TRUE(image.has_value());
        ASSERT_TRUE(pauli(*image).is_hermitian(1e-9)) << image->to_string();
      }
    }
  }
  const auto t_image = as_pauli(gate("T", {0}, 1) * pauli(PauliLabel::parse("X")) * gate("T", {0}, 1).adjoint());
  EXPECT_FALSE(t_image.has_value());
}

TEST(Stabilizer, FrozenStates) {
  EXPECT_TRUE(stabilizer_state({PauliLabel::parse("+Z")}).equal_up_to_phase(DenseState::basis(2, 1, 0)));
  EXPECT_TRUE(stabilizer_state({PauliLabel::parse("+XX"), PauliLabel::parse("+ZZ")})
                  .equal_up_to_phase(ket(2, {1, 0, 0, 1})));
  EXPECT_TRUE(stabilizer_state({PauliLabel::parse("-XX"), PauliLabel::parse("+ZZ")})
                  .equal_up_to_phase(ket(2, {1, 0, 0, -1})));
  EXPECT_THROW(stabilizer_state({PauliLabel::parse("+X"), PauliLabel::parse("+Z")}), InvalidInput);
}

TEST(Stabilizer, EnumerationCounts) {
  EXPECT_EQ(enumerate_stabilizer_states(2, 1).size(), 6u);
  EXPECT_EQ(enumerate_stabilizer_states(3, 1).size(), 12u);
  EXPECT_EQ(enumerate_stabilizer_states(3, 2).size(), 360u);
  const auto two = enumerate_stabilizer_states(2, 2);
  ASSERT_EQ(two.size(), 60u);
  const auto css = std::count_if(two.begin(), two.end(), [](const StabilizerStateInfo& s) { return s.css; });
  const auto real = std::count_if(two.begin(), two.end(), [](const StabilizerStateInfo& s) { return s.real; });
  EXPECT_EQ(css, 20);
  EXPECT_EQ(real, 24);
  for (std::size_t i = 0; i < two.size(); ++i) {
    for (std::size_t j = i + 1; j < two.size(); ++j) ASSERT_FALSE(two[i].state.equal_up_to_phase(two[j].state));
  }
}

TEST(Born, FrozenExamples) {
  const auto z = PauliLabel::parse("Z");
  const auto zero = born(DenseState::basis(2, 1, 0), z);
  ASSERT_EQ(zero.size(), 2u);
  EXPECT_NEAR(zero[0].probability, 1.0, kTol);
  EXPECT_NEAR(zero[1].probability, 0.0, kTol);
  const auto plus = born(ket(2, {1, 1}), z);
  EXPECT_NEAR(plus[0].probability, 0.5, kTol);
  EXPECT_NEAR(plus[1].probability, 0.5, kTol);
  const auto bell = born(ket(2, {1, 0, 0, 1}), PauliLabel::parse("XX"));
  EXPECT_NEAR(bell[0].probability, 1.0, kTol);
}

TEST(Born, ProbabilitiesSumToOne) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const auto s = random_state(d, 2, rng);
    auto l = random_label(d, 2, rng);
    if (l.point().is_zero()) continue;
    l = d == 2 ? hermitian_label(l.q, l.p) : PauliLabel{d, l.q, l.p, 0};
    double total = 0.0;
    for (const auto& o : born(s, l)) total += o.probability;
    ASSERT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(States, DiscardAndTensor) {
  const auto plus = ket(2, {1, 1});
  const auto zero = DenseState::basis(2, 1, 0);
  const auto joint = tensor(plus, zero);
  EXPECT_TRUE(discard_wire(joint, 1, 0).equal_up_to_phase(plus));
  Vector local(2);
  local << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(discard_wire(joint, 0, local).equal_up_to_phase(zero));
  EXPECT_THROW(DenseState(2, 2, Vector::Zero(4)), InvalidInput);
  EXPECT_THROW(DenseState(2, 2, Vector::Ones(3)), DimensionMismatch);
}
