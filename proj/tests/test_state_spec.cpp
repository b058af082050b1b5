#include <gtest/gtest.h>

#include "spekkens/state_spec.hpp"

using namespace spekkens;
using dense::DenseState;
using dense::Vector;

namespace {

DenseState amps(int d, int n, std::vector<dense::Complex> a) {
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
  return DenseState(d, n, v);
}

std::size_t column_of(const std::string& text, int d = 2) {
  try {
    state_spec::parse(text, d);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST(StateSpec, GeneratorLists) {
  EXPECT_TRUE(state_spec::parse("+Z").equal_up_to_phase(DenseState::basis(2, 1, 0)));
  EXPECT_TRUE(state_spec::parse("-Z").equal_up_to_phase(DenseState::basis(2, 1, 1)));
  EXPECT_TRUE(state_spec::parse("+XX,+ZZ").equal_up_to_phase(amps(2, 2, {1, 0, 0, 1})));
  EXPECT_TRUE(state_spec::parse(" -XX , +ZZ ").equal_up_to_phase(amps(2, 2, {1, 0, 0, -1})));
  EXPECT_TRUE(state_spec::parse("+Y").equal_up_to_phase(amps(2, 1, {1, {0, 1}})));
  EXPECT_TRUE(state_spec::parse("+Z", 3).equal_up_to_phase(DenseState::basis(3, 1, 0)));
}

TEST(StateSpec, KetLiterals) {
  EXPECT_TRUE(state_spec::parse("0").equal_up_to_phase(DenseState::basis(2, 1, 0)));
  EXPECT_TRUE(state_spec::parse("|10>").equal_up_to_phase(DenseState::basis(2, 2, 2)));
  EXPECT_TRUE(state_spec::parse("+-").equal_up_to_phase(amps(2, 2, {1, -1, 1, -1})));
  EXPECT_TRUE(state_spec::parse("2", 3).equal_up_to_phase(DenseState::basis(3, 1, 2)));
  EXPECT_EQ(state_spec::parse("+++").n(), 3);
}

TEST(StateSpec, GateOnKet) {
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(state_spec::parse("T|+>").equal_up_to_phase(amps(2, 1, {1, {h, h}})));
  EXPECT_TRUE(state_spec::parse("S|+>").equal_up_to_phase(amps(2, 1, {1, {0, 1}})));
  EXPECT_TRUE(state_spec::parse("CZ|++>").equal_up_to_phase(amps(2, 2, {1, 1, 1, -1})));
  EXPECT_TRUE(state_spec::parse("H|00>").equal_up_to_phase(amps(2, 2, {1, 1, 1, 1})));
  EXPECT_EQ(state_spec::parse("CCZ|+++>").n(), 3);
}

TEST(StateSpec, Amplitudes) {
  EXPECT_TRUE(state_spec::parse("[1, 0, 0, 1]").equal_up_to_phase(amps(2, 2, {1, 0, 0, 1})));
  EXPECT_TRUE(state_spec::parse("[1, i]").equal_up_to_phase(amps(2, 1, {1, {0, 1}})));
  EXPECT_TRUE(state_spec::parse("[0.5+0.5i, -0.5i]").equal_up_to_phase(amps(2, 1, {{0.5, 0.5}, {0, -0.5}})));
  EXPECT_EQ(state_spec::parse("[1, 0, 0]", 3).n(), 1);
}

TEST(StateSpec, PositionalDiagnostics) {
  EXPECT_EQ(column_of("+XQ"), 3u);
  EXPECT_EQ(column_of("+XX,+ZQ"), 7u);
  EXPECT_EQ(column_of("+XX"), 4u);
  EXPECT_EQ(column_of("0a1"), 2u);
  EXPECT_EQ(column_of("Q|0>"), 1u);
  EXPECT_EQ(column_of("T|0"), 4u);
  EXPECT_EQ(column_of("[1, x]"), 5u);
  EXPECT_EQ(column_of("[1, 0, 0]"), 1u);
  EXPECT_EQ(column_of("[0, 0]"), 1u);
  EXPECT_EQ(column_of("-", 3), 1u);
  EXPECT_EQ(column_of(""), 1u);
  EXPECT_EQ(column_of("+X,+Z"), 6u);
}
