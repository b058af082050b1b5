#pragma once

// Line-oriented circuit format:
//
//   GATE <name> <wire>...
//   MEAS <paulis> <wire>... -> <var>
//   CORR <name> <wire>... IF <expr>
//
// <paulis> has one letter per listed wire. <expr> combines outcome
// variables and the literals 0/1 with ^ (xor), & (and), ! (not) and
// parentheses. '#' starts a comment.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spekkens/dense.hpp"

namespace spekkens::circuit {

/// Boolean condition over measurement variables.
class Condition {
 public:
  Condition() = default;
  static Condition parse(std::string_view text, std::size_t column_offset = 0);

  bool evaluate(const std::map<std::string, int>& vars) const;
  std::vector<std::string> variables() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

struct GateOp {
  std::string name;
  std::vector<int> wires;
};

struct MeasureOp {
  std::string basis;
  std::vector<int> wires;
  std::string var;
  /// Set for observables that have no letter spelling (qutrit products).
  std::optional<dense::PauliLabel> label;
};

struct CorrectionOp {
  std::string name;
  std::vector<int> wires;
  Condition condition;
};

using Instruction = std::variant<GateOp, MeasureOp, CorrectionOp>;

struct Circuit {
  int d = 2;
  std::vector<Instruction> ops;

  /// One more than the largest wire referenced (0 for an empty circuit).
  int wire_count() const;
  std::string to_text() const;
};

Circuit parse_circuit(std::string_view text, int d = 2);

/// Observable measured by `op` on an n-wire register.
dense::PauliLabel measured_label(const MeasureOp& op, int n, int d);

struct Branch {
  std::vector<std::pair<std::string, int>> outcomes;
  double probability;
  dense::DenseState state;

  std::string outcome_string() const;
};

/// Exhaustive branch tree; branches below `prune` probability are dropped.
std::vector<Branch> run_circuit(const Circuit& circuit, const dense::DenseState& input,
                                double prune = 1e-14);

}  // namespace spekkens::circuit
