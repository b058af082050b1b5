#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spekkens/dense.hpp"
#include "spekkens/wigner.hpp"

namespace spekkens::subtheory {

using dense::DenseOperator;
using dense::DenseState;
using dense::PauliLabel;
using phase::PhasePoint;
using wigner::WignerSpec;

struct NamedGate {
  std::string name;
  std::vector<int> wires;
  DenseOperator op;

  /// e.g. "CNOT(0,1)".
  std::string label() const;
};

NamedGate named_gate(const std::string& name, const std::vector<int>& wires, int n, int d = 2);

/// Exponent β with T(λ)T(λ') = ζ^β T(λ+λ'), checked against the dense
/// product; throws Error when the product is not a pure power of ζ.
int beta(const PhasePoint& a, const PhasePoint& b, const WignerSpec& spec);

/// Labels T(λ) with β(λ, λ') = 0 for every λ' commuting with λ,
/// in phase-space index order.
std::vector<PauliLabel> allowed_observables(const WignerSpec& spec);

struct AllowedState {
  DenseState state;
  std::vector<PauliLabel> stabilizers;
};

/// Joint eigenstates of every Lagrangian spanned by allowed observables,
/// with generators drawn from the allowed set.
std::vector<AllowedState> allowed_states(const WignerSpec& spec);

struct ClosureReport {
  bool closed = true;
  std::string counterexample;
};

/// Every gate maps every state into the set, up to global phase.
ClosureReport check_closure(const std::vector<NamedGate>& gates, const std::vector<DenseState>& states);

struct GateVerdict {
  NamedGate gate;
  ClosureReport closure;
  std::optional<phase::AffineSymplectic> witness;
  bool covariance_exhaustive = false;
  bool accepted = false;
};

/// Keeps candidates that permute the allowed states and are covariant on them.
std::vector<GateVerdict> allowed_gates(const WignerSpec& spec, const std::vector<NamedGate>& candidates);

/// X, Z, H, S on every wire and CNOT, CZ, SWAP on every ordered pair.
std::vector<NamedGate> clifford_generator_pool(int n, int d = 2);

struct Subtheory {
  std::string name;
  WignerSpec spec;
  std::vector<DenseState> states;
  std::vector<NamedGate> gates;
  std::vector<PauliLabel> observables;
};

/// CSS rebit theory without Hadamards: gates ⟨CNOT(i,j), X_i, Z_i⟩.
Subtheory minimal_rebit_subtheory(int n);
/// The same with the global Hadamard ⊗H added.
Subtheory css_rebit_subtheory(int n);
/// Full odd-d stabilizer mechanics under the gross spec.
Subtheory gross_stabilizer_subtheory(int n, int d = 3);
/// All qubit stabilizer states and Clifford generators under a rebit spec.
Subtheory full_qubit_stabilizer_subtheory(int n, const WignerSpec& spec);

ClosureReport is_closed(const Subtheory& sub);

struct Certificate {
  bool pass = false;
  std::string detail;
};

struct SpekkensReport {
  Certificate closure;
  Certificate nonnegativity;
  Certificate covariance;
  std::vector<std::pair<std::string, std::string>> witnesses;

  bool passed() const { return closure.pass && nonnegativity.pass && covariance.pass; }
};

SpekkensReport is_spekkens_subtheory(const Subtheory& sub);

/// The group generated by unitaries, modulo global phase.
class GateGroup {
 public:
  GateGroup(const std::vector<DenseOperator>& generators, std::size_t guard = 50000);

  std::size_t size() const { return keys_.size(); }
  bool contains(const DenseOperator& u) const;

 private:
  std::vector<std::string> keys_;
};

/// Canonical key of a unitary up to global phase.
std::string phase_free_key(const DenseOperator& u);

}  // namespace spekkens::subtheory
