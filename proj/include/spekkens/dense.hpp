#pragma once

// Brute-force state-vector quantum mechanics for a handful of qudits.
// Wire 0 is the most significant tensor factor.

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spekkens/errors.hpp"
#include "spekkens/phase_algebra.hpp"

namespace spekkens::dense {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kEndToEndTol = 1e-9;

/// Throws GuardExceeded past 6 qubits, 4 qutrits or 2 ququints.
std::size_t checked_dimension(int d, int n);

/// Order D of the phase root ζ = e^{2πi/D}: 4 for qubits, d otherwise.
int phase_order(int d);

/// ζ^k with ζ = e^{2πi/D}.
Complex zeta(int d, long long k);

/// χ(a) = e^{2πia/d}.
Complex chi(int d, long long a);

class DenseOperator;

class DenseState {
 public:
  /// Normalizes the amplitudes; throws InvalidInput on a zero vector.
  DenseState(int d, int n, Vector amplitudes);

  static DenseState basis(int d, int n, std::size_t index);
  /// Product state from single-system kets given as d-vectors, wire 0 first.
  static DenseState product(int d, const std::vector<Vector>& kets);

  int d() const { return d_; }
  int n() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  Matrix density() const { return amp_ * amp_.adjoint(); }

  DenseState evolved(const DenseOperator& u) const;

  /// Same ray, with the largest-magnitude leading amplitude made real
  /// and positive (ties go to the lower index).
  DenseState canonical() const;

  /// |⟨this|other⟩|.
  double overlap(const DenseState& other) const;
  bool equal_up_to_phase(const DenseState& other, double tol = kEndToEndTol) const;

  std::string to_string() const;

 private:
  int d_;
  int n_;
  Vector amp_;
};

class DenseOperator {
 public:
  DenseOperator(int d, int n, Matrix m);
  static DenseOperator identity(int d, int n);

  int d() const { return d_; }
  int n() const { return n_; }
  const Matrix& matrix() const { return m_; }

  DenseOperator operator*(const DenseOperator& o) const;
  DenseOperator adjoint() const;
  DenseOperator scaled(Complex c) const;

  bool is_unitary(double tol = kConstructionTol) const;
  bool is_hermitian(double tol = kConstructionTol) const;
  bool is_diagonal(double tol = kConstructionTol) const;
  bool approx_equal(const DenseOperator& o, double tol = kConstructionTol) const;
  /// Equal up to a global phase; returns that phase when it exists.
  std::optional<Complex> phase_relative_to(const DenseOperator& o, double tol = kConstructionTol) const;

 private:
  int d_;
  int n_;
  Matrix m_;
};

/// ζ^phase Z(p) X(q) with X(q)|k⟩ = |k − q⟩ and Z(p)|k⟩ = χ(kp)|k⟩.
struct PauliLabel {
  int d = 2;
  std::vector<int> q;
  std::vector<int> p;
  int phase = 0;

  int n() const { return static_cast<int>(q.size()); }

  /// Phase-space point (q0, p0, q1, p1, ...).
  phase::PhasePoint point() const;
  static PauliLabel from_point(const phase::PhasePoint& lambda, int phase = 0);

  /// Parses "+XZ", "-YY", "iZ" style strings (qubits: I X Y Z; odd d: I X Z).
  static PauliLabel parse(const std::string& text, int d = 2);
  /// Canonical letter string with sign prefix; qubits only for Y.
  std::string to_string() const;

  bool operator==(const PauliLabel&) const = default;
  auto operator<=>(const PauliLabel&) const = default;
};

DenseOperator pauli(const std::vector<int>& q, const std::vector<int>& p, int d);
DenseOperator pauli(const PauliLabel& label);

/// Product of labels tracked symbolically.
PauliLabel multiply(const PauliLabel& a, const PauliLabel& b);

/// Hermitian qubit label i^{q·p} Z(p)X(q).
PauliLabel hermitian_label(const std::vector<int>& q, const std::vector<int>& p);

/// Lifts a k-wire matrix onto n wires.
Matrix embed(const Matrix& local, const std::vector<int>& wires, int n, int d);

/// Named gate on the given wires of an n-system register. Qubits: X Y Z H S
/// T CNOT CZ CCZ SWAP. Qutrits: X Z H S CNOT (SUM) CZ SWAP.
DenseOperator gate(const std::string& name, const std::vector<int>& wires, int n, int d = 2);
bool is_known_gate(const std::string& name, int d);
int gate_arity(const std::string& name);

/// Projector onto the joint eigenvalue-1 space of commuting labels.
DenseOperator stabilizer_projector(const std::vector<PauliLabel>& generators);

/// The unique joint eigenvalue-1 state; throws InvalidInput when the set is
/// anticommuting, inconsistent or does not fix a single ray.
DenseState stabilizer_state(const std::vector<PauliLabel>& generators);

/// Projector for outcome k of a Pauli observable P with P^d = I:
/// (1/d) Σ_j χ(jk) P^j, i.e. eigenvalue χ(−k). For qubits k=0 is +1.
DenseOperator pauli_outcome_projector(const PauliLabel& label, int k);

struct BornOutcome {
  int label;
  double probability;
  std::optional<DenseState> post;
};

/// Probabilities and collapsed states for a projective decomposition.
std::vector<BornOutcome> born(const DenseState& state, const std::vector<DenseOperator>& projectors);
std::vector<BornOutcome> born(const DenseState& state, const PauliLabel& observable);

struct StabilizerStateInfo {
  std::vector<PauliLabel> generators;
  phase::Subspace lagrangian;
  DenseState state;
  bool css;
  bool real;
};

/// Every pure stabilizer state on n systems, ordered by Lagrangian then by
/// generator eigenvalues.
std::vector<StabilizerStateInfo> enumerate_stabilizer_states(int d, int n);

/// Removes wire `wire`, keeping the branch where it reads `value`; the
/// wire must already be in that basis state.
DenseState discard_wire(const DenseState& state, int wire, int value);
/// Removes a wire that is in the product state `local`.
DenseState discard_wire(const DenseState& state, int wire, const Vector& local);

/// Gaussian amplitudes, normalized; reproducible for a given generator state.
DenseState random_state(int d, int n, std::mt19937_64& rng);

/// a ⊗ b, with a on the leading wires.
DenseState tensor(const DenseState& a, const DenseState& b);

}  // namespace spekkens::dense
