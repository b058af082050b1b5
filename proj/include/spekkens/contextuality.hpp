#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spekkens/dense.hpp"
#include "spekkens/injection.hpp"

namespace spekkens::contextuality {

using dense::DenseState;
using dense::PauliLabel;

/// A 3×3 grid of two-qubit Paulis. Lines 0..2 are rows, 3..5 columns.
struct ContextTable {
  std::array<std::array<PauliLabel, 3>, 3> grid;
  /// Required product of the outcomes on each line, ±1.
  std::array<int, 6> signs;

  /// {XI, IX, XX / IZ, ZI, ZZ / XZ, ZX, YY}, third column −.
  static ContextTable standard();
  static ContextTable from_labels(const std::array<std::array<std::string, 3>, 3>& labels,
                                  const std::array<int, 6>& signs);

  std::array<PauliLabel, 3> line(int k) const;
  std::string line_name(int k) const;
  std::vector<std::vector<std::string>> labels() const;
};

struct TableCheck {
  bool commuting = true;
  bool products_match = true;
  /// Operator product of each line as ±1, or 0 when it is not ±I.
  std::array<int, 6> products{};
  std::vector<std::string> problems;

  bool ok() const { return commuting && products_match; }
};

TableCheck check_table(const ContextTable& table);

struct WitnessReport {
  std::string name;
  std::string enabling_gate;
  /// The enumeration found no consistent assignment and the dense checks held.
  bool contradiction = false;
  std::uint64_t assignments_checked = 0;
  std::uint64_t satisfying_assignments = 0;
  int constraints = 0;
  int max_satisfied = 0;
  /// FNV-1a over the satisfied-constraint mask of every assignment.
  std::string digest;
  double classical_bound = 0.0;
  double quantum_value = 0.0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> notes;
  bool dense_checks_pass = true;
};

/// Sweeps all 2^9 ±1 assignments against the six line constraints.
WitnessReport peres_mermin_assignment_search(const ContextTable& table);

/// Square reachable with host observables and S conjugation, rebuilt from
/// the listed observables by search; entries are classified as
/// host-native or S-conjugated.
WitnessReport peres_mermin_s_variant();
ContextTable reconstruct_s_square();

/// Selector bits in the order a, b, c, d, e, α, β, γ.
using Selector = std::array<int, 8>;

struct PmContext {
  std::string name;
  std::string selector_text;
  Selector bits;
  int line;
};

/// The six contexts: rows (d,e), (a,b,c), (α,β,γ,d,e) and columns
/// (a,d,γ), (b,e,γ), (c,d,e,γ).
const std::vector<PmContext>& pm_contexts();
std::optional<PmContext> context_for(const Selector& bits);

struct PmCircuitResult {
  std::string context;
  int sign = 0;
  /// Product of the three line outcomes on each branch.
  std::vector<int> products;
  double probability_sum = 0.0;
  injection::Audit audit;

  bool sign_reproduced() const;
};

/// Runs the context circuit on a two-qubit input. Element order:
/// c: ZZ via CNOT (block 3); γ, first half: CZ block, XX parity via CNOT
/// and X on wire 0 (block 6, reads YY), CZ block; a: Z on wire 1 (block 1);
/// b: Z on wire 0 (block 2); α: CZ block; e: X on wire 1 (block 4); d: X on
/// wire 0 (block 5); β: CZ block; γ, second half: CZ block, X on wire 0
/// then wire 1 (blocks 6a, 6b), CZ block. Coarse parity readouts come
/// before the single-wire ones they must stay compatible with. CZ blocks
/// are injections; with `cz_injection` false they fall back to a bare CZ
/// gate, which the audit rejects.
PmCircuitResult peres_mermin_circuit(const DenseState& input, const Selector& bits, bool cz_injection = true);

/// GHZ eigenvalues, the 64-assignment sweep, and the observable audit.
WitnessReport ghz_paradox();

/// Correlators on (|00⟩ − |11⟩)/√2, win probability, and the sweep over the
/// 16 deterministic strategies.
WitnessReport chsh_game();

}  // namespace spekkens::contextuality
