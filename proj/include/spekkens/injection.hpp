#pragma once

// State injection of diagonal gates. The input sits on wires 0..n-1 and the
// resource U|+>^n is appended behind it. CNOTs run from each resource wire
// to its input wire, the inputs are measured in Z with outcome bits m, and
// the correction U X^m U† is applied as X^m followed by a diagonal part
// built from Z, S, CZ and a global phase. CZ factors are realized by a
// nested CZ injection, so only host elements and resource states appear.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spekkens/dense.hpp"

namespace spekkens::injection {

using dense::DenseOperator;
using dense::DenseState;

enum class CorrectionKind { Pauli, PauliCZ, Clifford, NonClifford };

std::string to_string(CorrectionKind kind);

struct Correction {
  std::vector<int> m;
  DenseOperator op;
  CorrectionKind kind = CorrectionKind::NonClifford;
  std::vector<int> x_wires;
  std::vector<int> z_wires;
  std::vector<int> s_wires;
  std::vector<std::pair<int, int>> cz_pairs;
  /// op = phase · (diagonal part) · X^m.
  dense::Complex phase{1.0, 0.0};
  /// e.g. "X(0)·CZ(1,2)"; "I" for the identity.
  std::string name;
  /// Hermitian Pauli equal to op up to phase, for Pauli corrections.
  std::optional<dense::PauliLabel> pauli;
  /// Reassembling the decomposition reproduces op up to phase.
  bool verified = false;

  /// 1 when only host generators are needed, 2 when injected CZ is also
  /// needed, 0 when the correction leaves the host.
  int tier() const;
};

struct InjectionScheme {
  std::string gate;
  int n = 0;
  DenseOperator u;
  DenseState resource;
  std::vector<Correction> corrections;

  std::string resource_name() const;
};

/// Throws InvalidInput for non-diagonal U.
InjectionScheme build_injection(const std::string& gate, const DenseOperator& u);
/// Named diagonal gate: Z, S, T, CZ or CCZ.
InjectionScheme build_injection(const std::string& gate);

/// Circuit elements the host allows: gate names, measured bases as
/// "MEAS X", free preparations as "PREP |+>", and "DISCARD".
struct HostElements {
  std::set<std::string> elements;

  static HostElements minimal_rebit();
  HostElements without(const std::string& element) const;
  bool allows(const std::string& element) const { return elements.count(element) > 0; }
};

struct Audit {
  std::map<std::string, int> elements;
  std::map<std::string, int> resources;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

struct InjectionRecord {
  std::vector<int> outcomes;
  double probability = 0.0;
  std::vector<std::string> corrections;
  DenseState state;
  double fidelity = 0.0;
  bool available = true;
  std::map<std::string, int> resources;
};

struct InjectionReport {
  std::string gate;
  int n = 0;
  std::vector<InjectionRecord> records;
  Audit audit;

  double probability_sum() const;
  double min_fidelity() const;
  /// Largest number of each resource consumed along a single branch.
  std::map<std::string, int> max_resources() const;
  bool succeeded(double tol = dense::kEndToEndTol) const;
};

struct Branch {
  explicit Branch(DenseState s) : state(std::move(s)) {}

  DenseState state;
  /// Every Z or X outcome in order, including those inside gadgets.
  std::vector<int> outcomes;
  /// Named measurements only.
  std::vector<std::pair<std::string, int>> readouts;
  double probability = 1.0;
  std::vector<std::string> corrections;
  bool available = true;
  std::map<std::string, int> resources;
};

/// Exhaustive branch evolution over host elements and injected gates,
/// recording every element used.
class GadgetRunner {
 public:
  explicit GadgetRunner(HostElements host);

  const Audit& audit() const { return audit_; }
  void use(const std::string& element);

  void gate(Branch& branch, const std::string& name, const std::vector<int>& wires);
  /// Three alternating CNOTs.
  void swap(Branch& branch, int a, int b);
  /// Single-wire Pauli measurement; outcome 0 is the +1 eigenvalue.
  std::vector<Branch> measure(std::vector<Branch> branches, char basis, int wire, const std::string& readout = "");
  /// Injects the scheme's gate on `targets`; the output stays on `targets`.
  std::vector<Branch> inject(Branch branch, const InjectionScheme& scheme, const std::vector<int>& targets);
  std::vector<Branch> inject_all(std::vector<Branch> branches, const InjectionScheme& scheme,
                                 const std::vector<int>& targets);

 private:
  std::vector<Branch> correct(Branch branch, const Correction& c, const std::vector<int>& targets);

  HostElements host_;
  InjectionScheme cz_;
  Audit audit_;
};

/// Full branch tree of the scheme on `input`, compared against U·input.
InjectionReport run_injection(const InjectionScheme& scheme, const DenseState& input,
                              const HostElements& host = HostElements::minimal_rebit());

/// ψ ⊗ |+⟩, injected CZ, X measurement of wire 0 with outcome m and the
/// correction X^m on wire 1; the result is Hψ.
InjectionReport hadamard_via_cz(const DenseState& input,
                                const HostElements& host = HostElements::minimal_rebit());

struct CczDemoReport {
  InjectionReport cz_stage;
  InjectionReport ccz_stage;

  bool passed() const;
};

/// CZ injection on |++⟩, then CCZ injection on `input` with CZ factors of
/// the corrections realized by nested CZ injections.
CczDemoReport ccz_scheme_demo(const DenseState& input,
                              const HostElements& host = HostElements::minimal_rebit());

struct StepCertificate {
  std::string step;
  std::vector<std::string> elements;
  bool audit_passed = false;
  bool verified = false;
  std::string detail;

  bool passed() const { return audit_passed && verified; }
};

struct CompletionReport {
  std::vector<StepCertificate> steps;
  std::size_t clifford_group_size = 0;
  std::string universality_note;

  bool passed() const;
};

/// CZ injection, then H from CZ, then S injection; checks that {H, S, CNOT}
/// generates the two-qubit Clifford group and that CZ conjugation yields
/// XZ, ZX and YY.
CompletionReport clifford_completion_demo(const HostElements& host = HostElements::minimal_rebit(),
                                          std::uint64_t seed = 0);

}  // namespace spekkens::injection
