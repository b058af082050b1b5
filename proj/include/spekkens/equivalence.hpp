#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spekkens/circuit.hpp"
#include "spekkens/toy_model.hpp"
#include "spekkens/wigner.hpp"

namespace spekkens::equivalence {

using circuit::Circuit;
using dense::DenseState;
using dense::PauliLabel;

/// A free subtheory in which circuits can be run on both sides.
struct HostModel {
  std::string name;
  wigner::WignerSpec spec;
  std::set<std::string> gates;
  std::vector<PauliLabel> observables;
  std::vector<DenseState> states;

  int d() const { return spec.d; }
  int n() const { return spec.n; }
};

/// "minimal-rebit" (d = 2) or "gross-stabilizer" (odd d).
HostModel host_model(const std::string& name, int n, int d = 0);

/// Circuit elements outside the host, one message per offender.
std::vector<std::string> audit_circuit(const Circuit& c, const HostModel& host);

/// Toy functional measured by a Pauli label, plus the offset c with
/// toy outcome σ = quantum outcome k + c.
struct MeasuredFunctional {
  phase::ObservableFunctional functional;
  int offset;
};

MeasuredFunctional functional_of(const PauliLabel& label, const wigner::WignerSpec& spec);

using Distribution = std::map<std::string, double>;

/// Runs host circuits in the toy model; gate maps are fitted once per
/// gate and wire tuple.
class ToySimulator {
 public:
  explicit ToySimulator(HostModel host);

  const HostModel& host() const { return host_; }
  toy::EpistemicState embed(const DenseState& input) const;
  /// G with W_{UρU†}(λ) = W_ρ(G(λ)).
  const phase::AffineSymplectic& gate_map(const std::string& name, const std::vector<int>& wires);
  /// Exact outcome distribution keyed by the concatenated outcome digits.
  std::map<std::string, toy::Rational> run(const Circuit& c, const DenseState& input);

 private:
  HostModel host_;
  std::map<std::pair<std::string, std::vector<int>>, phase::AffineSymplectic> cache_;
};

Distribution dense_distribution(const Circuit& c, const DenseState& input);

struct Comparison {
  Distribution toy;
  Distribution quantum;
  double max_deviation = 0.0;
};

Comparison compare(ToySimulator& sim, const Circuit& c, const DenseState& input);

/// A random host circuit of the given length over gates, measurements and
/// classically controlled corrections.
Circuit random_host_circuit(const HostModel& host, std::mt19937_64& rng, int length);

struct SweepReport {
  int circuits = 0;
  double max_deviation = 0.0;
  std::string worst;
};

SweepReport random_sweep(ToySimulator& sim, int count, std::uint64_t seed);

}  // namespace spekkens::equivalence
