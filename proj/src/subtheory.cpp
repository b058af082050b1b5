#include "spekkens/subtheory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace spekkens::subtheory {

using phase::mod;

std::string NamedGate::label() const {
  std::string s = name + "(";
  for (std::size_t i = 0; i < wires.size(); ++i) s += (i ? "," : "") + std::to_string(wires[i]);
  return s + ")";
}

NamedGate named_gate(const std::string& name, const std::vector<int>& wires, int n, int d) {
  return {name, wires, dense::gate(name, wires, n, d)};
}

int beta(const PhasePoint& a, const PhasePoint& b, const WignerSpec& spec) {
  const int big_d = dense::phase_order(spec.d);
  long long qp = 0;
  for (int j = 0; j < a.n(); ++j) qp += static_cast<long long>(a.x(j)) * b.p(j);
  const PhasePoint sum = a + b;
  const int exponent = mod(spec.phase(a) + spec.phase(b) - spec.phase(sum) + (big_d / spec.d) * qp, big_d);
  const auto lhs = wigner::weyl(a, spec) * wigner::weyl(b, spec);
  const auto rhs = wigner::weyl(sum, spec).scaled(dense::zeta(spec.d, exponent));
  if (!lhs.approx_equal(rhs, 1e-9)) {
    throw Error("Weyl product " + a.to_string() + "·" + b.to_string() + " is not a power of the phase root");
  }
  return exponent;
}

std::vector<PauliLabel> allowed_observables(const WignerSpec& spec) {
  std::vector<PauliLabel> out;
  const std::uint64_t points = spec.points();
  for (std::uint64_t i = 0; i < points; ++i) {
    const auto l = spec.point(i);
    bool ok = true;
    for (std::uint64_t j = 0; j < points && ok; ++j) {
      const auto m = spec.point(j);
      if (phase::symplectic_product(l, m) != 0) continue;
      ok = beta(l, m, spec) == 0;
    }
    if (ok) out.push_back(wigner::weyl_label(l, spec));
  }
  return out;
}

std::vector<AllowedState> allowed_states(const WignerSpec& spec) {
  std::set<PhasePoint> allowed;
  for (const auto& l : allowed_observables(spec)) allowed.insert(l.point());
  const int big_d = dense::phase_order(spec.d);
  std::vector<AllowedState> out;
  for (const auto& lag : phase::enumerate_lagrangians(spec.d, spec.n)) {
    std::vector<PauliLabel> base;
    phase::Subspace span(spec.d, spec.n);
    for (const auto& v : lag.elements()) {
      const auto point = v.as<phase::PointTag>();
      if (!allowed.count(point) || span.contains(v)) continue;
      span = span + phase::Subspace(spec.d, spec.n, {v});
      base.push_back(wigner::weyl_label(point, spec));
    }
    if (span != lag) continue;
    const std::uint64_t combos = phase::ipow(static_cast<std::uint64_t>(spec.d), static_cast<unsigned>(spec.n));
    for (std::uint64_t c = 0; c < combos; ++c) {
      auto gens = base;
      std::uint64_t r = c;
      for (std::size_t j = gens.size(); j-- > 0;) {
        const int s = static_cast<int>(r % static_cast<std::uint64_t>(spec.d));
        r /= static_cast<std::uint64_t>(spec.d);
        gens[j].phase = mod(gens[j].phase + (big_d / spec.d) * s, big_d);
      }
      out.push_back({dense::stabilizer_state(gens), gens});
    }
  }
  return out;
}

namespace {

bool member(const DenseState& s, const std::vector<DenseState>& states) {
  for (const auto& t : states) {
    if (s.equal_up_to_phase(t)) return true;
  }
  return false;
}

std::vector<DenseState> just_states(const std::vector<AllowedState>& a) {
  std::vector<DenseState> out;
  for (const auto& s : a) out.push_back(s.state);
  return out;
}

}  // namespace

ClosureReport check_closure(const std::vector<NamedGate>& gates, const std::vector<DenseState>& states) {
  for (const auto& g : gates) {
    for (const auto& s : states) {
      if (!member(s.evolved(g.op), states)) {
        return {false, g.label() + " maps " + s.to_string() + " outside the state set"};
      }
    }
  }
  return {};
}

std::vector<NamedGate> clifford_generator_pool(int n, int d) {
  std::vector<NamedGate> pool;
  for (const char* name : {"X", "Z", "H", "S"}) {
    for (int w = 0; w < n; ++w) pool.push_back(named_gate(name, {w}, n, d));
  }
  for (const char* name : {"CNOT", "CZ", "SWAP"}) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        if (std::string(name) != "CNOT" && b < a) continue;
        pool.push_back(named_gate(name, {a, b}, n, d));
      }
    }
  }
  return pool;
}

namespace {

struct CovarianceOutcome {
  std::optional<phase::AffineSymplectic> witness;
  bool exhaustive;
};

CovarianceOutcome covariance_for(const NamedGate& g, const WignerSpec& spec, const std::vector<DenseState>& states) {
  const std::uint64_t order = phase::symplectic_group_order(spec.n, spec.d);
  if (order <= phase::kAffineGuard / spec.points()) {
    auto fit = wigner::fit_covariance(g.op, spec, states);
    return {fit.witness, fit.exhaustive};
  }
  const int k = static_cast<int>(g.wires.size());
  const auto local_spec = WignerSpec::by_name(spec.label(), spec.d, k);
  auto fit = wigner::fit_covariance_local(g.name, g.wires, spec, just_states(allowed_states(local_spec)), states);
  return {fit.witness, false};
}

}  // namespace

std::vector<GateVerdict> allowed_gates(const WignerSpec& spec, const std::vector<NamedGate>& candidates) {
  const auto states = just_states(allowed_states(spec));
  std::vector<GateVerdict> out;
  for (const auto& c : candidates) {
    GateVerdict v{c, check_closure({c}, states), std::nullopt, false, false};
    if (v.closure.closed) {
      auto cov = covariance_for(c, spec, states);
      v.witness = cov.witness;
      v.covariance_exhaustive = cov.exhaustive;
    }
    v.accepted = v.closure.closed && v.witness.has_value();
    out.push_back(std::move(v));
  }
  return out;
}

Subtheory minimal_rebit_subtheory(int n) {
  Subtheory s{"minimal-rebit", WignerSpec::delfosse_rebit(n), {}, {}, {}};
  s.states = just_states(allowed_states(s.spec));
  for (int w = 0; w < n; ++w) s.gates.push_back(named_gate("X", {w}, n));
  for (int w = 0; w < n; ++w) s.gates.push_back(named_gate("Z", {w}, n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) s.gates.push_back(named_gate("CNOT", {a, b}, n));
    }
  }
  s.observables = allowed_observables(s.spec);
  return s;
}

Subtheory css_rebit_subtheory(int n) {
  Subtheory s = minimal_rebit_subtheory(n);
  s.name = "css-rebit";
  DenseOperator hh = DenseOperator::identity(2, n);
  for (int w = 0; w < n; ++w) hh = hh * dense::gate("H", {w}, n);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) all[static_cast<std::size_t>(w)] = w;
  s.gates.push_back({"H^n", all, hh});
  return s;
}

Subtheory gross_stabilizer_subtheory(int n, int d) {
  Subtheory s{"gross-stabilizer", WignerSpec::gross(d, n), {}, {}, {}};
  s.states = just_states(allowed_states(s.spec));
  for (const char* name : {"X", "Z", "H", "S"}) {
    for (int w = 0; w < n; ++w) s.gates.push_back(named_gate(name, {w}, n, d));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) s.gates.push_back(named_gate("CNOT", {a, b}, n, d));
    }
  }
  s.observables = allowed_observables(s.spec);
  return s;
}

Subtheory full_qubit_stabilizer_subtheory(int n, const WignerSpec& spec) {
  if (spec.d != 2 || spec.n != n) throw InvalidInput("full stabilizer mechanics needs a qubit spec of matching size");
  Subtheory s{"full-qubit-stabilizer", spec, {}, {}, {}};
  for (const auto& info : dense::enumerate_stabilizer_states(2, n)) s.states.push_back(info.state);
  for (const auto& g : clifford_generator_pool(n, 2)) {
    if (g.name == "H" || g.name == "S" || g.name == "CNOT") s.gates.push_back(g);
  }
  for (std::uint64_t i = 0; i < spec.points(); ++i) {
    const auto l = spec.point(i);
    s.observables.push_back(dense::hermitian_label(dense::PauliLabel::from_point(l).q, dense::PauliLabel::from_point(l).p));
  }
  return s;
}

ClosureReport is_closed(const Subtheory& sub) { return check_closure(sub.gates, sub.states); }

SpekkensReport is_spekkens_subtheory(const Subtheory& sub) {
  SpekkensReport r;
  const auto closure = is_closed(sub);
  r.closure = {closure.closed, closure.closed ? "all gates permute the state set" : closure.counterexample};

  r.nonnegativity.pass = true;
  for (const auto& s : sub.states) {
    const auto rep = wigner::is_nonnegative(wigner::wigner_of_state(s, sub.spec));
    if (!rep.nonnegative) {
      r.nonnegativity = {false, "state " + s.to_string() + " has a negative or complex entry at " +
                                    rep.offending.front().to_string()};
      break;
    }
  }
  if (r.nonnegativity.pass) {
    for (const auto& o : sub.observables) {
      if (std::all_of(o.q.begin(), o.q.end(), [](int v) { return v == 0; }) &&
          std::all_of(o.p.begin(), o.p.end(), [](int v) { return v == 0; })) {
        continue;
      }
      for (int k = 0; k < sub.spec.d && r.nonnegativity.pass; ++k) {
        const auto effect = dense::pauli_outcome_projector(o, k);
        const auto rep = wigner::is_nonnegative(wigner::wigner_of_measurement(effect, sub.spec));
        if (!rep.nonnegative) {
          r.nonnegativity = {false, "measurement " + o.to_string() + " outcome " + std::to_string(k) +
                                        " has a negative entry"};
        }
      }
      if (!r.nonnegativity.pass) break;
    }
  }
  if (r.nonnegativity.pass) {
    r.nonnegativity.detail = std::to_string(sub.states.size()) + " states and " +
                             std::to_string(sub.observables.size()) + " observables non-negative";
  }

  r.covariance.pass = true;
  for (const auto& g : sub.gates) {
    auto cov = covariance_for(g, sub.spec, sub.states);
    if (!cov.witness) {
      r.covariance = {false, "no affine symplectic witness for " + g.label() +
                                 (cov.exhaustive ? " (exhaustive)" : " (local search)")};
      break;
    }
    r.witnesses.emplace_back(g.label(), cov.witness->to_string());
  }
  if (r.covariance.pass) r.covariance.detail = std::to_string(sub.gates.size()) + " generators covariant";
  return r;
}

std::string phase_free_key(const DenseOperator& u) {
  const auto& m = u.matrix();
  Eigen::Index br = 0;
  Eigen::Index bc = 0;
  for (Eigen::Index c = 0; c < m.cols() && br == 0 && bc == 0; ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > 1e-6) {
        br = r;
        bc = c;
        break;
      }
    }
  }
  const dense::Complex ph = std::conj(m(br, bc)) / std::abs(m(br, bc));
  std::ostringstream os;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const dense::Complex v = m(r, c) * ph;
      long long re = std::llround(v.real() * 1e6);
      long long im = std::llround(v.imag() * 1e6);
      os << re << ',' << im << ';';
    }
  }
  return os.str();
}

GateGroup::GateGroup(const std::vector<DenseOperator>& generators, std::size_t guard) {
  if (generators.empty()) throw InvalidInput("group needs generators");
  std::set<std::string> seen;
  std::deque<DenseOperator> queue;
  const auto id = DenseOperator::identity(generators.front().d(), generators.front().n());
  seen.insert(phase_free_key(id));
  queue.push_back(id);
  while (!queue.empty()) {
    const DenseOperator cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      DenseOperator next = g * cur;
      if (seen.insert(phase_free_key(next)).second) {
        if (seen.size() > guard) throw GuardExceeded("gate group closure", seen.size(), guard);
        queue.push_back(std::move(next));
      }
    }
  }
  keys_.assign(seen.begin(), seen.end());
}

bool GateGroup::contains(const DenseOperator& u) const {
  return std::binary_search(keys_.begin(), keys_.end(), phase_free_key(u));
}

}  // namespace spekkens::subtheory
