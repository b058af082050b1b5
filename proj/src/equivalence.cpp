#include "spekkens/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "spekkens/subtheory.hpp"

namespace spekkens::equivalence {

using phase::mod;

HostModel host_model(const std::string& name, int n, int d) {
  if (name == "minimal-rebit") {
    if (d != 0 && d != 2) throw InvalidInput("minimal-rebit host is a qubit theory");
    const auto sub = subtheory::minimal_rebit_subtheory(n);
    return {name, sub.spec, {"I", "X", "Z", "CNOT", "SWAP"}, sub.observables, sub.states};
  }
  if (name == "gross-stabilizer") {
    if (d == 0) d = 3;
    const auto sub = subtheory::gross_stabilizer_subtheory(n, d);
    return {name, sub.spec, {"I", "X", "Z", "H", "S", "CNOT", "CZ", "SWAP"}, sub.observables, sub.states};
  }
  throw InvalidInput("unknown host '" + name + "'");
}

namespace {

bool host_observable(const PauliLabel& label, const HostModel& host) {
  const auto point = label.point();
  const bool listed = std::any_of(host.observables.begin(), host.observables.end(),
                                  [&](const PauliLabel& o) { return o.point() == point; });
  if (!listed) return false;
  const int ratio = dense::phase_order(host.d()) / host.d();
  return mod(label.phase - host.spec.phase(point), ratio) == 0;
}

std::string wires_text(const std::vector<int>& wires) {
  std::string s;
  for (int w : wires) s += " " + std::to_string(w);
  return s;
}

}  // namespace

std::vector<std::string> audit_circuit(const Circuit& c, const HostModel& host) {
  std::vector<std::string> issues;
  if (c.d != host.d()) issues.push_back("circuit d differs from host d");
  if (c.wire_count() > host.n()) issues.push_back("circuit uses more wires than the host register");
  if (!issues.empty()) return issues;
  for (const auto& op : c.ops) {
    if (const auto* g = std::get_if<circuit::GateOp>(&op)) {
      if (!host.gates.count(g->name)) issues.push_back("GATE " + g->name + wires_text(g->wires) + " is not a host gate");
    } else if (const auto* m = std::get_if<circuit::MeasureOp>(&op)) {
      const auto label = circuit::measured_label(*m, host.n(), host.d());
      if (!host_observable(label, host)) issues.push_back("MEAS " + label.to_string() + " is not a host observable");
    } else {
      const auto& k = std::get<circuit::CorrectionOp>(op);
      if (!host.gates.count(k.name)) issues.push_back("CORR " + k.name + wires_text(k.wires) + " is not a host gate");
    }
  }
  return issues;
}

MeasuredFunctional functional_of(const PauliLabel& label, const wigner::WignerSpec& spec) {
  const auto mu = label.point();
  std::vector<long long> coords(static_cast<std::size_t>(2 * spec.n));
  for (int j = 0; j < spec.n; ++j) {
    coords[static_cast<std::size_t>(2 * j)] = mu.p(j);
    coords[static_cast<std::size_t>(2 * j + 1)] = -mu.x(j);
  }
  const int ratio = dense::phase_order(spec.d) / spec.d;
  const int diff = mod(label.phase - spec.phase(mu), dense::phase_order(spec.d));
  if (diff % ratio != 0) throw InvalidInput("label " + label.to_string() + " has no toy counterpart");
  return {phase::ObservableFunctional::reduced(spec.d, coords), diff / ratio};
}

ToySimulator::ToySimulator(HostModel host) : host_(std::move(host)) {}

toy::EpistemicState ToySimulator::embed(const DenseState& input) const {
  const auto table = wigner::wigner_of_state(input, host_.spec);
  if (!wigner::is_nonnegative(table).nonnegative) throw InvalidInput("input state is negative under the host spec");
  return toy::epistemic_from_support(table.support());
}

const phase::AffineSymplectic& ToySimulator::gate_map(const std::string& name, const std::vector<int>& wires) {
  const auto key = std::make_pair(name, wires);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  wigner::CovarianceFit fit;
  if (host_.n() <= 2) {
    fit = wigner::fit_covariance(dense::gate(name, wires, host_.n(), host_.d()), host_.spec, host_.states);
  } else {
    const auto local = host_model(host_.name, static_cast<int>(wires.size()), host_.d());
    fit = wigner::fit_covariance_local(name, wires, host_.spec, local.states, host_.states);
  }
  if (!fit.witness) throw Error("no covariant phase-space map for " + name + wires_text(wires));
  return cache_.emplace(key, *fit.witness).first->second;
}

std::map<std::string, toy::Rational> ToySimulator::run(const Circuit& c, const DenseState& input) {
  const auto issues = audit_circuit(c, host_);
  if (!issues.empty()) throw InvalidInput(issues.front());
  struct ToyBranch {
    std::vector<std::pair<std::string, int>> outcomes;
    toy::Rational probability;
    toy::EpistemicState state;
  };
  std::vector<ToyBranch> frontier{{{}, toy::Rational(1, 1), embed(input)}};
  for (const auto& op : c.ops) {
    std::vector<ToyBranch> next;
    if (const auto* g = std::get_if<circuit::GateOp>(&op)) {
      const auto inv = gate_map(g->name, g->wires).inverse();
      for (auto& b : frontier) next.push_back({b.outcomes, b.probability, toy::apply_affine(b.state, inv)});
    } else if (const auto* m = std::get_if<circuit::MeasureOp>(&op)) {
      const auto mf = functional_of(circuit::measured_label(*m, host_.n(), host_.d()), host_.spec);
      const toy::SharpMeasurement sharp({mf.functional});
      for (auto& b : frontier) {
        for (auto& br : toy::measurement_branches(b.state, sharp)) {
          auto outs = b.outcomes;
          outs.emplace_back(m->var, mod(br.outcome.front() - mf.offset, host_.d()));
          next.push_back({std::move(outs), b.probability * br.probability, br.posterior});
        }
      }
    } else {
      const auto& k = std::get<circuit::CorrectionOp>(op);
      const auto inv = gate_map(k.name, k.wires).inverse();
      for (auto& b : frontier) {
        const std::map<std::string, int> vars(b.outcomes.begin(), b.outcomes.end());
        if (k.condition.evaluate(vars)) {
          next.push_back({b.outcomes, b.probability, toy::apply_affine(b.state, inv)});
        } else {
          next.push_back(std::move(b));
        }
      }
    }
    frontier = std::move(next);
  }
  std::map<std::string, toy::Rational> out;
  for (const auto& b : frontier) {
    std::string key;
    for (const auto& [var, value] : b.outcomes) key += std::to_string(value);
    auto [it, fresh] = out.emplace(key, b.probability);
    if (!fresh) it->second = it->second + b.probability;
  }
  return out;
}

Distribution dense_distribution(const Circuit& c, const DenseState& input) {
  Distribution out;
  for (const auto& b : circuit::run_circuit(c, input)) out[b.outcome_string()] += b.probability;
  return out;
}

Comparison compare(ToySimulator& sim, const Circuit& c, const DenseState& input) {
  Comparison cmp;
  for (const auto& [k, v] : sim.run(c, input)) cmp.toy[k] = v.value();
  cmp.quantum = dense_distribution(c, input);
  auto deviation = [&](const Distribution& a, const Distribution& b) {
    for (const auto& [k, v] : a) {
      const auto it = b.find(k);
      cmp.max_deviation = std::max(cmp.max_deviation, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
  };
  deviation(cmp.toy, cmp.quantum);
  deviation(cmp.quantum, cmp.toy);
  return cmp;
}

Circuit random_host_circuit(const HostModel& host, std::mt19937_64& rng, int length) {
  const int n = host.n();
  const int d = host.d();
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
  std::vector<std::string> gates;
  for (const auto& g : host.gates) {
    if (g != "I" && dense::gate_arity(g) <= n) gates.push_back(g);
  }
  std::vector<PauliLabel> observables;
  for (const auto& o : host.observables) {
    if (o.point().is_zero()) continue;
    observables.push_back(o);
  }
  auto random_wires = [&](int arity) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) all[static_cast<std::size_t>(w)] = w;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(arity));
    return all;
  };
  Circuit c;
  c.d = d;
  std::vector<std::string> vars;
  for (int i = 0; i < length; ++i) {
    const auto roll = pick(10);
    if (roll < 6) {
      const auto& g = gates[pick(gates.size())];
      c.ops.emplace_back(circuit::GateOp{g, random_wires(dense::gate_arity(g))});
    } else if (roll < 9 || vars.empty()) {
      auto label = observables[pick(observables.size())];
      label.phase = mod(label.phase + static_cast<int>(pick(static_cast<std::size_t>(d))) *
                                          (dense::phase_order(d) / d),
                        dense::phase_order(d));
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int w = 0; w < n; ++w) all[static_cast<std::size_t>(w)] = w;
      const std::string var = "m" + std::to_string(vars.size());
      vars.push_back(var);
      c.ops.emplace_back(circuit::MeasureOp{label.to_string(), all, var, label});
    } else {
      const std::string name = pick(2) == 0 ? "X" : "Z";
      std::string cond = vars[pick(vars.size())];
      if (vars.size() > 1 && pick(2) == 0) cond += " ^ " + vars[pick(vars.size())];
      c.ops.emplace_back(circuit::CorrectionOp{name, random_wires(1), circuit::Condition::parse(cond)});
    }
  }
  return c;
}

SweepReport random_sweep(ToySimulator& sim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SweepReport r;
  const auto& host = sim.host();
  for (int i = 0; i < count; ++i) {
    const int length = std::uniform_int_distribution<int>(1, 10)(rng);
    const auto c = random_host_circuit(host, rng, length);
    const auto& input = host.states[std::uniform_int_distribution<std::size_t>(0, host.states.size() - 1)(rng)];
    const auto cmp = compare(sim, c, input);
    ++r.circuits;
    if (cmp.max_deviation >= r.max_deviation) {
      r.max_deviation = cmp.max_deviation;
      r.worst = c.to_text();
    }
  }
  return r;
}

}  // namespace spekkens::equivalence
