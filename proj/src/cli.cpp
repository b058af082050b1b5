#include "spekkens/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <random>
#include <sstream>

#include "spekkens/circuit.hpp"
#include "spekkens/contextuality.hpp"
#include "spekkens/equivalence.hpp"
#include "spekkens/errors.hpp"
#include "spekkens/injection.hpp"
#include "spekkens/state_spec.hpp"
#include "spekkens/subtheory.hpp"
#include "spekkens/toy_model.hpp"
#include "spekkens/wigner.hpp"

namespace spekkens::cli {

using Json = nlohmann::ordered_json;

namespace {

/// Rounded to 1e-12 with −0 folded to 0.
double num(double v) {
  const double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

Json coords(const phase::PhasePoint& p) { return Json(p.coords()); }

Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = cfg.seed;
  return j;
}

void check_points(int d, int n, const RunConfig& cfg) {
  std::uint64_t points = 1;
  for (int i = 0; i < 2 * n; ++i) points *= static_cast<std::uint64_t>(d);
  if (points > cfg.guard) throw GuardExceeded("phase space d^(2n)", points, cfg.guard);
}

Json audit_json(const injection::Audit& a) {
  Json j;
  j["passed"] = a.passed();
  j["elements"] = a.elements;
  j["resources"] = a.resources;
  j["violations"] = a.violations;
  return j;
}

Json epistemic_json(const toy::EpistemicState& s) {
  Json j;
  j["d"] = s.d();
  j["n"] = s.n();
  Json gens = Json::array();
  for (const auto& g : s.known().basis()) gens.push_back(g.coords());
  j["V_generators"] = gens;
  j["w"] = coords(s.shift());
  Json support = Json::array();
  for (const auto& p : s.support()) support.push_back(coords(p));
  j["support"] = support;
  j["weight"] = s.weight().to_string();
  return j;
}

Json witness_json(const contextuality::WitnessReport& r) {
  Json j;
  j["witness"] = r.name;
  j["enabling_gate"] = r.enabling_gate;
  j["contradiction"] = r.contradiction;
  j["dense_checks_pass"] = r.dense_checks_pass;
  j["assignments_checked"] = r.assignments_checked;
  j["satisfying_assignments"] = r.satisfying_assignments;
  j["constraints"] = r.constraints;
  j["max_satisfied"] = r.max_satisfied;
  j["digest"] = r.digest;
  j["classical_bound"] = num(r.classical_bound);
  j["quantum_value"] = num(r.quantum_value);
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = num(v);
  j["values"] = values;
  if (!r.grid.empty()) j["grid"] = r.grid;
  j["notes"] = r.notes;
  return j;
}

std::string zeros(int n) { return std::string(static_cast<std::size_t>(std::max(n, 1)), '0'); }

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_array() && !j.empty() && j.front().is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out << path << "[" << i << "]\t" << j[i].dump() << "\n";
  } else {
    out << path << "\t" << j.dump() << "\n";
  }
}

struct Outcome {
  Json report;
  int code = kPass;
};

Outcome cmd_wigner(const std::string& state_text, const RunConfig& cfg) {
  const int d = cfg.d.value_or(2);
  const std::string spec_name = cfg.spec.value_or(d == 2 ? "delfosse-rebit" : "gross");
  const auto state = state_spec::parse(state_text, d);
  check_points(d, state.n(), cfg);
  const auto spec = wigner::WignerSpec::by_name(spec_name, d, state.n());
  const auto table = wigner::wigner_of_state(state, spec);
  const auto verdict = wigner::is_nonnegative(table, cfg.tolerance);
  Json j = header("wigner", cfg);
  j["state"] = state_text;
  j["spec_name"] = table.spec_name;
  j["d"] = d;
  j["n"] = state.n();
  Json entries = Json::array();
  for (std::uint64_t i = 0; i < spec.points(); ++i) {
    Json e = Json::array({coords(spec.point(i)), num(table.values[i])});
    if (std::abs(table.imag[i]) > cfg.tolerance) e.push_back(num(table.imag[i]));
    entries.push_back(e);
  }
  j["entries"] = entries;
  j["sum"] = num(table.sum());
  j["nonnegative"] = verdict.nonnegative;
  j["min_value"] = num(verdict.min_value);
  j["max_imag"] = num(verdict.max_imag);
  Json offending = Json::array();
  for (const auto& p : verdict.offending) offending.push_back(coords(p));
  j["offending"] = offending;
  return {j, verdict.nonnegative ? kPass : kNegative};
}

Outcome cmd_toy(const std::string& state_text, const RunConfig& cfg) {
  const int d = cfg.d.value_or(2);
  const std::string spec_name = cfg.spec.value_or(d == 2 ? "delfosse-rebit" : "gross");
  const auto state = state_spec::parse(state_text, d);
  check_points(d, state.n(), cfg);
  const auto table = wigner::wigner_of_state(state, wigner::WignerSpec::by_name(spec_name, d, state.n()));
  Json j = header("toy", cfg);
  j["state"] = state_text;
  j["spec_name"] = spec_name;
  if (!wigner::is_nonnegative(table, cfg.tolerance).nonnegative || !wigner::is_coset_indicator(table, cfg.tolerance)) {
    j["epistemic"] = nullptr;
    j["reason"] = "Wigner table is not a uniform coset indicator";
    return {j, kNegative};
  }
  j["epistemic"] = epistemic_json(toy::epistemic_from_support(table.support(cfg.tolerance)));
  return {j, kPass};
}

Outcome cmd_equivalence(const std::string& file, const std::string& host_name, const std::string& input_text,
                        int sweep, const RunConfig& cfg) {
  Json j = header("equivalence", cfg);
  j["host"] = host_name;
  const int d = cfg.d.value_or(host_name == "gross-stabilizer" ? 3 : 2);
  if (sweep > 0) {
    const int n = cfg.n.value_or(2);
    check_points(d, n, cfg);
    equivalence::ToySimulator sim(equivalence::host_model(host_name, n, d));
    const auto r = equivalence::random_sweep(sim, sweep, cfg.seed);
    j["n"] = n;
    j["d"] = d;
    j["circuits"] = r.circuits;
    j["max_deviation"] = num(r.max_deviation);
    j["equal"] = r.max_deviation <= cfg.tolerance;
    j["worst_circuit"] = r.worst;
    return {j, r.max_deviation <= cfg.tolerance ? kPass : kNegative};
  }
  std::ifstream in(file);
  if (!in) throw InvalidInput("cannot read circuit file '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto c = circuit::parse_circuit(buf.str(), d);
  const int n = std::max({c.wire_count(), cfg.n.value_or(1), 1});
  const auto input = state_spec::parse(input_text.empty() ? zeros(n) : input_text, d);
  if (input.n() != n) throw InvalidInput("input has " + std::to_string(input.n()) + " wires, circuit needs " + std::to_string(n));
  check_points(d, n, cfg);
  const auto host = equivalence::host_model(host_name, n, d);
  j["n"] = n;
  j["d"] = d;
  j["input"] = input_text.empty() ? zeros(n) : input_text;
  const auto issues = equivalence::audit_circuit(c, host);
  if (!issues.empty()) {
    j["status"] = "audit-error";
    j["offenders"] = issues;
    return {j, kNegative};
  }
  equivalence::ToySimulator sim(host);
  const auto cmp = equivalence::compare(sim, c, input);
  Json toy = Json::object();
  for (const auto& [k, v] : cmp.toy) toy[k.empty() ? "-" : k] = num(v);
  Json quantum = Json::object();
  for (const auto& [k, v] : cmp.quantum) quantum[k.empty() ? "-" : k] = num(v);
  const bool equal = cmp.max_deviation <= cfg.tolerance;
  j["status"] = equal ? "equal" : "deviation";
  j["toy"] = toy;
  j["quantum"] = quantum;
  j["max_deviation"] = num(cmp.max_deviation);
  return {j, equal ? kPass : kNegative};
}

Json injection_json(const injection::InjectionReport& r) {
  Json j;
  j["gate"] = r.gate;
  j["n"] = r.n;
  j["leaves"] = r.records.size();
  j["probability_sum"] = num(r.probability_sum());
  j["min_fidelity"] = num(r.min_fidelity());
  j["succeeded"] = r.succeeded();
  j["max_resources"] = r.max_resources();
  j["audit"] = audit_json(r.audit);
  Json branches = Json::array();
  for (const auto& rec : r.records) {
    Json b;
    b["outcomes"] = rec.outcomes;
    b["probability"] = num(rec.probability);
    b["corrections"] = rec.corrections;
    b["fidelity"] = num(rec.fidelity);
    b["available"] = rec.available;
    branches.push_back(b);
  }
  j["branches"] = branches;
  return j;
}

Outcome cmd_inject(const std::string& gate, const std::string& input_text, const std::string& host_name,
                   const std::vector<std::string>& without, const RunConfig& cfg) {
  if (host_name != "minimal-rebit") throw InvalidInput("injection host must be minimal-rebit");
  auto host = injection::HostElements::minimal_rebit();
  for (const auto& w : without) {
    if (!host.allows(w)) throw InvalidInput("'" + w + "' is not a host element");
    host = host.without(w);
  }
  Json j = header("inject", cfg);
  j["host"] = host_name;
  j["removed"] = without;
  j["input"] = input_text;
  const auto input = state_spec::parse(input_text, 2);
  injection::InjectionReport report;
  if (gate == "H") {
    report = injection::hadamard_via_cz(input, host);
    j["resource"] = "CZ|++>";
  } else {
    const auto scheme = injection::build_injection(gate);
    if (input.n() != scheme.n) {
      throw InvalidInput(gate + " acts on " + std::to_string(scheme.n) + " wires, input has " + std::to_string(input.n()));
    }
    report = injection::run_injection(scheme, input, host);
    j["resource"] = scheme.resource_name();
    Json corrections = Json::array();
    for (const auto& c : scheme.corrections) {
      Json k;
      k["m"] = c.m;
      k["name"] = c.name;
      k["kind"] = injection::to_string(c.kind);
      if (c.pauli) k["pauli"] = c.pauli->to_string();
      k["verified"] = c.verified;
      corrections.push_back(k);
    }
    j["corrections"] = corrections;
  }
  j["report"] = injection_json(report);
  const bool ok = report.succeeded(cfg.tolerance) && report.audit.passed();
  j["passed"] = ok;
  return {j, ok ? kPass : kNegative};
}

Outcome cmd_witness(const std::string& name, const RunConfig& cfg) {
  Json j = header("witness", cfg);
  contextuality::WitnessReport r;
  bool ok = true;
  if (name == "peres-mermin") {
    r = contextuality::peres_mermin_assignment_search(contextuality::ContextTable::standard());
    std::mt19937_64 rng(cfg.seed);
    Json contexts = Json::array();
    for (const auto& ctx : contextuality::pm_contexts()) {
      bool reproduced = true;
      bool audited = true;
      for (int i = 0; i < 20; ++i) {
        const auto res = contextuality::peres_mermin_circuit(dense::random_state(2, 2, rng), ctx.bits);
        reproduced = reproduced && res.sign_reproduced();
        audited = audited && res.audit.passed();
      }
      Json c;
      c["context"] = ctx.name;
      c["selector"] = ctx.selector_text;
      c["sign"] = r.values[static_cast<std::size_t>(ctx.line)].second;
      c["inputs"] = 20;
      c["sign_reproduced"] = reproduced;
      c["audit_passed"] = audited;
      contexts.push_back(c);
      ok = ok && reproduced && audited;
    }
    j["report"] = witness_json(r);
    j["circuit"] = contexts;
  } else if (name == "peres-mermin-s") {
    r = contextuality::peres_mermin_s_variant();
    j["report"] = witness_json(r);
  } else if (name == "ghz") {
    r = contextuality::ghz_paradox();
    j["report"] = witness_json(r);
  } else if (name == "chsh") {
    r = contextuality::chsh_game();
    j["report"] = witness_json(r);
  } else {
    throw InvalidInput("unknown witness '" + name + "'");
  }
  ok = ok && r.contradiction;
  j["passed"] = ok;
  return {j, ok ? kPass : kNegative};
}

subtheory::Subtheory named_subtheory(const std::string& name, int n, int d) {
  if (name == "minimal-rebit") return subtheory::minimal_rebit_subtheory(n);
  if (name == "css-rebit") return subtheory::css_rebit_subtheory(n);
  if (name == "gross-stabilizer") return subtheory::gross_stabilizer_subtheory(n, d == 2 ? 3 : d);
  if (name == "qubit-stabilizer") return subtheory::full_qubit_stabilizer_subtheory(n, wigner::WignerSpec::delfosse_rebit(n));
  throw InvalidInput("unknown subtheory '" + name + "'");
}

Outcome cmd_subtheory_verify(const std::string& name, const RunConfig& cfg) {
  const int n = cfg.n.value_or(2);
  const int d = cfg.d.value_or(name == "gross-stabilizer" ? 3 : 2);
  check_points(d, n, cfg);
  const auto sub = named_subtheory(name, n, d);
  const auto r = subtheory::is_spekkens_subtheory(sub);
  Json j = header("subtheory-verify", cfg);
  j["subtheory"] = sub.name;
  j["spec_name"] = sub.spec.label();
  j["d"] = sub.spec.d;
  j["n"] = n;
  j["states"] = sub.states.size();
  Json gates = Json::array();
  for (const auto& g : sub.gates) gates.push_back(g.label());
  j["gates"] = gates;
  Json obs = Json::array();
  for (const auto& o : sub.observables) obs.push_back(o.to_string());
  j["observables"] = obs;
  auto cert = [](const subtheory::Certificate& c) { return Json{{"pass", c.pass}, {"detail", c.detail}}; };
  j["certificates"] = {{"closure", cert(r.closure)}, {"nonnegativity", cert(r.nonnegativity)}, {"covariance", cert(r.covariance)}};
  Json witnesses = Json::object();
  for (const auto& [k, v] : r.witnesses) witnesses[k] = v;
  j["covariance_witnesses"] = witnesses;
  j["passed"] = r.passed();
  return {j, r.passed() ? kPass : kNegative};
}

Outcome cmd_subtheory_observables(const RunConfig& cfg) {
  const int n = cfg.n.value_or(1);
  const int d = cfg.d.value_or(2);
  const std::string spec_name = cfg.spec.value_or(d == 2 ? "delfosse-rebit" : "gross");
  check_points(d, n, cfg);
  const auto spec = wigner::WignerSpec::by_name(spec_name, d, n);
  Json j = header("subtheory-observables", cfg);
  j["spec_name"] = spec_name;
  j["d"] = d;
  j["n"] = n;
  Json obs = Json::array();
  for (const auto& o : subtheory::allowed_observables(spec)) obs.push_back(o.to_string());
  j["observables"] = obs;
  return {j, kPass};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void RunConfig::validate() const {
  if (d && (*d < 2 || *d > 7)) throw InvalidInput("d must lie in 2..7");
  if (n && (*n < 1 || *n > 6)) throw InvalidInput("n must lie in 1..6");
  if (format != "json" && format != "table") throw InvalidInput("format must be json or table");
  if (!(tolerance > 0.0) || tolerance > 1e-3) throw InvalidInput("tolerance must lie in (0, 1e-3]");
  if (guard == 0 || guard > phase::kAffineGuard) {
    throw InvalidInput("guard must lie in 1.." + std::to_string(phase::kAffineGuard));
  }
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  const auto j = Json::parse(text);
  RunConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& k = it.key();
    if (k == "d") c.d = it->get<int>();
    else if (k == "n") c.n = it->get<int>();
    else if (k == "spec") c.spec = it->get<std::string>();
    else if (k == "seed") c.seed = it->get<std::uint64_t>();
    else if (k == "format") c.format = it->get<std::string>();
    else if (k == "tolerance") c.tolerance = it->get<double>();
    else if (k == "guard") c.guard = it->get<std::uint64_t>();
    else throw InvalidInput("unknown config key '" + k + "'");
  }
  c.validate();
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spekkens toy theory, Wigner bridge, state injection and contextuality witnesses", "spekkens"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::optional<int> d;
  std::optional<int> n;
  std::optional<std::string> spec;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<double> tolerance;
  app.add_option("--config", config_path, "RunConfig JSON file");
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--format", format, "json or table");
  app.add_option("--tol", tolerance, "tolerance override");

  std::string state_text;
  auto* wig = app.add_subcommand("wigner", "Wigner table of a state");
  wig->add_option("--state", state_text, "state spec")->required();
  wig->add_option("--spec", spec, "gross, delfosse-rebit or factorisable-rebit");
  wig->add_option("--d", d, "local dimension");

  auto* toy = app.add_subcommand("toy", "epistemic state of a non-negative state");
  toy->add_option("--state", state_text, "state spec")->required();
  toy->add_option("--spec", spec, "phase function");
  toy->add_option("--d", d, "local dimension");

  std::string file;
  std::string host_name = "minimal-rebit";
  std::string input_text;
  int sweep = 0;
  auto* eq = app.add_subcommand("equivalence", "toy model against the dense oracle");
  eq->add_option("circuit", file, "circuit file");
  eq->add_option("--host", host_name, "minimal-rebit or gross-stabilizer");
  eq->add_option("--input", input_text, "input state spec (default all zeros)");
  eq->add_option("--sweep", sweep, "random host circuits instead of a file");
  eq->add_option("--n", n, "register size");
  eq->add_option("--d", d, "local dimension");

  std::string gate;
  std::vector<std::string> without;
  auto* inj = app.add_subcommand("inject", "state injection branch tree");
  inj->add_option("--gate", gate, "Z, S, T, CZ, CCZ or H")->required();
  inj->add_option("--input", input_text, "input state spec")->required();
  inj->add_option("--host", host_name, "minimal-rebit");
  inj->add_option("--without", without, "remove a host element");

  std::string witness;
  auto* wit = app.add_subcommand("witness", "contextuality witness");
  wit->add_option("name", witness, "peres-mermin, peres-mermin-s, ghz or chsh")
      ->required()
      ->check(CLI::IsMember({"peres-mermin", "peres-mermin-s", "ghz", "chsh"}));

  std::string sub_name;
  auto* sub = app.add_subcommand("subtheory", "subtheory construction and certificates");
  sub->require_subcommand(1);
  auto* verify = sub->add_subcommand("verify", "closure, non-negativity and covariance");
  verify->add_option("name", sub_name, "minimal-rebit, css-rebit, gross-stabilizer, qubit-stabilizer")->required();
  verify->add_option("--n", n, "register size");
  verify->add_option("--d", d, "local dimension");
  auto* observables = sub->add_subcommand("observables", "allowed observables of a phase function");
  observables->add_option("--spec", spec, "phase function");
  observables->add_option("--n", n, "register size");
  observables->add_option("--d", d, "local dimension");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  RunConfig cfg;
  Outcome result;
  std::string command;
  try {
    if (!config_path.empty()) cfg = RunConfig::from_json_text(read_file(config_path));
    if (d) cfg.d = d;
    if (n) cfg.n = n;
    if (spec) cfg.spec = spec;
    if (seed) cfg.seed = *seed;
    if (format) cfg.format = *format;
    if (tolerance) cfg.tolerance = *tolerance;
    cfg.validate();
    if (*wig) {
      command = "wigner";
      result = cmd_wigner(state_text, cfg);
    } else if (*toy) {
      command = "toy";
      result = cmd_toy(state_text, cfg);
    } else if (*eq) {
      command = "equivalence";
      if (file.empty() && sweep == 0) throw InvalidInput("give a circuit file or --sweep");
      result = cmd_equivalence(file, host_name, input_text, sweep, cfg);
    } else if (*inj) {
      command = "inject";
      result = cmd_inject(gate, input_text, host_name, without, cfg);
    } else if (*wit) {
      command = "witness";
      result = cmd_witness(witness, cfg);
    } else if (*verify) {
      command = "subtheory-verify";
      result = cmd_subtheory_verify(sub_name, cfg);
    } else {
      command = "subtheory-observables";
      result = cmd_subtheory_observables(cfg);
    }
  } catch (const GuardExceeded& e) {
    err << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "config: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const std::string text = result.report.dump(2) + "\n";
  if (cfg.format == "json") {
    out << text;
  } else {
    flatten(result.report, "", out);
  }
  if (const char* dir = std::getenv("SPEKKENS_OUT_DIR"); dir != nullptr && *dir != '\0') {
    std::filesystem::create_directories(dir);
    std::ofstream file_out(std::filesystem::path(dir) / (command + ".json"));
    file_out << text;
  }
  return result.code;
}

}  // namespace spekkens::cli
