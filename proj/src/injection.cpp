#include "spekkens/injection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spekkens/subtheory.hpp"

namespace spekkens::injection {

using dense::Complex;
using dense::Matrix;
using dense::Vector;

std::string to_string(CorrectionKind kind) {
  switch (kind) {
    case CorrectionKind::Pauli: return "pauli";
    case CorrectionKind::PauliCZ: return "pauli-cz";
    case CorrectionKind::Clifford: return "clifford";
    case CorrectionKind::NonClifford: return "non-clifford";
  }
  return "non-clifford";
}

int Correction::tier() const {
  switch (kind) {
    case CorrectionKind::Pauli: return 1;
    case CorrectionKind::PauliCZ: return 2;
    default: return 0;
  }
}

std::string InjectionScheme::resource_name() const {
  return gate + "|" + std::string(static_cast<std::size_t>(n), '+') + ">";
}

namespace {

constexpr double kTol = dense::kConstructionTol;

DenseOperator x_string(const std::vector<int>& m) {
  const int n = static_cast<int>(m.size());
  DenseOperator out = DenseOperator::identity(2, n);
  for (int j = 0; j < n; ++j) {
    if (m[static_cast<std::size_t>(j)]) out = dense::gate("X", {j}, n) * out;
  }
  return out;
}

std::vector<int> bits_of(std::size_t index, int n) {
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) bits[static_cast<std::size_t>(j)] = static_cast<int>((index >> (n - 1 - j)) & 1u);
  return bits;
}

std::string correction_name(const Correction& c) {
  std::vector<std::string> parts;
  for (int w : c.x_wires) parts.push_back("X(" + std::to_string(w) + ")");
  for (int w : c.s_wires) parts.push_back("S(" + std::to_string(w) + ")");
  for (int w : c.z_wires) parts.push_back("Z(" + std::to_string(w) + ")");
  for (const auto& [a, b] : c.cz_pairs) parts.push_back("CZ(" + std::to_string(a) + "," + std::to_string(b) + ")");
  if (c.kind == CorrectionKind::NonClifford) return "UX^mU†";
  if (parts.empty()) return "I";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += "·" + parts[i];
  return s;
}

Correction decompose(const DenseOperator& u, const std::vector<int>& m) {
  const int n = static_cast<int>(m.size());
  const auto xm = x_string(m);
  Correction c{m, u * xm * u.adjoint(), CorrectionKind::NonClifford, {}, {}, {}, {}, Complex(1.0, 0.0), "", std::nullopt, false};
  for (int j = 0; j < n; ++j) {
    if (m[static_cast<std::size_t>(j)]) c.x_wires.push_back(j);
  }
  const Matrix diag = (c.op * xm).matrix();
  const std::size_t dim = static_cast<std::size_t>(diag.rows());
  const Complex base = diag(0, 0);
  c.phase = base;
  std::vector<int> g(dim);
  bool quartic = true;
  for (std::size_t x = 0; x < dim && quartic; ++x) {
    const Complex r = diag(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) / base;
    bool found = false;
    for (int k = 0; k < 4; ++k) {
      if (std::abs(r - dense::zeta(2, k)) < 1e-9) {
        g[x] = k;
        found = true;
      }
    }
    quartic = found;
  }
  c.kind = CorrectionKind::NonClifford;
  if (quartic) {
    std::vector<int> a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = g[std::size_t{1} << (n - 1 - j)];
    std::vector<int> f(dim);
    bool even = true;
    for (std::size_t x = 0; x < dim; ++x) {
      int linear = 0;
      const auto bits = bits_of(x, n);
      for (int j = 0; j < n; ++j) linear += a[static_cast<std::size_t>(j)] * bits[static_cast<std::size_t>(j)];
      const int h = phase::mod(g[x] - linear, 4);
      even = even && h % 2 == 0;
      f[x] = h / 2;
    }
    if (even) {
      for (std::size_t bit = 1; bit < dim; bit <<= 1) {
        for (std::size_t x = 0; x < dim; ++x) {
          if (x & bit) f[x] ^= f[x ^ bit];
        }
      }
      bool cubic = false;
      for (std::size_t x = 0; x < dim; ++x) {
        if (!f[x]) continue;
        const auto bits = bits_of(x, n);
        std::vector<int> wires;
        for (int j = 0; j < n; ++j) {
          if (bits[static_cast<std::size_t>(j)]) wires.push_back(j);
        }
        if (wires.size() == 2) {
          c.cz_pairs.emplace_back(wires[0], wires[1]);
        } else {
          cubic = true;
        }
      }
      if (!cubic) {
        for (int j = 0; j < n; ++j) {
          const int aj = a[static_cast<std::size_t>(j)];
          if (aj % 2) c.s_wires.push_back(j);
          if (aj >= 2) c.z_wires.push_back(j);
        }
        c.kind = !c.s_wires.empty()    ? CorrectionKind::Clifford
                 : !c.cz_pairs.empty() ? CorrectionKind::PauliCZ
                                       : CorrectionKind::Pauli;
      } else {
        c.cz_pairs.clear();
      }
    }
  }
  if (c.kind != CorrectionKind::NonClifford) {
    DenseOperator rebuilt = xm;
    for (int w : c.s_wires) rebuilt = dense::gate("S", {w}, n) * rebuilt;
    for (int w : c.z_wires) rebuilt = dense::gate("Z", {w}, n) * rebuilt;
    for (const auto& [p, q] : c.cz_pairs) rebuilt = dense::gate("CZ", {p, q}, n) * rebuilt;
    c.verified = c.op.approx_equal(rebuilt.scaled(c.phase), kTol);
    if (c.kind == CorrectionKind::Pauli) {
      std::string letters(static_cast<std::size_t>(n), 'I');
      for (int w : c.x_wires) letters[static_cast<std::size_t>(w)] = 'X';
      for (int w : c.z_wires) letters[static_cast<std::size_t>(w)] = letters[static_cast<std::size_t>(w)] == 'X' ? 'Y' : 'Z';
      c.pauli = dense::PauliLabel::parse(letters, 2);
    }
  }
  c.name = correction_name(c);
  return c;
}

}  // namespace

InjectionScheme build_injection(const std::string& gate, const DenseOperator& u) {
  if (u.d() != 2) throw InvalidInput("injection is defined for qubit gates");
  if (!u.is_diagonal()) throw InvalidInput("injected gate " + gate + " is not diagonal");
  if (!u.is_unitary()) throw InvalidInput("injected gate " + gate + " is not unitary");
  const int n = u.n();
  Vector plus = Vector::Constant(static_cast<Eigen::Index>(dense::checked_dimension(2, n)), Complex(1.0, 0.0));
  InjectionScheme s{gate, n, u, DenseState(2, n, plus).evolved(u), {}};
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) s.corrections.push_back(decompose(u, bits_of(i, n)));
  return s;
}

InjectionScheme build_injection(const std::string& gate) {
  if (gate != "Z" && gate != "S" && gate != "T" && gate != "CZ" && gate != "CCZ") {
    throw InvalidInput("no injection scheme for gate '" + gate + "'");
  }
  const int n = dense::gate_arity(gate);
  std::vector<int> wires(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) wires[static_cast<std::size_t>(j)] = j;
  return build_injection(gate, dense::gate(gate, wires, n));
}

HostElements HostElements::minimal_rebit() {
  return {{"X", "Z", "CNOT", "MEAS Z", "MEAS X", "PREP |0>", "PREP |+>", "DISCARD"}};
}

HostElements HostElements::without(const std::string& element) const {
  HostElements h = *this;
  h.elements.erase(element);
  return h;
}

double InjectionReport::probability_sum() const {
  double s = 0.0;
  for (const auto& r : records) s += r.probability;
  return s;
}

double InjectionReport::min_fidelity() const {
  double f = 1.0;
  for (const auto& r : records) f = std::min(f, r.fidelity);
  return records.empty() ? 0.0 : f;
}

std::map<std::string, int> InjectionReport::max_resources() const {
  std::map<std::string, int> out;
  for (const auto& r : records) {
    for (const auto& [k, v] : r.resources) out[k] = std::max(out[k], v);
  }
  return out;
}

bool InjectionReport::succeeded(double tol) const {
  return !records.empty() && std::abs(probability_sum() - 1.0) <= tol && min_fidelity() >= 1.0 - tol;
}

GadgetRunner::GadgetRunner(HostElements host) : host_(std::move(host)), cz_(build_injection("CZ")) {}

void GadgetRunner::use(const std::string& element) {
  ++audit_.elements[element];
  if (!host_.allows(element)) {
    const std::string v = element + " is not a host element";
    if (std::find(audit_.violations.begin(), audit_.violations.end(), v) == audit_.violations.end()) {
      audit_.violations.push_back(v);
    }
  }
}

void GadgetRunner::gate(Branch& branch, const std::string& name, const std::vector<int>& wires) {
  use(name);
  branch.state = branch.state.evolved(dense::gate(name, wires, branch.state.n()));
}

void GadgetRunner::swap(Branch& branch, int a, int b) {
  gate(branch, "CNOT", {a, b});
  gate(branch, "CNOT", {b, a});
  gate(branch, "CNOT", {a, b});
}

std::vector<Branch> GadgetRunner::measure(std::vector<Branch> branches, char basis, int wire,
                                          const std::string& readout) {
  use(std::string("MEAS ") + basis);
  std::vector<Branch> out;
  for (auto& branch : branches) {
    std::string letters(static_cast<std::size_t>(branch.state.n()), 'I');
    letters[static_cast<std::size_t>(wire)] = basis;
    for (auto& o : dense::born(branch.state, dense::PauliLabel::parse(letters, 2))) {
      const double p = branch.probability * o.probability;
      if (p < 1e-14 || !o.post) continue;
      Branch next = branch;
      next.state = *o.post;
      next.probability = p;
      next.outcomes.push_back(o.label);
      if (!readout.empty()) next.readouts.emplace_back(readout, o.label);
      out.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<Branch> GadgetRunner::inject(Branch branch, const InjectionScheme& scheme, const std::vector<int>& targets) {
  const int width = branch.state.n();
  const int n = scheme.n;
  const std::string resource = scheme.resource_name();
  ++audit_.resources[resource];
  ++branch.resources[resource];
  branch.state = dense::tensor(branch.state, scheme.resource);
  for (int j = 0; j < n; ++j) gate(branch, "CNOT", {width + j, targets[static_cast<std::size_t>(j)]});
  std::vector<Branch> branches{std::move(branch)};
  for (int j = 0; j < n; ++j) branches = measure(std::move(branches), 'Z', targets[static_cast<std::size_t>(j)]);
  std::vector<Branch> out;
  for (auto& b : branches) {
    std::vector<int> m(b.outcomes.end() - n, b.outcomes.end());
    for (int j = 0; j < n; ++j) {
      const int t = targets[static_cast<std::size_t>(j)];
      if (m[static_cast<std::size_t>(j)]) gate(b, "X", {t});
      swap(b, t, width + j);
    }
    for (int j = n; j-- > 0;) {
      use("DISCARD");
      b.state = dense::discard_wire(b.state, width + j, 0);
    }
    std::size_t index = 0;
    for (int bit : m) index = (index << 1) | static_cast<std::size_t>(bit);
    for (auto& done : correct(std::move(b), scheme.corrections[index], targets)) out.push_back(std::move(done));
  }
  return out;
}

std::vector<Branch> GadgetRunner::inject_all(std::vector<Branch> branches, const InjectionScheme& scheme,
                                             const std::vector<int>& targets) {
  std::vector<Branch> out;
  for (auto& b : branches) {
    for (auto& done : inject(std::move(b), scheme, targets)) out.push_back(std::move(done));
  }
  return out;
}

std::vector<Branch> GadgetRunner::correct(Branch branch, const Correction& c, const std::vector<int>& targets) {
  auto wire = [&](int local) { return targets[static_cast<std::size_t>(local)]; };
  branch.corrections.push_back(c.name);
  if (c.kind == CorrectionKind::NonClifford) {
    use("UX^mU†");
    branch.available = false;
    const int width = branch.state.n();
    branch.state = branch.state.evolved(DenseOperator(2, width, dense::embed(c.op.matrix(), targets, width, 2)));
    return {std::move(branch)};
  }
  for (int w : c.x_wires) gate(branch, "X", {wire(w)});
  for (int w : c.s_wires) {
    gate(branch, "S", {wire(w)});
    branch.available = branch.available && host_.allows("S");
  }
  for (int w : c.z_wires) gate(branch, "Z", {wire(w)});
  std::vector<Branch> branches{std::move(branch)};
  for (const auto& [a, b] : c.cz_pairs) branches = inject_all(std::move(branches), cz_, {wire(a), wire(b)});
  return branches;
}

namespace {

InjectionReport finish(const std::string& gate, int n, std::vector<Branch> leaves, const DenseState& target,
                       const GadgetRunner& engine) {
  InjectionReport r{gate, n, {}, engine.audit()};
  for (auto& l : leaves) {
    const double f = l.state.overlap(target);
    r.records.push_back({l.outcomes, l.probability, l.corrections, l.state, f * f, l.available, l.resources});
  }
  return r;
}

}  // namespace

InjectionReport run_injection(const InjectionScheme& scheme, const DenseState& input, const HostElements& host) {
  if (input.d() != 2 || input.n() != scheme.n) throw DimensionMismatch("input does not match the injected gate");
  GadgetRunner engine(host);
  std::vector<int> targets(static_cast<std::size_t>(scheme.n));
  for (int j = 0; j < scheme.n; ++j) targets[static_cast<std::size_t>(j)] = j;
  auto leaves = engine.inject(Branch{input}, scheme, targets);
  return finish(scheme.gate, scheme.n, std::move(leaves), input.evolved(scheme.u), engine);
}

InjectionReport hadamard_via_cz(const DenseState& input, const HostElements& host) {
  if (input.d() != 2 || input.n() != 1) throw DimensionMismatch("Hadamard construction acts on one qubit");
  GadgetRunner engine(host);
  engine.use("PREP |+>");
  const DenseState plus = DenseState::product(2, {Vector::Constant(2, Complex(1.0, 0.0))});
  auto leaves = engine.inject(Branch{dense::tensor(input, plus)}, build_injection("CZ"), {0, 1});
  leaves = engine.measure(std::move(leaves), 'X', 0);
  for (auto& l : leaves) {
    const int m = l.outcomes.back();
    if (m) engine.gate(l, "X", {1});
    l.corrections.push_back(m ? "X(1)" : "I");
    engine.use("DISCARD");
    Vector pm(2);
    pm << 1.0, m ? -1.0 : 1.0;
    l.state = dense::discard_wire(l.state, 0, pm);
  }
  return finish("H", 1, std::move(leaves), input.evolved(dense::gate("H", {0}, 1)), engine);
}

bool CczDemoReport::passed() const {
  return cz_stage.succeeded() && ccz_stage.succeeded() && cz_stage.audit.passed() && ccz_stage.audit.passed();
}

CczDemoReport ccz_scheme_demo(const DenseState& input, const HostElements& host) {
  const DenseState plus2 = DenseState(2, 2, Vector::Constant(4, Complex(1.0, 0.0)));
  return {run_injection(build_injection("CZ"), plus2, host), run_injection(build_injection("CCZ"), input, host)};
}

bool CompletionReport::passed() const {
  return !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const StepCertificate& s) { return s.passed(); });
}

namespace {

StepCertificate certify(const std::string& step, const std::vector<InjectionReport>& runs, const std::string& what) {
  StepCertificate c{step, {}, true, true, ""};
  std::set<std::string> elements;
  double worst = 1.0;
  for (const auto& r : runs) {
    c.audit_passed = c.audit_passed && r.audit.passed();
    c.verified = c.verified && r.succeeded();
    worst = std::min(worst, r.min_fidelity());
    for (const auto& [e, count] : r.audit.elements) elements.insert(e);
    for (const auto& [res, count] : r.audit.resources) elements.insert("RESOURCE " + res);
    for (const auto& v : r.audit.violations) c.detail += v + "; ";
  }
  c.elements.assign(elements.begin(), elements.end());
  c.detail += what + " on " + std::to_string(runs.size()) + " inputs, min fidelity " + std::to_string(worst);
  return c;
}

}  // namespace

CompletionReport clifford_completion_demo(const HostElements& host, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CompletionReport report;

  std::vector<InjectionReport> cz_runs;
  const auto cz = build_injection("CZ");
  const auto cz_host = std::all_of(cz.corrections.begin(), cz.corrections.end(),
                                   [](const Correction& c) { return c.tier() == 1 && c.verified; });
  cz_runs.push_back(run_injection(cz, DenseState(2, 2, Vector::Constant(4, Complex(1.0, 0.0))), host));
  for (int i = 0; i < 4; ++i) cz_runs.push_back(run_injection(cz, dense::random_state(2, 2, rng), host));
  auto cz_step = certify("inject CZ", cz_runs, "CZ·input reproduced");
  cz_step.verified = cz_step.verified && cz_host;
  report.steps.push_back(cz_step);

  std::vector<InjectionReport> h_runs;
  h_runs.push_back(hadamard_via_cz(DenseState::basis(2, 1, 0), host));
  h_runs.push_back(hadamard_via_cz(DenseState(2, 1, Vector::Constant(2, Complex(1.0, 0.0))), host));
  for (int i = 0; i < 4; ++i) h_runs.push_back(hadamard_via_cz(dense::random_state(2, 1, rng), host));
  report.steps.push_back(certify("H from CZ", h_runs, "H·input reproduced"));

  std::vector<InjectionReport> s_runs;
  const auto s = build_injection("S");
  const bool s_host = std::all_of(s.corrections.begin(), s.corrections.end(),
                                  [](const Correction& c) { return c.tier() == 1 && c.verified; });
  s_runs.push_back(run_injection(s, DenseState(2, 1, Vector::Constant(2, Complex(1.0, 0.0))), host));
  for (int i = 0; i < 4; ++i) s_runs.push_back(run_injection(s, dense::random_state(2, 1, rng), host));
  auto s_step = certify("inject S", s_runs, "S·input reproduced, correction " + s.corrections[1].pauli->to_string() +
                                                " up to phase");
  s_step.verified = s_step.verified && s_host;
  report.steps.push_back(s_step);

  const subtheory::GateGroup clifford({dense::gate("H", {0}, 2), dense::gate("H", {1}, 2), dense::gate("S", {0}, 2),
                                       dense::gate("S", {1}, 2), dense::gate("CNOT", {0, 1}, 2)});
  report.clifford_group_size = clifford.size();
  const std::size_t expected = phase::symplectic_group_order(2, 2) * 16;
  report.steps.push_back({"generate Cliffords",
                          {"H", "S", "CNOT"},
                          true,
                          clifford.size() == expected,
                          "group of order " + std::to_string(clifford.size()) + " modulo phase, expected " +
                              std::to_string(expected)});

  const auto czop = dense::gate("CZ", {0, 1}, 2);
  auto conj = [&](const char* label) { return czop * dense::pauli(dense::PauliLabel::parse(label, 2)) * czop; };
  const bool xz = conj("XI").approx_equal(dense::pauli(dense::PauliLabel::parse("XZ", 2)));
  const bool zx = conj("IX").approx_equal(dense::pauli(dense::PauliLabel::parse("ZX", 2)));
  const bool yy = conj("XX").approx_equal(dense::pauli(dense::PauliLabel::parse("YY", 2)));
  report.steps.push_back({"CZ conjugation of X observables",
                          {"CZ"},
                          true,
                          xz && zx && yy,
                          std::string("CZ·XI·CZ=XZ ") + (xz ? "holds" : "fails") + ", CZ·IX·CZ=ZX " +
                              (zx ? "holds" : "fails") + ", CZ·XX·CZ=YY " + (yy ? "holds" : "fails")});
  report.universality_note =
      "H from the CZ construction together with injected CCZ gives a universal gate set";
  return report;
}

}  // namespace spekkens::injection
