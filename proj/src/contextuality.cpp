#include "spekkens/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "spekkens/subtheory.hpp"

namespace spekkens::contextuality {

using dense::Complex;
using dense::DenseOperator;
using dense::Vector;

namespace {

constexpr double kTol = 1e-9;

DenseOperator op_of(const PauliLabel& l) { return dense::pauli(l); }

DenseOperator op_of(const std::string& s) { return dense::pauli(PauliLabel::parse(s, 2)); }

/// ±1 when the operator is ±I, 0 otherwise.
int identity_sign(const DenseOperator& m) {
  const auto id = DenseOperator::identity(m.d(), m.n());
  if (m.approx_equal(id, kTol)) return 1;
  if (m.approx_equal(id.scaled(-1.0), kTol)) return -1;
  return 0;
}

bool commute(const PauliLabel& a, const PauliLabel& b) {
  return phase::symplectic_product(a.point(), b.point()) == 0;
}

class Fnv1a {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xffu;
      h_ *= 1099511628211ull;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 14695981039346656037ull;
};

/// Letters with every Y replaced by X.
std::string x_form(const std::string& letters) {
  std::string out = letters;
  std::replace(out.begin(), out.end(), 'Y', 'X');
  return out;
}

std::string bare(const PauliLabel& l) {
  std::string s = l.to_string();
  return s.substr(s.find_first_not_of("+-i"));
}

}  // namespace

ContextTable ContextTable::standard() {
  return from_labels({{{"XI", "IX", "XX"}, {"IZ", "ZI", "ZZ"}, {"XZ", "ZX", "YY"}}}, {1, 1, 1, 1, 1, -1});
}

ContextTable ContextTable::from_labels(const std::array<std::array<std::string, 3>, 3>& labels,
                                       const std::array<int, 6>& signs) {
  ContextTable t;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const auto l = PauliLabel::parse(labels[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], 2);
      if (l.n() != 2) throw InvalidInput("square entries must be two-qubit Paulis");
      t.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = l;
    }
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidInput("line signs must be ±1");
  }
  t.signs = signs;
  return t;
}

std::array<PauliLabel, 3> ContextTable::line(int k) const {
  if (k < 0 || k >= 6) throw InvalidInput("line index outside 0..5");
  std::array<PauliLabel, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[static_cast<std::size_t>(i)] = k < 3 ? grid[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                                             : grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 3)];
  }
  return out;
}

std::string ContextTable::line_name(int k) const {
  return (k < 3 ? "row " : "column ") + std::to_string(k % 3 + 1);
}

std::vector<std::vector<std::string>> ContextTable::labels() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : grid) {
    out.emplace_back();
    for (const auto& l : row) out.back().push_back(bare(l));
  }
  return out;
}

TableCheck check_table(const ContextTable& table) {
  TableCheck c;
  for (int k = 0; k < 6; ++k) {
    const auto line = table.line(k);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (!commute(line[static_cast<std::size_t>(i)], line[static_cast<std::size_t>(j)])) {
          c.commuting = false;
          c.problems.push_back(table.line_name(k) + ": " + bare(line[static_cast<std::size_t>(i)]) + " and " +
                               bare(line[static_cast<std::size_t>(j)]) + " anticommute");
        }
      }
    }
    const int sign = identity_sign(op_of(line[0]) * op_of(line[1]) * op_of(line[2]));
    c.products[static_cast<std::size_t>(k)] = sign;
    if (sign != table.signs[static_cast<std::size_t>(k)]) {
      c.products_match = false;
      c.problems.push_back(table.line_name(k) + ": operator product does not equal the recorded sign");
    }
  }
  return c;
}

WitnessReport peres_mermin_assignment_search(const ContextTable& table) {
  const auto check = check_table(table);
  if (!check.commuting) throw InvalidInput("malformed square: " + check.problems.front());
  WitnessReport r;
  r.name = "peres-mermin";
  r.enabling_gate = "CZ";
  r.constraints = 6;
  r.grid = table.labels();
  Fnv1a digest;
  for (std::uint32_t mask = 0; mask < 512; ++mask) {
    auto value = [&](int row, int col) { return (mask >> (3 * row + col)) & 1u ? -1 : 1; };
    std::uint64_t satisfied = 0;
    int count = 0;
    for (int k = 0; k < 6; ++k) {
      int product = 1;
      for (int i = 0; i < 3; ++i) product *= k < 3 ? value(k, i) : value(i, k - 3);
      if (product == table.signs[static_cast<std::size_t>(k)]) {
        satisfied |= 1u << k;
        ++count;
      }
    }
    digest.add(satisfied);
    ++r.assignments_checked;
    if (count == 6) ++r.satisfying_assignments;
    r.max_satisfied = std::max(r.max_satisfied, count);
  }
  r.digest = digest.hex();
  for (int k = 0; k < 6; ++k) {
    r.values.emplace_back(table.line_name(k) + " sign", check.products[static_cast<std::size_t>(k)]);
  }
  r.dense_checks_pass = check.products_match;
  r.notes.push_back(check.products_match ? "every line product equals its recorded signed identity"
                                         : check.problems.front());
  r.contradiction = r.satisfying_assignments == 0 && r.dense_checks_pass;
  r.classical_bound = r.max_satisfied;
  r.quantum_value = 6;
  return r;
}

ContextTable reconstruct_s_square() {
  const std::vector<std::string> listed = {"IX", "XI", "XX", "YI", "IY", "YX", "XY", "ZZ"};
  const std::vector<std::string> reachable = {"XI", "IX", "XX", "IZ", "ZI", "ZZ", "YI", "IY", "YX", "XY", "YY"};
  std::vector<std::string> extras;
  for (const auto& r : reachable) {
    if (std::find(listed.begin(), listed.end(), r) == listed.end()) extras.push_back(r);
  }
  auto rank = [&](const std::string& s) {
    const auto it = std::find(listed.begin(), listed.end(), s);
    return it == listed.end() ? static_cast<int>(listed.size()) : static_cast<int>(it - listed.begin());
  };
  std::optional<std::vector<std::string>> best;
  std::vector<int> best_key;
  for (const auto& extra : extras) {
    std::vector<std::string> pool = listed;
    pool.push_back(extra);
    std::vector<PauliLabel> labels;
    for (const auto& s : pool) labels.push_back(PauliLabel::parse(s, 2));
    std::vector<int> cells(9, -1);
    std::vector<bool> used(9, false);
    auto line_ok = [&](int a, int b, int c) {
      const auto& la = labels[static_cast<std::size_t>(a)];
      const auto& lb = labels[static_cast<std::size_t>(b)];
      const auto& lc = labels[static_cast<std::size_t>(c)];
      return commute(la, lb) && commute(la, lc) && commute(lb, lc) && identity_sign(op_of(la) * op_of(lb) * op_of(lc)) != 0;
    };
    std::function<void(int)> place = [&](int pos) {
      if (pos == 9) {
        int negative = 0;
        for (int k = 0; k < 6; ++k) {
          const int a = k < 3 ? cells[static_cast<std::size_t>(3 * k)] : cells[static_cast<std::size_t>(k - 3)];
          const int b = k < 3 ? cells[static_cast<std::size_t>(3 * k + 1)] : cells[static_cast<std::size_t>(k)];
          const int c = k < 3 ? cells[static_cast<std::size_t>(3 * k + 2)] : cells[static_cast<std::size_t>(k + 3)];
          const auto& la = labels[static_cast<std::size_t>(a)];
          const auto& lb = labels[static_cast<std::size_t>(b)];
          const auto& lc = labels[static_cast<std::size_t>(c)];
          if (identity_sign(op_of(la) * op_of(lb) * op_of(lc)) < 0) ++negative;
        }
        if (negative % 2 == 0) return;
        std::vector<int> key;
        for (int cell : cells) key.push_back(rank(pool[static_cast<std::size_t>(cell)]));
        if (!best || key < best_key) {
          best_key = key;
          best = std::vector<std::string>();
          for (int cell : cells) best->push_back(pool[static_cast<std::size_t>(cell)]);
        }
        return;
      }
      for (int i = 0; i < 9; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        cells[static_cast<std::size_t>(pos)] = i;
        const int row = pos / 3;
        const int col = pos % 3;
        bool ok = true;
        if (col == 2) ok = line_ok(cells[static_cast<std::size_t>(3 * row)], cells[static_cast<std::size_t>(3 * row + 1)], i);
        if (ok && row == 2) ok = line_ok(cells[static_cast<std::size_t>(col)], cells[static_cast<std::size_t>(3 + col)], i);
        if (ok) {
          used[static_cast<std::size_t>(i)] = true;
          place(pos + 1);
          used[static_cast<std::size_t>(i)] = false;
        }
      }
      cells[static_cast<std::size_t>(pos)] = -1;
    };
    place(0);
  }
  if (!best) throw Error("no Peres-Mermin square exists over the listed observables");
  std::array<std::array<std::string, 3>, 3> grid;
  for (int i = 0; i < 9; ++i) grid[static_cast<std::size_t>(i / 3)][static_cast<std::size_t>(i % 3)] = (*best)[static_cast<std::size_t>(i)];
  ContextTable t = ContextTable::from_labels(grid, {1, 1, 1, 1, 1, 1});
  for (int k = 0; k < 6; ++k) {
    const auto line = t.line(k);
    t.signs[static_cast<std::size_t>(k)] = identity_sign(op_of(line[0]) * op_of(line[1]) * op_of(line[2]));
  }
  return t;
}

WitnessReport peres_mermin_s_variant() {
  const auto table = reconstruct_s_square();
  WitnessReport r = peres_mermin_assignment_search(table);
  r.name = "peres-mermin-s";
  r.enabling_gate = "S";
  r.notes.push_back("square rebuilt by search from the listed observables IX, XI, XX, YI, IY, YX, XY, ZZ");
  const auto host = subtheory::minimal_rebit_subtheory(2);
  for (const auto& row : table.grid) {
    for (const auto& l : row) {
      const std::string letters = bare(l);
      if (letters.find('Y') == std::string::npos) {
        const bool native = std::any_of(host.observables.begin(), host.observables.end(),
                                        [&](const PauliLabel& o) { return o.point() == l.point(); });
        r.dense_checks_pass = r.dense_checks_pass && native;
        r.notes.push_back(letters + (native ? ": host-native" : ": NOT a host observable"));
        continue;
      }
      DenseOperator s = DenseOperator::identity(2, 2);
      for (int w = 0; w < 2; ++w) {
        if (letters[static_cast<std::size_t>(w)] == 'Y') s = dense::gate("S", {w}, 2) * s;
      }
      const bool conj = (s * op_of(x_form(letters)) * s.adjoint()).approx_equal(op_of(letters), kTol);
      r.dense_checks_pass = r.dense_checks_pass && conj;
      r.notes.push_back(letters + ": S-conjugated from " + x_form(letters) + (conj ? "" : " (conjugation FAILED)"));
    }
  }
  r.contradiction = r.satisfying_assignments == 0 && r.dense_checks_pass;
  return r;
}

const std::vector<PmContext>& pm_contexts() {
  //                                    a  b  c  d  e  α  β  γ
  static const std::vector<PmContext> contexts = {
      {"row 1", "(d,e)", {0, 0, 0, 1, 1, 0, 0, 0}, 0},
      {"row 2", "(a,b,c)", {1, 1, 1, 0, 0, 0, 0, 0}, 1},
      {"row 3", "(α,β,γ,d,e)", {0, 0, 0, 1, 1, 1, 1, 1}, 2},
      {"column 1", "(a,d,γ)", {1, 0, 0, 1, 0, 0, 0, 1}, 3},
      {"column 2", "(b,e,γ)", {0, 1, 0, 0, 1, 0, 0, 1}, 4},
      {"column 3", "(c,d,e,γ)", {0, 0, 1, 1, 1, 0, 0, 1}, 5},
  };
  return contexts;
}

std::optional<PmContext> context_for(const Selector& bits) {
  for (const auto& c : pm_contexts()) {
    if (c.bits == bits) return c;
  }
  return std::nullopt;
}

bool PmCircuitResult::sign_reproduced() const {
  return !products.empty() && std::abs(probability_sum - 1.0) <= kTol &&
         std::all_of(products.begin(), products.end(), [&](int p) { return p == sign; });
}

PmCircuitResult peres_mermin_circuit(const DenseState& input, const Selector& bits, bool cz_injection) {
  if (input.d() != 2 || input.n() != 2) throw DimensionMismatch("the square acts on two qubits");
  const auto ctx = context_for(bits);
  if (!ctx) throw InvalidInput("selector bits do not name one of the six contexts");
  enum { A, B, C, D, E, Alpha, Beta, Gamma };
  injection::GadgetRunner run(injection::HostElements::minimal_rebit());
  const auto cz = injection::build_injection("CZ");
  std::vector<injection::Branch> branches{injection::Branch(input)};
  auto cz_block = [&] {
    if (cz_injection) {
      branches = run.inject_all(std::move(branches), cz, {0, 1});
    } else {
      for (auto& b : branches) run.gate(b, "CZ", {0, 1});
    }
  };
  auto parity_xx = [&](const std::string& readout) {
    for (auto& b : branches) run.gate(b, "CNOT", {0, 1});
    branches = run.measure(std::move(branches), 'X', 0, readout);
    for (auto& b : branches) run.gate(b, "CNOT", {0, 1});
  };
  if (bits[C]) {
    for (auto& b : branches) run.gate(b, "CNOT", {0, 1});
    branches = run.measure(std::move(branches), 'Z', 1, "3");
    for (auto& b : branches) run.gate(b, "CNOT", {0, 1});
  }
  if (bits[Gamma]) {
    cz_block();
    parity_xx("6");
    cz_block();
  }
  if (bits[A]) branches = run.measure(std::move(branches), 'Z', 1, "1");
  if (bits[B]) branches = run.measure(std::move(branches), 'Z', 0, "2");
  if (bits[Alpha]) cz_block();
  if (bits[E]) branches = run.measure(std::move(branches), 'X', 1, "4");
  if (bits[D]) branches = run.measure(std::move(branches), 'X', 0, "5");
  if (bits[Beta]) cz_block();
  if (bits[Gamma]) {
    cz_block();
    branches = run.measure(std::move(branches), 'X', 0, "6a");
    branches = run.measure(std::move(branches), 'X', 1, "6b");
    cz_block();
  }
  const ContextTable table = ContextTable::standard();
  PmCircuitResult r{ctx->name, table.signs[static_cast<std::size_t>(ctx->line)], {}, 0.0, run.audit()};
  // Blocks whose outcomes give the three line values.
  static const std::map<int, std::vector<std::vector<std::string>>> reads = {
      {0, {{"5"}, {"4"}, {"4", "5"}}},           {1, {{"1"}, {"2"}, {"3"}}},
      {2, {{"5"}, {"4"}, {"6"}}},                {3, {{"5"}, {"1"}, {"6a"}}},
      {4, {{"4"}, {"2"}, {"6b"}}},               {5, {{"4", "5"}, {"3"}, {"6"}}},
  };
  for (const auto& b : branches) {
    std::map<std::string, int> out(b.readouts.begin(), b.readouts.end());
    int product = 1;
    for (const auto& observable : reads.at(ctx->line)) {
      for (const auto& block : observable) product *= out.at(block) ? -1 : 1;
    }
    r.products.push_back(product);
    r.probability_sum += b.probability;
  }
  return r;
}

WitnessReport ghz_paradox() {
  WitnessReport r;
  r.name = "ghz";
  r.enabling_gate = "S or CZ";
  const std::vector<std::string> observables = {"XXX", "XYY", "YXY", "YYX"};
  const std::vector<int> expected = {1, -1, -1, -1};
  Vector amp = Vector::Zero(8);
  amp(0) = 1.0;
  amp(7) = 1.0;
  const DenseState ghz(2, 3, amp);
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const Vector image = op_of(observables[i]).matrix() * ghz.amplitudes();
    const Complex value = ghz.amplitudes().dot(image);
    const bool eigen = (image - value * ghz.amplitudes()).norm() < kTol;
    r.values.emplace_back(observables[i], value.real());
    r.dense_checks_pass = r.dense_checks_pass && eigen && std::abs(value - Complex(expected[i], 0.0)) < kTol;
  }
  r.constraints = 4;
  Fnv1a digest;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    auto x = [&](int j) { return (mask >> j) & 1u ? -1 : 1; };
    auto y = [&](int j) { return (mask >> (3 + j)) & 1u ? -1 : 1; };
    const int products[4] = {x(0) * x(1) * x(2), x(0) * y(1) * y(2), y(0) * x(1) * y(2), y(0) * y(1) * x(2)};
    std::uint64_t satisfied = 0;
    int count = 0;
    for (int k = 0; k < 4; ++k) {
      if (products[k] == expected[static_cast<std::size_t>(k)]) {
        satisfied |= 1u << k;
        ++count;
      }
    }
    digest.add(satisfied);
    ++r.assignments_checked;
    if (count == 4) ++r.satisfying_assignments;
    r.max_satisfied = std::max(r.max_satisfied, count);
  }
  r.digest = digest.hex();
  r.classical_bound = r.max_satisfied;
  r.quantum_value = 4;

  const auto host = subtheory::minimal_rebit_subtheory(3);
  const auto ghz_stab = dense::stabilizer_state({PauliLabel::parse("XXX", 2), PauliLabel::parse("ZZI", 2),
                                                 PauliLabel::parse("IZZ", 2)});
  const bool member = std::any_of(host.states.begin(), host.states.end(),
                                  [&](const DenseState& s) { return s.equal_up_to_phase(ghz_stab); });
  r.dense_checks_pass = r.dense_checks_pass && member && ghz_stab.equal_up_to_phase(ghz);
  r.notes.push_back(std::string("GHZ state ") + (member ? "is" : "is NOT") + " a minimal-subtheory state");
  for (const auto& o : observables) {
    const bool native = std::any_of(host.observables.begin(), host.observables.end(), [&](const PauliLabel& l) {
      return l.point() == PauliLabel::parse(o, 2).point();
    });
    if (native) {
      r.notes.push_back(o + ": host-native");
      continue;
    }
    DenseOperator s = DenseOperator::identity(2, 3);
    for (int w = 0; w < 3; ++w) {
      if (o[static_cast<std::size_t>(w)] == 'Y') s = dense::gate("S", {w}, 3) * s;
    }
    const bool conj = (s * op_of(x_form(o)) * s.adjoint()).approx_equal(op_of(o), kTol);
    r.dense_checks_pass = r.dense_checks_pass && conj;
    r.notes.push_back(o + ": needs S (S-conjugate of " + x_form(o) + ") or CZ");
  }
  r.contradiction = r.satisfying_assignments == 0 && r.dense_checks_pass;
  return r;
}

WitnessReport chsh_game() {
  WitnessReport r;
  r.name = "chsh";
  r.enabling_gate = "T";
  Vector amp = Vector::Zero(4);
  amp(0) = 1.0;
  amp(3) = -1.0;
  const DenseState psi(2, 2, amp);
  const double k = 1.0 / std::sqrt(2.0);
  const auto x = dense::pauli(PauliLabel::parse("X", 2)).matrix();
  const auto y = dense::pauli(PauliLabel::parse("Y", 2)).matrix();
  const auto t = dense::gate("T", {0}, 1).matrix();
  const dense::Matrix a[2] = {y, x};
  const dense::Matrix b[2] = {(y - x) * k, (x + y) * k};
  r.dense_checks_pass = (t * y * t.adjoint()).isApprox(b[0], kTol) && (t * x * t.adjoint()).isApprox(b[1], kTol);
  r.notes.push_back(std::string("B0 = T·Y·T† and B1 = T·X·T† ") + (r.dense_checks_pass ? "hold" : "FAIL"));
  double correlator[2][2];
  const double expected[2][2] = {{k, k}, {k, -k}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const dense::Matrix ab = dense::embed(a[i], {0}, 2, 2) * dense::embed(b[j], {1}, 2, 2);
      correlator[i][j] = psi.amplitudes().dot(ab * psi.amplitudes()).real();
      r.values.emplace_back("<A" + std::to_string(i) + "B" + std::to_string(j) + ">", correlator[i][j]);
      r.dense_checks_pass = r.dense_checks_pass && std::abs(correlator[i][j] - expected[i][j]) < kTol;
    }
  }
  const double game = 0.25 * (correlator[0][0] + correlator[0][1] + correlator[1][0] - correlator[1][1]);
  r.values.emplace_back("game value", game);
  r.quantum_value = 0.5 + 0.5 * game;
  r.dense_checks_pass = r.dense_checks_pass && std::abs(r.quantum_value - (0.5 + 1.0 / (2.0 * std::sqrt(2.0)))) < kTol;
  int best = 0;
  Fnv1a digest;
  for (int strategy = 0; strategy < 16; ++strategy) {
    int wins = 0;
    for (int xin = 0; xin < 2; ++xin) {
      for (int yin = 0; yin < 2; ++yin) {
        const int aout = (strategy >> xin) & 1;
        const int bout = (strategy >> (2 + yin)) & 1;
        if ((aout ^ bout) == (xin & yin)) ++wins;
      }
    }
    digest.add(static_cast<std::uint64_t>(wins));
    best = std::max(best, wins);
    ++r.assignments_checked;
  }
  r.digest = digest.hex();
  r.constraints = 4;
  r.max_satisfied = best;
  r.classical_bound = best / 4.0;
  r.contradiction = r.dense_checks_pass && r.quantum_value > r.classical_bound;
  return r;
}

}  // namespace spekkens::contextuality
