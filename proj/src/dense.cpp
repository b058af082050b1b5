#include "spekkens/dense.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace spekkens::dense {

using phase::mod;

std::size_t checked_dimension(int d, int n) {
  phase::require_modulus(d);
  if (n < 1) throw InvalidInput("register needs at least one wire");
  const int cap = d == 2 ? 6 : d == 3 ? 4 : 2;
  const std::uint64_t dim = phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(std::min(n, 32)));
  if (n > cap) {
    throw GuardExceeded("dense register of " + std::to_string(n) + " systems", dim,
                        phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(cap)));
  }
  return static_cast<std::size_t>(dim);
}

int phase_order(int d) { return d == 2 ? 4 : d; }

Complex zeta(int d, long long k) {
  const int big_d = phase_order(d);
  const double angle = 2.0 * std::numbers::pi * mod(k, big_d) / big_d;
  return {std::cos(angle), std::sin(angle)};
}

Complex chi(int d, long long a) { return zeta(d, static_cast<long long>(phase_order(d) / d) * a); }

// ---------------------------------------------------------------------------
// DenseState

DenseState::DenseState(int d, int n, Vector amplitudes) : d_(d), n_(n), amp_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amp_.size()) != checked_dimension(d, n)) {
    throw DimensionMismatch("state vector length differs from d^n");
  }
  const double norm = amp_.norm();
  if (norm < kConstructionTol) throw InvalidInput("zero state vector");
  amp_ /= norm;
}

DenseState DenseState::basis(int d, int n, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(checked_dimension(d, n)));
  if (index >= static_cast<std::size_t>(v.size())) throw InvalidInput("basis index out of range");
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return DenseState(d, n, v);
}

DenseState DenseState::product(int d, const std::vector<Vector>& kets) {
  if (kets.empty()) throw InvalidInput("product of zero kets");
  Vector acc = Vector::Ones(1);
  for (const auto& k : kets) {
    if (k.size() != d) throw DimensionMismatch("single-system ket has wrong length");
    Vector next(acc.size() * k.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) {
      for (Eigen::Index j = 0; j < k.size(); ++j) next(i * k.size() + j) = acc(i) * k(j);
    }
    acc = std::move(next);
  }
  return DenseState(d, static_cast<int>(kets.size()), acc);
}

DenseState DenseState::evolved(const DenseOperator& u) const {
  if (u.d() != d_ || u.n() != n_) throw DimensionMismatch("operator and state differ in size");
  return DenseState(d_, n_, u.matrix() * amp_);
}

DenseState DenseState::canonical() const {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    const double m = std::abs(amp_(i));
    if (m > best_mag + kEndToEndTol) {
      best = i;
      best_mag = m;
    }
  }
  const Complex ph = std::conj(amp_(best)) / std::abs(amp_(best));
  Vector v = amp_ * ph;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double re = v(i).real();
    double im = v(i).imag();
    if (std::abs(re) < 1e-15) re = 0.0;
    if (std::abs(im) < 1e-15) im = 0.0;
    v(i) = {re, im};
  }
  return DenseState(d_, n_, v);
}

double DenseState::overlap(const DenseState& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("overlap of states of different size");
  return std::abs(amp_.dot(other.amp_));
}

bool DenseState::equal_up_to_phase(const DenseState& other, double tol) const {
  return overlap(other) > 1.0 - tol;
}

std::string DenseState::to_string() const {
  std::ostringstream os;
  os.precision(6);
  os << "[";
  for (Eigen::Index i = 0; i < amp_.size(); ++i) {
    os << (i ? ", " : "") << amp_(i).real();
    if (std::abs(amp_(i).imag()) > 1e-12) os << (amp_(i).imag() < 0 ? "-" : "+") << std::abs(amp_(i).imag()) << "i";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(int d, int n, Matrix m) : d_(d), n_(n), m_(std::move(m)) {
  const auto dim = static_cast<Eigen::Index>(checked_dimension(d, n));
  if (m_.rows() != dim || m_.cols() != dim) throw DimensionMismatch("operator shape differs from d^n");
}

DenseOperator DenseOperator::identity(int d, int n) {
  const auto dim = static_cast<Eigen::Index>(checked_dimension(d, n));
  return DenseOperator(d, n, Matrix::Identity(dim, dim));
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
  if (o.d_ != d_ || o.n_ != n_) throw DimensionMismatch("operator product of different sizes");
  return DenseOperator(d_, n_, m_ * o.m_);
}

DenseOperator DenseOperator::adjoint() const { return DenseOperator(d_, n_, m_.adjoint()); }

DenseOperator DenseOperator::scaled(Complex c) const { return DenseOperator(d_, n_, m_ * c); }

bool DenseOperator::is_unitary(double tol) const {
  return (m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff() < tol;
}

bool DenseOperator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool DenseOperator::is_diagonal(double tol) const {
  for (Eigen::Index r = 0; r < m_.rows(); ++r) {
    for (Eigen::Index c = 0; c < m_.cols(); ++c) {
      if (r != c && std::abs(m_(r, c)) > tol) return false;
    }
  }
  return true;
}

bool DenseOperator::approx_equal(const DenseOperator& o, double tol) const {
  if (o.d_ != d_ || o.n_ != n_) return false;
  return (m_ - o.m_).cwiseAbs().maxCoeff() < tol;
}

std::optional<Complex> DenseOperator::phase_relative_to(const DenseOperator& o, double tol) const {
  if (o.d_ != d_ || o.n_ != n_) return std::nullopt;
  Eigen::Index br = 0;
  Eigen::Index bc = 0;
  o.m_.cwiseAbs().maxCoeff(&br, &bc);
  if (std::abs(o.m_(br, bc)) < tol) return std::nullopt;
  const Complex ratio = m_(br, bc) / o.m_(br, bc);
  if (std::abs(std::abs(ratio) - 1.0) > tol) return std::nullopt;
  if ((m_ - o.m_ * ratio).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return ratio;
}

// ---------------------------------------------------------------------------
// Pauli labels

phase::PhasePoint PauliLabel::point() const {
  std::vector<int> c;
  for (int j = 0; j < n(); ++j) {
    c.push_back(q[static_cast<std::size_t>(j)]);
    c.push_back(p[static_cast<std::size_t>(j)]);
  }
  return phase::PhasePoint(d, c);
}

PauliLabel PauliLabel::from_point(const phase::PhasePoint& lambda, int phase) {
  PauliLabel l;
  l.d = lambda.d();
  for (int j = 0; j < lambda.n(); ++j) {
    l.q.push_back(lambda.x(j));
    l.p.push_back(lambda.p(j));
  }
  l.phase = mod(phase, phase_order(l.d));
  return l;
}

PauliLabel PauliLabel::parse(const std::string& text, int d) {
  phase::require_modulus(d);
  const int big_d = phase_order(d);
  PauliLabel l;
  l.d = d;
  std::size_t pos = 0;
  int ph = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') {
      if (d != 2) throw ParseError("a minus sign is not a phase of an odd-d Pauli", pos + 1);
      ph += 2;
    }
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    if (d != 2) throw ParseError("an i prefix is only valid for qubits", pos + 1);
    ph += 1;
    ++pos;
  }
  if (pos == text.size()) throw ParseError("expected Pauli letters", pos + 1);
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    int q = 0;
    int p = 0;
    switch (c) {
      case 'I': break;
      case 'X': q = 1; break;
      case 'Z': p = 1; break;
      case 'Y':
        if (d != 2) throw ParseError("Y is only defined for qubits", pos + 1);
        q = 1;
        p = 1;
        ph += 3;
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "' in Pauli string", pos + 1);
    }
    l.q.push_back(q);
    l.p.push_back(p);
  }
  l.phase = mod(ph, big_d);
  return l;
}

std::string PauliLabel::to_string() const {
  std::string letters;
  int residual = phase;
  bool simple = true;
  for (int j = 0; j < n(); ++j) {
    const int qj = q[static_cast<std::size_t>(j)];
    const int pj = p[static_cast<std::size_t>(j)];
    if (qj > 1 || pj > 1 || (d != 2 && qj == 1 && pj == 1)) simple = false;
  }
  if (simple) {
    for (int j = 0; j < n(); ++j) {
      const int qj = q[static_cast<std::size_t>(j)];
      const int pj = p[static_cast<std::size_t>(j)];
      if (qj && pj) {
        letters += 'Y';
        residual -= 3;
      } else {
        letters += qj ? 'X' : pj ? 'Z' : 'I';
      }
    }
  } else {
    for (int j = 0; j < n(); ++j) {
      if (j) letters += '.';
      letters += "X" + std::to_string(q[static_cast<std::size_t>(j)]) + "Z" + std::to_string(p[static_cast<std::size_t>(j)]);
    }
  }
  residual = mod(residual, phase_order(d));
  if (d == 2) {
    static const char* prefix[] = {"+", "i", "-", "-i"};
    return prefix[residual] + letters;
  }
  return residual == 0 ? "+" + letters : "w" + std::to_string(residual) + letters;
}

DenseOperator pauli(const std::vector<int>& q, const std::vector<int>& p, int d) {
  PauliLabel l;
  l.d = d;
  l.q = q;
  l.p = p;
  return pauli(l);
}

DenseOperator pauli(const PauliLabel& label) {
  const int n = label.n();
  if (static_cast<int>(label.p.size()) != n) throw DimensionMismatch("Pauli label q and p lengths differ");
  const std::size_t dim = checked_dimension(label.d, n);
  const int d = label.d;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const Complex global = zeta(d, label.phase);
  for (std::size_t k = 0; k < dim; ++k) {
    // Decompose k into digits, wire 0 most significant.
    std::size_t target = 0;
    long long zp = 0;
    std::size_t rem = k;
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int j = n; j-- > 0;) {
      digits[static_cast<std::size_t>(j)] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    for (int j = 0; j < n; ++j) {
      const int shifted = mod(digits[static_cast<std::size_t>(j)] - label.q[static_cast<std::size_t>(j)], d);
      target = target * static_cast<std::size_t>(d) + static_cast<std::size_t>(shifted);
      zp += static_cast<long long>(shifted) * label.p[static_cast<std::size_t>(j)];
    }
    m(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(k)) = global * chi(d, zp);
  }
  return DenseOperator(d, n, m);
}

PauliLabel multiply(const PauliLabel& a, const PauliLabel& b) {
  if (a.d != b.d || a.n() != b.n()) throw DimensionMismatch("Pauli product of different sizes");
  PauliLabel r;
  r.d = a.d;
  long long qp = 0;
  for (int j = 0; j < a.n(); ++j) {
    r.q.push_back(mod(a.q[static_cast<std::size_t>(j)] + b.q[static_cast<std::size_t>(j)], a.d));
    r.p.push_back(mod(a.p[static_cast<std::size_t>(j)] + b.p[static_cast<std::size_t>(j)], a.d));
    qp += static_cast<long long>(a.q[static_cast<std::size_t>(j)]) * b.p[static_cast<std::size_t>(j)];
  }
  const int big_d = phase_order(a.d);
  r.phase = mod(a.phase + b.phase + (big_d / a.d) * qp, big_d);
  return r;
}

PauliLabel hermitian_label(const std::vector<int>& q, const std::vector<int>& p) {
  PauliLabel l;
  l.d = 2;
  l.q = q;
  l.p = p;
  int qp = 0;
  for (std::size_t j = 0; j < q.size(); ++j) qp += q[j] * p[j];
  l.phase = mod(qp, 4);
  return l;
}

// ---------------------------------------------------------------------------
// Gates

Matrix embed(const Matrix& local, const std::vector<int>& wires, int n, int d) {
  const std::size_t dim = checked_dimension(d, n);
  const int k = static_cast<int>(wires.size());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int w : wires) {
    if (w < 0 || w >= n) throw InvalidInput("wire " + std::to_string(w) + " outside register of " + std::to_string(n));
    if (used[static_cast<std::size_t>(w)]) throw InvalidInput("wire " + std::to_string(w) + " used twice by one gate");
    used[static_cast<std::size_t>(w)] = true;
  }
  const std::size_t ldim = phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(k));
  if (static_cast<std::size_t>(local.rows()) != ldim) throw DimensionMismatch("local gate size differs from d^k");
  std::vector<std::size_t> stride(static_cast<std::size_t>(n));
  std::size_t s = 1;
  for (int j = n; j-- > 0;) {
    stride[static_cast<std::size_t>(j)] = s;
    s *= static_cast<std::size_t>(d);
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t li = 0;
    std::size_t rest = col;
    for (int w : wires) {
      const std::size_t digit = (col / stride[static_cast<std::size_t>(w)]) % static_cast<std::size_t>(d);
      li = li * static_cast<std::size_t>(d) + digit;
      rest -= digit * stride[static_cast<std::size_t>(w)];
    }
    for (std::size_t lo = 0; lo < ldim; ++lo) {
      const Complex a = local(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(li));
      if (a == Complex(0.0, 0.0)) continue;
      std::size_t row = rest;
      std::size_t r = lo;
      for (int j = k; j-- > 0;) {
        row += (r % static_cast<std::size_t>(d)) * stride[static_cast<std::size_t>(wires[static_cast<std::size_t>(j)])];
        r /= static_cast<std::size_t>(d);
      }
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += a;
    }
  }
  return out;
}

namespace {

Matrix local_gate(const std::string& name, int d) {
  const Complex i(0.0, 1.0);
  if (d == 2) {
    const double r = 1.0 / std::sqrt(2.0);
    if (name == "I") return Matrix::Identity(2, 2);
    if (name == "X") return (Matrix(2, 2) << 0, 1, 1, 0).finished();
    if (name == "Y") return (Matrix(2, 2) << 0, -i, i, 0).finished();
    if (name == "Z") return (Matrix(2, 2) << 1, 0, 0, -1).finished();
    if (name == "H") return (Matrix(2, 2) << r, r, r, -r).finished();
    if (name == "S") return (Matrix(2, 2) << 1, 0, 0, i).finished();
    if (name == "T") return (Matrix(2, 2) << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4)).finished();
    if (name == "CNOT") {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(3, 2) = m(2, 3) = 1;
      return m;
    }
    if (name == "CZ") {
      Matrix m = Matrix::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    }
    if (name == "SWAP") {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1;
      return m;
    }
    if (name == "CCZ") {
      Matrix m = Matrix::Identity(8, 8);
      m(7, 7) = -1;
      return m;
    }
  } else {
    const int dd = d;
    if (name == "I") return Matrix::Identity(dd, dd);
    if (name == "X") return pauli({1}, {0}, d).matrix();
    if (name == "Z") return pauli({0}, {1}, d).matrix();
    if (name == "H") {
      Matrix m(dd, dd);
      for (int a = 0; a < dd; ++a) {
        for (int b = 0; b < dd; ++b) m(a, b) = chi(d, a * b) / std::sqrt(static_cast<double>(dd));
      }
      return m;
    }
    if (name == "S") {
      Matrix m = Matrix::Identity(dd, dd);
      m(dd - 1, dd - 1) = chi(d, 1);
      return m;
    }
    if (name == "CNOT" || name == "CZ" || name == "SWAP") {
      Matrix m = Matrix::Zero(dd * dd, dd * dd);
      for (int a = 0; a < dd; ++a) {
        for (int b = 0; b < dd; ++b) {
          const int col = a * dd + b;
          if (name == "CNOT") m((a * dd + (a + b) % dd), col) = 1;
          if (name == "CZ") m(col, col) = chi(d, a * b);
          if (name == "SWAP") m(b * dd + a, col) = 1;
        }
      }
      return m;
    }
  }
  throw InvalidInput("unknown gate '" + name + "' for d=" + std::to_string(d));
}

}  // namespace

bool is_known_gate(const std::string& name, int d) {
  static const std::vector<std::string> qubit{"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "CCZ", "SWAP"};
  static const std::vector<std::string> qudit{"I", "X", "Z", "H", "S", "CNOT", "CZ", "SWAP"};
  const auto& names = d == 2 ? qubit : qudit;
  return std::find(names.begin(), names.end(), name) != names.end();
}

int gate_arity(const std::string& name) {
  if (name == "CNOT" || name == "CZ" || name == "SWAP") return 2;
  if (name == "CCZ") return 3;
  return 1;
}

DenseOperator gate(const std::string& name, const std::vector<int>& wires, int n, int d) {
  if (!is_known_gate(name, d)) throw InvalidInput("unknown gate '" + name + "' for d=" + std::to_string(d));
  if (static_cast<int>(wires.size()) != gate_arity(name)) {
    throw InvalidInput("gate " + name + " takes " + std::to_string(gate_arity(name)) + " wire(s)");
  }
  return DenseOperator(d, n, embed(local_gate(name, d), wires, n, d));
}

// ---------------------------------------------------------------------------
// Stabilizer states and measurement

DenseOperator pauli_outcome_projector(const PauliLabel& label, int k) {
  const DenseOperator p = pauli(label);
  const int d = label.d;
  DenseOperator power = DenseOperator::identity(d, label.n());
  Matrix acc = Matrix::Zero(p.matrix().rows(), p.matrix().cols());
  for (int j = 0; j < d; ++j) {
    acc += chi(d, static_cast<long long>(j) * k) * power.matrix();
    power = power * p;
  }
  if (!power.approx_equal(DenseOperator::identity(d, label.n()), 1e-9)) {
    throw InvalidInput("observable " + label.to_string() + " does not satisfy P^d = I");
  }
  return DenseOperator(d, label.n(), acc / static_cast<double>(d));
}

DenseOperator stabilizer_projector(const std::vector<PauliLabel>& generators) {
  if (generators.empty()) throw InvalidInput("no stabilizer generators");
  const int d = generators.front().d;
  const int n = generators.front().n();
  std::vector<DenseOperator> ops;
  for (const auto& g : generators) {
    if (g.d != d || g.n() != n) throw DimensionMismatch("stabilizer generators differ in size");
    ops.push_back(pauli(g));
  }
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a + 1; b < ops.size(); ++b) {
      if (!(ops[a] * ops[b]).approx_equal(ops[b] * ops[a], 1e-9)) {
        throw InvalidInput("generators " + generators[a].to_string() + " and " + generators[b].to_string() +
                           " do not commute");
      }
    }
  }
  DenseOperator proj = DenseOperator::identity(d, n);
  for (const auto& g : generators) proj = proj * pauli_outcome_projector(g, 0);
  return proj;
}

DenseState stabilizer_state(const std::vector<PauliLabel>& generators) {
  const DenseOperator proj = stabilizer_projector(generators);
  const double rank = proj.matrix().trace().real();
  if (rank < 0.5) throw InvalidInput("stabilizer generators are inconsistent (no joint eigenvector)");
  if (rank > 1.5) throw InvalidInput("stabilizer generators do not determine a unique state");
  Eigen::Index best = 0;
  proj.matrix().colwise().norm().maxCoeff(&best);
  const int d = generators.front().d;
  return DenseState(d, generators.front().n(), proj.matrix().col(best)).canonical();
}

std::vector<BornOutcome> born(const DenseState& state, const std::vector<DenseOperator>& projectors) {
  if (projectors.empty()) throw InvalidInput("empty measurement");
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(state.dim()), static_cast<Eigen::Index>(state.dim()));
  for (const auto& p : projectors) {
    if (p.d() != state.d() || p.n() != state.n()) throw DimensionMismatch("projector and state differ in size");
    total += p.matrix();
  }
  if ((total - Matrix::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff() > kConstructionTol) {
    throw InvalidInput("measurement operators do not sum to the identity");
  }
  std::vector<BornOutcome> out;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const Vector v = projectors[k].matrix() * state.amplitudes();
    const double prob = v.squaredNorm();
    std::optional<DenseState> post;
    if (prob > 1e-14) post = DenseState(state.d(), state.n(), v);
    out.push_back({static_cast<int>(k), prob, post});
  }
  return out;
}

std::vector<BornOutcome> born(const DenseState& state, const PauliLabel& observable) {
  std::vector<DenseOperator> projectors;
  for (int k = 0; k < observable.d; ++k) projectors.push_back(pauli_outcome_projector(observable, k));
  return born(state, projectors);
}

std::vector<StabilizerStateInfo> enumerate_stabilizer_states(int d, int n) {
  checked_dimension(d, n);
  std::vector<StabilizerStateInfo> out;
  std::vector<phase::ObservableFunctional> x_axes;
  std::vector<phase::ObservableFunctional> z_axes;
  for (int j = 0; j < n; ++j) {
    std::vector<int> x(static_cast<std::size_t>(2 * n), 0);
    std::vector<int> z(static_cast<std::size_t>(2 * n), 0);
    x[static_cast<std::size_t>(2 * j)] = 1;
    z[static_cast<std::size_t>(2 * j + 1)] = 1;
    x_axes.emplace_back(d, x);
    z_axes.emplace_back(d, z);
  }
  const phase::Subspace x_only(d, n, x_axes);
  const phase::Subspace z_only(d, n, z_axes);
  const int big_d = phase_order(d);
  for (const auto& lag : phase::enumerate_lagrangians(d, n)) {
    const bool css = phase::intersect(lag, x_only).dim() + phase::intersect(lag, z_only).dim() == n;
    std::vector<PauliLabel> base;
    for (const auto& g : lag.basis()) {
      PauliLabel l = PauliLabel::from_point(g.as<phase::PointTag>());
      if (d == 2) l = hermitian_label(l.q, l.p);
      base.push_back(l);
    }
    const std::uint64_t combos = phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n));
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::vector<PauliLabel> gens = base;
      std::uint64_t r = c;
      for (std::size_t j = gens.size(); j-- > 0;) {
        const int s = static_cast<int>(r % static_cast<std::uint64_t>(d));
        r /= static_cast<std::uint64_t>(d);
        gens[j].phase = mod(gens[j].phase + (big_d / d) * s, big_d);
      }
      DenseState st = stabilizer_state(gens);
      const bool real = st.amplitudes().imag().cwiseAbs().maxCoeff() < 1e-9;
      out.push_back({gens, lag, st, css, real});
    }
  }
  return out;
}

DenseState discard_wire(const DenseState& state, int wire, int value) {
  const int d = state.d();
  const int n = state.n();
  if (n < 2) throw InvalidInput("cannot discard the only wire");
  if (wire < 0 || wire >= n) throw InvalidInput("discarded wire outside register");
  const std::size_t stride = phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n - 1 - wire));
  const std::size_t dim = state.dim();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim / static_cast<std::size_t>(d)));
  double leaked = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const int digit = static_cast<int>((i / stride) % static_cast<std::size_t>(d));
    const Complex a = state.amplitudes()(static_cast<Eigen::Index>(i));
    if (digit != value) {
      leaked += std::norm(a);
      continue;
    }
    const std::size_t high = i / (stride * static_cast<std::size_t>(d));
    const std::size_t low = i % stride;
    out(static_cast<Eigen::Index>(high * stride + low)) = a;
  }
  if (leaked > kEndToEndTol) throw InvalidInput("discarded wire is not in the stated basis state");
  return DenseState(d, n - 1, out);
}

DenseState discard_wire(const DenseState& state, int wire, const Vector& local) {
  const int d = state.d();
  const int n = state.n();
  if (n < 2) throw InvalidInput("cannot discard the only wire");
  if (wire < 0 || wire >= n) throw InvalidInput("discarded wire outside register");
  if (local.size() != d) throw DimensionMismatch("local state has the wrong dimension");
  const Vector unit = local.normalized();
  const std::size_t stride = phase::ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n - 1 - wire));
  const std::size_t dim = state.dim();
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim / static_cast<std::size_t>(d)));
  for (std::size_t i = 0; i < dim; ++i) {
    const int digit = static_cast<int>((i / stride) % static_cast<std::size_t>(d));
    const std::size_t high = i / (stride * static_cast<std::size_t>(d));
    const std::size_t low = i % stride;
    out(static_cast<Eigen::Index>(high * stride + low)) +=
        std::conj(unit(digit)) * state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  if (1.0 - out.squaredNorm() > kEndToEndTol) throw InvalidInput("discarded wire is not in the stated product state");
  return DenseState(d, n - 1, out);
}

DenseState random_state(int d, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(checked_dimension(d, n)));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return DenseState(d, n, v);
}

DenseState tensor(const DenseState& a, const DenseState& b) {
  if (a.d() != b.d()) throw DimensionMismatch("tensor of states with different d");
  Vector v(static_cast<Eigen::Index>(a.dim() * b.dim()));
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  }
  return DenseState(a.d(), a.n() + b.n(), v);
}

}  // namespace spekkens::dense
