#include "spekkens/wigner.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "spekkens/toy_model.hpp"

namespace spekkens::wigner {

using phase::mod;

std::string to_string(SpecName name) {
  switch (name) {
    case SpecName::Gross: return "gross";
    case SpecName::DelfosseRebit: return "delfosse-rebit";
    case SpecName::FactorisableRebit: return "factorisable-rebit";
    case SpecName::Custom: return "custom";
  }
  return "custom";
}

SpecName spec_name_from_string(const std::string& text) {
  if (text == "gross") return SpecName::Gross;
  if (text == "delfosse-rebit") return SpecName::DelfosseRebit;
  if (text == "factorisable-rebit") return SpecName::FactorisableRebit;
  throw InvalidInput("unknown Wigner spec '" + text + "' (expected gross, delfosse-rebit or factorisable-rebit)");
}

WignerSpec WignerSpec::gross(int d, int n) {
  phase::require_modulus(d);
  if (d % 2 == 0) throw InvalidInput("the gross spec requires odd d");
  const int half = phase::inverse_mod(2, d);
  WignerSpec s;
  s.name = SpecName::Gross;
  s.d = d;
  s.n = n;
  s.phase = [half, d](const PhasePoint& l) {
    long long g = 0;
    for (int j = 0; j < l.n(); ++j) g += static_cast<long long>(l.x(j)) * l.p(j);
    return mod(half * g, d);
  };
  s.include = [](const PhasePoint&) { return true; };
  return s;
}

WignerSpec WignerSpec::delfosse_rebit(int n) {
  WignerSpec s;
  s.name = SpecName::DelfosseRebit;
  s.d = 2;
  s.n = n;
  s.phase = [](const PhasePoint&) { return 0; };
  s.include = [](const PhasePoint& l) {
    int qp = 0;
    for (int j = 0; j < l.n(); ++j) qp += l.x(j) * l.p(j);
    return qp % 2 == 0;
  };
  return s;
}

WignerSpec WignerSpec::factorisable_rebit(int n) {
  WignerSpec s;
  s.name = SpecName::FactorisableRebit;
  s.d = 2;
  s.n = n;
  s.phase = [](const PhasePoint&) { return 0; };
  s.include = [](const PhasePoint&) { return true; };
  return s;
}

WignerSpec WignerSpec::by_name(const std::string& name, int d, int n) {
  switch (spec_name_from_string(name)) {
    case SpecName::Gross: return gross(d, n);
    case SpecName::DelfosseRebit:
      if (d != 2) throw InvalidInput("delfosse-rebit requires d=2");
      return delfosse_rebit(n);
    case SpecName::FactorisableRebit:
      if (d != 2) throw InvalidInput("factorisable-rebit requires d=2");
      return factorisable_rebit(n);
    case SpecName::Custom: break;
  }
  throw InvalidInput("custom specs cannot be built by name");
}

std::uint64_t WignerSpec::points() const { return phase::phase_space_size(d, n); }

dense::PauliLabel weyl_label(const PhasePoint& lambda, const WignerSpec& spec) {
  if (lambda.d() != spec.d || lambda.n() != spec.n) throw DimensionMismatch("point outside the spec's phase space");
  return dense::PauliLabel::from_point(lambda, spec.phase(lambda));
}

DenseOperator weyl(const PhasePoint& lambda, const WignerSpec& spec) { return dense::pauli(weyl_label(lambda, spec)); }

std::vector<PhasePoint> inferred_set(const WignerSpec& spec) {
  std::vector<PhasePoint> out;
  for (std::uint64_t i = 0; i < spec.points(); ++i) {
    auto l = spec.point(i);
    if (spec.include(l)) out.push_back(l);
  }
  return out;
}

namespace {

DenseOperator phase_point_from(const PhasePoint& lambda, const WignerSpec& spec,
                               const std::vector<std::pair<PhasePoint, DenseOperator>>& weyls) {
  dense::Matrix acc = dense::Matrix::Zero(weyls.front().second.matrix().rows(), weyls.front().second.matrix().cols());
  for (const auto& [lp, t] : weyls) acc += dense::chi(spec.d, phase::symplectic_product(lambda, lp)) * t.matrix();
  const dense::Complex trace = acc.trace();
  if (std::abs(trace) < 1e-12) throw Error("phase-point operator has zero trace");
  return DenseOperator(spec.d, spec.n, acc / trace);
}

std::vector<std::pair<PhasePoint, DenseOperator>> weyl_terms(const WignerSpec& spec) {
  std::vector<std::pair<PhasePoint, DenseOperator>> weyls;
  for (const auto& lp : inferred_set(spec)) weyls.emplace_back(lp, weyl(lp, spec));
  return weyls;
}

}  // namespace

DenseOperator phase_point(const PhasePoint& lambda, const WignerSpec& spec) {
  if (lambda.d() != spec.d || lambda.n() != spec.n) throw DimensionMismatch("point outside the spec's phase space");
  if (spec.name != SpecName::Custom) return phase_points(spec)[lambda.index()];
  return phase_point_from(lambda, spec, weyl_terms(spec));
}

const std::vector<DenseOperator>& phase_points(const WignerSpec& spec) {
  static std::mutex lock;
  static std::map<std::tuple<int, int, int>, std::vector<DenseOperator>> cache;
  if (spec.name == SpecName::Custom) throw InvalidInput("custom specs are not cached; use phase_point");
  const auto key = std::make_tuple(static_cast<int>(spec.name), spec.d, spec.n);
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto weyls = weyl_terms(spec);
  std::vector<DenseOperator> ops;
  for (std::uint64_t i = 0; i < spec.points(); ++i) ops.push_back(phase_point_from(spec.point(i), spec, weyls));
  return cache.emplace(key, std::move(ops)).first->second;
}

double WignerTable::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double WignerTable::max_imag() const {
  double m = 0.0;
  for (double v : imag) m = std::max(m, std::abs(v));
  return m;
}

std::vector<PhasePoint> WignerTable::support(double tol) const {
  std::vector<PhasePoint> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > tol || std::abs(imag[i]) > tol) out.push_back(PhasePoint::from_index(d, n, i));
  }
  return out;
}

namespace {

std::vector<DenseOperator> spec_phase_points(const WignerSpec& spec) {
  std::vector<DenseOperator> ops;
  const auto weyls = weyl_terms(spec);
  for (std::uint64_t i = 0; i < spec.points(); ++i) ops.push_back(phase_point_from(spec.point(i), spec, weyls));
  return ops;
}

}  // namespace

WignerTable wigner_of_operator(const dense::Matrix& rho, const WignerSpec& spec) {
  std::vector<DenseOperator> custom;
  const std::vector<DenseOperator>* ops = nullptr;
  if (spec.name == SpecName::Custom) {
    custom = spec_phase_points(spec);
    ops = &custom;
  } else {
    ops = &phase_points(spec);
  }
  if (rho.rows() != ops->front().matrix().rows()) throw DimensionMismatch("operator and spec differ in size");
  WignerTable t;
  t.spec_name = spec.label();
  t.d = spec.d;
  t.n = spec.n;
  std::vector<dense::Complex> raw;
  dense::Complex total = 0.0;
  const dense::Matrix rho_t = rho.transpose();
  for (const auto& a : *ops) {
    const dense::Complex v = rho_t.cwiseProduct(a.matrix()).sum();
    raw.push_back(v);
    total += v;
  }
  if (std::abs(total) < 1e-12) throw InvalidInput("operator has zero trace; table cannot be normalized");
  t.normalization = total.real();
  for (const auto& v : raw) {
    const dense::Complex w = v / total.real();
    t.values.push_back(w.real());
    t.imag.push_back(w.imag());
  }
  return t;
}

WignerTable wigner_of_state(const DenseState& state, const WignerSpec& spec) {
  if (state.d() != spec.d || state.n() != spec.n) throw DimensionMismatch("state and spec differ in d or n");
  return wigner_of_operator(state.density(), spec);
}

WignerTable wigner_of_measurement(const DenseOperator& effect, const WignerSpec& spec) {
  if (effect.d() != spec.d || effect.n() != spec.n) throw DimensionMismatch("effect and spec differ in d or n");
  return wigner_of_operator(effect.matrix(), spec);
}

NonnegativityReport is_nonnegative(const WignerTable& table, double tol) {
  NonnegativityReport r{true, 0.0, table.max_imag(), {}};
  r.min_value = table.values.empty() ? 0.0 : table.values.front();
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    r.min_value = std::min(r.min_value, table.values[i]);
    if (table.values[i] < -tol || std::abs(table.imag[i]) > tol) {
      r.offending.push_back(PhasePoint::from_index(table.d, table.n, i));
    }
  }
  r.nonnegative = r.offending.empty();
  return r;
}

bool is_coset_indicator(const WignerTable& table, double tol) {
  if (!is_nonnegative(table, tol).nonnegative) return false;
  const auto support = table.support(tol);
  if (support.empty()) return false;
  const double w = 1.0 / static_cast<double>(support.size());
  for (const auto& l : support) {
    if (std::abs(table.at(l) - w) > tol) return false;
  }
  try {
    toy::epistemic_from_support(support);
  } catch (const Error&) {
    return false;
  }
  return true;
}

namespace {

struct TablePair {
  std::vector<WignerTable> before;
  std::vector<WignerTable> after;
};

TablePair tables_for(const DenseOperator& u, const WignerSpec& spec, const std::vector<DenseState>& states) {
  TablePair tp;
  for (const auto& s : states) {
    tp.before.push_back(wigner_of_state(s, spec));
    tp.after.push_back(wigner_of_state(s.evolved(u), spec));
  }
  return tp;
}

/// Image indices of an affine map, evaluated lazily point by point.
class FastAffine {
 public:
  FastAffine(const phase::ZdMatrix& s, int d, int n) : d_(d), size_(2 * n), cols_(static_cast<std::size_t>(size_ * size_)) {
    for (int r = 0; r < size_; ++r) {
      for (int c = 0; c < size_; ++c) cols_[static_cast<std::size_t>(c * size_ + r)] = s(r, c);
    }
  }

  std::uint64_t image(std::uint64_t index, const std::vector<int>& shift) const {
    int coords[16] = {0};
    std::uint64_t rem = index;
    int lambda[16];
    for (int i = size_; i-- > 0;) {
      lambda[i] = static_cast<int>(rem % static_cast<std::uint64_t>(d_));
      rem /= static_cast<std::uint64_t>(d_);
    }
    for (int c = 0; c < size_; ++c) {
      if (lambda[c] == 0) continue;
      for (int r = 0; r < size_; ++r) coords[r] += lambda[c] * cols_[static_cast<std::size_t>(c * size_ + r)];
    }
    std::uint64_t out = 0;
    for (int r = 0; r < size_; ++r) {
      out = out * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>((coords[r] + shift[static_cast<std::size_t>(r)]) % d_);
    }
    return out;
  }

 private:
  int d_;
  int size_;
  std::vector<int> cols_;
};

bool matches(const TablePair& tp, const FastAffine& g, const std::vector<int>& shift, std::uint64_t points,
             double tol) {
  for (std::uint64_t l = 0; l < points; ++l) {
    const std::uint64_t img = g.image(l, shift);
    for (std::size_t s = 0; s < tp.before.size(); ++s) {
      if (std::abs(tp.after[s].values[l] - tp.before[s].values[img]) > tol) return false;
      if (std::abs(tp.after[s].imag[l] - tp.before[s].imag[img]) > tol) return false;
    }
  }
  return true;
}

void search(const TablePair& tp, const WignerSpec& spec, CovarianceFit& fit,
            const std::function<bool(const AffineSymplectic&)>& accept) {
  const std::uint64_t points = spec.points();
  const std::uint64_t order = phase::symplectic_group_order(spec.n, spec.d);
  if (order > phase::kAffineGuard / points) {
    throw GuardExceeded("covariance search", order * points, phase::kAffineGuard);
  }
  std::vector<std::vector<int>> shifts;
  for (std::uint64_t i = 0; i < points; ++i) shifts.push_back(spec.point(i).coords());
  fit.exhaustive = true;
  phase::for_each_symplectic_matrix(spec.n, spec.d, [&](const phase::ZdMatrix& s) {
    const FastAffine g(s, spec.d, spec.n);
    for (std::uint64_t a = 0; a < points; ++a) {
      ++fit.candidates_tried;
      if (!matches(tp, g, shifts[a], points, 1e-9)) continue;
      AffineSymplectic cand(s, spec.point(a));
      if (accept(cand)) {
        fit.witness = cand;
        fit.exhaustive = false;
        return false;
      }
    }
    return true;
  });
}

}  // namespace

CovarianceFit fit_covariance(const DenseOperator& u, const WignerSpec& spec, const std::vector<DenseState>& states) {
  if (states.empty()) throw InvalidInput("covariance needs a non-empty state set");
  if (u.d() != spec.d || u.n() != spec.n) throw DimensionMismatch("gate and spec differ in d or n");
  const TablePair tp = tables_for(u, spec, states);
  CovarianceFit fit;
  search(tp, spec, fit, [](const AffineSymplectic&) { return true; });
  return fit;
}

bool check_covariance(const DenseOperator& u, const WignerSpec& spec, const std::vector<DenseState>& states,
                      const AffineSymplectic& g, double tol) {
  if (g.d() != spec.d || g.n() != spec.n) throw DimensionMismatch("map and spec differ in d or n");
  const TablePair tp = tables_for(u, spec, states);
  return matches(tp, FastAffine(g.matrix(), spec.d, spec.n), g.shift().coords(), spec.points(), tol);
}

CovarianceFit fit_covariance_local(const std::string& gate, const std::vector<int>& wires, const WignerSpec& spec,
                                   const std::vector<DenseState>& local_states,
                                   const std::vector<DenseState>& global_states) {
  if (spec.name == SpecName::Custom) throw InvalidInput("local fitting needs a named spec");
  const int k = static_cast<int>(wires.size());
  const WignerSpec local = WignerSpec::by_name(spec.label(), spec.d, k);
  std::vector<int> local_wires(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) local_wires[static_cast<std::size_t>(i)] = i;
  const auto u_local = dense::gate(gate, local_wires, k, spec.d);
  const auto u_global = dense::gate(gate, wires, spec.n, spec.d);
  const TablePair tp = tables_for(u_local, local, local_states);
  CovarianceFit fit;
  search(tp, local, fit, [&](const AffineSymplectic& cand) {
    return check_covariance(u_global, spec, global_states, cand.embed(wires, spec.n));
  });
  if (fit.witness) fit.witness = fit.witness->embed(wires, spec.n);
  fit.exhaustive = false;
  return fit;
}

bool TransitionMatrix::is_permutation(double tol) const {
  for (Eigen::Index c = 0; c < entries.cols(); ++c) {
    int ones = 0;
    for (Eigen::Index r = 0; r < entries.rows(); ++r) {
      const double v = entries(r, c);
      if (std::abs(v - 1.0) < tol) {
        ++ones;
      } else if (std::abs(v) > tol) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  for (Eigen::Index r = 0; r < entries.rows(); ++r) {
    if (std::abs(entries.row(r).sum() - 1.0) > tol) return false;
  }
  return true;
}

TransitionMatrix transition_matrix(const AffineSymplectic& witness, const WignerSpec& spec) {
  const auto points = static_cast<Eigen::Index>(spec.points());
  TransitionMatrix t;
  t.entries = Eigen::MatrixXd::Zero(points, points);
  for (Eigen::Index l = 0; l < points; ++l) {
    const auto img = static_cast<Eigen::Index>(witness(spec.point(static_cast<std::uint64_t>(l))).index());
    t.entries(l, img) = 1.0;
  }
  const Eigen::RowVectorXd col_sums = t.entries.colwise().sum();
  t.normalization = col_sums.maxCoeff();
  if (std::abs(col_sums.minCoeff() - t.normalization) > 1e-12) throw Error("transition matrix is not column-stochastic");
  t.entries /= t.normalization;
  return t;
}

double transition_residual(const TransitionMatrix& p, const DenseOperator& u, const WignerSpec& spec,
                           const std::vector<DenseState>& states) {
  double worst = 0.0;
  for (const auto& s : states) {
    const auto before = wigner_of_state(s, spec);
    const auto after = wigner_of_state(s.evolved(u), spec);
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(before.values.data(), static_cast<Eigen::Index>(before.values.size()));
    const Eigen::VectorXd wi = Eigen::Map<const Eigen::VectorXd>(before.imag.data(), static_cast<Eigen::Index>(before.imag.size()));
    const Eigen::VectorXd pw = p.entries * w;
    const Eigen::VectorXd pwi = p.entries * wi;
    for (Eigen::Index l = 0; l < pw.size(); ++l) {
      worst = std::max(worst, std::abs(after.values[static_cast<std::size_t>(l)] - pw(l)));
      worst = std::max(worst, std::abs(after.imag[static_cast<std::size_t>(l)] - pwi(l)));
    }
  }
  return worst;
}

DenseOperator hermitian_part(const DenseOperator& a) {
  return DenseOperator(a.d(), a.n(), (a.matrix() + a.matrix().adjoint()) / 2.0);
}

HermitianPartReport verify_hermitian_part(int n) {
  if (n < 1 || n > 3) throw InvalidInput("Hermitian-part check supports n in 1..3");
  HermitianPartReport r;
  r.n = n;
  const auto fact = WignerSpec::factorisable_rebit(n);
  const auto delf = WignerSpec::delfosse_rebit(n);
  const auto& af = phase_points(fact);
  const auto& ar = phase_points(delf);
  for (std::size_t i = 0; i < af.size(); ++i) {
    const double dev = (ar[i].matrix() - hermitian_part(af[i]).matrix()).cwiseAbs().maxCoeff();
    if (dev > r.max_operator_deviation) r.max_operator_deviation = dev;
    if (dev > 1e-9 && r.counterexample.empty()) {
      r.counterexample = "operator identity fails at " + fact.point(i).to_string();
    }
  }
  r.operator_identity = r.max_operator_deviation <= 1e-9;

  for (const auto& info : dense::enumerate_stabilizer_states(2, n)) {
    if (!info.css) continue;
    ++r.css_states;
    const auto wf = wigner_of_state(info.state, fact);
    const auto wr = wigner_of_state(info.state, delf);
    for (std::size_t i = 0; i < wf.values.size(); ++i) {
      const double dev = std::max(std::abs(wf.values[i] - wr.values[i]), std::abs(wf.imag[i] - wr.imag[i]));
      if (dev > r.max_table_deviation) r.max_table_deviation = dev;
    }
  }
  r.tables_agree = r.max_table_deviation <= 1e-9;

  r.hermiticity_criterion = true;
  for (std::uint64_t i = 0; i < fact.points(); ++i) {
    const auto l = fact.point(i);
    int qp = 0;
    for (int j = 0; j < n; ++j) qp += l.x(j) * l.p(j);
    const bool herm = weyl(l, fact).is_hermitian(1e-12);
    if (herm != (qp % 2 == 0)) {
      r.hermiticity_criterion = false;
      if (r.counterexample.empty()) r.counterexample = "hermiticity criterion fails at " + l.to_string();
    }
  }
  return r;
}

}  // namespace spekkens::wigner
