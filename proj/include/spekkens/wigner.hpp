#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spekkens/dense.hpp"
#include "spekkens/phase_algebra.hpp"

namespace spekkens::wigner {

using dense::DenseOperator;
using dense::DenseState;
using phase::AffineSymplectic;
using phase::PhasePoint;

enum class SpecName { Gross, DelfosseRebit, FactorisableRebit, Custom };

std::string to_string(SpecName name);
SpecName spec_name_from_string(const std::string& text);

/// A phase-function choice. The Weyl operator is
/// T(λ) = ζ^{phase(λ)} Z(λ_Z) X(λ_X), and A(λ) sums T(λ') over the points
/// accepted by `include`.
struct WignerSpec {
  SpecName name = SpecName::Custom;
  int d = 2;
  int n = 1;
  std::function<int(const PhasePoint&)> phase;
  std::function<bool(const PhasePoint&)> include;

  /// γ(λ) = λ_X·λ_Z with phase χ(2^{-1} γ(λ)); odd d only.
  static WignerSpec gross(int d, int n);
  /// γ ≡ 0, A(λ) restricted to q·p = 0 mod 2.
  static WignerSpec delfosse_rebit(int n);
  /// γ ≡ 0, A(λ) summed over the whole phase space.
  static WignerSpec factorisable_rebit(int n);
  static WignerSpec by_name(const std::string& name, int d, int n);

  std::string label() const { return to_string(name); }
  std::uint64_t points() const;
  PhasePoint point(std::uint64_t index) const { return PhasePoint::from_index(d, n, index); }
};

DenseOperator weyl(const PhasePoint& lambda, const WignerSpec& spec);
dense::PauliLabel weyl_label(const PhasePoint& lambda, const WignerSpec& spec);

/// A(λ) = (1/N_Ω) Σ χ([λ, λ']) T(λ'), with N_Ω fixed by Tr A(λ) = 1.
DenseOperator phase_point(const PhasePoint& lambda, const WignerSpec& spec);

/// Every A(λ) in index order, cached per spec shape.
const std::vector<DenseOperator>& phase_points(const WignerSpec& spec);

/// The points λ' entering the A(λ) sum (the inferred Weyl set).
std::vector<PhasePoint> inferred_set(const WignerSpec& spec);

struct WignerTable {
  std::string spec_name;
  int d = 2;
  int n = 1;
  std::vector<double> values;
  std::vector<double> imag;
  double normalization = 1.0;

  double at(const PhasePoint& lambda) const { return values[lambda.index()]; }
  double sum() const;
  double max_imag() const;
  /// Points with |value| above tolerance, in index order.
  std::vector<PhasePoint> support(double tol = 1e-9) const;
};

/// W(λ) = Tr(ρ A(λ)) / N with N chosen so the table sums to one.
WignerTable wigner_of_operator(const dense::Matrix& rho, const WignerSpec& spec);
WignerTable wigner_of_state(const DenseState& state, const WignerSpec& spec);
WignerTable wigner_of_measurement(const DenseOperator& effect, const WignerSpec& spec);

struct NonnegativityReport {
  bool nonnegative;
  double min_value;
  double max_imag;
  std::vector<PhasePoint> offending;
};

NonnegativityReport is_nonnegative(const WignerTable& table, double tol = 1e-9);

/// True when the table is uniform on its support and the support is a coset.
bool is_coset_indicator(const WignerTable& table, double tol = 1e-9);

struct CovarianceFit {
  std::optional<AffineSymplectic> witness;
  std::uint64_t candidates_tried = 0;
  bool exhaustive = false;
};

/// Searches affine symplectic maps G with W_{UρU†}(λ) = W_ρ(G(λ)) for all
/// states and points. A missing witness after an exhaustive search is a
/// certificate that none exists.
CovarianceFit fit_covariance(const DenseOperator& u, const WignerSpec& spec,
                             const std::vector<DenseState>& states);

/// Candidate G checked against every state and point.
bool check_covariance(const DenseOperator& u, const WignerSpec& spec,
                      const std::vector<DenseState>& states, const AffineSymplectic& g,
                      double tol = 1e-9);

/// Fits a gate acting on `wires` using the local spec and states, then lifts
/// and verifies the candidate globally. Usable where the global search is
/// over its guard; a missing witness here is not a certificate.
CovarianceFit fit_covariance_local(const std::string& gate, const std::vector<int>& wires,
                                   const WignerSpec& spec, const std::vector<DenseState>& local_states,
                                   const std::vector<DenseState>& global_states);

struct TransitionMatrix {
  Eigen::MatrixXd entries;
  double normalization = 1.0;

  bool is_permutation(double tol = 1e-12) const;
};

/// P(λ|λ') = δ_{λ', G(λ)}, so W_{UρU†} = P W_ρ.
TransitionMatrix transition_matrix(const AffineSymplectic& witness, const WignerSpec& spec);

/// Largest |W_{UρU†} − P W_ρ| over the states.
double transition_residual(const TransitionMatrix& p, const DenseOperator& u, const WignerSpec& spec,
                           const std::vector<DenseState>& states);

DenseOperator hermitian_part(const DenseOperator& a);

struct HermitianPartReport {
  int n = 0;
  bool operator_identity = false;
  double max_operator_deviation = 0.0;
  bool tables_agree = false;
  double max_table_deviation = 0.0;
  std::size_t css_states = 0;
  bool hermiticity_criterion = false;
  std::string counterexample;

  bool passed() const { return operator_identity && tables_agree && hermiticity_criterion; }
};

/// Rebit phase-point operators against the Hermitian part of the
/// factorisable ones, table agreement on CSS states, and
/// T(λ)† = T(λ) exactly when q·p is even.
HermitianPartReport verify_hermitian_part(int n);

}  // namespace spekkens::wigner
