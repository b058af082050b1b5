#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "spekkens/phase_algebra.hpp"

namespace spekkens::toy {

using phase::AffineSymplectic;
using phase::ObservableFunctional;
using phase::PhasePoint;
using phase::Subspace;

/// Non-negative exact fraction, always in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational&) const = default;
};

/// Uniform distribution over the coset V^⊥ + w, with V isotropic.
class EpistemicState {
 public:
  /// Throws EpistemicViolation when V is not isotropic. The shift is stored
  /// in a canonical form, so equal distributions compare equal.
  EpistemicState(Subspace known, const PhasePoint& shift);

  int d() const { return known_.d(); }
  int n() const { return known_.n(); }
  const Subspace& known() const { return known_; }
  const PhasePoint& shift() const { return shift_; }

  /// Values σ_i = Σ_i^T w of the canonical generators of V.
  std::vector<int> known_values() const;

  std::vector<PhasePoint> support() const;
  std::uint64_t support_size() const;
  Rational weight() const { return Rational(1, static_cast<std::int64_t>(support_size())); }
  bool contains(const PhasePoint& lambda) const;
  Rational probability(const PhasePoint& lambda) const;

  bool operator==(const EpistemicState&) const = default;

 private:
  Subspace known_;
  PhasePoint shift_;
};

EpistemicState make_epistemic(const Subspace& known, const PhasePoint& shift);

/// The state whose support is exactly `points`; throws InvalidInput when the
/// points do not form a coset of an isotropic complement.
EpistemicState epistemic_from_support(const std::vector<PhasePoint>& points);

EpistemicState apply_affine(const EpistemicState& state, const AffineSymplectic& g);

/// Joint measurement of a list of commuting, independent functionals. An
/// outcome is the vector of residues, one per generator, in list order.
class SharpMeasurement {
 public:
  explicit SharpMeasurement(std::vector<ObservableFunctional> generators);

  const std::vector<ObservableFunctional>& generators() const { return generators_; }
  Subspace subspace() const;
  int d() const { return generators_.front().d(); }
  int n() const { return generators_.front().n(); }

  std::vector<int> outcome_of(const PhasePoint& lambda) const;
  /// A point r_k with outcome k; the coset of r_k is the outcome's cell.
  PhasePoint outcome_shift(const std::vector<int>& outcome) const;

 private:
  std::vector<ObservableFunctional> generators_;
};

struct MeasurementBranch {
  std::vector<int> outcome;
  Rational probability;
  EpistemicState posterior;
};

/// Every outcome with non-zero probability, in lexicographic outcome order.
std::vector<MeasurementBranch> measurement_branches(const EpistemicState& state,
                                                    const SharpMeasurement& m);

struct MeasurementResult {
  std::vector<int> outcome;
  EpistemicState posterior;
  std::map<std::vector<int>, Rational> table;
};

/// Samples an outcome with a seeded generator; the table is exact.
MeasurementResult measure_sharp(const EpistemicState& state, const SharpMeasurement& m,
                                std::uint64_t seed);

using Step = std::variant<AffineSymplectic, SharpMeasurement>;

/// Exact distribution over concatenated outcome strings.
std::map<std::vector<int>, Rational> statistics(const EpistemicState& state,
                                                const std::vector<Step>& steps);

}  // namespace spekkens::toy
