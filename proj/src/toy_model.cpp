#include "spekkens/toy_model.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace spekkens::toy {

using phase::evaluate;
using phase::perp;

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d <= 0 || n < 0) throw InvalidInput("rational must have non-negative numerator and positive denominator");
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t l = std::lcm(den, o.den);
  return Rational(num * (l / den) + o.num * (l / o.den), l);
}

Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

namespace {

PhasePoint canonical_shift(const Subspace& directions, const PhasePoint& w) {
  std::vector<long long> c(w.coords().begin(), w.coords().end());
  for (const auto& row : directions.basis()) {
    std::size_t pivot = 0;
    while (row[pivot] == 0) ++pivot;
    const long long f = c[pivot];
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= f * row[i];
  }
  return PhasePoint::reduced(w.d(), c);
}

}  // namespace

EpistemicState::EpistemicState(Subspace known, const PhasePoint& shift)
    : known_(std::move(known)), shift_(shift) {
  if (shift.d() != known_.d() || shift.n() != known_.n()) {
    throw DimensionMismatch("epistemic shift outside the phase space of V");
  }
  if (!phase::is_isotropic(known_)) {
    throw EpistemicViolation("known subspace " + known_.to_string() + " is not isotropic");
  }
  shift_ = canonical_shift(perp(known_), shift);
}

std::vector<int> EpistemicState::known_values() const {
  std::vector<int> out;
  for (const auto& g : known_.basis()) out.push_back(evaluate(g, shift_));
  return out;
}

std::vector<PhasePoint> EpistemicState::support() const {
  return phase::coset_members(perp(known_), shift_);
}

std::uint64_t EpistemicState::support_size() const {
  return phase::ipow(static_cast<std::uint64_t>(d()), static_cast<unsigned>(2 * n() - known_.dim()));
}

bool EpistemicState::contains(const PhasePoint& lambda) const {
  for (const auto& g : known_.basis()) {
    if (evaluate(g, lambda) != evaluate(g, shift_)) return false;
  }
  return true;
}

Rational EpistemicState::probability(const PhasePoint& lambda) const {
  return contains(lambda) ? weight() : Rational(0, 1);
}

EpistemicState make_epistemic(const Subspace& known, const PhasePoint& shift) {
  return EpistemicState(known, shift);
}

EpistemicState epistemic_from_support(const std::vector<PhasePoint>& points) {
  if (points.empty()) throw InvalidInput("empty support");
  const PhasePoint& base = points.front();
  std::vector<ObservableFunctional> diffs;
  for (const auto& p : points) diffs.push_back((p - base).as<phase::FunctionalTag>());
  const Subspace directions(base.d(), base.n(), diffs);
  const std::uint64_t size = phase::ipow(static_cast<std::uint64_t>(base.d()),
                                         static_cast<unsigned>(directions.dim()));
  const std::set<PhasePoint> unique(points.begin(), points.end());
  if (unique.size() != size) throw InvalidInput("points do not form a coset");
  const Subspace known = perp(directions);
  if (!phase::is_isotropic(known)) throw InvalidInput("coset direction is not coisotropic");
  return EpistemicState(known, base);
}

EpistemicState apply_affine(const EpistemicState& state, const AffineSymplectic& g) {
  if (g.d() != state.d() || g.n() != state.n()) throw DimensionMismatch("affine map and state differ in d or n");
  std::vector<ObservableFunctional> images;
  const Subspace directions_before = perp(state.known());
  for (const auto& v : directions_before.basis()) {
    images.push_back(g.matrix().apply(v.as<phase::PointTag>()).as<phase::FunctionalTag>());
  }
  const Subspace directions(state.d(), state.n(), images);
  return EpistemicState(perp(directions), g(state.shift()));
}

SharpMeasurement::SharpMeasurement(std::vector<ObservableFunctional> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw InvalidInput("measurement needs at least one functional");
  const Subspace v(d(), n(), generators_);
  if (v.dim() != static_cast<int>(generators_.size())) {
    throw InvalidInput("measured functionals are linearly dependent");
  }
  if (!phase::is_isotropic(v)) throw EpistemicViolation("measured functionals do not commute");
}

Subspace SharpMeasurement::subspace() const { return Subspace(d(), n(), generators_); }

std::vector<int> SharpMeasurement::outcome_of(const PhasePoint& lambda) const {
  std::vector<int> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(evaluate(g, lambda));
  return out;
}

PhasePoint SharpMeasurement::outcome_shift(const std::vector<int>& outcome) const {
  std::vector<std::vector<int>> rows;
  for (const auto& g : generators_) rows.push_back(g.coords());
  auto x = phase::solve(rows, outcome, d(), 2 * n());
  if (!x) throw InvalidInput("outcome not attainable");
  return PhasePoint(d(), *x);
}

std::vector<MeasurementBranch> measurement_branches(const EpistemicState& state,
                                                    const SharpMeasurement& m) {
  if (m.d() != state.d() || m.n() != state.n()) throw DimensionMismatch("measurement and state differ in d or n");
  std::map<std::vector<int>, std::pair<std::uint64_t, PhasePoint>> counts;
  const auto support = state.support();
  for (const auto& lambda : support) {
    auto key = m.outcome_of(lambda);
    auto it = counts.find(key);
    if (it == counts.end()) {
      counts.emplace(std::move(key), std::make_pair(std::uint64_t{1}, lambda));
    } else {
      ++it->second.first;
    }
  }
  const Subspace measured = m.subspace();
  const Subspace retained = phase::intersect(state.known(), phase::symplectic_complement(measured));
  const Subspace posterior_known = measured + retained;
  std::vector<MeasurementBranch> out;
  for (const auto& [outcome, entry] : counts) {
    out.push_back({outcome,
                   Rational(static_cast<std::int64_t>(entry.first), static_cast<std::int64_t>(support.size())),
                   EpistemicState(posterior_known, entry.second)});
  }
  return out;
}

MeasurementResult measure_sharp(const EpistemicState& state, const SharpMeasurement& m,
                                std::uint64_t seed) {
  auto branches = measurement_branches(state, m);
  std::map<std::vector<int>, Rational> table;
  const std::size_t k = m.generators().size();
  const std::uint64_t total = phase::ipow(static_cast<std::uint64_t>(m.d()), static_cast<unsigned>(k));
  for (std::uint64_t i = 0; i < total; ++i) {
    std::vector<int> key(k);
    std::uint64_t r = i;
    for (std::size_t j = k; j-- > 0;) {
      key[j] = static_cast<int>(r % static_cast<std::uint64_t>(m.d()));
      r /= static_cast<std::uint64_t>(m.d());
    }
    table.emplace(std::move(key), Rational(0, 1));
  }
  for (const auto& b : branches) table[b.outcome] = b.probability;

  const std::int64_t den = static_cast<std::int64_t>(state.support_size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(0, den - 1);
  std::int64_t ticket = pick(rng);
  for (const auto& b : branches) {
    const std::int64_t share = b.probability.num * (den / b.probability.den);
    if (ticket < share) return {b.outcome, b.posterior, table};
    ticket -= share;
  }
  return {branches.back().outcome, branches.back().posterior, table};
}

std::map<std::vector<int>, Rational> statistics(const EpistemicState& state,
                                                const std::vector<Step>& steps) {
  struct Branch {
    EpistemicState state;
    Rational probability;
    std::vector<int> outcomes;
  };
  std::vector<Branch> frontier{{state, Rational(1, 1), {}}};
  for (const auto& step : steps) {
    std::vector<Branch> next;
    for (auto& b : frontier) {
      if (const auto* g = std::get_if<AffineSymplectic>(&step)) {
        next.push_back({apply_affine(b.state, *g), b.probability, b.outcomes});
      } else {
        const auto& m = std::get<SharpMeasurement>(step);
        for (auto& mb : measurement_branches(b.state, m)) {
          auto outs = b.outcomes;
          outs.insert(outs.end(), mb.outcome.begin(), mb.outcome.end());
          next.push_back({mb.posterior, b.probability * mb.probability, std::move(outs)});
        }
      }
    }
    frontier = std::move(next);
  }
  std::map<std::vector<int>, Rational> dist;
  for (const auto& b : frontier) {
    auto it = dist.find(b.outcomes);
    if (it == dist.end()) {
      dist.emplace(b.outcomes, b.probability);
    } else {
      it->second = it->second + b.probability;
    }
  }
  return dist;
}

}  // namespace spekkens::toy
