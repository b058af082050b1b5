#include "spekkens/phase_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace spekkens::phase {

int mod(long long a, int d) {
  long long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

int inverse_mod(int a, int d) {
  a = mod(a, d);
  if (a == 0) throw InvalidInput("zero has no inverse mod " + std::to_string(d));
  for (int k = 1; k < d; ++k) {
    if ((a * k) % d == 1) return k;
  }
  throw InvalidInput("no inverse of " + std::to_string(a) + " mod " + std::to_string(d));
}

void require_modulus(int d) {
  if (d != 2 && d != 3 && d != 5) {
    throw InvalidInput("unsupported modulus " + std::to_string(d) + " (expected 2, 3 or 5)");
  }
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t phase_space_size(int d, int n, std::uint64_t guard) {
  require_modulus(d);
  if (n < 1) throw InvalidInput("subsystem count must be at least 1");
  if (2.0 * n * std::log2(static_cast<double>(d)) > 62.0) {
    throw GuardExceeded("phase space", ~0ull, guard);
  }
  std::uint64_t size = ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(2 * n));
  if (size > guard) throw GuardExceeded("phase space", size, guard);
  return size;
}

int evaluate(const ObservableFunctional& sigma, const PhasePoint& lambda) {
  return dot(sigma, lambda);
}

// ---------------------------------------------------------------------------
// ZdMatrix

ZdMatrix::ZdMatrix(int d, int rows, int cols)
    : d_(d), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {
  require_modulus(d);
}

ZdMatrix ZdMatrix::identity(int d, int size) {
  ZdMatrix m(d, size, size);
  for (int i = 0; i < size; ++i) m.set(i, i, 1);
  return m;
}

ZdMatrix ZdMatrix::symplectic_form(int d, int n) {
  ZdMatrix j(d, 2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j.set(2 * k, 2 * k + 1, 1);
    j.set(2 * k + 1, 2 * k, -1);
  }
  return j;
}

ZdMatrix ZdMatrix::from_columns(int d, const std::vector<std::vector<int>>& columns) {
  if (columns.empty()) throw InvalidInput("matrix needs at least one column");
  const int rows = static_cast<int>(columns.front().size());
  ZdMatrix m(d, rows, static_cast<int>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (static_cast<int>(columns[c].size()) != rows) throw DimensionMismatch("ragged columns");
    for (int r = 0; r < rows; ++r) m.set(r, static_cast<int>(c), columns[c][static_cast<std::size_t>(r)]);
  }
  return m;
}

ZdMatrix ZdMatrix::operator*(const ZdMatrix& o) const {
  if (cols_ != o.rows_ || d_ != o.d_) throw DimensionMismatch("matrix product shape mismatch");
  ZdMatrix out(d_, rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < o.cols_; ++c) {
      long long s = 0;
      for (int k = 0; k < cols_; ++k) s += static_cast<long long>((*this)(r, k)) * o(k, c);
      out.set(r, c, s);
    }
  }
  return out;
}

ZdMatrix ZdMatrix::transpose() const {
  ZdMatrix t(d_, cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
  }
  return t;
}

std::optional<ZdMatrix> ZdMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const int n = rows_;
  std::vector<std::vector<int>> aug(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(2 * n), 0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug[r][c] = (*this)(r, c);
    aug[r][n + r] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (aug[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(aug[pivot], aug[col]);
    const int inv = inverse_mod(aug[col][col], d_);
    for (auto& v : aug[col]) v = (v * inv) % d_;
    for (int r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const int f = aug[r][col];
      for (int c = 0; c < 2 * n; ++c) aug[r][c] = mod(aug[r][c] - f * aug[col][c], d_);
    }
  }
  ZdMatrix out(d_, n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out.set(r, c, aug[r][n + c]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gaussian elimination

std::vector<std::vector<int>> row_reduce(std::vector<std::vector<int>> rows, int d) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[lead]);
    const int inv = inverse_mod(rows[lead][col], d);
    for (auto& v : rows[lead]) v = (v * inv) % d;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const int f = rows[r][col];
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] = mod(rows[r][c] - f * rows[lead][c], d);
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

namespace {

std::vector<int> pivot_columns(const std::vector<std::vector<int>>& rref) {
  std::vector<int> pivots;
  for (const auto& row : rref) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) {
        pivots.push_back(static_cast<int>(c));
        break;
      }
    }
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<int>> nullspace(const std::vector<std::vector<int>>& rows, int d, int cols) {
  auto rref = row_reduce(rows, d);
  auto pivots = pivot_columns(rref);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<int> v(static_cast<std::size_t>(cols), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < rref.size(); ++r) {
      v[static_cast<std::size_t>(pivots[r])] = mod(-rref[r][static_cast<std::size_t>(free)], d);
    }
    basis.push_back(std::move(v));
  }
  return row_reduce(basis, d);
}

std::optional<std::vector<int>> solve(const std::vector<std::vector<int>>& rows,
                                      const std::vector<int>& rhs, int d, int cols) {
  if (rows.size() != rhs.size()) throw DimensionMismatch("solve: row/rhs count mismatch");
  std::vector<std::vector<int>> aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto r = rows[i];
    r.push_back(mod(rhs[i], d));
    aug.push_back(std::move(r));
  }
  auto rref = row_reduce(aug, d);
  std::vector<int> x(static_cast<std::size_t>(cols), 0);
  for (const auto& row : rref) {
    int lead = -1;
    for (int c = 0; c <= cols; ++c) {
      if (row[static_cast<std::size_t>(c)] != 0) {
        lead = c;
        break;
      }
    }
    if (lead == cols) return std::nullopt;
    x[static_cast<std::size_t>(lead)] = row[static_cast<std::size_t>(cols)];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(int d, int n) : d_(d), n_(n) {
  require_modulus(d);
  if (n < 1) throw InvalidInput("subsystem count must be at least 1");
}

Subspace::Subspace(int d, int n, const std::vector<ObservableFunctional>& spanning)
    : Subspace(d, n) {
  std::vector<std::vector<int>> rows;
  for (const auto& v : spanning) {
    if (v.d() != d || v.n() != n) throw DimensionMismatch("generator outside Z_d^{2n}");
    rows.push_back(v.coords());
  }
  for (auto& r : row_reduce(rows, d)) basis_.emplace_back(d, std::move(r));
}

Subspace Subspace::full(int d, int n) {
  std::vector<ObservableFunctional> gens;
  for (int i = 0; i < 2 * n; ++i) {
    std::vector<int> c(static_cast<std::size_t>(2 * n), 0);
    c[static_cast<std::size_t>(i)] = 1;
    gens.emplace_back(d, std::move(c));
  }
  return Subspace(d, n, gens);
}

bool Subspace::contains(const ObservableFunctional& v) const {
  if (v.d() != d_ || v.n() != n_) throw DimensionMismatch("vector outside Z_d^{2n}");
  auto gens = basis_;
  gens.push_back(v);
  return Subspace(d_, n_, gens).dim() == dim();
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (d_ != o.d_ || n_ != o.n_) throw DimensionMismatch("subspaces differ in d or n");
  auto gens = basis_;
  gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(d_, n_, gens);
}

std::vector<ObservableFunctional> Subspace::elements(std::uint64_t guard) const {
  const std::uint64_t count = ipow(static_cast<std::uint64_t>(d_), static_cast<unsigned>(dim()));
  if (count > guard) throw GuardExceeded("subspace enumeration", count, guard);
  std::vector<ObservableFunctional> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<long long> acc(static_cast<std::size_t>(2 * n_), 0);
    std::uint64_t digits = k;
    for (const auto& g : basis_) {
      const int coeff = static_cast<int>(digits % static_cast<std::uint64_t>(d_));
      digits /= static_cast<std::uint64_t>(d_);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += static_cast<long long>(coeff) * g[i];
    }
    out.push_back(ObservableFunctional::reduced(d_, acc));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << "span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) os << (i ? "," : "") << basis_[i].to_string();
  os << "}";
  return os.str();
}

Subspace perp(const Subspace& v) {
  std::vector<std::vector<int>> rows;
  for (const auto& b : v.basis()) rows.push_back(b.coords());
  std::vector<ObservableFunctional> gens;
  for (auto& r : nullspace(rows, v.d(), 2 * v.n())) gens.emplace_back(v.d(), std::move(r));
  return Subspace(v.d(), v.n(), gens);
}

Subspace symplectic_complement(const Subspace& v) {
  std::vector<std::vector<int>> rows;
  for (const auto& b : v.basis()) {
    std::vector<int> r(b.size());
    for (int j = 0; j < b.n(); ++j) {
      r[static_cast<std::size_t>(2 * j)] = b.p(j);
      r[static_cast<std::size_t>(2 * j + 1)] = mod(-b.x(j), v.d());
    }
    rows.push_back(std::move(r));
  }
  std::vector<ObservableFunctional> gens;
  for (auto& r : nullspace(rows, v.d(), 2 * v.n())) gens.emplace_back(v.d(), std::move(r));
  return Subspace(v.d(), v.n(), gens);
}

Subspace intersect(const Subspace& a, const Subspace& b) { return perp(perp(a) + perp(b)); }

bool is_isotropic(const Subspace& v) {
  const auto& g = v.basis();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (symplectic_product(g[i], g[j]) != 0) return false;
    }
  }
  return true;
}

std::vector<PhasePoint> coset_members(const Subspace& directions, const PhasePoint& w,
                                      std::uint64_t guard) {
  if (directions.d() != w.d() || directions.n() != w.n()) {
    throw DimensionMismatch("coset shift outside Z_d^{2n}");
  }
  std::vector<PhasePoint> out;
  for (const auto& v : directions.elements(guard)) out.push_back(v.as<PointTag>() + w);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// AffineSymplectic

bool is_symplectic(const ZdMatrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const auto j = ZdMatrix::symplectic_form(s.d(), s.rows() / 2);
  return s.transpose() * j * s == j;
}

AffineSymplectic::AffineSymplectic(ZdMatrix s, PhasePoint a) : s_(std::move(s)), a_(std::move(a)) {
  if (s_.rows() != static_cast<int>(a_.size()) || s_.d() != a_.d()) {
    throw DimensionMismatch("affine map: matrix and translation sizes differ");
  }
  if (!is_symplectic(s_)) throw InvalidInput("matrix does not preserve the symplectic form");
}

AffineSymplectic AffineSymplectic::identity(int d, int n) {
  return AffineSymplectic(ZdMatrix::identity(d, 2 * n), PhasePoint::zero(d, n));
}

AffineSymplectic AffineSymplectic::translation(const PhasePoint& a) {
  return AffineSymplectic(ZdMatrix::identity(a.d(), static_cast<int>(a.size())), a);
}

PhasePoint AffineSymplectic::operator()(const PhasePoint& lambda) const {
  return s_.apply(lambda) + a_;
}

AffineSymplectic AffineSymplectic::then(const AffineSymplectic& next) const {
  return AffineSymplectic(next.s_ * s_, next.s_.apply(a_) + next.a_);
}

AffineSymplectic AffineSymplectic::inverse() const {
  const auto j = ZdMatrix::symplectic_form(d(), n());
  ZdMatrix minus_j(d(), 2 * n(), 2 * n());
  for (int r = 0; r < 2 * n(); ++r) {
    for (int c = 0; c < 2 * n(); ++c) minus_j.set(r, c, -j(r, c));
  }
  ZdMatrix inv = minus_j * s_.transpose() * j;
  return AffineSymplectic(inv, -inv.apply(a_));
}

AffineSymplectic AffineSymplectic::embed(const std::vector<int>& subsystems, int n) const {
  if (static_cast<int>(subsystems.size()) != this->n()) {
    throw DimensionMismatch("embed: subsystem list length differs from map size");
  }
  std::set<int> seen;
  for (int s : subsystems) {
    if (s < 0 || s >= n || !seen.insert(s).second) throw InvalidInput("embed: bad subsystem index");
  }
  ZdMatrix big = ZdMatrix::identity(d(), 2 * n);
  std::vector<int> shift(static_cast<std::size_t>(2 * n), 0);
  for (std::size_t a = 0; a < subsystems.size(); ++a) {
    for (std::size_t b = 0; b < subsystems.size(); ++b) {
      for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
          big.set(2 * subsystems[a] + u, 2 * subsystems[b] + v,
                  s_(static_cast<int>(2 * a) + u, static_cast<int>(2 * b) + v));
        }
      }
    }
    shift[static_cast<std::size_t>(2 * subsystems[a])] = a_.x(static_cast<int>(a));
    shift[static_cast<std::size_t>(2 * subsystems[a] + 1)] = a_.p(static_cast<int>(a));
  }
  return AffineSymplectic(big, PhasePoint(d(), shift));
}

std::string AffineSymplectic::to_string() const {
  std::ostringstream os;
  os << "S=[";
  for (int r = 0; r < s_.rows(); ++r) {
    os << (r ? ";" : "");
    for (int c = 0; c < s_.cols(); ++c) os << (c ? "," : "") << s_(r, c);
  }
  os << "] a=" << a_.to_string();
  return os.str();
}

std::uint64_t symplectic_group_order(int n, int d) {
  std::uint64_t order = ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n * n));
  for (int i = 1; i <= n; ++i) order *= ipow(static_cast<std::uint64_t>(d), static_cast<unsigned>(2 * i)) - 1;
  return order;
}

namespace {

bool extend_basis(int n, int d, std::vector<PhasePoint>& columns, const std::vector<PhasePoint>& space,
                  const std::function<bool(const ZdMatrix&)>& visit) {
  const std::size_t a = columns.size();
  if (a == static_cast<std::size_t>(2 * n)) {
    std::vector<std::vector<int>> cols;
    cols.reserve(columns.size());
    for (const auto& c : columns) cols.push_back(c.coords());
    return visit(ZdMatrix::from_columns(d, cols));
  }
  // Column a must satisfy [c_b, c_a] = J_{ba} for every earlier b.
  for (const auto& v : space) {
    if (v.is_zero()) continue;
    bool ok = true;
    for (std::size_t b = 0; b < a && ok; ++b) {
      int want = 0;
      if (b % 2 == 0 && a == b + 1) want = 1;
      ok = symplectic_product(columns[b], v) == want;
    }
    if (!ok) continue;
    columns.push_back(v);
    const bool keep_going = extend_basis(n, d, columns, space, visit);
    columns.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void for_each_symplectic_matrix(int n, int d, const std::function<bool(const ZdMatrix&)>& visit,
                                std::uint64_t guard) {
  require_modulus(d);
  const std::uint64_t order = symplectic_group_order(n, d);
  if (order > guard) throw GuardExceeded("symplectic group enumeration", order, guard);
  const std::uint64_t size = phase_space_size(d, n);
  std::vector<PhasePoint> space;
  space.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) space.push_back(PhasePoint::from_index(d, n, i));
  std::vector<PhasePoint> columns;
  extend_basis(n, d, columns, space, visit);
}

void enumerate_affine_symplectics(int n, int d,
                                  const std::function<bool(const AffineSymplectic&)>& visit,
                                  std::uint64_t guard) {
  require_modulus(d);
  const std::uint64_t order = symplectic_group_order(n, d);
  const std::uint64_t size = phase_space_size(d, n);
  if (order > guard / size) throw GuardExceeded("affine symplectic enumeration", order * size, guard);
  for_each_symplectic_matrix(
      n, d,
      [&](const ZdMatrix& s) {
        if (!is_symplectic(s)) throw Error("enumerated matrix is not symplectic");
        for (std::uint64_t i = 0; i < size; ++i) {
          if (!visit(AffineSymplectic(s, PhasePoint::from_index(d, n, i)))) return false;
        }
        return true;
      },
      guard);
}

std::vector<Subspace> enumerate_lagrangians(int d, int n, std::uint64_t guard) {
  const std::uint64_t size = phase_space_size(d, n, guard);
  std::set<Subspace> level{Subspace(d, n)};
  for (int k = 0; k < n; ++k) {
    std::set<Subspace> next;
    for (const auto& v : level) {
      const Subspace comp = symplectic_complement(v);
      for (const auto& w : comp.elements(size)) {
        if (v.contains(w)) continue;
        auto gens = v.basis();
        gens.push_back(w);
        next.insert(Subspace(d, n, gens));
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

}  // namespace spekkens::phase
