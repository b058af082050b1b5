#pragma once

// Exact linear algebra over Z_d (d prime) on the discrete phase space
// Z_d^{2n}. Vectors are interleaved as (x0, p0, x1, p1, ...).

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spekkens/errors.hpp"

namespace spekkens::phase {

/// Reduces `a` into [0, d).
int mod(long long a, int d);

/// Multiplicative inverse of `a` modulo the prime `d`.
int inverse_mod(int a, int d);

/// Throws InvalidInput unless d is one of the supported primes (2, 3, 5).
void require_modulus(int d);

/// Number of phase-space points d^{2n}; throws GuardExceeded past `guard`.
std::uint64_t phase_space_size(int d, int n, std::uint64_t guard = 1u << 20);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

struct PointTag {};
struct FunctionalTag {};

/// A length-2n vector of residues mod d. The tag separates ontic points
/// from linear functionals so they cannot be swapped by accident.
template <class Tag>
class ZdVector {
 public:
  ZdVector() = default;

  ZdVector(int d, std::vector<int> coords) : d_(d), coords_(std::move(coords)) {
    require_modulus(d_);
    if (coords_.empty() || coords_.size() % 2 != 0) {
      throw InvalidInput("phase-space vector must have even, non-zero length");
    }
    for (int c : coords_) {
      if (c < 0 || c >= d_) {
        throw InvalidInput("coordinate " + std::to_string(c) +
                           " outside [0, " + std::to_string(d_) + ")");
      }
    }
  }

  /// Builds a vector from arbitrary integers, reducing each mod d.
  static ZdVector reduced(int d, const std::vector<long long>& raw) {
    std::vector<int> c;
    c.reserve(raw.size());
    for (long long v : raw) c.push_back(mod(v, d));
    return ZdVector(d, std::move(c));
  }

  static ZdVector zero(int d, int n) {
    return ZdVector(d, std::vector<int>(2 * static_cast<std::size_t>(n), 0));
  }

  /// Inverse of index(): the first coordinate is the most significant digit,
  /// so index order is lexicographic order.
  static ZdVector from_index(int d, int n, std::uint64_t index) {
    std::vector<int> c(2 * static_cast<std::size_t>(n), 0);
    for (std::size_t i = c.size(); i-- > 0;) {
      c[i] = static_cast<int>(index % static_cast<std::uint64_t>(d));
      index /= static_cast<std::uint64_t>(d);
    }
    return ZdVector(d, std::move(c));
  }

  int d() const { return d_; }
  int n() const { return static_cast<int>(coords_.size() / 2); }
  std::size_t size() const { return coords_.size(); }
  const std::vector<int>& coords() const { return coords_; }
  int operator[](std::size_t i) const { return coords_[i]; }
  int x(int j) const { return coords_[2 * static_cast<std::size_t>(j)]; }
  int p(int j) const { return coords_[2 * static_cast<std::size_t>(j) + 1]; }

  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (int c : coords_) idx = idx * static_cast<std::uint64_t>(d_) + static_cast<std::uint64_t>(c);
    return idx;
  }

  bool is_zero() const {
    for (int c : coords_) {
      if (c != 0) return false;
    }
    return true;
  }

  ZdVector operator+(const ZdVector& o) const {
    check_same(o);
    std::vector<int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (coords_[i] + o.coords_[i]) % d_;
    return ZdVector(d_, std::move(c));
  }

  ZdVector operator-(const ZdVector& o) const { return *this + (-o); }

  ZdVector operator-() const { return scaled(-1); }

  ZdVector scaled(long long k) const {
    std::vector<int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(k * coords_[i], d_);
    return ZdVector(d_, std::move(c));
  }

  /// Reinterprets the same residues under another tag.
  template <class Other>
  ZdVector<Other> as() const {
    return ZdVector<Other>(d_, coords_);
  }

  void check_same(const ZdVector& o) const {
    if (d_ != o.d_ || coords_.size() != o.coords_.size()) {
      throw DimensionMismatch("phase-space vectors differ in d or n");
    }
  }

  auto operator<=>(const ZdVector&) const = default;
  bool operator==(const ZdVector&) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  int d_ = 2;
  std::vector<int> coords_;
};

using PhasePoint = ZdVector<PointTag>;
using ObservableFunctional = ZdVector<FunctionalTag>;

/// Outcome of measuring Σ on the ontic state λ: Σ^T λ mod d.
int evaluate(const ObservableFunctional& sigma, const PhasePoint& lambda);

/// Euclidean pairing a^T b mod d.
template <class A, class B>
int dot(const ZdVector<A>& a, const ZdVector<B>& b) {
  if (a.d() != b.d() || a.size() != b.size()) {
    throw DimensionMismatch("dot: vectors differ in d or n");
  }
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
  return mod(s, a.d());
}

/// Symplectic product a^T J b with J = ⊕ [[0, 1], [-1, 0]].
template <class A, class B>
int symplectic_product(const ZdVector<A>& a, const ZdVector<B>& b) {
  if (a.d() != b.d() || a.size() != b.size()) {
    throw DimensionMismatch("symplectic_product: vectors differ in d or n");
  }
  long long s = 0;
  for (int j = 0; j < a.n(); ++j) {
    s += static_cast<long long>(a.x(j)) * b.p(j) - static_cast<long long>(a.p(j)) * b.x(j);
  }
  return mod(s, a.d());
}

/// Dense matrix over Z_d.
class ZdMatrix {
 public:
  ZdMatrix() = default;
  ZdMatrix(int d, int rows, int cols);

  static ZdMatrix identity(int d, int size);
  /// The block-diagonal symplectic form J on Z_d^{2n}.
  static ZdMatrix symplectic_form(int d, int n);
  static ZdMatrix from_columns(int d, const std::vector<std::vector<int>>& columns);

  int d() const { return d_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  void set(int r, int c, long long v) { data_[static_cast<std::size_t>(r * cols_ + c)] = mod(v, d_); }

  ZdMatrix operator*(const ZdMatrix& o) const;
  ZdMatrix transpose() const;
  std::optional<ZdMatrix> inverse() const;

  template <class Tag>
  ZdVector<Tag> apply(const ZdVector<Tag>& v) const {
    if (static_cast<std::size_t>(cols_) != v.size() || d_ != v.d()) {
      throw DimensionMismatch("matrix-vector size mismatch");
    }
    std::vector<long long> out(static_cast<std::size_t>(rows_), 0);
    for (int r = 0; r < rows_; ++r) {
      long long s = 0;
      for (int c = 0; c < cols_; ++c) s += static_cast<long long>((*this)(r, c)) * v[static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(r)] = s;
    }
    return ZdVector<Tag>::reduced(d_, out);
  }

  bool operator==(const ZdMatrix&) const = default;
  auto operator<=>(const ZdMatrix&) const = default;

 private:
  int d_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

/// Rows of `rows` brought to reduced row-echelon form (zero rows dropped).
std::vector<std::vector<int>> row_reduce(std::vector<std::vector<int>> rows, int d);

/// Basis of {v : r·v = 0 for every row r}, in reduced echelon form.
std::vector<std::vector<int>> nullspace(const std::vector<std::vector<int>>& rows, int d,
                                        int cols);

/// Some v with r_i·v = rhs_i for all i, or nullopt when inconsistent.
std::optional<std::vector<int>> solve(const std::vector<std::vector<int>>& rows,
                                      const std::vector<int>& rhs, int d, int cols);

/// A linear subspace of Z_d^{2n}, stored in canonical reduced echelon form
/// so that equality of subspaces is equality of bases.
class Subspace {
 public:
  Subspace(int d, int n);
  Subspace(int d, int n, const std::vector<ObservableFunctional>& spanning);

  static Subspace full(int d, int n);

  int d() const { return d_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<ObservableFunctional>& basis() const { return basis_; }

  bool contains(const ObservableFunctional& v) const;
  Subspace operator+(const Subspace& o) const;

  /// All d^dim members in lexicographic order.
  std::vector<ObservableFunctional> elements(std::uint64_t guard = 1u << 20) const;

  bool operator==(const Subspace&) const = default;
  auto operator<=>(const Subspace&) const = default;

  std::string to_string() const;

 private:
  int d_;
  int n_;
  std::vector<ObservableFunctional> basis_;
};

/// Euclidean orthogonal complement {a : a^T b = 0 for all b in V}.
Subspace perp(const Subspace& v);

/// Symplectic complement {a : [a, b] = 0 for all b in V}.
Subspace symplectic_complement(const Subspace& v);

Subspace intersect(const Subspace& a, const Subspace& b);

bool is_isotropic(const Subspace& v);

/// Members of the coset directions + w, lexicographically ordered.
std::vector<PhasePoint> coset_members(const Subspace& directions, const PhasePoint& w,
                                      std::uint64_t guard = 1u << 20);

/// A map λ ↦ Sλ + a with S symplectic.
class AffineSymplectic {
 public:
  AffineSymplectic(ZdMatrix s, PhasePoint a);

  static AffineSymplectic identity(int d, int n);
  static AffineSymplectic translation(const PhasePoint& a);

  const ZdMatrix& matrix() const { return s_; }
  const PhasePoint& shift() const { return a_; }
  int d() const { return a_.d(); }
  int n() const { return a_.n(); }

  PhasePoint operator()(const PhasePoint& lambda) const;

  /// The map `next ∘ this`.
  AffineSymplectic then(const AffineSymplectic& next) const;
  AffineSymplectic inverse() const;

  /// Lifts a map on |subsystems| systems to n systems, acting as the
  /// identity elsewhere. subsystems[k] receives local system k.
  AffineSymplectic embed(const std::vector<int>& subsystems, int n) const;

  bool operator==(const AffineSymplectic&) const = default;

  std::string to_string() const;

 private:
  ZdMatrix s_;
  PhasePoint a_;
};

bool is_symplectic(const ZdMatrix& s);

/// |Sp(2n, Z_d)| = d^{n^2} ∏_{i=1..n} (d^{2i} - 1).
std::uint64_t symplectic_group_order(int n, int d);

inline constexpr std::uint64_t kSymplecticGuard = 1u << 20;
inline constexpr std::uint64_t kAffineGuard = 1u << 23;

/// Visits every element of Sp(2n, Z_d) exactly once by building symplectic
/// bases column by column. The visitor returns false to stop early.
void for_each_symplectic_matrix(int n, int d, const std::function<bool(const ZdMatrix&)>& visit,
                                std::uint64_t guard = kSymplecticGuard);

/// Visits every (S, a) with S in Sp(2n, Z_d) and a in Z_d^{2n}. Refuses with
/// GuardExceeded when |Sp| · d^{2n} is over `guard`.
void enumerate_affine_symplectics(int n, int d,
                                  const std::function<bool(const AffineSymplectic&)>& visit,
                                  std::uint64_t guard = kAffineGuard);

/// All maximal isotropic (dimension n) subspaces, canonically ordered.
std::vector<Subspace> enumerate_lagrangians(int d, int n, std::uint64_t guard = 1u << 16);

}  // namespace spekkens::phase
