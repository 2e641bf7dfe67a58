#pragma once

// Dense real symmetric matrices of small dimension and the symmetric-function
// algebra built on them: spectra, elementary symmetric functions S_k, the
// 2-Hessian cofactor matrix and the Newton comatrix tr(A)A - A^2.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace s2kit {

using Vec = std::vector<double>;

inline constexpr int kMaxDim = 8;

double dot(std::span<const double> a, std::span<const double> b);
double norm_squared(std::span<const double> a);

/// Real symmetric matrix, 1 <= dim <= kMaxDim. Only the upper triangle is
/// stored, so symmetry holds by construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() : SymmetricMatrix(2) {}
  explicit SymmetricMatrix(int dim);

  static SymmetricMatrix identity(int dim);
  static SymmetricMatrix diagonal(std::span<const double> diag);
  static SymmetricMatrix diagonal(std::initializer_list<double> diag);
  /// Rows of a full matrix; throws InputError unless the rows are square and symmetric.
  static SymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// v v^T
  static SymmetricMatrix outer(std::span<const double> v);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return upper_[index(i, j)]; }
  void set(int i, int j, double value) { upper_[index(i, j)] = value; }

  double trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  Vec apply(std::span<const double> v) const;
  SymmetricMatrix squared() const;

  SymmetricMatrix& operator+=(const SymmetricMatrix& other);
  SymmetricMatrix& operator-=(const SymmetricMatrix& other);
  SymmetricMatrix& operator*=(double s);

  friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
  friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
  friend SymmetricMatrix operator*(double s, SymmetricMatrix a) { return a *= s; }
  friend SymmetricMatrix operator*(SymmetricMatrix a, double s) { return a *= s; }

  /// Entry-wise bitwise equality (used by determinism checks).
  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b);

 private:
  int index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }

  int dim_;
  std::array<double, kMaxDim*(kMaxDim + 1) / 2> upper_{};
};

/// Frobenius inner product A:B = tr(AB) for symmetric A, B.
double contract(const SymmetricMatrix& a, const SymmetricMatrix& b);

/// Eigenvalues sorted ascending.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(Vec eigenvalues);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double sum() const;

 private:
  Vec values_;
};

/// A = V diag(lambda) V^T. vectors[k] is the unit eigenvector belonging to
/// spectrum[k]; rows of the orthogonal matrix P with A = P^T D P.
struct Eigensystem {
  Spectrum spectrum;
  std::vector<Vec> vectors;

  /// Coordinates w = P v of v in the eigenbasis.
  Vec coordinates(std::span<const double> v) const;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
/// 1e-14 * ||A||_F. Throws InputError on non-finite entries.
Eigensystem eigensystem(const SymmetricMatrix& a);
Spectrum spectrum(const SymmetricMatrix& a);

/// S_k of a tuple of reals (S_0 = 1; S_k = 0 for k > size).
double elem_sym(std::span<const double> values, int k);

/// Coefficients S_0..S_N of det(tI + A) obtained by the Leverrier-Faddeev recursion.
Vec elem_sym_all(const SymmetricMatrix& a);

/// S_k(lambda(A)), 0 <= k <= dim. Characteristic-polynomial route, cross-checked
/// against the eigenvalue route; a disagreement beyond 1e-9 relative throws
/// InternalError.
double elem_sym(const SymmetricMatrix& a, int k);

/// S_2^{ij}(A) = tr(A) delta_ij - A_ij, the derivative of S_2 with respect to A.
SymmetricMatrix cofactor_s2(const SymmetricMatrix& a);

/// B = tr(A) A - A^2.
SymmetricMatrix newton_comatrix(const SymmetricMatrix& a);

/// S_k of the spectrum with the m-th value removed (m zero-based). Zero when
/// fewer than k values remain.
double omitted_sym(const Spectrum& spec, int k, int m);

enum class Sign { positive, negative };

struct SemidefSample {
  SymmetricMatrix matrix;
  Sign sign = Sign::positive;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

/// +-Q Lambda Q^T with Q Haar-orthogonal and Lambda in [0, scale]; with
/// probability 0.2 some eigenvalues are set to exactly zero. Deterministic in
/// (seed, dim, sign, scale).
SemidefSample sample_semidefinite(std::uint64_t seed, int dim, Sign sign, double scale);

/// Symmetric matrix with independent N(0, scale^2) entries (indefinite in general).
SymmetricMatrix sample_symmetric(std::uint64_t seed, int dim, double scale);

/// Vector with independent standard normal entries.
Vec sample_gaussian_vector(std::uint64_t seed, int dim);

/// Derive the seed of the index-th sample of a campaign (splitmix64 mixing).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace s2kit
