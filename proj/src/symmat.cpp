#include "s2kit/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

using Dense = std::array<std::array<double, kMaxDim>, kMaxDim>;

Dense to_dense(const SymmetricMatrix& a) {
  Dense d{};
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) d[i][j] = a(i, j);
  return d;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw InputError("matrix dimension " + std::to_string(dim) + " outside [1, " +
                     std::to_string(kMaxDim) + "]");
}

void require_finite(const SymmetricMatrix& a) {
  if (!a.is_finite()) throw InputError("symmetric matrix has a non-finite entry");
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_squared(std::span<const double> a) { return dot(a, a); }

SymmetricMatrix::SymmetricMatrix(int dim) : dim_(dim) { check_dim(dim); }

SymmetricMatrix SymmetricMatrix::identity(int dim) {
  SymmetricMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> diag) {
  SymmetricMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, diag[i]);
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

SymmetricMatrix SymmetricMatrix::from_rows(
    std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  SymmetricMatrix m(n);
  std::vector<Vec> full;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw InputError("from_rows: matrix is not square");
    full.emplace_back(row);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (full[i][j] != full[j][i]) throw InputError("from_rows: matrix is not symmetric");
      m.set(i, j, full[i][j]);
    }
  return m;
}

SymmetricMatrix SymmetricMatrix::outer(std::span<const double> v) {
  SymmetricMatrix m(static_cast<int>(v.size()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) m.set(i, j, v[i] * v[j]);
  return m;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::frobenius_norm() const { return std::sqrt(contract(*this, *this)); }

bool SymmetricMatrix::is_finite() const {
  const int n = dim_ * (dim_ + 1) / 2;
  return std::all_of(upper_.begin(), upper_.begin() + n, [](double x) { return std::isfinite(x); });
}

Vec SymmetricMatrix::apply(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != dim_) throw InputError("apply: vector length mismatch");
  Vec out(dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

SymmetricMatrix SymmetricMatrix::squared() const {
  SymmetricMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * (*this)(k, j);
      out.set(i, j, s);
    }
  return out;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& other) {
  if (other.dim_ != dim_) throw InputError("matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] += other.upper_[i];
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator-=(const SymmetricMatrix& other) {
  if (other.dim_ != dim_) throw InputError("matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] -= other.upper_[i];
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double s) {
  for (double& x : upper_) x *= s;
  return *this;
}

bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim_ != b.dim_) return false;
  const int n = a.dim_ * (a.dim_ + 1) / 2;
  return std::equal(a.upper_.begin(), a.upper_.begin() + n, b.upper_.begin());
}

double contract(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("contract: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    s += a(i, i) * b(i, i);
    for (int j = i + 1; j < a.dim(); ++j) s += 2.0 * a(i, j) * b(i, j);
  }
  return s;
}

Spectrum::Spectrum(Vec eigenvalues) : values_(std::move(eigenvalues)) {
  std::sort(values_.begin(), values_.end());
}

double Spectrum::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Vec Eigensystem::coordinates(std::span<const double> v) const {
  Vec w(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) w[k] = dot(vectors[k], v);
  return w;
}

Eigensystem eigensystem(const SymmetricMatrix& input) {
  require_finite(input);
  const int n = input.dim();
  Dense a = to_dense(input);
  Dense v{};
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  const double norm = input.frobenius_norm();
  auto off_mass = [&] {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * a[p][q] * a[p][q];
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_mass() > 1e-14 * norm; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps) throw InternalError("Jacobi eigensolver did not converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });

  Eigensystem es;
  Vec values(n);
  es.vectors.resize(n, Vec(n));
  for (int k = 0; k < n; ++k) {
    values[k] = a[order[k]][order[k]];
    for (int i = 0; i < n; ++i) es.vectors[k][i] = v[i][order[k]];
  }
  es.spectrum = Spectrum(std::move(values));
  return es;
}

Spectrum spectrum(const SymmetricMatrix& a) { return eigensystem(a).spectrum; }

double elem_sym(std::span<const double> values, int k) {
  if (k < 0) throw InputError("elem_sym: negative order");
  const int n = static_cast<int>(values.size());
  if (k > n) return 0.0;
  Vec e(k + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(i + 1, k); j >= 1; --j) e[j] += values[i] * e[j - 1];
  return e[k];
}

Vec elem_sym_all(const SymmetricMatrix& a) {
  require_finite(a);
  const int n = a.dim();
  // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k, det(tI - A) = sum c_k t^{n-k}.
  Dense dense = to_dense(a);
  Dense m{};
  Vec coeff(n + 1, 0.0);
  coeff[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    Dense next{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += dense[i][l] * m[l][j];
        next[i][j] = s;
      }
    for (int i = 0; i < n; ++i) next[i][i] += coeff[k - 1];
    m = next;
    double tr = 0.0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) tr += dense[i][l] * m[l][i];
    coeff[k] = -tr / k;
  }
  Vec s(n + 1);
  for (int k = 0; k <= n; ++k) s[k] = (k % 2 == 0 ? 1.0 : -1.0) * coeff[k];
  return s;
}

double elem_sym(const SymmetricMatrix& a, int k) {
  if (k < 0 || k > a.dim())
    throw InputError("elem_sym: order " + std::to_string(k) + " outside [0, " +
                     std::to_string(a.dim()) + "]");
  const double primary = elem_sym_all(a)[k];
  const Spectrum spec = spectrum(a);
  const double check = elem_sym(spec.values(), k);
  Vec magnitudes(spec.values().begin(), spec.values().end());
  for (double& x : magnitudes) x = std::abs(x);
  // rank-deficient A has S_k(|lambda|) = 0; fall back on ||A||_2^k
  const double top = magnitudes.empty() ? 0.0 : *std::max_element(magnitudes.begin(), magnitudes.end());
  const double scale = std::max(elem_sym(magnitudes, k), std::pow(top, k));
  if (std::abs(primary - check) > 1e-9 * scale)
    throw InternalError("elem_sym: characteristic-polynomial and eigenvalue routes disagree");
  return primary;
}

SymmetricMatrix cofactor_s2(const SymmetricMatrix& a) {
  require_finite(a);
  return a.trace() * SymmetricMatrix::identity(a.dim()) - a;
}

SymmetricMatrix newton_comatrix(const SymmetricMatrix& a) {
  require_finite(a);
  return a.trace() * a - a.squared();
}

double omitted_sym(const Spectrum& spec, int k, int m) {
  const int n = static_cast<int>(spec.size());
  if (m < 0 || m >= n)
    throw InputError("omitted_sym: index " + std::to_string(m) + " outside [0, " +
                     std::to_string(n) + ")");
  Vec rest;
  rest.reserve(n - 1);
  for (int i = 0; i < n; ++i)
    if (i != m) rest.push_back(spec[i]);
  return elem_sym(rest, k);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Haar-distributed orthogonal matrix via Gram-Schmidt on a Gaussian draw.
Dense random_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Dense q{};
  for (int j = 0; j < n; ++j) {
    for (;;) {
      Vec col(n);
      for (double& x : col) x = normal(rng);
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k < j; ++k) {
          double proj = 0.0;
          for (int i = 0; i < n; ++i) proj += q[i][k] * col[i];
          for (int i = 0; i < n; ++i) col[i] -= proj * q[i][k];
        }
      const double len = std::sqrt(norm_squared(col));
      if (len < 1e-8) continue;
      for (int i = 0; i < n; ++i) q[i][j] = col[i] / len;
      break;
    }
  }
  return q;
}

}  // namespace

SemidefSample sample_semidefinite(std::uint64_t seed, int dim, Sign sign, double scale) {
  if (dim < 2 || dim > kMaxDim) throw InputError("sample_semidefinite: dim outside [2, 8]");
  if (!(scale > 0.0)) throw InputError("sample_semidefinite: scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Dense q = random_orthogonal(rng, dim);
  Vec lambda(dim);
  for (double& l : lambda) l = scale * unit(rng);
  if (unit(rng) < 0.2) {
    std::uniform_int_distribution<int> how_many(1, dim - 1);
    std::uniform_int_distribution<int> which(0, dim - 1);
    const int zeros = how_many(rng);
    for (int z = 0; z < zeros; ++z) lambda[which(rng)] = 0.0;
  }
  const double s = sign == Sign::positive ? 1.0 : -1.0;
  SymmetricMatrix a(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      double sum = 0.0;
      for (int k = 0; k < dim; ++k) sum += q[i][k] * lambda[k] * q[j][k];
      a.set(i, j, s * sum);
    }
  return {a, sign, seed, scale};
}

SymmetricMatrix sample_symmetric(std::uint64_t seed, int dim, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  SymmetricMatrix a(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) a.set(i, j, normal(rng));
  return a;
}

Vec sample_gaussian_vector(std::uint64_t seed, int dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vec v(dim);
  for (double& x : v) x = normal(rng);
  return v;
}

}  // namespace s2kit
