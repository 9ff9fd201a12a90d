#ifndef TSID_TESTS_SUPPORT_HPP
#define TSID_TESTS_SUPPORT_HPP

// Hand-rolled generators and independent oracles shared by the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tsid/dynsys.hpp"
#include "tsid/error.hpp"
#include "tsid/numkit.hpp"

namespace tsid::testing {

/// Kind of the tsid::Error thrown by `f`, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  Vector vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  Matrix matrix(std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  /// Reals pairwise separated by at least `gap`, drawn from [lo, hi].
  Vector separated(std::size_t n, double gap, double lo, double hi) {
    for (;;) {
      Vector v = vector(n, lo, hi);
      std::sort(v.begin(), v.end());
      bool ok = true;
      for (std::size_t i = 1; i < n; ++i) ok = ok && v[i] - v[i - 1] >= gap;
      if (ok) return v;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Leibniz expansion; an oracle independent of the LU and Bareiss kernels.
inline double leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  double total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    double term = (inversions % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Coefficients of Π (λ − rᵢ) for real roots, expanded directly.
inline Vector expand_real_roots(const Vector& roots) {
  Vector full{1.0};  // ascending
  for (double r : roots) {
    Vector next(full.size() + 1, 0.0);
    for (std::size_t i = 0; i < full.size(); ++i) {
      next[i + 1] += full[i];
      next[i] -= r * full[i];
    }
    full = std::move(next);
  }
  full.pop_back();
  return full;
}

/// Upper-triangular matrix with the given diagonal; its spectrum is the diagonal.
inline Matrix triangular_with(const Vector& diag, Gen& gen) {
  const std::size_t n = diag.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag[i];
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = gen.uniform(-1.0, 1.0);
  }
  return m;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(const Vector& a) {
  double d = 0.0;
  for (double v : a) d = std::max(d, std::abs(v));
  return d;
}

inline double max_entry_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

/// Observable pair with generic x₀ whose Q and M(A, x₀) both have
/// 1-norm condition below `cap`.
struct GenericTriple {
  Matrix a;
  Vector c;
  Vector x0;
};

inline GenericTriple generic_triple(Gen& gen, std::size_t n, double cap = 1e6) {
  for (;;) {
    GenericTriple t{gen.matrix(n, n), gen.vector(n), gen.vector(n)};
    try {
      if (condition_number_1(observability_matrix(t.a, t.c)) > cap) continue;
      if (condition_number_1(krylov_matrix(t.a, t.x0)) > cap) continue;
    } catch (const std::exception&) {
      continue;
    }
    return t;
  }
}

}  // namespace tsid::testing

#endif  // TSID_TESTS_SUPPORT_HPP
