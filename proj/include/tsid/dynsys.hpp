#ifndef TSID_DYNSYS_HPP
#define TSID_DYNSYS_HPP

// Hidden linear systems with a scalar output: trajectory generation and the
// closed-form ingredients of the output recurrence.

#include <cstddef>
#include <optional>
#include <span>

#include "tsid/numkit.hpp"

namespace tsid {

enum class SystemKind { Discrete, Continuous };

/// x(i+1) = A·x(i) (+ b), y = c·x for Discrete; ẋ = A·x, y = c·x sampled at
/// step λ for Continuous. Continuous systems never carry b.
class SystemSpec {
 public:
  static SystemSpec discrete(Matrix a, Vector c, std::optional<Vector> b = std::nullopt);
  static SystemSpec continuous(Matrix a, Vector c, std::optional<double> step = std::nullopt);

  SystemKind kind() const noexcept { return kind_; }
  std::size_t order() const noexcept { return a_.rows(); }
  const Matrix& a() const noexcept { return a_; }
  const Vector& c() const noexcept { return c_; }
  const std::optional<Vector>& b() const noexcept { return b_; }
  const std::optional<double>& step() const noexcept { return step_; }

  SystemSpec with_step(double step) const;

 private:
  SystemSpec(SystemKind kind, Matrix a, Vector c, std::optional<Vector> b, std::optional<double> step);

  SystemKind kind_;
  Matrix a_;
  Vector c_;
  std::optional<Vector> b_;
  std::optional<double> step_;
};

/// Ordered scalar samples y_origin, y_origin+1, …; `step` is set iff the
/// samples come from a continuous-time system.
class TimeSeries {
 public:
  explicit TimeSeries(Vector values, std::optional<double> step = std::nullopt, long origin = 0);

  const Vector& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::optional<double>& step() const noexcept { return step_; }
  long origin() const noexcept { return origin_; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  Vector values_;
  std::optional<double> step_;
  long origin_;
};

struct ObservabilityResult {
  bool observable;
  std::size_t rank;
};

TimeSeries simulate_discrete(const SystemSpec& sys, std::span<const double> x0, std::size_t len);
/// Samples a continuous system: B = e^{λA} once, then the discrete recurrence.
TimeSeries sample_continuous(const SystemSpec& sys, std::span<const double> x0, std::size_t len);

/// Rows c, cA, …, cA^{n-1}.
Matrix observability_matrix(const Matrix& a, std::span<const double> c);
/// Columns x₀, Ax₀, …, A^{n-1}x₀.
Matrix krylov_matrix(const Matrix& a, std::span<const double> x0);
ObservabilityResult is_observable(const Matrix& a, std::span<const double> c,
                                  double tol = kDefaultRankTol);

/// G = c·Aⁿ·Q⁻¹, the output recurrence row. Equals (−a₀, …, −a_{n-1}) of
/// char_poly(A) whenever (A, c) is observable.
Vector output_row_G(const Matrix& a, std::span<const double> c);

/// Constant b̃ of the affine output recurrence y_n = G·(y₀…y_{n-1})ᵀ + b̃:
///   b̃ = c·(A^{n-1} + … + I)·b − G·W·b,  W rows = c·(A^{i-1} + … + I), W₀ = 0.
double affine_offset(const Matrix& a, std::span<const double> b, std::span<const double> c);

}  // namespace tsid

#endif  // TSID_DYNSYS_HPP
