#ifndef TSID_IDENT_HPP
#define TSID_IDENT_HPP

// Identification of the output recurrence
//   y_{m+n} = −a₀·y_m − … − a_{n-1}·y_{m+n-1} (+ b̃)
// from a scalar time series, plus prediction, stability and continuous-time
// spectrum recovery on the identified model.

#include <cstddef>
#include <optional>
#include <span>

#include "tsid/dynsys.hpp"
#include "tsid/numkit.hpp"

namespace tsid {

/// Above this 1-norm condition estimate a Hankel solve is reported singular.
inline constexpr double kHankelConditionCap = 1e10;
inline constexpr double kStabilityMargin = 1e-8;
/// |Arg μ| at or above π minus this is flagged as possible aliasing.
inline constexpr double kAliasingMargin = 1e-6;

/// Identified recurrence. Coefficients follow the char_poly convention, so a
/// model identified from (A, c) compares directly against char_poly(A).
class PredictionModel {
 public:
  explicit PredictionModel(Vector coeffs, std::optional<double> offset = std::nullopt,
                           std::optional<double> step = std::nullopt,
                           std::optional<Vector> shifted = std::nullopt);

  std::size_t order() const noexcept { return coeffs_.size(); }
  const Vector& coeffs() const noexcept { return coeffs_; }
  const std::optional<double>& offset() const noexcept { return offset_; }
  const std::optional<double>& step() const noexcept { return step_; }
  const Matrix& companion() const noexcept { return companion_; }
  /// Lower coefficients of q(s) = p(1 + s) when the model was fitted in the
  /// difference basis. Roots of q are μ − 1, which keeps eigenvalues near 1
  /// (finely sampled continuous systems) resolvable.
  const std::optional<Vector>& shifted() const noexcept { return shifted_; }
  MonicPolynomial polynomial() const { return MonicPolynomial(coeffs_); }

 private:
  Vector coeffs_;
  std::optional<double> offset_;
  std::optional<double> step_;
  std::optional<Vector> shifted_;
  Matrix companion_;
};

struct IdentReport {
  PredictionModel model;
  std::size_t window_start = 0;
  /// max |equation defect| over the equations that were solved
  double residual = 0.0;
  double condition_estimate = 1.0;
};

struct IdentifyOptions {
  /// Least squares over every available window instead of the n×n solve.
  bool overdetermined = false;
  double max_condition = kHankelConditionCap;
};

struct ConjugacyReport {
  double coeff_error = 0.0;
  double spectrum_error = 0.0;
  bool conjugate = false;
};

enum class Stability { AsymptoticallyStable, Marginal, Unstable };

struct ContinuousSpectrum {
  ComplexList eigenvalues;
  bool aliasing_risk = false;
};

/// Entry (i, j) = y_{k+i+j}.
Matrix hankel(const TimeSeries& series, std::size_t k, std::size_t n);

/// Solves H_k·(−a) = (y_{n+k}, …, y_{2n+k-1}); consumes exactly 2n samples
/// at k = 0 unless `overdetermined` is set.
IdentReport identify(const TimeSeries& series, std::size_t n, std::size_t k = 0,
                     const IdentifyOptions& options = {});
/// Same, with a constant column appended to each window row so that the
/// offset b̃ is solved jointly; needs 2n+1 samples from k.
IdentReport identify_affine(const TimeSeries& series, std::size_t n, std::size_t k = 0,
                            const IdentifyOptions& options = {});

/// Next `steps` outputs of the recurrence seeded with the last `order`
/// observed values.
TimeSeries predict(const PredictionModel& model, std::span<const double> seed, std::size_t steps);

/// Smallest n ≤ n_max with rank H_{n+1} ≤ n and rank H_n = n.
std::size_t estimate_order(const TimeSeries& series, std::size_t n_max, double tol = kDefaultRankTol);

/// Max relative difference max|x−y| / max(1, max|y|).
double coeff_relative_error(std::span<const double> model, std::span<const double> truth);

/// Compares against char_poly(A), or char_poly(e^{λA}) for continuous systems.
ConjugacyReport verify_conjugacy(const PredictionModel& model, const SystemSpec& sys, double tol);

Stability assess_stability(const PredictionModel& model);

/// μ ↦ (ln|μ| + i·Arg μ)/λ over the companion roots, principal branch.
/// Uses the shifted polynomial when the model carries one.
ContinuousSpectrum recover_continuous_spectrum(const PredictionModel& model);

}  // namespace tsid

#endif  // TSID_IDENT_HPP
