#ifndef TSID_EXPERIMENTS_HPP
#define TSID_EXPERIMENTS_HPP

// Seeded Monte Carlo frequencies for the generic (full-measure) properties of
// random triples (c, A, x₀) drawn uniformly from a box.
//
// Each trial has three outcomes. `Failure` means the property is violated
// to within rounding (the tested quantity is at the degeneracy floor, i.e.
// the draw sits on the exceptional set). `NumericalRejection` means the
// quantity is nonzero but too ill-conditioned to certify at double precision.
// Rejections are reported separately and excluded from the estimate. For the
// end-to-end properties the tested quantity is the smaller pivot ratio of
// Q(A, c) and M(A, x₀); a coefficient mismatch on a draw above the floor is
// therefore a rejection.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsid/numkit.hpp"

namespace tsid {

enum class Property {
  DistinctEigenvalues,
  Observable,
  KrylovIndependent,
  EndToEndIdentifiable,
  EndToEndContinuous,
};

std::string_view property_name(Property p) noexcept;
std::optional<Property> parse_property(std::string_view name) noexcept;

/// Relative magnitude at or below which a tested quantity counts as exactly
/// zero (the draw is a genuine counterexample, not a conditioning problem).
inline constexpr double kDegeneracyFloor = 1e-13;
/// Sampling step of the continuous-time property.
inline constexpr double kContinuousStep = 0.01;
/// Samples consumed per continuous-time trial (overdetermined solve).
inline constexpr std::size_t kContinuousSamples = 400;
inline constexpr std::size_t kMaxWorstCases = 10;

struct SamplingBox {
  double lo = -1.0;
  double hi = 1.0;
  friend bool operator==(const SamplingBox&, const SamplingBox&) = default;
};

struct TrialConfig {
  std::size_t n = 2;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  SamplingBox box{};
  double success_tol = 1e-6;
  double cond_cap = 1e10;
  double rank_tol = kDefaultRankTol;

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

struct Draw {
  Vector c;
  Matrix a;
  Vector x0;
  friend bool operator==(const Draw&, const Draw&) = default;
};

enum class Outcome { Success, Failure, NumericalRejection };
std::string_view outcome_name(Outcome o) noexcept;

struct Evaluation {
  Outcome outcome = Outcome::Success;
  /// Property-specific relative quantity (pivot ratio, normalized
  /// discriminant, coefficient error).
  double metric = 0.0;
  std::string diagnostic;
};

struct WorstCase {
  std::size_t trial = 0;
  Outcome outcome = Outcome::Failure;
  double metric = 0.0;
  std::string diagnostic;
  Draw draw;
  friend bool operator==(const WorstCase&, const WorstCase&) = default;
};

struct ExperimentReport {
  Property property = Property::DistinctEigenvalues;
  TrialConfig config;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t numerical_rejections = 0;
  /// successes / (trials − numerical_rejections); 0 when every trial was rejected.
  double estimate = 0.0;
  std::vector<WorstCase> worst_cases;

  friend bool operator==(const ExperimentReport& a, const ExperimentReport& b);
};

/// Deterministic in (seed, trial_index) only. Draw order: c, A (row-major), x₀.
Draw draw_sample(const TrialConfig& config, std::size_t trial_index);

Evaluation evaluate_property(Property property, const Draw& draw, const TrialConfig& config);

/// OpenMP over trials; reduction in trial-index order.
ExperimentReport mc_estimate(Property property, const TrialConfig& config);
/// Single-threaded reference; bit-identical to mc_estimate.
ExperimentReport mc_estimate_serial(Property property, const TrialConfig& config);

}  // namespace tsid

#endif  // TSID_EXPERIMENTS_HPP
