#include "tsid/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <tuple>
#include <utility>

#include "tsid/dynsys.hpp"
#include "tsid/error.hpp"
#include "tsid/ident.hpp"

namespace tsid {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

constexpr std::pair<Property, std::string_view> kPropertyNames[] = {
    {Property::DistinctEigenvalues, "distinct-eigenvalues"},
    {Property::Observable, "observable"},
    {Property::KrylovIndependent, "krylov-independent"},
    {Property::EndToEndIdentifiable, "end-to-end-identifiable"},
    {Property::EndToEndContinuous, "end-to-end-continuous"},
};

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Full-rank check shared by the rank-type properties.
Evaluation classify_rank(const Matrix& m, const TrialConfig& config, const char* what) {
  const PivotedQr qr(m);
  const double ratio = qr.pivot_ratio();
  const std::size_t rank = qr.rank(config.rank_tol);
  if (rank == m.rows()) return {Outcome::Success, ratio, {}};
  std::string diag = std::string(what) + " numerical rank " + std::to_string(rank) + " of " +
                     std::to_string(m.rows()) + ", pivot ratio " + sci(ratio);
  if (ratio <= kDegeneracyFloor) return {Outcome::Failure, ratio, std::move(diag)};
  return {Outcome::NumericalRejection, ratio, std::move(diag)};
}

// max(1, largest root modulus); the discriminant is a degree n(n-1) form in the roots.
double root_scale(const MonicPolynomial& p) {
  double r = 1.0;
  for (const Complex& z : poly_roots(p)) r = std::max(r, std::abs(z));
  return r;
}

Evaluation evaluate_distinct(const Draw& draw, const TrialConfig& config) {
  const MonicPolynomial p = char_poly(draw.a);
  if (p.degree() < 2) return {Outcome::Success, 1.0, {}};
  const double n = static_cast<double>(p.degree());
  double scale = 1.0;
  try {
    scale = std::pow(root_scale(p), n * (n - 1.0));
  } catch (const Error& e) {
    return {Outcome::NumericalRejection, 0.0, e.what()};
  }
  const double metric = std::abs(discriminant(p)) / scale;
  if (metric > config.rank_tol) return {Outcome::Success, metric, {}};
  std::string diag = "normalized discriminant " + sci(metric);
  if (metric <= kDegeneracyFloor) return {Outcome::Failure, metric, std::move(diag)};
  return {Outcome::NumericalRejection, metric, std::move(diag)};
}

// Smaller of the pivot ratios of Q(A, c) and M(A, x₀): the draw lies on the
// exceptional set of the identification theorem iff this is (numerically) 0.
double genericity_ratio(const Draw& draw) {
  return std::min(PivotedQr(observability_matrix(draw.a, draw.c)).pivot_ratio(),
                  PivotedQr(krylov_matrix(draw.a, draw.x0)).pivot_ratio());
}

// Runs an identification pipeline and maps its result onto outcomes. A wrong
// or missing answer is a failure only when the draw itself is degenerate;
// on a generic draw it is a precision limit and counts as a rejection.
template <class Pipeline>
Evaluation guarded(Pipeline&& pipeline, const Draw& draw) {
  const double generic = genericity_ratio(draw);
  const bool degenerate = generic <= kDegeneracyFloor;
  try {
    Evaluation e = pipeline();
    if (e.outcome == Outcome::Success) return e;
    e.diagnostic += ", genericity ratio " + sci(generic);
    if (!degenerate) e.outcome = Outcome::NumericalRejection;
    return e;
  } catch (const Error& e) {
    return {degenerate ? Outcome::Failure : Outcome::NumericalRejection, generic,
            std::string(e.what()) + ", genericity ratio " + sci(generic)};
  }
}

Evaluation compare(const PredictionModel& model, const SystemSpec& sys, const TrialConfig& config) {
  const MonicPolynomial truth =
      sys.kind() == SystemKind::Continuous ? char_poly(mat_exp(sys.a(), *sys.step())) : char_poly(sys.a());
  double scale = 1.0;
  for (double a : truth.coeffs()) scale = std::max(scale, std::abs(a));
  const ConjugacyReport report = verify_conjugacy(model, sys, config.success_tol * scale);
  const double metric = report.coeff_error / scale;
  if (report.conjugate) return {Outcome::Success, metric, {}};
  return {Outcome::Failure, metric, "relative coefficient error " + sci(metric)};
}

Evaluation evaluate_end_to_end(const Draw& draw, const TrialConfig& config) {
  const std::size_t n = draw.a.rows();
  const SystemSpec sys = SystemSpec::discrete(draw.a, draw.c);
  const TimeSeries series = simulate_discrete(sys, draw.x0, 2 * n);
  IdentifyOptions options;
  options.max_condition = config.cond_cap;
  return guarded(
      [&] { return compare(identify(series, n, 0, options).model, sys, config); }, draw);
}

Evaluation evaluate_continuous(const Draw& draw, const TrialConfig& config) {
  const std::size_t n = draw.a.rows();
  const SystemSpec sys = SystemSpec::continuous(draw.a, draw.c, kContinuousStep);
  IdentifyOptions options;
  options.overdetermined = true;
  options.max_condition = config.cond_cap;
  try {
    const TimeSeries series = sample_continuous(sys, draw.x0, kContinuousSamples);
    return guarded(
        [&] { return compare(identify(series, n, 0, options).model, sys, config); }, draw);
  } catch (const Error& e) {
    return {Outcome::NumericalRejection, 0.0, e.what()};
  }
}

std::vector<Evaluation> run_serial(Property property, const TrialConfig& config) {
  std::vector<Evaluation> out(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t)
    out[t] = evaluate_property(property, draw_sample(config, t), config);
  return out;
}

std::vector<Evaluation> run_parallel(Property property, const TrialConfig& config) {
  std::vector<Evaluation> out(config.trials);
  const auto trials = static_cast<long long>(config.trials);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long t = 0; t < trials; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    out[idx] = evaluate_property(property, draw_sample(config, idx), config);
  }
  return out;
}

ExperimentReport summarize(Property property, const TrialConfig& config,
                           const std::vector<Evaluation>& evals) {
  ExperimentReport report;
  report.property = property;
  report.config = config;
  for (const Evaluation& e : evals) {
    switch (e.outcome) {
      case Outcome::Success: ++report.successes; break;
      case Outcome::Failure: ++report.failures; break;
      case Outcome::NumericalRejection: ++report.numerical_rejections; break;
    }
  }
  const std::size_t counted = config.trials - report.numerical_rejections;
  report.estimate = counted == 0 ? 0.0 : static_cast<double>(report.successes) / static_cast<double>(counted);

  // Failures first, then rejections, each in trial order.
  for (Outcome wanted : {Outcome::Failure, Outcome::NumericalRejection}) {
    for (std::size_t t = 0; t < evals.size() && report.worst_cases.size() < kMaxWorstCases; ++t) {
      if (evals[t].outcome != wanted) continue;
      report.worst_cases.push_back(
          {t, evals[t].outcome, evals[t].metric, evals[t].diagnostic, draw_sample(config, t)});
    }
  }
  return report;
}

}  // namespace

std::string_view property_name(Property p) noexcept {
  for (const auto& [prop, name] : kPropertyNames) {
    if (prop == p) return name;
  }
  return "unknown";
}

std::optional<Property> parse_property(std::string_view name) noexcept {
  for (const auto& [prop, text] : kPropertyNames) {
    if (text == name) return prop;
  }
  return std::nullopt;
}

std::string_view outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Failure: return "failure";
    case Outcome::NumericalRejection: return "numerical_rejection";
  }
  return "unknown";
}

bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
  auto config_tuple = [](const TrialConfig& c) {
    return std::tie(c.n, c.trials, c.seed, c.box, c.success_tol, c.cond_cap, c.rank_tol);
  };
  return a.property == b.property && config_tuple(a.config) == config_tuple(b.config) &&
         a.successes == b.successes && a.failures == b.failures &&
         a.numerical_rejections == b.numerical_rejections && a.estimate == b.estimate &&
         a.worst_cases == b.worst_cases;
}

void TrialConfig::validate() const {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  if (!(std::isfinite(box.lo) && std::isfinite(box.hi) && box.lo < box.hi))
    throw Error(ErrorKind::InvalidArgument, "sampling box needs finite lo < hi");
  if (!(success_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "success_tol must be positive");
  if (!(cond_cap > 1.0)) throw Error(ErrorKind::InvalidArgument, "cond_cap must exceed 1");
  if (!(rank_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rank_tol must be positive");
}

Draw draw_sample(const TrialConfig& config, std::size_t trial_index) {
  if (trial_index >= config.trials)
    throw Error(ErrorKind::InvalidArgument, "trial index " + std::to_string(trial_index) + " out of range");
  const auto index = static_cast<std::uint64_t>(trial_index);
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const double width = config.box.hi - config.box.lo;
  auto next = [&] { return config.box.lo + width * unit_uniform(rng); };

  const std::size_t n = config.n;
  Vector c(n);
  for (double& v : c) v = next();
  Vector entries(n * n);
  for (double& v : entries) v = next();
  Vector x0(n);
  for (double& v : x0) v = next();
  return Draw{std::move(c), Matrix(n, n, std::move(entries)), std::move(x0)};
}

Evaluation evaluate_property(Property property, const Draw& draw, const TrialConfig& config) {
  const std::size_t n = draw.a.rows();
  if (!draw.a.is_square() || draw.c.size() != n || draw.x0.size() != n || n != config.n)
    throw Error(ErrorKind::DimensionMismatch, "draw does not match config.n");
  try {
    switch (property) {
      case Property::DistinctEigenvalues: return evaluate_distinct(draw, config);
      case Property::Observable:
        return classify_rank(observability_matrix(draw.a, draw.c), config, "observability matrix");
      case Property::KrylovIndependent:
        return classify_rank(krylov_matrix(draw.a, draw.x0), config, "Krylov matrix");
      case Property::EndToEndIdentifiable: return evaluate_end_to_end(draw, config);
      case Property::EndToEndContinuous: return evaluate_continuous(draw, config);
    }
  } catch (const Error& e) {
    return {Outcome::NumericalRejection, 0.0, e.what()};
  }
  return {Outcome::NumericalRejection, 0.0, "unknown property"};
}

ExperimentReport mc_estimate(Property property, const TrialConfig& config) {
  config.validate();
  return summarize(property, config, run_parallel(property, config));
}

ExperimentReport mc_estimate_serial(Property property, const TrialConfig& config) {
  config.validate();
  return summarize(property, config, run_serial(property, config));
}

}  // namespace tsid
