#include "tsid/ident.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>

#include "tsid/error.hpp"

namespace tsid {

namespace {

void require_samples(const TimeSeries& series, std::size_t needed, const char* what) {
  if (series.size() < needed) {
    throw Error(ErrorKind::InsufficientData, std::string(what) + " needs " + std::to_string(needed) +
                                                 " samples, series has " +
                                                 std::to_string(series.size()));
  }
}

struct Solved {
  Vector unknowns;
  double condition;
};

std::string condition_message(double cond, double cap) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "condition estimate %.3e exceeds %.3e", cond, cap);
  return buf;
}

// rows·x = rhs, square or (overdetermined) least squares. Singular systems
// are reported as SingularHankel.
Solved solve_windows(const Matrix& rows, const Vector& rhs, const IdentifyOptions& options) {
  try {
    if (rows.is_square()) {
      const LuDecomposition lu(rows);
      const double cond = std::max(1.0, rows.norm1() * lu.inverse().norm1());
      if (cond > options.max_condition)
        throw Error(ErrorKind::SingularHankel, condition_message(cond, options.max_condition));
      return {lu.solve(rhs), cond};
    }
    // Columns are scaled to unit 2-norm first: Householder QR is accurate
    // relative to each column, so the equilibrated condition is the one that
    // bounds the error, and difference columns differ in scale by λⁱ.
    Matrix scaled = rows;
    Vector scale(rows.cols(), 1.0);
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      double norm = 0.0;
      for (std::size_t r = 0; r < rows.rows(); ++r) norm = std::hypot(norm, rows(r, c));
      if (norm > 0.0) scale[c] = norm;
      for (std::size_t r = 0; r < rows.rows(); ++r) scaled(r, c) /= scale[c];
    }
    const PivotedQr qr(scaled);
    const double cond = qr.condition_estimate();
    if (!(cond <= options.max_condition))
      throw Error(ErrorKind::SingularHankel, condition_message(cond, options.max_condition));
    Vector x = qr.solve_least_squares(rhs);
    for (std::size_t c = 0; c < x.size(); ++c) x[c] /= scale[c];
    return {std::move(x), cond};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularMatrix)
      throw Error(ErrorKind::SingularHankel, std::string("window matrix is singular (") + e.what() + ")");
    throw;
  }
}

// Residual over the windows that were solved, in the stored convention.
IdentReport finish(const TimeSeries& series, std::size_t n, std::size_t k, std::size_t equations,
                   Vector coeffs, std::optional<double> offset, double condition,
                   std::optional<Vector> shifted = std::nullopt) {
  double residual = 0.0;
  for (std::size_t j = 0; j < equations; ++j) {
    double defect = series[k + j + n] - offset.value_or(0.0);
    for (std::size_t i = 0; i < n; ++i) defect += coeffs[i] * series[k + j + i];
    residual = std::max(residual, std::abs(defect));
  }
  return IdentReport{PredictionModel(std::move(coeffs), offset, series.step(), std::move(shifted)), k,
                     residual, condition};
}

// Coefficients of p(μ) = q(μ − 1) from the monic q given in ascending order.
Vector shift_to_monomial(const Vector& q) {
  const std::size_t n = q.size() - 1;
  Vector a(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double binom = 1.0;  // C(i, k)
    for (std::size_t i = k; i <= n; ++i) {
      if (i > k) binom = binom * static_cast<double>(i) / static_cast<double>(i - k);
      const double term = q[i] * binom;
      a[k] += ((i - k) % 2 == 0) ? term : -term;
    }
  }
  return a;
}

// Square mode solves the displayed Hankel system H_k·(−a) = (y_{n+k}, …).
//
// Overdetermined mode fits the same recurrence written in forward
// differences: with E the shift and Δ = E − I, p(E) = q(Δ) for
// q(s) = p(1 + s), so q(Δ)y = b̃ on every window. Shifted samples of a finely
// sampled series are nearly collinear, the differences Δⁱy are not; the
// monic q is mapped back to a afterwards.
IdentReport identify_impl(const TimeSeries& series, std::size_t n, std::size_t k,
                          const IdentifyOptions& options, bool affine) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "model order must be positive");
  const std::size_t unknowns = affine ? n + 1 : n;
  const std::size_t minimum = k + n + unknowns;
  require_samples(series, minimum, affine ? "affine identification" : "identification");

  const std::size_t equations = options.overdetermined ? series.size() - k - n : unknowns;
  Matrix rows(equations, unknowns);
  Vector rhs(equations);
  Vector coeffs(n);
  std::optional<double> offset;

  if (!options.overdetermined) {
    for (std::size_t j = 0; j < equations; ++j) {
      for (std::size_t i = 0; i < n; ++i) rows(j, i) = series[k + j + i];
      if (affine) rows(j, n) = 1.0;
      rhs[j] = series[k + j + n];
    }
    const Solved solved = solve_windows(rows, rhs, options);
    // The solve yields (−a₀, …, −a_{n-1}[, b̃]).
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = -solved.unknowns[i];
    if (affine) offset = solved.unknowns[n];
    return finish(series, n, k, equations, std::move(coeffs), offset, solved.condition);
  }

  // diffs[i][j] = (Δⁱy)_{k+j}
  std::vector<Vector> diffs(n + 1);
  diffs[0].assign(series.values().begin() + static_cast<std::ptrdiff_t>(k), series.values().end());
  for (std::size_t i = 1; i <= n; ++i) {
    diffs[i].resize(diffs[i - 1].size() - 1);
    for (std::size_t j = 0; j < diffs[i].size(); ++j) diffs[i][j] = diffs[i - 1][j + 1] - diffs[i - 1][j];
  }
  // Rounding in each window is proportional to its magnitude; weighting by
  // the inverse keeps growing modes from drowning out decaying ones.
  for (std::size_t j = 0; j < equations; ++j) {
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i) size = std::max(size, std::abs(series[k + j + i]));
    const double w = size > 0.0 ? 1.0 / size : 1.0;
    for (std::size_t i = 0; i < n; ++i) rows(j, i) = w * diffs[i][j];
    if (affine) rows(j, n) = w;
    rhs[j] = -w * diffs[n][j];
  }
  const Solved solved = solve_windows(rows, rhs, options);
  Vector q(solved.unknowns.begin(), solved.unknowns.begin() + static_cast<std::ptrdiff_t>(n));
  q.push_back(1.0);
  coeffs = shift_to_monomial(q);
  // q(Δ)y = −(unknown) moves the offset to the left-hand side.
  if (affine) offset = -solved.unknowns[n];
  q.pop_back();
  return finish(series, n, k, equations, std::move(coeffs), offset, solved.condition, std::move(q));
}

}  // namespace

PredictionModel::PredictionModel(Vector coeffs, std::optional<double> offset, std::optional<double> step,
                                 std::optional<Vector> shifted)
    : coeffs_(std::move(coeffs)),
      offset_(offset),
      step_(step),
      shifted_(std::move(shifted)),
      companion_(companion_matrix(MonicPolynomial(coeffs_))) {
  if (shifted_) {
    if (shifted_->size() != coeffs_.size())
      throw Error(ErrorKind::DimensionMismatch, "shifted coefficients must match the model order");
    for (double v : *shifted_)
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "shifted coefficient is not finite");
  }
  if (offset_ && !std::isfinite(*offset_)) throw Error(ErrorKind::InvalidArgument, "offset is not finite");
  if (step_ && !(*step_ > 0.0 && std::isfinite(*step_)))
    throw Error(ErrorKind::InvalidArgument, "sampling step must be positive");
}

Matrix hankel(const TimeSeries& series, std::size_t k, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Hankel size must be positive");
  require_samples(series, k + 2 * n - 1, "Hankel window");
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = series[k + i + j];
  return h;
}

IdentReport identify(const TimeSeries& series, std::size_t n, std::size_t k,
                     const IdentifyOptions& options) {
  return identify_impl(series, n, k, options, false);
}

IdentReport identify_affine(const TimeSeries& series, std::size_t n, std::size_t k,
                            const IdentifyOptions& options) {
  return identify_impl(series, n, k, options, true);
}

TimeSeries predict(const PredictionModel& model, std::span<const double> seed, std::size_t steps) {
  const std::size_t n = model.order();
  if (seed.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "seed window has " + std::to_string(seed.size()) +
                                                  " values, model order is " + std::to_string(n));
  }
  if (steps == 0) throw Error(ErrorKind::InvalidArgument, "steps must be positive");
  Vector window(seed.begin(), seed.end());
  Vector out;
  out.reserve(steps);
  const Vector& a = model.coeffs();
  for (std::size_t s = 0; s < steps; ++s) {
    double next = model.offset().value_or(0.0);
    for (std::size_t i = 0; i < n; ++i) next -= a[i] * window[i];
    out.push_back(next);
    std::rotate(window.begin(), window.begin() + 1, window.end());
    window.back() = next;
  }
  return TimeSeries(std::move(out), model.step());
}

std::size_t estimate_order(const TimeSeries& series, std::size_t n_max, double tol) {
  if (n_max == 0) throw Error(ErrorKind::InvalidArgument, "n_max must be positive");
  require_samples(series, 2 * n_max + 1, "order estimation");
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (numerical_rank(hankel(series, 0, n), tol) != n) continue;
    if (numerical_rank(hankel(series, 0, n + 1), tol) <= n) return n;
  }
  throw Error(ErrorKind::NoOrderFound, "no order up to " + std::to_string(n_max) + " fits the series");
}

double coeff_relative_error(std::span<const double> model, std::span<const double> truth) {
  if (model.size() != truth.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient counts differ");
  double scale = 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    scale = std::max(scale, std::abs(truth[i]));
    worst = std::max(worst, std::abs(model[i] - truth[i]));
  }
  return worst / scale;
}

ConjugacyReport verify_conjugacy(const PredictionModel& model, const SystemSpec& sys, double tol) {
  if (model.order() != sys.order()) {
    throw Error(ErrorKind::DimensionMismatch, "model order " + std::to_string(model.order()) +
                                                  " vs system order " + std::to_string(sys.order()));
  }
  MonicPolynomial truth = char_poly(sys.a());
  if (sys.kind() == SystemKind::Continuous) {
    if (!sys.step()) throw Error(ErrorKind::MissingStep, "continuous comparison needs a step");
    truth = char_poly(mat_exp(sys.a(), *sys.step()));
  }
  ConjugacyReport report;
  for (std::size_t i = 0; i < model.order(); ++i)
    report.coeff_error = std::max(report.coeff_error, std::abs(model.coeffs()[i] - truth[i]));
  report.spectrum_error = matched_distance(poly_roots(model.polynomial()), poly_roots(truth));
  report.conjugate = report.coeff_error <= tol;
  return report;
}

Stability assess_stability(const PredictionModel& model) {
  double radius = 0.0;
  for (const Complex& r : poly_roots(model.polynomial())) radius = std::max(radius, std::abs(r));
  if (radius < 1.0 - kStabilityMargin) return Stability::AsymptoticallyStable;
  if (radius > 1.0 + kStabilityMargin) return Stability::Unstable;
  return Stability::Marginal;
}

ContinuousSpectrum recover_continuous_spectrum(const PredictionModel& model) {
  if (!model.step()) throw Error(ErrorKind::MissingStep, "model has no sampling step");
  const double step = *model.step();
  double scale = 1.0;
  for (double a : model.coeffs()) scale = std::max(scale, std::abs(a));
  const double zero_floor = 1e-14 * scale;

  // Roots as s = μ − 1 so that ln|μ| keeps full relative accuracy near 1.
  ComplexList shifted_roots;
  if (model.shifted()) {
    shifted_roots = poly_roots(MonicPolynomial(*model.shifted()));
  } else {
    for (const Complex& mu : poly_roots(model.polynomial())) shifted_roots.push_back(mu - 1.0);
  }

  ContinuousSpectrum out;
  for (const Complex& s : shifted_roots) {
    const Complex mu = 1.0 + s;
    if (std::abs(mu) <= zero_floor)
      throw Error(ErrorKind::ZeroRoot, "companion root at the origin; order is likely too high");
    const double arg = std::atan2(s.imag(), 1.0 + s.real());
    if (std::abs(arg) >= std::numbers::pi - kAliasingMargin) out.aliasing_risk = true;
    const double log_modulus = 0.5 * std::log1p(s.real() * (2.0 + s.real()) + s.imag() * s.imag());
    out.eigenvalues.emplace_back(log_modulus / step, arg / step);
  }
  sort_complex(out.eigenvalues);
  return out;
}

}  // namespace tsid
