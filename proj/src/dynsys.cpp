#include "tsid/dynsys.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "tsid/error.hpp"

namespace tsid {

namespace {

void require_vector(std::span<const double> v, std::size_t n, const char* name) {
  if (v.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " has length " +
                                                  std::to_string(v.size()) + ", expected " +
                                                  std::to_string(n));
  }
}

void require_pair(const Matrix& a, std::span<const double> v, const char* name) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "state matrix must be square");
  require_vector(v, a.rows(), name);
}

// Shared by both trajectory generators so the continuous path is exactly the
// discrete recurrence on B.
Vector iterate(const Matrix& a, const Vector& c, const std::optional<Vector>& b,
               std::span<const double> x0, std::size_t len) {
  Vector out;
  out.reserve(len);
  Vector x(x0.begin(), x0.end());
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(dot(c, x));
    if (i + 1 == len) break;
    x = a * x;
    if (b) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += (*b)[j];
    }
  }
  return out;
}

}  // namespace

SystemSpec::SystemSpec(SystemKind kind, Matrix a, Vector c, std::optional<Vector> b,
                       std::optional<double> step)
    : kind_(kind), a_(std::move(a)), c_(std::move(c)), b_(std::move(b)), step_(step) {
  require_pair(a_, c_, "c");
  for (double v : c_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "c entry is not finite");
  }
  if (b_) {
    if (kind_ == SystemKind::Continuous)
      throw Error(ErrorKind::InvalidArgument, "continuous systems carry no affine term");
    require_vector(*b_, a_.rows(), "b");
  }
  if (step_ && !(*step_ > 0.0 && std::isfinite(*step_)))
    throw Error(ErrorKind::InvalidArgument, "sampling step must be positive");
  if (step_ && kind_ == SystemKind::Discrete)
    throw Error(ErrorKind::InvalidArgument, "discrete systems carry no sampling step");
}

SystemSpec SystemSpec::discrete(Matrix a, Vector c, std::optional<Vector> b) {
  return SystemSpec(SystemKind::Discrete, std::move(a), std::move(c), std::move(b), std::nullopt);
}

SystemSpec SystemSpec::continuous(Matrix a, Vector c, std::optional<double> step) {
  return SystemSpec(SystemKind::Continuous, std::move(a), std::move(c), std::nullopt, step);
}

SystemSpec SystemSpec::with_step(double step) const {
  return SystemSpec(kind_, a_, c_, b_, step);
}

TimeSeries::TimeSeries(Vector values, std::optional<double> step, long origin)
    : values_(std::move(values)), step_(step), origin_(origin) {
  if (values_.empty()) throw Error(ErrorKind::EmptySeries, "time series needs at least one sample");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "sample is not finite");
  }
  if (step_ && !(*step_ > 0.0 && std::isfinite(*step_)))
    throw Error(ErrorKind::InvalidArgument, "sampling step must be positive");
}

TimeSeries simulate_discrete(const SystemSpec& sys, std::span<const double> x0, std::size_t len) {
  if (sys.kind() != SystemKind::Discrete)
    throw Error(ErrorKind::InvalidArgument, "continuous systems are sampled, not simulated");
  if (len == 0) throw Error(ErrorKind::InvalidArgument, "series length must be positive");
  require_vector(x0, sys.order(), "x0");
  return TimeSeries(iterate(sys.a(), sys.c(), sys.b(), x0, len));
}

TimeSeries sample_continuous(const SystemSpec& sys, std::span<const double> x0, std::size_t len) {
  if (sys.kind() != SystemKind::Continuous)
    throw Error(ErrorKind::InvalidArgument, "only continuous systems can be sampled");
  if (len == 0) throw Error(ErrorKind::InvalidArgument, "series length must be positive");
  if (!sys.step()) throw Error(ErrorKind::MissingStep, "continuous sampling needs a step");
  require_vector(x0, sys.order(), "x0");
  const double step = *sys.step();
  const Matrix b = mat_exp(sys.a(), step);
  return TimeSeries(iterate(b, sys.c(), std::nullopt, x0, len), step);
}

Matrix observability_matrix(const Matrix& a, std::span<const double> c) {
  require_pair(a, c, "c");
  const std::size_t n = a.rows();
  Matrix q(n, n);
  Vector r(c.begin(), c.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q(i, j) = r[j];
    if (i + 1 < n) r = row_times(r, a);
  }
  return q;
}

Matrix krylov_matrix(const Matrix& a, std::span<const double> x0) {
  require_pair(a, x0, "x0");
  const std::size_t n = a.rows();
  Matrix m(n, n);
  Vector v(x0.begin(), x0.end());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = v[i];
    if (j + 1 < n) v = a * v;
  }
  return m;
}

ObservabilityResult is_observable(const Matrix& a, std::span<const double> c, double tol) {
  const std::size_t rank = numerical_rank(observability_matrix(a, c), tol);
  return {rank == a.rows(), rank};
}

namespace {

// Solves G·Q = target for the row G.
Vector solve_against_q(const Matrix& q, std::span<const double> target) {
  try {
    return solve_linear(q.transpose(), target);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularMatrix)
      throw Error(ErrorKind::NotObservable, "observability matrix is singular");
    throw;
  }
}

}  // namespace

Vector output_row_G(const Matrix& a, std::span<const double> c) {
  const auto obs = is_observable(a, c);
  if (!obs.observable) {
    throw Error(ErrorKind::NotObservable, "rank(Q) = " + std::to_string(obs.rank) + " < " +
                                              std::to_string(a.rows()));
  }
  const Matrix q = observability_matrix(a, c);
  // c·Aⁿ = (last row of Q)·A
  const Vector can = row_times(q.row(a.rows() - 1), a);
  return solve_against_q(q, can);
}

double affine_offset(const Matrix& a, std::span<const double> b, std::span<const double> c) {
  require_pair(a, b, "b");
  const std::size_t n = a.rows();
  const Vector g = output_row_G(a, c);

  // w_i = c·(A^{i-1} + … + I)·b, accumulated as w_{i+1} = w_i + c·Aⁱ·b.
  Vector w(n + 1, 0.0);
  Vector aib(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    w[i + 1] = w[i] + dot(c, aib);
    if (i + 1 < n) aib = a * aib;
  }
  double correction = 0.0;
  for (std::size_t i = 0; i < n; ++i) correction += g[i] * w[i];
  return w[n] - correction;
}

}  // namespace tsid
