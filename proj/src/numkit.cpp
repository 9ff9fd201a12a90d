#include "tsid/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "tsid/error.hpp"

namespace tsid {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kExpSeriesTol = 1e-17;
constexpr int kExpSeriesMaxTerms = 60;
// Offset (radians) of the Aberth starting circle, chosen irrational so the
// initial guesses never sit on a symmetry axis of the polynomial.
constexpr double kAberthAngleOffset = 1.0 / std::numbers::sqrt2;

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " needs a square matrix, got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

}  // namespace

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotObservable: return "NotObservable";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::SingularHankel: return "SingularHankel";
    case ErrorKind::NoOrderFound: return "NoOrderFound";
    case ErrorKind::MissingStep: return "MissingStep";
    case ErrorKind::ZeroRoot: return "ZeroRoot";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, Vector(rows * cols, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows x cols");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "matrix entry is not finite");
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::DimensionMismatch, "matrix needs at least one row");
  const std::size_t cols = rows.front().size();
  Vector data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::col(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-1.0) * b; }

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

Vector operator*(const Matrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  Vector out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

Vector row_times(std::span<const double> r, const Matrix& m) {
  if (m.rows() != r.size()) throw Error(ErrorKind::DimensionMismatch, "row-matrix shapes");
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += r[i] * m(i, j);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ----------------------------------------------------------- polynomials

MonicPolynomial::MonicPolynomial(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "monic polynomial needs degree >= 1");
  for (double v : coeffs_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "coefficient is not finite");
  }
}

Complex MonicPolynomial::evaluate(Complex z) const {
  Complex acc = 1.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

double MonicPolynomial::evaluate(double x) const {
  double acc = 1.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Vector MonicPolynomial::full_coeffs() const {
  Vector out = coeffs_;
  out.push_back(1.0);
  return out;
}

Polynomial::Polynomial(Vector ascending) : coeffs_(std::move(ascending)) {
  if (coeffs_.empty() || coeffs_.back() == 0.0)
    throw Error(ErrorKind::InvalidArgument, "polynomial needs a nonzero leading coefficient");
}

Polynomial::Polynomial(const MonicPolynomial& p) : coeffs_(p.full_coeffs()) {}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) throw Error(ErrorKind::InvalidArgument, "derivative of a constant");
  Vector d(degree());
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

// -------------------------------------------------------------------- LU

LuDecomposition::LuDecomposition(const Matrix& m) : lu_(m), perm_(m.rows()) {
  require_square(m, "LU factorization");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  const double floor = kPivotFloor * m.max_abs();
  if (m.max_abs() == 0.0) throw Error(ErrorKind::SingularMatrix, "zero matrix");

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    }
    if (std::abs(lu_(p, k)) <= floor) {
      throw Error(ErrorKind::SingularMatrix, "pivot " + std::to_string(k) + " below floor");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
      std::swap(perm_[p], perm_[k]);
      sign_ = -sign_;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu_(i, k) / lu_(k, k);
      lu_(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

Vector LuDecomposition::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) throw Error(ErrorKind::DimensionMismatch, "rhs length does not match matrix");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

Matrix LuDecomposition::inverse() const {
  const std::size_t n = lu_.rows();
  Matrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vector x = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  return inv;
}

double LuDecomposition::determinant() const {
  double d = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

Vector solve_linear(const Matrix& m, std::span<const double> rhs) {
  require_square(m, "solve_linear");
  if (rhs.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "rhs length does not match matrix");
  return LuDecomposition(m).solve(rhs);
}

double condition_number_1(const Matrix& m) {
  const LuDecomposition lu(m);
  return std::max(1.0, m.norm1() * lu.inverse().norm1());
}

// -------------------------------------------------------------------- QR

PivotedQr::PivotedQr(const Matrix& m) : qr_(m), col_perm_(m.cols()) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) col_perm_[j] = j;
  betas_.assign(steps, 0.0);
  pivots_.assign(steps, 0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    // Pick the remaining column with the largest trailing norm.
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += qr_(i, j) * qr_(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(qr_(i, best), qr_(i, k));
      std::swap(col_perm_[best], col_perm_[k]);
    }

    const double norm = std::sqrt(best_norm);
    if (norm == 0.0) {
      // Remaining block is exactly zero; leave it as is.
      break;
    }
    const double alpha = qr_(k, k) > 0.0 ? -norm : norm;
    // v = x − alpha·e₁, stored with v₀ = 1 below the diagonal.
    const double v0 = qr_(k, k) - alpha;
    for (std::size_t i = k + 1; i < rows; ++i) qr_(i, k) /= v0;
    const double beta = -v0 / alpha;
    betas_[k] = beta;
    qr_(k, k) = alpha;
    pivots_[k] = std::abs(alpha);

    for (std::size_t j = k + 1; j < cols; ++j) {
      double w = qr_(k, j);
      for (std::size_t i = k + 1; i < rows; ++i) w += qr_(i, k) * qr_(i, j);
      w *= beta;
      qr_(k, j) -= w;
      for (std::size_t i = k + 1; i < rows; ++i) qr_(i, j) -= w * qr_(i, k);
    }
  }
}

std::size_t PivotedQr::rank(double tol) const {
  if (pivots_.empty() || pivots_.front() == 0.0) return 0;
  const double threshold = tol * pivots_.front();
  std::size_t r = 0;
  for (double p : pivots_) {
    if (p > threshold) ++r;
  }
  return r;
}

double PivotedQr::pivot_ratio() const {
  if (pivots_.empty() || pivots_.front() == 0.0) return 0.0;
  return pivots_.back() / pivots_.front();
}

Vector PivotedQr::solve_least_squares(std::span<const double> rhs) const {
  const std::size_t rows = qr_.rows();
  const std::size_t cols = qr_.cols();
  if (rhs.size() != rows) throw Error(ErrorKind::DimensionMismatch, "rhs length does not match matrix");
  if (rows < cols) throw Error(ErrorKind::DimensionMismatch, "least squares needs rows >= cols");
  // Only an exactly (to rounding) rank-deficient factor is refused here;
  // conditioning is the caller's call via condition_estimate().
  if (rank(static_cast<double>(rows) * kEps) < cols)
    throw Error(ErrorKind::SingularMatrix, "rank-deficient least squares");

  Vector b(rhs.begin(), rhs.end());
  for (std::size_t k = 0; k < cols; ++k) {
    double w = b[k];
    for (std::size_t i = k + 1; i < rows; ++i) w += qr_(i, k) * b[i];
    w *= betas_[k];
    b[k] -= w;
    for (std::size_t i = k + 1; i < rows; ++i) b[i] -= w * qr_(i, k);
  }
  Vector z(cols);
  for (std::size_t i = cols; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < cols; ++j) s -= qr_(i, j) * z[j];
    z[i] = s / qr_(i, i);
  }
  Vector x(cols);
  for (std::size_t k = 0; k < cols; ++k) x[col_perm_[k]] = z[k];
  return x;
}

double PivotedQr::condition_estimate() const {
  const std::size_t n = std::min(qr_.rows(), qr_.cols());
  if (pivots_.empty() || pivots_.back() == 0.0) return std::numeric_limits<double>::infinity();
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r(i, j) = qr_(i, j);
  // Column-by-column back substitution for R⁻¹.
  Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = n; i-- > 0;) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::size_t j = i + 1; j < n; ++j) s -= r(i, j) * inv(j, c);
      inv(i, c) = s / r(i, i);
    }
  }
  return std::max(1.0, r.norm1() * inv.norm1());
}

std::size_t numerical_rank(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rank tolerance must be positive");
  return PivotedQr(m).rank(tol);
}

// ---------------------------------------------------------- exponential

Matrix mat_exp(const Matrix& m, double t) {
  require_square(m, "mat_exp");
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "mat_exp time is not finite");
  const std::size_t n = m.rows();
  const Matrix x = t * m;
  const double norm = x.norm1();
  int squarings = 0;
  if (norm > 0.0) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm))) + 1);
  const Matrix y = std::ldexp(1.0, -squarings) * x;

  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= kExpSeriesMaxTerms; ++k) {
    term = (1.0 / k) * (term * y);
    sum = sum + term;
    if (term.norm1() <= kExpSeriesTol * sum.norm1()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// ------------------------------------------------- characteristic poly

MonicPolynomial char_poly(const Matrix& m) {
  require_square(m, "char_poly");
  const std::size_t n = m.rows();
  Vector coeffs(n, 0.0);
  // Faddeev–LeVerrier: M_1 = I, a_{n-k} = −tr(A·M_k)/k, M_{k+1} = A·M_k + a_{n-k}·I.
  Matrix mk = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const Matrix amk = m * mk;
    const double c = -amk.trace() / static_cast<double>(k);
    coeffs[n - k] = c;
    if (k < n) {
      mk = amk;
      for (std::size_t i = 0; i < n; ++i) mk(i, i) += c;
    }
  }
  return MonicPolynomial(std::move(coeffs));
}

MonicPolynomial poly_from_roots(std::span<const Complex> roots) {
  if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one root");
  std::vector<Complex> acc{1.0};  // ascending
  for (const Complex& r : roots) {
    std::vector<Complex> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= r * acc[i];
    }
    acc = std::move(next);
  }
  Vector coeffs(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) coeffs[i] = acc[i].real();
  return MonicPolynomial(std::move(coeffs));
}

Matrix companion_matrix(const MonicPolynomial& p) {
  const std::size_t n = p.degree();
  Matrix c(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < n; ++j) c(n - 1, j) = -p[j];
  return c;
}

// ------------------------------------------------------------- roots

void sort_complex(ComplexList& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

ComplexList poly_roots(const MonicPolynomial& p) {
  const std::size_t n = p.degree();
  const Vector& a = p.coeffs();
  if (n == 1) return ComplexList{Complex(-a[0], 0.0)};

  double max_coeff = 0.0;
  for (double v : a) max_coeff = std::max(max_coeff, std::abs(v));
  const double radius = 1.0 + max_coeff;

  ComplexList z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) +
                         kAberthAngleOffset;
    z[k] = std::polar(radius, angle);
  }

  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  const double slack = 8.0 * static_cast<double>(n) * kEps;
  for (int iter = 0; iter < kRootIterationCap && remaining > 0; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      // Horner for p, p', and the running bound Σ|a_i||z|^i.
      Complex val = 1.0;
      Complex der = 0.0;
      double bound = 1.0;
      const double mod = std::abs(z[k]);
      for (std::size_t i = n; i-- > 0;) {
        der = der * z[k] + val;
        val = val * z[k] + a[i];
        bound = bound * mod + std::abs(a[i]);
      }
      if (std::abs(val) <= slack * bound) {
        done[k] = true;
        --remaining;
        continue;
      }
      Complex newton;
      if (der == Complex(0.0, 0.0)) {
        newton = Complex(kEps * (1.0 + mod), kEps * (1.0 + mod));
      } else {
        newton = val / der;
      }
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      z[k] -= newton / (1.0 - newton * repulsion);
    }
  }
  if (remaining > 0) {
    throw Error(ErrorKind::NonConvergence,
                std::to_string(remaining) + " root(s) unconverged after " +
                    std::to_string(kRootIterationCap) + " sweeps");
  }
  // Real coefficients: snap rounding-level parts and make non-real roots
  // exact conjugate pairs, so the (re, im) order is reproducible.
  for (Complex& r : z) {
    const double noise = 16.0 * kEps * std::max(1.0, std::abs(r));
    r = Complex(std::abs(r.real()) <= noise ? 0.0 : r.real(), std::abs(r.imag()) <= noise ? 0.0 : r.imag());
  }
  std::vector<bool> paired(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (paired[k] || z[k].imag() <= 0.0) continue;
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (paired[j] || z[j].imag() >= 0.0) continue;
      if (best == n || std::abs(z[j] - std::conj(z[k])) < std::abs(z[best] - std::conj(z[k]))) best = j;
    }
    // Two nearly real roots are not a conjugate pair.
    if (best == n || std::abs(z[best] - std::conj(z[k])) >= z[k].imag()) continue;
    paired[k] = paired[best] = true;
    const double re = 0.5 * (z[k].real() + z[best].real());
    const double im = 0.5 * (z[k].imag() - z[best].imag());
    z[k] = Complex(re, im);
    z[best] = Complex(re, -im);
  }
  sort_complex(z);
  return z;
}

double matched_distance(const ComplexList& a, const ComplexList& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "spectra differ in size");
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t pick = b.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

// ------------------------------------------------ resultant/discriminant

double determinant(const Matrix& m) {
  require_square(m, "determinant");
  const std::size_t n = m.rows();
  Matrix w = m;
  double sign = 1.0;
  double prev = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(w(i, k)) > std::abs(w(p, k))) p = i;
    }
    if (w(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
      }
      w(i, k) = 0.0;
    }
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

double resultant(const Polynomial& p, const Polynomial& q) {
  const std::size_t m = p.degree();
  const std::size_t k = q.degree();
  if (m < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "resultant needs degrees >= 1");
  const std::size_t size = m + k;
  Matrix s(size, size);
  // k shifted rows of p, then m shifted rows of q, coefficients high to low.
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i <= m; ++i) s(r, r + i) = p.coeffs()[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= k; ++i) s(k + r, r + i) = q.coeffs()[k - i];
  return determinant(s);
}

double discriminant(const MonicPolynomial& p) {
  const std::size_t n = p.degree();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "discriminant needs degree >= 2");
  const Polynomial full(p);
  const double r = resultant(full, full.derivative());
  const bool negate = ((n * (n - 1) / 2) % 2) == 1;
  return negate ? -r : r;
}

}  // namespace tsid
