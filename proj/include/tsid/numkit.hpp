#ifndef TSID_NUMKIT_HPP
#define TSID_NUMKIT_HPP

// Dense linear algebra and polynomial kernel. Everything here is a pure
// function of its inputs and targets the small sizes (n <= ~30) used by the
// identification pipeline.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tsid {

using Vector = std::vector<double>;
using Complex = std::complex<double>;
/// Roots or eigenvalues, sorted by (re, im) when produced by the kernel.
using ComplexList = std::vector<Complex>;

/// Default relative threshold for numerical_rank.
inline constexpr double kDefaultRankTol = 1e-9;
/// Pivot floor of solve_linear, relative to the largest input entry.
inline constexpr double kPivotFloor = 1e-12;
inline constexpr int kRootIterationCap = 200;

/// Dense row-major real matrix with at least one row and one column.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  std::vector<std::vector<double>> to_rows() const;

  Matrix transpose() const;
  double trace() const;
  double norm1() const;      // max column abs sum
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
/// m · x for a column vector x.
Vector operator*(const Matrix& m, std::span<const double> x);
/// r · m for a row vector r.
Vector row_times(std::span<const double> r, const Matrix& m);
double dot(std::span<const double> a, std::span<const double> b);

/// Monic polynomial λⁿ + a_{n-1}λ^{n-1} + … + a₁λ + a₀, stored as
/// (a₀, …, a_{n-1}); the leading 1 is implicit. Some texts index the same
/// coefficients from the top (λⁿ + a₁λ^{n-1} + … + a_n); that a_k is our
/// a_{n-k}.
class MonicPolynomial {
 public:
  explicit MonicPolynomial(Vector coeffs);

  std::size_t degree() const noexcept { return coeffs_.size(); }
  const Vector& coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  Complex evaluate(Complex z) const;
  double evaluate(double x) const;
  /// All n+1 coefficients in ascending order, ending with 1.
  Vector full_coeffs() const;

  friend bool operator==(const MonicPolynomial&, const MonicPolynomial&) = default;

 private:
  Vector coeffs_;
};

/// General real polynomial, ascending coefficients, nonzero leading term.
class Polynomial {
 public:
  explicit Polynomial(Vector ascending);
  Polynomial(const MonicPolynomial& p);  // NOLINT(google-explicit-constructor)

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const Vector& coeffs() const noexcept { return coeffs_; }
  Polynomial derivative() const;

 private:
  Vector coeffs_;
};

/// LU factorization with partial (row) pivoting. Throws SingularMatrix when a
/// pivot falls below kPivotFloor times the largest entry of the input.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& m);

  Vector solve(std::span<const double> rhs) const;
  Matrix inverse() const;
  double determinant() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

/// Householder QR with column pivoting, m = Q·R·Pᵀ.
class PivotedQr {
 public:
  explicit PivotedQr(const Matrix& m);

  /// |R_kk| in pivot order (non-increasing up to rounding).
  const Vector& pivots() const noexcept { return pivots_; }
  std::size_t rank(double tol) const;
  /// |R_last| / |R_first| over min(rows, cols) pivots; 0 for a zero matrix.
  double pivot_ratio() const;
  /// Least-squares solution of m·x ≈ rhs; requires full column rank.
  Vector solve_least_squares(std::span<const double> rhs) const;
  /// 1-norm condition number of the leading triangular factor.
  double condition_estimate() const;

 private:
  Matrix qr_;          // R in the upper triangle, Householder vectors below
  Vector betas_;
  std::vector<std::size_t> col_perm_;
  Vector pivots_;
};

Vector solve_linear(const Matrix& m, std::span<const double> rhs);
/// ‖m‖₁·‖m⁻¹‖₁; throws SingularMatrix like LuDecomposition.
double condition_number_1(const Matrix& m);
/// e^{t·m} by scaling and squaring.
Matrix mat_exp(const Matrix& m, double t);
/// det(λI − m) by the Faddeev–LeVerrier recursion.
MonicPolynomial char_poly(const Matrix& m);
MonicPolynomial poly_from_roots(std::span<const Complex> roots);
Matrix companion_matrix(const MonicPolynomial& p);
/// Aberth simultaneous iteration. Roots are returned with multiplicity and
/// sorted by (re, im); throws NonConvergence after kRootIterationCap sweeps.
ComplexList poly_roots(const MonicPolynomial& p);
/// Determinant of the Sylvester matrix of p and q.
double resultant(const Polynomial& p, const Polynomial& q);
/// (−1)^{n(n−1)/2}·R(p, p′); requires degree ≥ 2.
double discriminant(const MonicPolynomial& p);
/// Fraction-free (Bareiss) determinant; exact for small integer matrices.
double determinant(const Matrix& m);
std::size_t numerical_rank(const Matrix& m, double tol = kDefaultRankTol);

void sort_complex(ComplexList& values);
/// Greedy nearest-neighbour matching: max over `a` of the distance to the
/// closest not-yet-used element of `b`. Sizes must agree.
double matched_distance(const ComplexList& a, const ComplexList& b);

}  // namespace tsid

#endif  // TSID_NUMKIT_HPP
