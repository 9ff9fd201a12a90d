#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tsid/numkit.hpp"

using namespace tsid;
using tsid::testing::error_kind;
using tsid::testing::Gen;

namespace {

void check_roots(const ComplexList& got, const ComplexList& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_CASE("matrix construction rejects bad shapes and non-finite entries") {
  CHECK(error_kind([] { Matrix(0, 2); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind([] { Matrix(2, 2, {1, 2, 3}); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind([] { Matrix::from_rows({{1, 2}, {3}}); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind([] { Matrix::from_rows({{1, NAN}}); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { Matrix::from_rows({{1, INFINITY}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("matrix arithmetic") {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_rows({{0, 1}, {1, 0}});
  CHECK(a * b == Matrix::from_rows({{2, 1}, {4, 3}}));
  CHECK(a + b == Matrix::from_rows({{1, 3}, {4, 4}}));
  CHECK(a - b == Matrix::from_rows({{1, 1}, {2, 4}}));
  CHECK(2.0 * a == Matrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(a.transpose() == Matrix::from_rows({{1, 3}, {2, 4}}));
  CHECK(a.trace() == 5.0);
  CHECK(a.norm1() == 6.0);
  const Vector x{1, 1};
  CHECK(a * x == Vector{3, 7});
  CHECK(row_times(x, a) == Vector{4, 6});
  CHECK(error_kind([&] { (void)(a * Matrix(3, 1)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("solve_linear examples") {
  CHECK(solve_linear(Matrix::identity(2), Vector{3, 4}) == Vector{3, 4});
  const Vector x = solve_linear(Matrix::from_rows({{1, 1}, {1, 2}}), Vector{2, 3});
  CHECK(testing::max_abs_diff(x, {1, 1}) <= 1e-15);
  CHECK(error_kind([] { solve_linear(Matrix::from_rows({{1, 1}, {0, 0}}), Vector{1, 1}); }) ==
        ErrorKind::SingularMatrix);
  CHECK(error_kind([] { solve_linear(Matrix::identity(2), Vector{1, 2, 3}); }) == ErrorKind::DimensionMismatch);
  CHECK(error_kind([] { solve_linear(Matrix(2, 3), Vector{1, 2}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("property: solve then multiply back") {
  Gen gen(101);
  int checked = 0;
  while (checked < 300) {
    const std::size_t n = gen.index(1, 8);
    const Matrix m = gen.matrix(n, n);
    if (condition_number_1(m) >= 1e6) continue;
    const Vector rhs = gen.vector(n, -10, 10);
    const Vector x = solve_linear(m, rhs);
    const Vector back = m * x;
    CHECK(testing::max_abs_diff(back, rhs) <= 1e-9 * testing::max_abs(rhs));
    ++checked;
  }
}

TEST_CASE("LU determinant and inverse agree with independent oracles") {
  Gen gen(102);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.index(1, 6);
    const Matrix m = gen.matrix(n, n);
    const double oracle = testing::leibniz_det(m);
    const LuDecomposition lu(m);
    CHECK(std::abs(lu.determinant() - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)) + 1e-13);
    CHECK(std::abs(determinant(m) - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)) + 1e-13);
    if (condition_number_1(m) < 1e6) {
      CHECK(testing::max_entry_diff(m * lu.inverse(), Matrix::identity(n)) <= 1e-9);
    }
  }
}

TEST_CASE("Bareiss determinant is exact on small integer matrices") {
  CHECK(determinant(Matrix::from_rows({{2, 0, 1}, {1, 3, 2}, {1, 1, 2}})) == 6.0);
  CHECK(determinant(Matrix::from_rows({{1, 2}, {2, 4}})) == 0.0);
  CHECK(determinant(Matrix::from_rows({{0, 1}, {1, 0}})) == -1.0);
}

TEST_CASE("mat_exp examples") {
  CHECK(mat_exp(Matrix(3, 3), 2.5) == Matrix::identity(3));
  for (double lambda : {0.3, 1.0, 2.0, -0.7}) {
    const Matrix r = mat_exp(Matrix::from_rows({{0, 1}, {-1, 0}}), lambda);
    const Matrix want = Matrix::from_rows(
        {{std::cos(lambda), std::sin(lambda)}, {-std::sin(lambda), std::cos(lambda)}});
    CHECK(testing::max_entry_diff(r, want) <= 1e-14);
  }
  const Vector d{1, 2};
  const Matrix e = mat_exp(Matrix::diagonal(d), 1.0);
  CHECK(std::abs(e(0, 0) - std::numbers::e) <= 1e-14 * std::numbers::e);
  CHECK(std::abs(e(1, 1) - std::exp(2.0)) <= 1e-14 * std::exp(2.0));
  CHECK(e(0, 1) == 0.0);
  CHECK(e(1, 0) == 0.0);
  CHECK(error_kind([] { mat_exp(Matrix(2, 3), 1.0); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("property: mat_exp semigroup") {
  Gen gen(103);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen.index(1, 5);
    Matrix m = gen.matrix(n, n);
    m = (1.0 / m.norm1()) * m;  // ‖m‖₁ = 1
    const double s = gen.uniform(-1, 1);
    const double u = gen.uniform(-1, 1);
    CHECK(testing::max_entry_diff(mat_exp(m, s + u), mat_exp(m, s) * mat_exp(m, u)) <= 1e-10);
  }
}

TEST_CASE("property: Liouville identity det e^{tm} = e^{t tr m}") {
  Gen gen(104);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen.index(1, 5);
    const Matrix m = gen.matrix(n, n);
    const double s = gen.uniform(-2, 2);
    const double want = std::exp(s * m.trace());
    CHECK(std::abs(testing::leibniz_det(mat_exp(m, s)) - want) <= 1e-9 * want);
  }
}

TEST_CASE("char_poly examples") {
  CHECK(char_poly(Matrix::identity(2)).coeffs() == Vector{1, -2});
  CHECK(char_poly(Matrix::from_rows({{0, 1}, {1, 1}})).coeffs() == Vector{-1, -1});
  CHECK(char_poly(Matrix::from_rows({{3}})).coeffs() == Vector{-3});
  CHECK(error_kind([] { char_poly(Matrix(1, 2)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("property: char_poly of a triangular matrix expands its diagonal") {
  Gen gen(105);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen.index(1, 6);
    const Vector diag = gen.vector(n, -2, 2);
    const Vector got = char_poly(testing::triangular_with(diag, gen)).coeffs();
    CHECK(testing::max_abs_diff(got, testing::expand_real_roots(diag)) <= 1e-12);
  }
}

TEST_CASE("property: char_poly agrees with det(λI − m) at sample points") {
  Gen gen(106);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = gen.index(1, 6);
    const Matrix m = gen.matrix(n, n);
    const MonicPolynomial p = char_poly(m);
    for (double x : {-1.5, 0.0, 0.7, 2.0}) {
      const double oracle = testing::leibniz_det(x * Matrix::identity(n) - m);
      CHECK(std::abs(p.evaluate(x) - oracle) <= 1e-11 * std::max(1.0, std::abs(oracle)));
    }
  }
}

TEST_CASE("companion_matrix examples") {
  CHECK(companion_matrix(MonicPolynomial({-1, 0})) == Matrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(companion_matrix(MonicPolynomial({-1, -1})) == Matrix::from_rows({{0, 1}, {1, 1}}));
  CHECK(companion_matrix(MonicPolynomial({5})) == Matrix::from_rows({{-5}}));
}

TEST_CASE("property: char_poly(companion_matrix(p)) = p") {
  Gen gen(107);
  for (int t = 0; t < 500; ++t) {
    const MonicPolynomial p(gen.vector(gen.index(1, 6), -2, 2));
    CHECK(testing::max_abs_diff(char_poly(companion_matrix(p)).coeffs(), p.coeffs()) <= 1e-10);
  }
}

TEST_CASE("poly_roots examples") {
  check_roots(poly_roots(MonicPolynomial({-1, 0})), {{-1, 0}, {1, 0}}, 1e-14);
  check_roots(poly_roots(MonicPolynomial({1, 0})), {{0, -1}, {0, 1}}, 1e-14);
  check_roots(poly_roots(MonicPolynomial({-6, 11, -6})), {{1, 0}, {2, 0}, {3, 0}}, 1e-12);
  check_roots(poly_roots(MonicPolynomial({4})), {{-4, 0}}, 0.0);
}

TEST_CASE("property: poly_roots output is sorted, conjugate-closed and has small residual") {
  Gen gen(108);
  for (int t = 0; t < 300; ++t) {
    const MonicPolynomial p(gen.vector(gen.index(1, 8), -2, 2));
    const ComplexList roots = poly_roots(p);
    REQUIRE(roots.size() == p.degree());
    double bound = 1.0;
    for (double a : p.coeffs()) bound += std::abs(a);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const double r = std::max(1.0, std::abs(roots[i]));
      CHECK(std::abs(p.evaluate(roots[i])) <= 1e-10 * bound * std::pow(r, static_cast<double>(p.degree())));
      if (i > 0) {
        const bool ordered = roots[i - 1].real() < roots[i].real() ||
                             (roots[i - 1].real() == roots[i].real() && roots[i - 1].imag() <= roots[i].imag());
        CHECK(ordered);
      }
      double nearest_conj = INFINITY;
      for (const Complex& z : roots) nearest_conj = std::min(nearest_conj, std::abs(z - std::conj(roots[i])));
      CHECK(nearest_conj <= 1e-8);
    }
  }
}

TEST_CASE("property: roots of a diagonal char_poly recover the diagonal") {
  Gen gen(109);
  for (int t = 0; t < 300; ++t) {
    const Vector diag = gen.separated(gen.index(1, 6), 0.1, -2, 2);
    const ComplexList roots = poly_roots(char_poly(Matrix::diagonal(diag)));
    REQUIRE(roots.size() == diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) CHECK(std::abs(roots[i] - diag[i]) <= 1e-8);
  }
}

TEST_CASE("poly_from_roots inverts poly_roots") {
  const ComplexList roots{{-1, 0}, {0.5, -2}, {0.5, 2}};
  const MonicPolynomial p = poly_from_roots(roots);
  check_roots(poly_roots(p), roots, 1e-12);
}

TEST_CASE("resultant examples") {
  CHECK(resultant(MonicPolynomial({-1, 0}), Polynomial({0, 1})) == -1.0);
  for (double a : {-2.0, 0.5, 3.0}) CHECK(resultant(MonicPolynomial({-a}), MonicPolynomial({-a})) == 0.0);
  for (auto [a, b] : {std::pair{0.0, -1.0}, {1.0, 2.0}, {-3.0, 0.5}}) {
    const MonicPolynomial p({b, a});
    CHECK(std::abs(resultant(p, Polynomial(p).derivative()) - (4 * b - a * a)) <= 1e-13);
  }
  CHECK(resultant(MonicPolynomial({0.0, 0.0}), Polynomial({0, 2})) == 0.0);
}

TEST_CASE("resultant equals the product of q over the roots of p") {
  Gen gen(110);
  for (int t = 0; t < 100; ++t) {
    const Vector pr = gen.vector(gen.index(1, 4), -2, 2);
    const Vector qr = gen.vector(gen.index(1, 4), -2, 2);
    const MonicPolynomial q(testing::expand_real_roots(qr));
    double oracle = 1.0;
    for (double r : pr) oracle *= q.evaluate(r);
    const double got = resultant(MonicPolynomial(testing::expand_real_roots(pr)), q);
    CHECK(std::abs(got - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(MonicPolynomial({-1, 0})) == 4.0);
  CHECK(discriminant(MonicPolynomial({1, -2})) == 0.0);
  CHECK(discriminant(MonicPolynomial({1, 0})) == -4.0);
  CHECK(error_kind([] { discriminant(MonicPolynomial({1})); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: discriminant is exactly zero for integer polynomials with a repeated root") {
  Gen gen(111);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen.index(2, 5);
    Vector roots(n);
    for (double& r : roots) r = static_cast<double>(gen.index(0, 6)) - 3.0;
    roots[1] = roots[0];
    CHECK(discriminant(MonicPolynomial(testing::expand_real_roots(roots))) == 0.0);
  }
}

TEST_CASE("property: discriminant matches the root-difference product for separated roots") {
  Gen gen(112);
  for (int t = 0; t < 200; ++t) {
    const Vector roots = gen.separated(gen.index(2, 4), 0.1, -1, 1);
    double oracle = 1.0;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j) oracle *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
    const double d = discriminant(MonicPolynomial(testing::expand_real_roots(roots)));
    CHECK(std::abs(d) > 1e-12);
    CHECK(std::abs(d - oracle) <= 1e-9 * oracle);
  }
}

TEST_CASE("numerical_rank examples") {
  CHECK(numerical_rank(Matrix::identity(4)) == 4);
  CHECK(numerical_rank(Matrix::from_rows({{1, 1}, {0, 0}})) == 1);
  CHECK(numerical_rank(Matrix::from_rows({{1, 1}, {1, 1 + 1e-14}})) == 1);
  CHECK(numerical_rank(Matrix(3, 2)) == 0);
  CHECK(numerical_rank(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}})) == 2);
  CHECK(error_kind([] { numerical_rank(Matrix::identity(2), 0.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: rank of a product of random factors equals the inner dimension") {
  Gen gen(113);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen.index(2, 6);
    const std::size_t r = gen.index(1, n);
    const Matrix m = gen.matrix(n, r) * gen.matrix(r, n);
    CHECK(numerical_rank(m) == r);
  }
}

TEST_CASE("least squares recovers consistent overdetermined systems") {
  Gen gen(114);
  for (int t = 0; t < 100; ++t) {
    const std::size_t cols = gen.index(1, 5);
    const Matrix m = gen.matrix(cols + gen.index(0, 10), cols);
    const Vector x = gen.vector(cols);
    const Vector got = PivotedQr(m).solve_least_squares(m * x);
    CHECK(testing::max_abs_diff(got, x) <= 1e-9);
  }
}

TEST_CASE("matched_distance pairs nearest roots") {
  const ComplexList a{{0, 1}, {0, -1}};
  const ComplexList b{{0, -1.001}, {0, 1}};
  CHECK(matched_distance(a, b) == doctest::Approx(0.001));
  CHECK(error_kind([] { matched_distance({{1, 0}}, {}); }) == ErrorKind::DimensionMismatch);
}
