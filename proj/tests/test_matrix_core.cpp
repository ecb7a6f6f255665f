#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "scfs/error.hpp"
#include "scfs/matrix_core.hpp"

using namespace scfs;

namespace {

MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal;
  MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(gen);
  return m;
}

double max_orthonormality_error(const MatrixXd& u) {
  return (u.transpose() * u - MatrixXd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("standardize: two-point column") {
  MatrixXd m(2, 1);
  m << 1, 3;
  const DataMatrix s = standardize(DataMatrix(m));
  CHECK(s.values()(0, 0) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
  CHECK(s.values()(1, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(s.column_means()(0) == doctest::Approx(2.0));
  CHECK(s.column_stds()(0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.standardized());
}

TEST_CASE("standardize: constant column is zeroed and flagged") {
  MatrixXd m(3, 2);
  m << 5, 1, 5, 2, 5, 4;
  const DataMatrix s = standardize(DataMatrix(m));
  CHECK(s.values().col(0).isZero(0.0));
  CHECK(s.degenerate()[0]);
  CHECK_FALSE(s.degenerate()[1]);
}

TEST_CASE("standardize: random matrix against two-pass recomputation") {
  const MatrixXd m = random_matrix(4, 3, 11) * 7.0 + MatrixXd::Constant(4, 3, 3.0);
  const DataMatrix s = standardize(DataMatrix(m));
  for (Eigen::Index j = 0; j < 3; ++j) {
    std::vector<double> col(s.values().col(j).data(), s.values().col(j).data() + 4);
    const auto [mean, sd] = oracle::mean_sd(col);
    CHECK(std::abs(mean) < 1e-10);
    CHECK(std::abs(sd - 1.0) < 1e-8);
    std::vector<double> orig(m.col(j).data(), m.col(j).data() + 4);
    const auto [om, osd] = oracle::mean_sd(orig);
    CHECK(s.column_means()(j) == doctest::Approx(om).epsilon(1e-12));
    CHECK(s.column_stds()(j) == doctest::Approx(osd).epsilon(1e-12));
  }
}

TEST_CASE("standardize: needs two rows") {
  CHECK_THROWS_AS(standardize(DataMatrix(MatrixXd::Ones(1, 3))), DimensionError);
}

TEST_CASE("DataMatrix rejects empty and non-finite input") {
  CHECK_THROWS_AS(DataMatrix(MatrixXd(0, 3)), DimensionError);
  MatrixXd bad = MatrixXd::Zero(2, 2);
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(DataMatrix{bad}, DomainError);
}

TEST_CASE("sum of squares: centered and shortcut forms agree") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int trial = 0; trial < 100; ++trial) {
    VectorXd a(1 + trial % 17);
    for (auto& x : a) x = u(gen);
    const double two_pass = centered_sum_of_squares(a);
    const double shortcut = shortcut_sum_of_squares(a);
    CHECK(std::abs(two_pass - shortcut) <= 1e-10 * std::max(1.0, std::abs(two_pass)) +
                                               1e-10 * a.squaredNorm());
  }
}

TEST_CASE("top_k_left_singular: axis-aligned case") {
  MatrixXd m = MatrixXd::Zero(2, 5);
  m(0, 0) = 3;
  m(1, 1) = 1;
  const EigenBasis b = top_k_left_singular(m, 1);
  CHECK(b.u(0, 0) == doctest::Approx(1.0));
  CHECK(b.u(1, 0) == doctest::Approx(0.0));
  CHECK(b.singular_values(0) == doctest::Approx(3.0));
}

TEST_CASE("top_k_left_singular: noiseless mixture has k distinct rows") {
  // 3 clusters of sizes 2, 3, 4 with full-rank centers in 5 dimensions.
  const std::vector<int> z{0, 1, 2, 0, 1, 2, 1, 2, 2};
  MatrixXd b(3, 5);
  b << 1, 2, 0, 0, 1,
       0, 1, 3, 1, 0,
       2, 0, 1, 0, 4;
  MatrixXd y(9, 5);
  for (int i = 0; i < 9; ++i) y.row(i) = b.row(z[static_cast<std::size_t>(i)]);
  const EigenBasis basis = top_k_left_singular(y, 3);
  const std::vector<double> sizes{2, 3, 4};
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const double d = (basis.u.row(i) - basis.u.row(j)).norm();
      const int a = z[static_cast<std::size_t>(i)];
      const int c = z[static_cast<std::size_t>(j)];
      if (a == c) {
        CHECK(d < 1e-8);
      } else {
        CHECK(d == doctest::Approx(std::sqrt(1 / sizes[a] + 1 / sizes[c])).epsilon(1e-8));
      }
    }
}

TEST_CASE("top_k_left_singular: matches a two-sided Jacobi SVD") {
  const MatrixXd y = random_matrix(8, 12, 3);
  const EigenBasis b = top_k_left_singular(y, 3);
  Eigen::JacobiSVD<MatrixXd> svd(y);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(b.singular_values(i) - svd.singularValues()(i)) < 1e-8);
  const double residual = (y - b.u * (b.u.transpose() * y)).squaredNorm();
  CHECK(residual == doctest::Approx(oracle::rank_r_residual(y, 3)).epsilon(1e-8));
}

TEST_CASE("top_k_left_singular: orthonormal columns and Gram consistency") {
  for (auto [n, p, k] : {std::tuple{6, 20, 3}, std::tuple{30, 7, 4}, std::tuple{12, 12, 12},
                         std::tuple{40, 200, 5}}) {
    const MatrixXd y = random_matrix(n, p, static_cast<unsigned>(n * p));
    const EigenBasis b = top_k_left_singular(y, k);
    CHECK(max_orthonormality_error(b.u) <= 1e-8);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(y * y.transpose());
    for (int i = 0; i < k; ++i) {
      const double lambda = eig.eigenvalues()(n - 1 - i);
      CHECK(std::abs(b.singular_values(i) * b.singular_values(i) - lambda) <= 1e-8 * eig.eigenvalues()(n - 1));
    }
    for (int i = 1; i < k; ++i) CHECK(b.singular_values(i) <= b.singular_values(i - 1));
  }
}

TEST_CASE("top_k_left_singular: sign convention") {
  const MatrixXd y = random_matrix(10, 4, 9);
  const EigenBasis b = top_k_left_singular(y, 4);
  for (Eigen::Index c = 0; c < 4; ++c) {
    Eigen::Index arg;
    b.u.col(c).cwiseAbs().maxCoeff(&arg);
    CHECK(b.u(arg, c) >= 0.0);
  }
}

TEST_CASE("top_k_left_singular: rank-deficient input is completed and flagged") {
  // Tall rank-1 matrix: only one nonzero singular value.
  VectorXd a = VectorXd::LinSpaced(10, 1, 10);
  VectorXd w(3);
  w << 1, -2, 0.5;
  const MatrixXd y = a * w.transpose();
  const EigenBasis b = top_k_left_singular(y, 3);
  CHECK(b.rank_deficient);
  CHECK(b.numerical_rank == 1);
  CHECK(b.singular_values(1) == 0.0);
  CHECK(max_orthonormality_error(b.u) <= 1e-8);
  CHECK(std::abs(std::abs(b.u.col(0).dot(a.normalized())) - 1.0) < 1e-10);
}

TEST_CASE("top_k_left_singular: k out of range") {
  const MatrixXd y = random_matrix(4, 6, 1);
  CHECK_THROWS_AS(top_k_left_singular(y, 0), DimensionError);
  CHECK_THROWS_AS(top_k_left_singular(y, 5), DimensionError);
}

TEST_CASE("top_k_left_singular: deterministic output") {
  const MatrixXd y = random_matrix(15, 40, 21);
  const EigenBasis a = top_k_left_singular(y, 4);
  const EigenBasis b = top_k_left_singular(y, 4);
  CHECK(a.u == b.u);
  CHECK(a.singular_values == b.singular_values);
}

TEST_CASE("jacobi_eigen: templated on the scalar type") {
  Matrix<float> a(3, 3);
  a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  const auto eig = jacobi_eigen<float>(a, 1e-6f);
  Eigen::SelfAdjointEigenSolver<Matrix<float>> ref(a);
  for (int i = 0; i < 3; ++i)
    CHECK(eig.values(i) == doctest::Approx(ref.eigenvalues()(2 - i)).epsilon(1e-5));
  CHECK((a * eig.vectors - eig.vectors * eig.values.asDiagonal()).norm() < 1e-4f);
}

TEST_CASE("jacobi_eigen: sweep cap raises a numerical error") {
  const MatrixXd g = random_matrix(12, 12, 4);
  const MatrixXd sym = g + g.transpose();
  CHECK_THROWS_AS(jacobi_eigen<double>(sym, 1e-12, 1), NumericalError);
}
