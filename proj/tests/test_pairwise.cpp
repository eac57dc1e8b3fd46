#include "sef/pairwise.hpp"

#include "sef/error.hpp"
#include "support/random.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sef;

TEST_CASE("pairwise distances of identical rows are zero") {
    Matrix Y(2, 3);
    Y << 1.0, 2.0, 3.0, 1.0, 2.0, 3.0;
    const Matrix D = pairwise_sq_distances(Y);
    CHECK(D.isZero(0.0));
}

TEST_CASE("pairwise distance matches the 3-4-5 triangle") {
    Matrix Y(2, 2);
    Y << 0.0, 0.0, 3.0, 4.0;
    const Matrix D = pairwise_sq_distances(Y);
    CHECK(D(0, 1) == doctest::Approx(25.0));
    CHECK(D(1, 0) == doctest::Approx(25.0));
    CHECK(D(0, 0) == 0.0);
}

TEST_CASE("pairwise distances match a brute-force double loop") {
    std::mt19937_64 rng(7);
    const Matrix Y = testsupport::random_matrix(5, 3, rng);
    const Matrix D = pairwise_sq_distances(Y);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            double expected = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double diff = Y(i, c) - Y(j, c);
                expected += diff * diff;
            }
            CHECK(std::abs(D(i, j) - expected) < 1e-12);
        }
    }
    CHECK(D == D.transpose()); // exactly symmetric
}

TEST_CASE("pairwise distances reject non-finite input") {
    Matrix Y = Matrix::Zero(2, 2);
    Y(0, 0) = std::nan("");
    CHECK_THROWS_AS(pairwise_sq_distances(Y), Error);
}

TEST_CASE("gaussian similarity of zero distance is one") {
    Matrix D = Matrix::Zero(2, 2);
    D(0, 1) = D(1, 0) = 0.0;
    const Matrix S = gaussian_similarity(D, 3.0);
    CHECK(S(0, 1) == 1.0);
    CHECK(S(0, 0) == 1.0);
}

TEST_CASE("gaussian similarity at distance sigma is 1/e") {
    Matrix D = Matrix::Zero(2, 2);
    D(0, 1) = D(1, 0) = 2.5;
    const Matrix S = gaussian_similarity(D, 2.5);
    CHECK(S(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("gaussian similarity matches a scalar loop") {
    std::mt19937_64 rng(11);
    const Matrix D = pairwise_sq_distances(testsupport::random_matrix(4, 2, rng));
    const double sigma = 2.0;
    const Matrix S = gaussian_similarity(D, sigma);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(S(i, j) == doctest::Approx(std::exp(-D(i, j) / sigma)).epsilon(1e-14));
        }
    }
    SUBCASE("symmetric with unit diagonal") {
        CHECK(S == S.transpose());
        CHECK(S.diagonal().isOnes(0.0));
    }
    SUBCASE("monotone decreasing in the distance") {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                for (int l = 0; l < 4; ++l) {
                    if (D(i, j) < D(i, l)) CHECK(S(i, j) > S(i, l));
                }
            }
        }
    }
}

TEST_CASE("gaussian similarity rejects non-positive sigma") {
    const Matrix D = Matrix::Zero(2, 2);
    CHECK_THROWS_AS(gaussian_similarity(D, 0.0), Error);
    CHECK_THROWS_AS(gaussian_similarity(D, -1.0), Error);
}

TEST_CASE("scaling factor with a single candidate returns it") {
    std::mt19937_64 rng(3);
    const Matrix D = pairwise_sq_distances(testsupport::random_matrix(4, 2, rng));
    CHECK(estimate_scaling_factor(D, {1.0}) == 1.0);
}

TEST_CASE("scaling factor over the default grid stays inside it") {
    std::mt19937_64 rng(5);
    const Matrix D = pairwise_sq_distances(testsupport::random_matrix(12, 3, rng));
    const auto grid = default_sigma_grid();
    CHECK(grid.size() == 41);
    CHECK(grid.front() == doctest::Approx(1e-5));
    CHECK(grid.back() == doctest::Approx(1e5));
    const double sigma = estimate_scaling_factor(D, grid);
    CHECK(sigma >= grid.front());
    CHECK(sigma <= grid.back());
    bool member = false;
    for (double g : grid) member = member || g == sigma;
    CHECK(member);
}

// Independent oracle: evaluate the histogram criterion for every candidate
// with plain scalar loops and take the argmin (smallest sigma on ties).
namespace {

double exhaustive_scaling_factor(const Matrix& D, std::vector<double> grid) {
    std::sort(grid.begin(), grid.end());
    double best_sigma = grid.front();
    long best_count = -1;
    for (double sigma : grid) {
        long bins[100] = {0};
        for (Eigen::Index i = 0; i < D.rows(); ++i) {
            for (Eigen::Index j = 0; j < D.cols(); ++j) {
                if (i == j) continue;
                const double v = std::exp(-D(i, j) / sigma);
                bins[std::min(99, static_cast<int>(v * 100.0))]++;
            }
        }
        long maxbin = 0;
        for (long b : bins) maxbin = std::max(maxbin, b);
        if (best_count < 0 || maxbin < best_count) {
            best_count = maxbin;
            best_sigma = sigma;
        }
    }
    return best_sigma;
}

} // namespace

TEST_CASE("scaling factor equals exhaustive grid evaluation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix D =
            pairwise_sq_distances(testsupport::random_matrix(20, 3, rng, 1.0 + trial));
        const auto grid = default_sigma_grid();
        CHECK(estimate_scaling_factor(D, grid) == exhaustive_scaling_factor(D, grid));
    }
}

TEST_CASE("scaling factor rejects an empty or invalid grid") {
    const Matrix D = Matrix::Zero(3, 3);
    CHECK_THROWS_AS(estimate_scaling_factor(D, {}), Error);
    CHECK_THROWS_AS(estimate_scaling_factor(D, {1.0, -2.0}), Error);
}

TEST_CASE("rbf gamma search squares the candidate") {
    // with D fixed, exp(-D/gamma^2) at gamma equals exp(-D/sigma) at
    // sigma = gamma^2, so the two searches must agree through the square
    std::mt19937_64 rng(23);
    const Matrix D = pairwise_sq_distances(testsupport::random_matrix(15, 4, rng));
    std::vector<double> gammas = {0.1, 0.5, 1.0, 2.0, 10.0};
    std::vector<double> sigmas;
    for (double g : gammas) sigmas.push_back(g * g);
    const double gamma = estimate_rbf_gamma(D, gammas);
    const double sigma = estimate_scaling_factor(D, sigmas);
    CHECK(gamma * gamma == doctest::Approx(sigma).epsilon(1e-12));
}
