#include "sef/preprocess.hpp"

#include "sef/error.hpp"
#include "support/random.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sef;

TEST_CASE("constant columns normalize to zero without NaN") {
    Matrix X(4, 2);
    X << 5.0, 1.0, 5.0, 2.0, 5.0, 3.0, 5.0, 4.0;
    const auto stats = preprocess_fit(X, PreprocessMode::ZNormalize);
    const Matrix Z = preprocess_apply(X, stats);
    CHECK(Z.allFinite());
    CHECK(Z.col(0).isZero(0.0));
}

TEST_CASE("two-point z-normalization is exactly minus-one/plus-one") {
    Matrix X(2, 1);
    X << 1.0, 3.0;
    const Matrix Z = preprocess_apply(X, preprocess_fit(X, PreprocessMode::ZNormalize));
    CHECK(Z(0, 0) == doctest::Approx(-1.0));
    CHECK(Z(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("apply on held-out rows matches the scalar formula") {
    std::mt19937_64 rng(31);
    const Matrix X = testsupport::random_matrix(10, 3, rng, 2.0);
    const Matrix held_out = testsupport::random_matrix(4, 3, rng, 2.0);
    const auto stats = preprocess_fit(X, PreprocessMode::ZNormalize);
    const Matrix Z = preprocess_apply(held_out, stats);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double expected = (held_out(i, j) - stats.mean(j)) / stats.std(j);
            CHECK(Z(i, j) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("round trip on the fitting set re-centers and re-scales") {
    std::mt19937_64 rng(37);
    const Matrix X = testsupport::random_matrix(50, 4, rng, 3.0);

    SUBCASE("z-normalize") {
        const Matrix Z = preprocess_apply(X, preprocess_fit(X, PreprocessMode::ZNormalize));
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(Z.col(j).mean()) < 1e-10);
            const double var = Z.col(j).array().square().mean();
            CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-10);
        }
    }
    SUBCASE("center only") {
        const auto stats = preprocess_fit(X, PreprocessMode::CenterOnly);
        CHECK(stats.std.isOnes(0.0));
        const Matrix Z = preprocess_apply(X, stats);
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(Z.col(j).mean()) < 1e-10);
        }
    }
}

TEST_CASE("column count mismatch is rejected") {
    Matrix X = Matrix::Random(5, 3);
    const auto stats = preprocess_fit(X, PreprocessMode::ZNormalize);
    const Matrix wrong = Matrix::Random(5, 2);
    CHECK_THROWS_AS(preprocess_apply(wrong, stats), Error);
}
