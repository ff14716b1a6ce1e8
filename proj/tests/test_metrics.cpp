#include "oracles.hpp"
#include "suites.hpp"

#include "tubal/errors.hpp"
#include "tubal/metrics.hpp"
#include "tubal/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace tubal;

namespace {

Tensor3 uniform_tensor(Dims3 d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Tensor3 t(d);
    for (double& v : t.data()) {
        v = u(rng);
    }
    return t;
}

Tensor3 checkerboard(Index n, Index cell) {
    Tensor3 t(n, n, 1);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            t(i, j, 0) = ((i / cell + j / cell) % 2 == 0) ? 0.95 : 0.05;
        }
    }
    return t;
}

}  // namespace

TEST(Psnr, IdenticalIsInfinite) {
    const Tensor3 a = uniform_tensor({6, 5, 2}, 1);
    EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
}

TEST(Psnr, ConstantErrorOfOneTenthIsTwentyDecibels) {
    const Tensor3 a = uniform_tensor({6, 5, 2}, 2);
    Tensor3 b = a;
    for (double& v : b.data()) {
        v += 0.1;
    }
    EXPECT_NEAR(psnr(a, b), 20.0, 1e-10);
}

TEST(Psnr, MatchesDirectMse) {
    const Tensor3 a = uniform_tensor({9, 7, 3}, 3), b = uniform_tensor({9, 7, 3}, 4);
    EXPECT_NEAR(psnr(a, b), oracle::psnr_loops(a, b, 1.0), 1e-10);
    EXPECT_NEAR(psnr(a, b, 255.0), oracle::psnr_loops(a, b, 255.0), 1e-10);
}

TEST(Psnr, DecreasesAsErrorGrows) {
    const Tensor3 a = uniform_tensor({8, 8, 1}, 5);
    double prev = std::numeric_limits<double>::infinity();
    for (double scale : {0.01, 0.02, 0.05, 0.1, 0.3}) {
        const double now = psnr(a, a + scale * uniform_tensor({8, 8, 1}, 6));
        EXPECT_LT(now, prev);
        prev = now;
    }
}

TEST(Ssim, IdenticalIsOne) {
    const Tensor3 a = uniform_tensor({12, 10, 2}, 7);
    EXPECT_DOUBLE_EQ(ssim(a, a), 1.0);
}

TEST(Ssim, InvertedPatternIsLow) {
    const Tensor3 a = checkerboard(32, 4);
    Tensor3 b = a;
    for (double& v : b.data()) {
        v = 1.0 - v;
    }
    EXPECT_LT(ssim(a, b), 0.1);
}

TEST(Ssim, MatchesWindowedOracle) {
    const Tensor3 a = uniform_tensor({14, 11, 2}, 8);
    const Tensor3 b = a + 0.2 * uniform_tensor({14, 11, 2}, 9);
    EXPECT_NEAR(ssim(a, b), oracle::ssim_loops(a, b, 8, 1.0), 1e-8);
    SsimConfig cfg;
    cfg.window = 5;
    cfg.peak = 2.0;
    EXPECT_NEAR(ssim(a, b, cfg), oracle::ssim_loops(a, b, 5, 2.0), 1e-8);
}

TEST(Ssim, Symmetric) {
    const Tensor3 a = uniform_tensor({10, 10, 1}, 10), b = uniform_tensor({10, 10, 1}, 11);
    EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-14);
}

TEST(Ssim, SmallerThanWindowThrows) {
    const Tensor3 a = uniform_tensor({6, 10, 1}, 12);
    EXPECT_THROW(ssim(a, a), DimensionError);
}

TEST(RelError, MatchesDefinition) {
    const Tensor3 a = uniform_tensor({5, 4, 3}, 13), b = uniform_tensor({5, 4, 3}, 14);
    EXPECT_NEAR(rel_error(a, b), std::sqrt(oracle::sq_diff(a, b)) / fro_norm(b), 1e-14);
    EXPECT_EQ(rel_error(b, b), 0.0);
    EXPECT_THROW(rel_error(a, Tensor3(5, 4, 3)), ConfigError);
}

TEST(Metrics, ShapeMismatchThrows) {
    EXPECT_THROW(psnr(Tensor3(4, 4, 1), Tensor3(4, 5, 1)), DimensionError);
}
