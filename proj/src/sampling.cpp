#include "tubal/sampling.hpp"

#include "tubal/errors.hpp"
#include "tubal/problem.hpp"
#include "tubal/tproduct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace tubal {

ObservationMask generate_mask(Dims3 dims, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw ConfigError("sampling ratio must lie in (0, 1]");
    }
    const auto total = static_cast<std::size_t>(dims.count());
    // The tiny offset keeps products such as 0.57 * 100 from rounding below the integer.
    const auto wanted = std::min(
        total, static_cast<std::size_t>(std::floor(ratio * static_cast<double>(total) + 1e-9)));

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < wanted; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, total - 1);
        std::swap(order[i], order[pick(rng)]);
    }

    ObservationMask mask(dims, false);
    for (std::size_t i = 0; i < wanted; ++i) {
        mask.observed[order[i]] = 1;
    }
    return mask;
}

Tensor3 gaussian_tensor(Dims3 dims, std::uint64_t seed, double stddev) {
    Tensor3 t(dims);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, stddev);
    for (double& v : t.data()) {
        v = normal(rng);
    }
    return t;
}

Tensor3 low_tubal_rank_tensor(Dims3 dims, Index rank, std::uint64_t seed) {
    const Tensor3 p = gaussian_tensor(Dims3{dims.n1, rank, dims.n3}, seed);
    const Tensor3 q = gaussian_tensor(Dims3{rank, dims.n2, dims.n3}, derive_seed(seed, 7));
    return tprod(p, q);
}

}  // namespace tubal
