#pragma once

#include "tubal/mask.hpp"
#include "tubal/tensor3.hpp"

#include <cstdint>

namespace tubal {

/// Observes exactly floor(ratio * N) entries chosen uniformly without
/// replacement by a seeded partial Fisher-Yates shuffle.
ObservationMask generate_mask(Dims3 dims, double ratio, std::uint64_t seed);

/// Entries drawn i.i.d. from N(0, stddev^2).
Tensor3 gaussian_tensor(Dims3 dims, std::uint64_t seed, double stddev = 1.0);

/// P * Q with standard Gaussian P (n1 x rank x n3) and Q (rank x n2 x n3);
/// tubal rank equals `rank` with probability one when rank <= min(n1, n2).
Tensor3 low_tubal_rank_tensor(Dims3 dims, Index rank, std::uint64_t seed);

}  // namespace tubal
