#pragma once

#include "tubal/rank.hpp"
#include "tubal/spectral.hpp"
#include "tubal/tensor3.hpp"

#include <atomic>
#include <cstdint>
#include <vector>

namespace tubal {

/// Per-frequency factor pairs of a low tubal rank tensor in the Fourier
/// domain: slice f of the approximated spectrum is left[f] * right[f], with
/// left[f] of size n_rows x r_f and right[f] of size r_f x n_cols. Only the
/// half_count(n3) stored frequencies are kept; the remaining slices are the
/// conjugates of their mirrors.
struct BlockFactors {
    Dims3 dims{};  // (n_rows, n_cols, n3)
    MultiRank ranks;
    std::vector<CMatrix> left;
    std::vector<CMatrix> right;

    Index stored() const { return static_cast<Index>(left.size()); }

    /// Throws DimensionError when slice shapes disagree with dims/ranks.
    void validate() const;
};

/// Rank-decreasing rule: per stored frequency, look for a dominant gap in
/// the eigenvalues of right * right^*, and truncate at the gap when the
/// ratio of consecutive eigenvalues exceeds `gap_threshold`.
struct RankDecreaseConfig {
    double gap_threshold = 10.0;
    Index floor = 1;
    bool enabled = true;
    /// Measure the spectrum of Q Q^* after rotating P to orthonormal columns
    /// (Q <- R Q from P = U R), so the gap reflects the composed slice.
    bool orthonormal_left = true;
    /// Solvers stop applying the rule after this many iterations without a change.
    int stable_iters_to_disable = 5;

    void validate() const;
};

/// Counts per-frequency least-squares solves; pass to the update functions.
struct SliceSolveCounter {
    std::atomic<std::int64_t> solves{0};
};

/// Gaussian spatial factors with entries N(0, 1/r_max), transformed along
/// mode 3 and truncated to the requested per-frequency ranks.
BlockFactors init_factors(Index n_rows, Index n_cols, Index n3, const MultiRank& init_ranks,
                          std::uint64_t seed);

/// Wraps the transforms of spatial factors p (n_rows x r x n3) and q (r x n_cols x n3).
BlockFactors factors_from_spatial(const Tensor3& p, const Tensor3& q);

/// Least-squares left factors: left[f] = X_f right[f]^* pinv(right[f] right[f]^*).
BlockFactors update_left(const BlockFactors& f, const SpectralTensor& x,
                         SliceSolveCounter* counter = nullptr);

/// Least-squares right factors: right[f] = pinv(left[f]^* left[f]) left[f]^* X_f.
BlockFactors update_right(const BlockFactors& f, const SpectralTensor& x,
                          SliceSolveCounter* counter = nullptr);

/// Stored half of the Fourier-domain product left[f] * right[f].
SpectralTensor spectral_product(const BlockFactors& f);

/// Spatial tensor whose transform is the factor product.
Tensor3 compose(const BlockFactors& f);

/// sum over all n3 frequencies of ||left_f right_f - X_f||_F^2.
double spectral_residual_sq(const BlockFactors& f, const SpectralTensor& x);

/// First-order stationarity of ||left right - X|| in each factor, summed over
/// all n3 frequencies: ||(X - left right) right^*|| / ||right|| and
/// ||left^* (X - left right)|| / ||left||. Dividing by the multiplied factor
/// makes both invariant to rescaling left by c and right by 1/c.
struct Stationarity {
    double left = 0.0;
    double right = 0.0;
};
Stationarity stationarity(const BlockFactors& f, const SpectralTensor& x);

struct RankDecreaseResult {
    BlockFactors factors;
    MultiRank ranks;
    bool changed = false;
};

RankDecreaseResult rank_decrease(const BlockFactors& f, const RankDecreaseConfig& cfg);

/// Moore-Penrose pseudo-inverse via SVD; singular values at or below
/// rtol * sigma_max are dropped. rtol <= 0 selects max(m, n) * epsilon.
CMatrix pinv(const CMatrix& m, double rtol = -1.0);

}  // namespace tubal
