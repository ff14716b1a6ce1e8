#pragma once

#include "tubal/factors.hpp"
#include "tubal/problem.hpp"

#include <array>
#include <functional>
#include <utility>

namespace tubal {

/// How the reconstruction of the reshaped side is compared with M when
/// adapting gamma. Both readings measure the same entries; they differ only
/// in the coordinate system the comparison is carried out in.
enum class GammaReading {
    FoldedReconstruction,  // fold U*V back to n1 x n2 x n3, compare with M on Omega
    ReshapedObservation,   // compare U*V with reshape_mode3(M) on the reshaped mask
};

struct DoubleTubalConfig {
    SolverConfig base;          // init_ranks is the multi-rank of the n1 x n2 x n3 side
    MultiRank init_ranks_xt;    // length q
    Index p = 0;
    Index q = 0;
    double gamma0 = 1.0;
    bool adaptive_gamma = true;
    /// Mid-iteration X refreshes use the gamma blend; false uses P * Q alone.
    bool midstep_blend = true;
    GammaReading gamma_reading = GammaReading::FoldedReconstruction;

    void validate(const Dims3& dims) const;
};

/// q is the largest divisor of n1*n2 not exceeding 64, p = n1*n2 / q.
std::pair<Index, Index> default_reshape(const Dims3& dims);

struct DoubleFactors {
    BlockFactors f_x;   // over (n1, n2, n3)
    BlockFactors f_xt;  // over (n3, p, q)
    double gamma = 1.0;
};

/// (P * Q + gamma fold3(U * V)) / (1 + gamma) off the mask, M on it.
Tensor3 update_x_blend(const DoubleFactors& df, const CompletionProblem& problem);

/// Least-squares U then V against the reshaped X.
DoubleFactors update_uv(const DoubleFactors& df, const Tensor3& x);
DoubleFactors update_u(const DoubleFactors& df, const Tensor3& x, SliceSolveCounter* counter = nullptr);
DoubleFactors update_v(const DoubleFactors& df, const Tensor3& x, SliceSolveCounter* counter = nullptr);

/// ||P_Omega(P*Q - M)|| / ||P_Omega(fold3(U*V) - M)||; gamma is returned
/// unchanged when the denominator is at round-off level, 1e-12 ||M||_F.
double update_gamma(const DoubleFactors& df, const CompletionProblem& problem,
                    GammaReading reading = GammaReading::FoldedReconstruction);

/// (1/2)||P*Q - X||^2 + (gamma/2)||U*V - reshape_mode3(X)||^2, spatial domain.
double objective_f(const DoubleFactors& df, const Tensor3& x);
/// Same value from the stored half spectra.
double objective_f_spectral(const DoubleFactors& df, const Tensor3& x);

struct DtrtcIterate {
    int iter = 0;
    const DoubleFactors& factors;
    const Tensor3& x;
    bool rank_changed = false;
};

using DtrtcObserver = std::function<void(const DtrtcIterate&)>;

struct DtrtcResult {
    Tensor3 x;
    SolverTrace trace;
    DoubleFactors factors;
};

/// Double tubal rank completion: alternates least-squares updates of the
/// (P, Q) factorization of X and the (U, V) factorization of its mode-3
/// reshape, blends both into X, and adapts gamma.
DtrtcResult solve_dtrtc(const CompletionProblem& problem, const DoubleTubalConfig& config,
                        const DtrtcObserver& observer = {});

/// Six stationarity residuals, each divided by ||M||_F:
///   [0] ||(X_hat - P Q) Q^*|| / ||Q||      [1] ||P^* (X_hat - P Q)|| / ||P||
///   [2] ||(Xt_hat - U V) V^*|| / ||V||     [3] ||U^* (Xt_hat - U V)|| / ||U||
///   [4] ||P_{Omega^c}(X - B)||      [5] ||P_Omega(X - M)||
/// where B = (P*Q + gamma fold3(U*V)) / (1 + gamma). `multiplier` is
/// ||P_Omega(X - B)||, the norm of the multiplier that balances the
/// constraint, reported for diagnostics only.
struct KktResidualsT {
    std::array<double, 6> r{};
    double multiplier = 0.0;
};

KktResidualsT kkt_residuals_t(const DoubleFactors& df, const Tensor3& x,
                              const CompletionProblem& problem);

/// (tubal rank of X, tubal rank of reshape_mode3(X, p, q)).
std::pair<Index, Index> double_tubal_rank(const Tensor3& x, Index p, Index q, double tol_rel = 1e-10);

}  // namespace tubal
