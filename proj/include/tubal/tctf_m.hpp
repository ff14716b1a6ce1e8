#pragma once

#include "tubal/factors.hpp"
#include "tubal/problem.hpp"

#include <functional>

namespace tubal {

/// X = P_{Omega^c}(P * Q) + P_Omega(M).
Tensor3 update_x(const BlockFactors& f, const CompletionProblem& problem);

/// g = (1 / 2 n3) sum_k ||P_k Q_k - X_k||_F^2 over all frequencies, which equals
/// (1/2) ||P * Q - X||_F^2 in the spatial domain.
double objective_g(const BlockFactors& f, const Tensor3& x);
double objective_g(const BlockFactors& f, const SpectralTensor& x_hat);

/// State handed to observers: once for the initial point (iter 0), then
/// after each completed iteration.
struct TctfIterate {
    int iter = 0;
    const BlockFactors& factors;
    const Tensor3& x;
    bool rank_changed = false;
};

using TctfObserver = std::function<void(const TctfIterate&)>;

struct TctfResult {
    Tensor3 x;
    Matrix matrix;  // n1 x original_width, padding stripped
    SolverTrace trace;
    BlockFactors factors;
};

/// Alternating minimization for matrix/tensor completion under a low tubal
/// rank factorization. Iteration t runs: left update; (t <= t0) X refresh;
/// right update; rank decrease; X update; then stops once the relative
/// change of X drops below epsilon.
TctfResult solve_tctf_m(const CompletionProblem& problem, const SolverConfig& config,
                        const TctfObserver& observer = {});

struct KktResidualsM {
    double left = 0.0;        // ||(X_hat - P Q) Q^*|| / ||Q||
    double right = 0.0;       // ||P^* (X_hat - P Q)|| / ||P||
    double complement = 0.0;  // ||P_{Omega^c}(X - P * Q)||
};

/// Stationarity residuals of the factorization model, each divided by
/// ||M||_F (taken as 1 when M is zero).
KktResidualsM kkt_residuals_m(const BlockFactors& f, const Tensor3& x,
                              const CompletionProblem& problem);

}  // namespace tubal
