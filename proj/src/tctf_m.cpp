#include "tubal/tctf_m.hpp"

#include "tubal/errors.hpp"
#include "tubal/reshape.hpp"

#include <chrono>
#include <cmath>

namespace tubal {

Tensor3 update_x(const BlockFactors& f, const CompletionProblem& problem) {
    return project(compose(f), problem.mask, problem.observed);
}

double objective_g(const BlockFactors& f, const SpectralTensor& x_hat) {
    return spectral_residual_sq(f, x_hat) / (2.0 * static_cast<double>(f.dims.n3));
}

double objective_g(const BlockFactors& f, const Tensor3& x) { return objective_g(f, dft_mode3(x)); }

TctfResult solve_tctf_m(const CompletionProblem& problem, const SolverConfig& config,
                        const TctfObserver& observer) {
    problem.validate();
    config.validate();
    const Dims3 d = problem.observed.dims();
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    Tensor3 x = problem.observed;
    SpectralTensor x_hat = dft_mode3(x);
    BlockFactors factors = init_factors(d.n1, d.n2, d.n3, config.init_ranks, config.seed);

    TctfResult result;
    result.trace.rows.push_back(TraceRow{0, objective_g(factors, x_hat), 0.0, factors.ranks,
                                         elapsed_ms(), false, {}, {}});
    if (observer) {
        observer(TctfIterate{0, factors, x, false});
    }

    RankDecreaseConfig rank_cfg = config.rank_cfg;
    int stable = 0;
    for (int t = 1; t <= config.max_iter; ++t) {
        const Tensor3 x_prev = x;

        factors = update_left(factors, x_hat);
        if (t <= config.t0) {
            x = update_x(factors, problem);
            x_hat = dft_mode3(x);
        }
        factors = update_right(factors, x_hat);

        bool rank_changed = false;
        if (rank_cfg.enabled) {
            RankDecreaseResult rd = rank_decrease(factors, rank_cfg);
            rank_changed = rd.changed;
            factors = std::move(rd.factors);
            stable = rank_changed ? 0 : stable + 1;
            if (stable >= rank_cfg.stable_iters_to_disable) {
                rank_cfg.enabled = false;
            }
        }

        x = update_x(factors, problem);
        x_hat = dft_mode3(x);

        const double g = objective_g(factors, x_hat);
        if (!std::isfinite(g)) {
            throw DivergenceError("objective is not finite at iteration " + std::to_string(t));
        }
        const double change = relative_change(x, x_prev);
        result.trace.rows.push_back(
            TraceRow{t, g, change, factors.ranks, elapsed_ms(), rank_changed, {}, {}});
        if (observer) {
            observer(TctfIterate{t, factors, x, rank_changed});
        }
        if (change < config.epsilon) {
            result.trace.termination = Termination::Converged;
            break;
        }
    }

    result.matrix = tensor_to_matrix(x, problem.original_width);
    result.x = std::move(x);
    result.factors = std::move(factors);
    return result;
}

KktResidualsM kkt_residuals_m(const BlockFactors& f, const Tensor3& x, const CompletionProblem& problem) {
    const Stationarity st = stationarity(f, dft_mode3(x));
    const double complement = fro_norm(restrict_to_complement(x - compose(f), problem.mask));
    const double norm_m = fro_norm(problem.observed);
    const double scale = norm_m > 0.0 ? norm_m : 1.0;
    return KktResidualsM{st.left / scale, st.right / scale, complement / scale};
}

}  // namespace tubal
