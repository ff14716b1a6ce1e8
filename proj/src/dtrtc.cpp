#include "tubal/dtrtc.hpp"

#include "tubal/errors.hpp"
#include "tubal/reshape.hpp"
#include "tubal/tctf_m.hpp"

#include <chrono>
#include <cmath>

namespace tubal {

void DoubleTubalConfig::validate(const Dims3& dims) const {
    base.validate();
    if (p < 1 || q < 1 || p * q != dims.n1 * dims.n2) {
        throw ConfigError("reshape " + std::to_string(p) + "x" + std::to_string(q) +
                          " must satisfy p*q = n1*n2 = " + std::to_string(dims.n1 * dims.n2));
    }
    if (init_ranks_xt.size() != q) {
        throw ConfigError("reshaped-side multi-rank needs q = " + std::to_string(q) + " entries");
    }
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
        throw ConfigError("gamma0 must be finite and non-negative");
    }
}

std::pair<Index, Index> default_reshape(const Dims3& dims) {
    const Index total = dims.n1 * dims.n2;
    Index q = 1;
    for (Index c = std::min<Index>(64, total); c >= 1; --c) {
        if (total % c == 0) {
            q = c;
            break;
        }
    }
    return {total / q, q};
}

namespace {

Tensor3 reshaped(const DoubleFactors& df, const Tensor3& x) {
    return reshape_mode3(x, df.f_xt.dims.n2, df.f_xt.dims.n3);
}

Tensor3 folded_xt(const DoubleFactors& df, const Dims3& dims) {
    return fold3_from_reshaped(compose(df.f_xt), dims);
}

double safe_scale(const CompletionProblem& problem) {
    const double n = fro_norm(problem.observed);
    return n > 0.0 ? n : 1.0;
}

}  // namespace

Tensor3 update_x_blend(const DoubleFactors& df, const CompletionProblem& problem) {
    const Dims3 d = problem.observed.dims();
    Tensor3 blend = compose(df.f_x);
    if (df.gamma != 0.0) {
        blend += df.gamma * folded_xt(df, d);
        blend *= 1.0 / (1.0 + df.gamma);
    }
    return project(blend, problem.mask, problem.observed);
}

DoubleFactors update_u(const DoubleFactors& df, const Tensor3& x, SliceSolveCounter* counter) {
    DoubleFactors out = df;
    out.f_xt = update_left(df.f_xt, dft_mode3(reshaped(df, x)), counter);
    return out;
}

DoubleFactors update_v(const DoubleFactors& df, const Tensor3& x, SliceSolveCounter* counter) {
    DoubleFactors out = df;
    out.f_xt = update_right(df.f_xt, dft_mode3(reshaped(df, x)), counter);
    return out;
}

DoubleFactors update_uv(const DoubleFactors& df, const Tensor3& x) {
    return update_v(update_u(df, x), x);
}

double update_gamma(const DoubleFactors& df, const CompletionProblem& problem, GammaReading reading) {
    const Dims3 d = problem.observed.dims();
    const double numerator =
        fro_norm(restrict_to(compose(df.f_x), problem.mask) - problem.observed);

    double denominator = 0.0;
    if (reading == GammaReading::FoldedReconstruction) {
        denominator = fro_norm(restrict_to(folded_xt(df, d), problem.mask) - problem.observed);
    } else {
        const Index p = df.f_xt.dims.n2;
        const Index q = df.f_xt.dims.n3;
        const Tensor3 uv = compose(df.f_xt);
        const Tensor3 m_t = reshape_mode3(problem.observed, p, q);
        Tensor3 mask_t(d);
        for (std::size_t i = 0; i < problem.mask.observed.size(); ++i) {
            mask_t.data()[i] = problem.mask.observed[i];
        }
        mask_t = reshape_mode3(mask_t, p, q);
        double sum = 0.0;
        for (std::size_t i = 0; i < uv.data().size(); ++i) {
            if (mask_t.data()[i] != 0.0) {
                const double e = uv.data()[i] - m_t.data()[i];
                sum += e * e;
            }
        }
        denominator = std::sqrt(sum);
    }
    if (denominator <= 1e-12 * safe_scale(problem)) {
        return df.gamma;
    }
    return numerator / denominator;
}

double objective_f(const DoubleFactors& df, const Tensor3& x) {
    const double side_x = fro_norm(compose(df.f_x) - x);
    const double side_xt = fro_norm(compose(df.f_xt) - reshaped(df, x));
    return 0.5 * side_x * side_x + 0.5 * df.gamma * side_xt * side_xt;
}

double objective_f_spectral(const DoubleFactors& df, const Tensor3& x) {
    const double q = static_cast<double>(df.f_xt.dims.n3);
    return objective_g(df.f_x, x) +
           df.gamma * spectral_residual_sq(df.f_xt, dft_mode3(reshaped(df, x))) / (2.0 * q);
}

DtrtcResult solve_dtrtc(const CompletionProblem& problem, const DoubleTubalConfig& config,
                        const DtrtcObserver& observer) {
    problem.validate();
    const Dims3 d = problem.observed.dims();
    config.validate(d);
    const SolverConfig& base = config.base;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    DoubleFactors df{init_factors(d.n1, d.n2, d.n3, base.init_ranks, base.seed),
                     init_factors(d.n3, config.p, config.q, config.init_ranks_xt,
                                  derive_seed(base.seed, 1)),
                     config.gamma0};
    Tensor3 x = problem.observed;

    DtrtcResult result;
    result.trace.rows.push_back(TraceRow{0, objective_f_spectral(df, x), 0.0, df.f_x.ranks,
                                         elapsed_ms(), false, df.gamma, df.f_xt.ranks});
    if (observer) {
        observer(DtrtcIterate{0, df, x, false});
    }

    auto refresh = [&] {
        x = config.midstep_blend ? update_x_blend(df, problem) : update_x(df.f_x, problem);
    };

    RankDecreaseConfig cfg_x = base.rank_cfg;
    RankDecreaseConfig cfg_xt = base.rank_cfg;
    int stable_x = 0;
    int stable_xt = 0;
    auto decrease = [](BlockFactors& f, RankDecreaseConfig& cfg, int& stable) {
        if (!cfg.enabled) {
            return false;
        }
        RankDecreaseResult rd = rank_decrease(f, cfg);
        f = std::move(rd.factors);
        stable = rd.changed ? 0 : stable + 1;
        if (stable >= cfg.stable_iters_to_disable) {
            cfg.enabled = false;
        }
        return rd.changed;
    };

    for (int t = 1; t <= base.max_iter; ++t) {
        const Tensor3 x_prev = x;
        const bool early = t <= base.t0;

        df.f_x = update_left(df.f_x, dft_mode3(x));
        if (early) {
            refresh();
        }
        df.f_x = update_right(df.f_x, dft_mode3(x));
        if (early) {
            refresh();
        }
        df = update_u(df, x);
        if (early) {
            refresh();
        }
        df = update_v(df, x);

        const bool changed_x = decrease(df.f_x, cfg_x, stable_x);
        const bool changed_xt = decrease(df.f_xt, cfg_xt, stable_xt);
        const bool rank_changed = changed_x || changed_xt;

        x = update_x_blend(df, problem);

        const double f = objective_f_spectral(df, x);
        if (!std::isfinite(f)) {
            throw DivergenceError("objective is not finite at iteration " + std::to_string(t));
        }
        const double change = relative_change(x, x_prev);
        result.trace.rows.push_back(TraceRow{t, f, change, df.f_x.ranks, elapsed_ms(), rank_changed,
                                             df.gamma, df.f_xt.ranks});
        if (observer) {
            observer(DtrtcIterate{t, df, x, rank_changed});
        }
        if (change < base.epsilon) {
            result.trace.termination = Termination::Converged;
            break;
        }
        // Applied only when another iteration follows, so the returned
        // factors carry the gamma that produced the returned X.
        if (config.adaptive_gamma && t < base.max_iter) {
            df.gamma = update_gamma(df, problem, config.gamma_reading);
        }
    }

    result.x = std::move(x);
    result.factors = std::move(df);
    return result;
}

KktResidualsT kkt_residuals_t(const DoubleFactors& df, const Tensor3& x, const CompletionProblem& problem) {
    const Dims3 d = problem.observed.dims();
    const double scale = safe_scale(problem);

    const Stationarity sx = stationarity(df.f_x, dft_mode3(x));
    const Stationarity sxt = stationarity(df.f_xt, dft_mode3(reshaped(df, x)));

    Tensor3 blend = compose(df.f_x) + df.gamma * folded_xt(df, d);
    blend *= 1.0 / (1.0 + df.gamma);
    const Tensor3 gap = x - blend;

    KktResidualsT out;
    out.r = {sx.left / scale,
             sx.right / scale,
             sxt.left / scale,
             sxt.right / scale,
             fro_norm(restrict_to_complement(gap, problem.mask)) / scale,
             fro_norm(restrict_to(x, problem.mask) - problem.observed) / scale};
    out.multiplier = fro_norm(restrict_to(gap, problem.mask)) / scale;
    return out;
}

std::pair<Index, Index> double_tubal_rank(const Tensor3& x, Index p, Index q, double tol_rel) {
    return {tubal_rank(x, tol_rel), tubal_rank(reshape_mode3(x, p, q), tol_rel)};
}

}  // namespace tubal
