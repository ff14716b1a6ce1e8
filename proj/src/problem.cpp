#include "tubal/problem.hpp"

#include "tubal/errors.hpp"
#include "tubal/reshape.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace tubal {

void CompletionProblem::validate() const {
    require_same_dims(observed.dims(), mask.dims, "completion problem");
    if (original_width < 0 || original_width > observed.n2() * observed.n3()) {
        throw ConfigError("original width " + std::to_string(original_width) + " out of range");
    }
    for (std::size_t i = 0; i < mask.observed.size(); ++i) {
        if (!mask.observed[i] && observed.data()[i] != 0.0) {
            throw ConfigError("observed data must be zero outside the mask");
        }
    }
}

CompletionProblem make_tensor_problem(const Tensor3& data, const ObservationMask& mask) {
    CompletionProblem p{restrict_to(data, mask), mask, data.n2() * data.n3()};
    return p;
}

CompletionProblem make_matrix_problem(const Matrix& data, const ObservationMask& matrix_mask, Index n2) {
    if (matrix_mask.dims != Dims3{data.rows(), data.cols(), 1}) {
        throw DimensionError("matrix mask " + to_string(matrix_mask.dims) + " vs matrix " +
                             std::to_string(data.rows()) + "x" + std::to_string(data.cols()));
    }
    ReshapedMatrix reshaped = reshape_matrix_to_tensor(data, n2);
    ObservationMask mask = reshape_matrix_mask(matrix_mask, n2);
    return CompletionProblem{restrict_to(reshaped.tensor, mask), std::move(mask), data.cols()};
}

void SolverConfig::validate() const {
    if (!(epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    if (t0 < 0) {
        throw ConfigError("t0 must be non-negative");
    }
    if (max_iter < 1) {
        throw ConfigError("max_iter must be at least 1");
    }
    rank_cfg.validate();
}

void write_trace_csv(std::ostream& out, const SolverTrace& trace, bool timing) {
    const bool double_tubal = !trace.rows.empty() && trace.rows.front().gamma.has_value();
    out << "iter,g,rel_change,ranks,elapsed_ms,event";
    if (double_tubal) {
        out << ",gamma,ranks_xt";
    }
    out << '\n';

    // std::to_chars is locale independent and round-trips exactly.
    auto num = [](double v) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    };

    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        const TraceRow& row = trace.rows[i];
        std::string event = i == 0 ? "init" : row.rank_changed ? "rank-change" : "";
        if (i + 1 == trace.rows.size() && i > 0) {
            const char* reason = trace.converged() ? "converged" : "max-iter";
            event = event.empty() ? reason : event + "+" + reason;
        }
        out << row.iter << ',' << num(row.objective) << ',' << num(row.rel_change) << ','
            << to_string(row.ranks) << ',' << num(timing ? row.elapsed_ms : 0.0) << ',' << event;
        if (double_tubal) {
            out << ',' << num(row.gamma.value_or(0.0)) << ','
                << (row.ranks_xt ? to_string(*row.ranks_xt) : std::string());
        }
        out << '\n';
    }
}

double relative_change(const Tensor3& next, const Tensor3& prev) {
    const double diff = fro_norm(next - prev);
    const double base = fro_norm(prev);
    return base < 1e-15 ? diff : diff / base;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace tubal
