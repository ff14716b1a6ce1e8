#include "tubal/harness.hpp"

#include "tubal/errors.hpp"
#include "tubal/io.hpp"
#include "tubal/metrics.hpp"
#include "tubal/reshape.hpp"
#include "tubal/sampling.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tubal {

Command parse_command(const std::string& name) {
    if (name == "complete-matrix") return Command::CompleteMatrix;
    if (name == "complete-tensor") return Command::CompleteTensor;
    if (name == "synth") return Command::Synth;
    if (name == "metrics") return Command::Metrics;
    throw ConfigError("unknown command '" + name + "'");
}

const char* command_name(Command c) {
    switch (c) {
        case Command::CompleteMatrix: return "complete-matrix";
        case Command::CompleteTensor: return "complete-tensor";
        case Command::Synth: return "synth";
        case Command::Metrics: return "metrics";
    }
    return "?";
}

namespace {

bool same_path(const std::filesystem::path& a, const std::filesystem::path& b) {
    if (a.empty() || b.empty()) {
        return false;
    }
    return std::filesystem::weakly_canonical(std::filesystem::absolute(a)) ==
           std::filesystem::weakly_canonical(std::filesystem::absolute(b));
}

Index parse_index(const std::string& text) {
    Index value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || value < 0) {
        throw ConfigError("expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

void ExperimentSpec::validate() const {
    if (ratio && !(*ratio > 0.0 && *ratio <= 1.0)) {
        throw ConfigError("--ratio must lie in (0, 1]");
    }
    if (n2 < 1) {
        throw ConfigError("--n2 must be positive");
    }
    if (!(eps > 0.0) || t0 < 0 || max_iter < 1) {
        throw ConfigError("--eps must be positive, --t0 non-negative and --max-iter at least 1");
    }
    if (!(gamma0 >= 0.0) || !(rank_decrease_tau > 1.0)) {
        throw ConfigError("--gamma0 must be non-negative and --rank-decrease-tau above 1");
    }
    const std::filesystem::path inputs[] = {input, mask, reference};
    const std::filesystem::path outputs[] = {output, trace, metrics_out, truth_out, mask_out};
    for (const auto& out : outputs) {
        for (const auto& in : inputs) {
            if (same_path(out, in)) {
                throw ConfigError("output path " + out.string() + " would overwrite an input");
            }
        }
    }
    if (command != Command::Synth && command != Command::Metrics && input.empty()) {
        throw ConfigError(std::string(command_name(command)) + " needs --input");
    }
    if (command == Command::Metrics && (input.empty() || reference.empty())) {
        throw ConfigError("metrics needs --input and --reference");
    }
    if (command == Command::Synth && solver != "tctf-m" && solver != "dtrtc") {
        throw ConfigError("--solver must be tctf-m or dtrtc");
    }
}

MultiRank parse_rank_spec(const std::string& text, Index n3) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.empty()) {
        throw ConfigError("empty rank specification");
    }
    if (parts.size() == 1) {
        return MultiRank::uniform(n3, parse_index(parts[0]));
    }
    if (parts.size() == 2 && !parts[1].empty() && parts[1].back() == '*') {
        return MultiRank::leading(n3, parse_index(parts[0]),
                                  parse_index(parts[1].substr(0, parts[1].size() - 1)));
    }
    std::vector<Index> values;
    for (const auto& p : parts) {
        values.push_back(parse_index(p));
    }
    if (static_cast<Index>(values.size()) == n3) {
        MultiRank r(std::move(values));
        if (!r.is_symmetric()) {
            throw ConfigError("rank list must satisfy r_k = r_{n3-k+2}");
        }
        return r;
    }
    if (static_cast<Index>(values.size()) == half_count(n3)) {
        return MultiRank::from_half(n3, values);
    }
    throw ConfigError("rank list has " + std::to_string(values.size()) + " entries; expected " +
                      std::to_string(n3) + " or " + std::to_string(half_count(n3)));
}

MultiRank default_init_ranks(Index n_rows, Index n_cols, Index n3) {
    const double m = static_cast<double>(std::min(n_rows, n_cols));
    const auto first = static_cast<Index>(std::ceil(0.8 * m));
    const auto rest = static_cast<Index>(std::ceil(0.3 * m));
    return MultiRank::leading(n3, first, rest);
}

Dims3 parse_dims(const std::string& text) {
    const std::vector<std::string> parts = split(text, 'x');
    if (parts.size() != 3) {
        throw ConfigError("dimensions must look like 50x10x10, got '" + text + "'");
    }
    Dims3 d{parse_index(parts[0]), parse_index(parts[1]), parse_index(parts[2])};
    if (d.n1 < 1 || d.n2 < 1 || d.n3 < 1) {
        throw ConfigError("dimensions must be positive");
    }
    return d;
}

void write_metrics_csv(std::ostream& out, const std::vector<std::pair<std::string, double>>& rows) {
    out << "metric,value\n";
    for (const auto& [name, value] : rows) {
        out << name << ',' << format_number(value) << '\n';
    }
}

namespace {

using MetricRows = std::vector<std::pair<std::string, double>>;

class Runner {
public:
    Runner(const ExperimentSpec& spec, std::ostream& log) : spec_(spec), log_(log) {}

    int run() {
        switch (spec_.command) {
            case Command::CompleteMatrix: return complete_matrix();
            case Command::CompleteTensor: return complete_tensor();
            case Command::Synth: return synth();
            case Command::Metrics: return metrics();
        }
        return exit_code::input_error;
    }

private:
    SolverConfig base_config(const MultiRank& init_ranks) const {
        SolverConfig cfg;
        cfg.init_ranks = init_ranks;
        cfg.t0 = spec_.t0;
        cfg.epsilon = spec_.eps;
        cfg.max_iter = spec_.max_iter;
        cfg.rank_cfg.gap_threshold = spec_.rank_decrease_tau;
        cfg.seed = spec_.seed;
        return cfg;
    }

    MultiRank ranks_or(const std::string& text, Index n3, MultiRank fallback) const {
        return text.empty() ? std::move(fallback) : parse_rank_spec(text, n3);
    }

    DoubleTubalConfig double_config(const Dims3& d, Index default_rank_x, Index default_rank_xt) const {
        DoubleTubalConfig cfg;
        auto [p, q] = default_reshape(d);
        if (spec_.p > 0 || spec_.q > 0) {
            p = spec_.p > 0 ? spec_.p : (d.n1 * d.n2) / spec_.q;
            q = spec_.q > 0 ? spec_.q : (d.n1 * d.n2) / spec_.p;
        }
        cfg.p = p;
        cfg.q = q;
        const MultiRank fallback_x = default_rank_x > 0 ? MultiRank::uniform(d.n3, default_rank_x)
                                                        : default_init_ranks(d.n1, d.n2, d.n3);
        const MultiRank fallback_xt = default_rank_xt > 0 ? MultiRank::uniform(q, default_rank_xt)
                                                          : default_init_ranks(d.n3, p, q);
        cfg.base = base_config(ranks_or(spec_.init_rank, d.n3, fallback_x));
        cfg.init_ranks_xt = ranks_or(spec_.init_rank_xt, q, fallback_xt);
        cfg.gamma0 = spec_.gamma0;
        cfg.adaptive_gamma = spec_.adaptive_gamma;
        cfg.midstep_blend = spec_.midstep_blend;
        cfg.gamma_reading = spec_.gamma_reading;
        return cfg;
    }

    ObservationMask mask_for(const Dims3& d, double default_ratio) const {
        ObservationMask mask = spec_.mask.empty()
                                   ? generate_mask(d, spec_.ratio.value_or(default_ratio), spec_.seed)
                                   : io::load_mask(spec_.mask);
        if (mask.dims != d) {
            throw DimensionError("mask " + to_string(mask.dims) + " does not match data " + to_string(d));
        }
        if (!spec_.mask_out.empty()) {
            io::save_mask(spec_.mask_out, mask);
        }
        return mask;
    }

    void emit(const SolverTrace& trace, MetricRows rows) const {
        rows.emplace_back("iterations", trace.iterations());
        rows.emplace_back("converged", trace.converged() ? 1.0 : 0.0);
        if (!spec_.trace.empty()) {
            std::ofstream out(spec_.trace, std::ios::binary | std::ios::trunc);
            write_trace_csv(out, trace, spec_.timing);
            if (!out) {
                throw FormatError("failed writing " + spec_.trace.string());
            }
        }
        if (!spec_.metrics_out.empty()) {
            std::ofstream out(spec_.metrics_out, std::ios::binary | std::ios::trunc);
            write_metrics_csv(out, rows);
            if (!out) {
                throw FormatError("failed writing " + spec_.metrics_out.string());
            }
        }
        write_metrics_csv(log_, rows);
    }

    static void add_image_metrics(MetricRows& rows, const Tensor3& truth, const Tensor3& recovered,
                                  const Tensor3& observed) {
        rows.emplace_back("psnr", psnr(truth, recovered));
        if (truth.n1() >= 8 && truth.n2() >= 8) {
            rows.emplace_back("ssim", ssim(truth, recovered));
        }
        rows.emplace_back("psnr_observed", psnr(truth, observed));
        if (fro_norm(truth) > 0.0) {
            rows.emplace_back("rel_error", rel_error(recovered, truth));
        }
    }

    static int status(const SolverTrace& trace) {
        return trace.converged() ? exit_code::converged : exit_code::max_iterations;
    }

    int complete_matrix() {
        const Tensor3 input = io::load_any(spec_.input);
        if (input.n3() != 1) {
            throw DimensionError("complete-matrix needs a single-slice input, got " + to_string(input.dims()));
        }
        const Matrix m = input.slice(0);
        const ObservationMask mask = mask_for(input.dims(), 0.7);
        const CompletionProblem problem = make_matrix_problem(m, mask, spec_.n2);
        const Dims3 d = problem.observed.dims();
        const SolverConfig cfg =
            base_config(ranks_or(spec_.init_rank, d.n3, default_init_ranks(d.n1, d.n2, d.n3)));

        const TctfResult result = solve_tctf_m(problem, cfg);
        const Tensor3 recovered = Tensor3::from_matrix(result.matrix);
        io::save_any(spec_.output, recovered);

        MetricRows rows;
        add_image_metrics(rows, input, recovered, restrict_to(input, mask));
        emit(result.trace, std::move(rows));
        return status(result.trace);
    }

    int complete_tensor() {
        const Tensor3 input = io::load_any(spec_.input);
        const ObservationMask mask = mask_for(input.dims(), 0.7);
        const CompletionProblem problem = make_tensor_problem(input, mask);
        const DoubleTubalConfig cfg = double_config(input.dims(), 0, 0);

        const DtrtcResult result = solve_dtrtc(problem, cfg);
        io::save_any(spec_.output, result.x);

        MetricRows rows;
        add_image_metrics(rows, input, result.x, problem.observed);
        rows.emplace_back("gamma", result.factors.gamma);
        emit(result.trace, std::move(rows));
        return status(result.trace);
    }

    int synth() {
        const Dims3 d = spec_.synth_dims;
        const Tensor3 truth_tensor = low_tubal_rank_tensor(d, spec_.true_rank, derive_seed(spec_.seed, 42));
        MetricRows rows;

        if (spec_.solver == "tctf-m") {
            // Matrix completion of the n1 x (n2 n3) matrix, reshaped with width n2.
            const Matrix truth = tensor_to_matrix(truth_tensor, d.n2 * d.n3);
            const Tensor3 truth_t = Tensor3::from_matrix(truth);
            const ObservationMask mask = mask_for(truth_t.dims(), 0.6);
            const CompletionProblem problem = make_matrix_problem(truth, mask, d.n2);
            const SolverConfig cfg = base_config(ranks_or(spec_.init_rank, d.n3, MultiRank::uniform(d.n3, 8)));
            const TctfResult result = solve_tctf_m(problem, cfg);
            const Tensor3 recovered = Tensor3::from_matrix(result.matrix);
            save_synth(truth_t, recovered);
            rows.emplace_back("rel_error", rel_error(recovered, truth_t));
            emit(result.trace, std::move(rows));
            return status(result.trace);
        }

        const ObservationMask mask = mask_for(d, 0.6);
        const CompletionProblem problem = make_tensor_problem(truth_tensor, mask);
        const DoubleTubalConfig cfg = double_config(d, 8, 6);
        const DtrtcResult result = solve_dtrtc(problem, cfg);
        save_synth(truth_tensor, result.x);
        rows.emplace_back("rel_error", rel_error(result.x, truth_tensor));
        rows.emplace_back("gamma", result.factors.gamma);
        emit(result.trace, std::move(rows));
        return status(result.trace);
    }

    void save_synth(const Tensor3& truth, const Tensor3& recovered) const {
        if (!spec_.truth_out.empty()) {
            io::save_tensor(spec_.truth_out, truth);
        }
        if (!spec_.output.empty()) {
            io::save_tensor(spec_.output, recovered);
        }
    }

    int metrics() {
        const Tensor3 reference = io::load_any(spec_.reference);
        const Tensor3 test = io::load_any(spec_.input);
        require_same_dims(reference.dims(), test.dims(), "metrics");
        MetricRows rows;
        rows.emplace_back("psnr", psnr(reference, test));
        if (reference.n1() >= 8 && reference.n2() >= 8) {
            rows.emplace_back("ssim", ssim(reference, test));
        }
        if (fro_norm(reference) > 0.0) {
            rows.emplace_back("rel_error", rel_error(test, reference));
        }
        if (!spec_.metrics_out.empty()) {
            std::ofstream out(spec_.metrics_out, std::ios::binary | std::ios::trunc);
            write_metrics_csv(out, rows);
        }
        write_metrics_csv(log_, rows);
        return exit_code::converged;
    }

    const ExperimentSpec& spec_;
    std::ostream& log_;
};

}  // namespace

int run(const ExperimentSpec& spec, std::ostream& log, std::ostream& err) {
    try {
        spec.validate();
        return Runner(spec, log).run();
    } catch (const std::exception& e) {
        err << "tubal " << command_name(spec.command) << ": " << e.what() << '\n';
        return exit_code::input_error;
    }
}

}  // namespace tubal
