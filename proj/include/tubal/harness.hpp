#pragma once

#include "tubal/dtrtc.hpp"
#include "tubal/rank.hpp"
#include "tubal/tctf_m.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tubal {

enum class Command { CompleteMatrix, CompleteTensor, Synth, Metrics };

Command parse_command(const std::string& name);
const char* command_name(Command c);

/// One batch run of the command-line front end.
struct ExperimentSpec {
    Command command = Command::Synth;

    std::filesystem::path input;
    std::filesystem::path output;
    std::filesystem::path mask;       // observation mask to use instead of sampling
    std::filesystem::path reference;  // metrics: ground truth image/tensor
    std::filesystem::path trace;
    std::filesystem::path metrics_out;
    std::filesystem::path truth_out;  // synth: ground truth
    std::filesystem::path mask_out;   // sampled mask

    std::optional<double> ratio;  // default 0.7, or 0.6 for synth
    std::uint64_t seed = 0;
    Index n2 = 64;

    std::string init_rank;     // "8", "50,20*", or an explicit list
    std::string init_rank_xt;
    Index p = 0;  // 0 selects default_reshape
    Index q = 0;

    int t0 = 10;
    double eps = 1e-4;
    int max_iter = 100;
    double gamma0 = 1.0;
    bool adaptive_gamma = true;
    bool midstep_blend = true;
    GammaReading gamma_reading = GammaReading::FoldedReconstruction;
    double rank_decrease_tau = 10.0;
    bool timing = false;

    // synth only
    Dims3 synth_dims{50, 10, 10};
    Index true_rank = 3;
    std::string solver = "tctf-m";

    /// Throws ConfigError for out-of-range values or outputs that alias inputs.
    void validate() const;
};

/// Parses "r" (all slices), "R,r*" (first slice R, others r), or an
/// explicit comma list of n3 entries or of half_count(n3) entries.
MultiRank parse_rank_spec(const std::string& text, Index n3);

/// Default per-slice ranks for an n_rows x n_cols slice geometry:
/// ceil(0.8 m) on the first slice and ceil(0.3 m) elsewhere, m = min(n_rows, n_cols).
MultiRank default_init_ranks(Index n_rows, Index n_cols, Index n3);

/// Parses "50x10x10".
Dims3 parse_dims(const std::string& text);

/// Metrics CSV ("metric,value" rows, '.' decimal, inf for infinity).
void write_metrics_csv(std::ostream& out, const std::vector<std::pair<std::string, double>>& rows);

namespace exit_code {
inline constexpr int converged = 0;
inline constexpr int input_error = 1;
inline constexpr int max_iterations = 2;
}  // namespace exit_code

/// Executes one command, writing artifacts to disk, a summary to `log`, and
/// a one-line diagnostic to `err` on failure. Returns an exit_code value.
int run(const ExperimentSpec& spec, std::ostream& log, std::ostream& err);

}  // namespace tubal
