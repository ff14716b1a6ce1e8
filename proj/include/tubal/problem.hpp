#pragma once

#include "tubal/factors.hpp"
#include "tubal/mask.hpp"
#include "tubal/rank.hpp"
#include "tubal/tensor3.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tubal {

/// Observed data M (zero outside the mask) and the mask itself. For matrix
/// problems `original_width` is the unpadded column count h; tensor problems
/// use n2 * n3.
struct CompletionProblem {
    Tensor3 observed;
    ObservationMask mask;
    Index original_width = 0;

    /// Throws DimensionError/ConfigError on inconsistent shapes or data
    /// outside the mask.
    void validate() const;
};

/// Zeroes `data` outside the mask and records the tensor width.
CompletionProblem make_tensor_problem(const Tensor3& data, const ObservationMask& mask);

/// Reshapes an n1 x h matrix into n1 x n2 x n3 frontal slices; `matrix_mask`
/// is n1 x h x 1 and padding columns join the mask as observed zeros.
CompletionProblem make_matrix_problem(const Matrix& data, const ObservationMask& matrix_mask,
                                      Index n2);

struct SolverConfig {
    MultiRank init_ranks;
    /// Iterations 1..t0 use the P, X, Q, X order; later ones use P, Q, X.
    int t0 = 10;
    double epsilon = 1e-4;
    int max_iter = 100;
    RankDecreaseConfig rank_cfg;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class Termination { Converged, MaxIterations };

struct TraceRow {
    int iter = 0;
    double objective = 0.0;
    double rel_change = 0.0;
    MultiRank ranks;
    double elapsed_ms = 0.0;
    bool rank_changed = false;
    // Double tubal rank solver only.
    std::optional<double> gamma;
    std::optional<MultiRank> ranks_xt;
};

struct SolverTrace {
    std::vector<TraceRow> rows;
    Termination termination = Termination::MaxIterations;

    int iterations() const { return rows.empty() ? 0 : rows.back().iter; }
    bool converged() const { return termination == Termination::Converged; }
};

/// Row 0 is the initial state with event "init"; the final row's event
/// carries the termination reason. With `timing` false the elapsed_ms column
/// is written as 0 so the file depends only on the inputs.
void write_trace_csv(std::ostream& out, const SolverTrace& trace, bool timing = false);

/// Relative change ||next - prev|| / ||prev||, or the absolute change when
/// ||prev|| < 1e-15.
double relative_change(const Tensor3& next, const Tensor3& prev);

/// Seed for a second, independent stream derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tubal
