#pragma once

// Property and experiment suites shared by the unit tests and the
// acceptance runner. Each suite counts checks and records the first failure.

#include "tubal/dtrtc.hpp"
#include "tubal/tctf_m.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace suites {

struct Tally {
    int checks = 0;
    int failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what);
    bool ok() const { return checks > 0 && failures == 0; }
    std::string summary() const;
};

/// tprod vs block-circulant reference, Parseval and exact conjugate symmetry
/// on random instances with dims <= 6 x 6 x 5.
Tally algebra(int instances, std::uint64_t seed);

/// Rank inequalities and equalities relating tubal, multi, unfolding,
/// reshaped-matrix and mode-13/23 ranks; `instances` tensors per law.
Tally rank_laws(int instances, std::uint64_t seed, double tol = 1e-8);

/// Frozen-rank descent: objective non-increasing and the per-iteration
/// gap inequality, for both solvers (DTRTC with fixed weight).
Tally descent(int problems, std::uint64_t seed, double slack = 1e-9);

/// Slice-solve counts equal half_count per update, and the half-spectrum
/// updates and composition agree with a full-spectrum path.
Tally half_spectrum(std::uint64_t seed, double tol = 1e-12);

/// Recovery of the synthetic generate-and-recover instances.
struct RecoveryRun {
    std::uint64_t seed = 0;
    double rel_error = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string ranks;
    std::vector<double> kkt_first;  // residuals at iteration 1
    std::vector<double> kkt_final;  // residuals at the returned iterate
};

/// 50 x 100 matrix of tubal rank 3 in the 50 x 10 x 10 geometry, 60%
/// observed, initial rank 8.
RecoveryRun recover_tctf(std::uint64_t seed);

/// 40 x 40 x 10 tensor of tubal rank 3, 60% observed, reshape (160, 10),
/// initial ranks 8 and 6.
RecoveryRun recover_dtrtc(std::uint64_t seed);

/// Largest per-iteration difference between DTRTC with zero weight and
/// TCTF-M on the same problem and seed (X iterates and factor products).
double zero_weight_reduction_gap(std::uint64_t seed);

/// Smooth-plus-edges 8-bit grayscale test card, values in [0, 1].
tubal::Tensor3 test_card(tubal::Index rows, tubal::Index cols);

struct InpaintingRun {
    double psnr_observed = 0.0;
    double psnr_recovered = 0.0;
    double seconds = 0.0;
    int iterations = 0;
};

/// Writes the test card as PGM under `dir`, then runs complete-matrix on it.
InpaintingRun inpaint(const std::filesystem::path& dir, double ratio, tubal::Index n2,
                      std::uint64_t seed);

/// Two identical CLI runs produce byte-identical files; every file format
/// round-trips exactly.
Tally determinism_and_formats(const std::filesystem::path& dir);

/// Reads a whole file as bytes.
std::string slurp(const std::filesystem::path& path);

}  // namespace suites
