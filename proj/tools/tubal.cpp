#include "tubal/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Low-tubal-rank matrix and tensor completion"};
    app.set_version_flag("--version", "tubal 1.0");

    tubal::ExperimentSpec spec;
    std::string command;
    std::string dims;
    std::string reading = "folded";
    double ratio = 0.0;

    app.add_option("command", command, "complete-matrix | complete-tensor | synth | metrics")
        ->required()
        ->check(CLI::IsMember({"complete-matrix", "complete-tensor", "synth", "metrics"}));
    app.add_option("--input", spec.input, "input image (.pgm/.ppm) or tensor (.t3)");
    app.add_option("--output", spec.output, "recovered image or tensor");
    app.add_option("--mask", spec.mask, "observation mask (.msk); sampled when absent");
    app.add_option("--reference", spec.reference, "ground truth for the metrics command");
    auto* ratio_opt = app.add_option("--ratio", ratio, "observed fraction in (0, 1]");
    app.add_option("--seed", spec.seed, "random seed");
    app.add_option("--n2", spec.n2, "slice width of the matrix-to-tensor reshape");
    app.add_option("--init-rank", spec.init_rank, "initial multi-rank: r, R,r*, or a list");
    app.add_option("--init-rank-xt", spec.init_rank_xt, "initial multi-rank of the reshaped tensor");
    app.add_option("--p", spec.p, "rows of the mode-3 reshape");
    app.add_option("--q", spec.q, "columns of the mode-3 reshape");
    app.add_option("--t0", spec.t0, "iterations using the extra X update");
    app.add_option("--eps", spec.eps, "relative-change tolerance");
    app.add_option("--max-iter", spec.max_iter, "iteration limit");
    app.add_option("--gamma0", spec.gamma0, "initial weight of the reshaped term");
    app.add_option("--adaptive-gamma", spec.adaptive_gamma, "update the weight every iteration");
    app.add_option("--midstep-blend", spec.midstep_blend, "blend X between factor updates");
    app.add_option("--gamma-reading", reading, "folded | reshaped")
        ->check(CLI::IsMember({"folded", "reshaped"}));
    app.add_option("--rank-decrease-tau", spec.rank_decrease_tau, "eigen-gap threshold");
    app.add_option("--trace", spec.trace, "per-iteration CSV");
    app.add_option("--metrics-out", spec.metrics_out, "metrics CSV");
    app.add_option("--truth-out", spec.truth_out, "synth: ground truth tensor");
    app.add_option("--mask-out", spec.mask_out, "write the mask that was used");
    app.add_flag("--timing", spec.timing, "record wall-clock time in the trace");
    app.add_option("--dims", dims, "synth: tensor dimensions, e.g. 50x10x10");
    app.add_option("--true-rank", spec.true_rank, "synth: tubal rank of the ground truth");
    app.add_option("--solver", spec.solver, "synth: tctf-m | dtrtc")
        ->check(CLI::IsMember({"tctf-m", "dtrtc"}));

    try {
        app.parse(argc, argv);
        spec.command = tubal::parse_command(command);
        if (*ratio_opt) {
            spec.ratio = ratio;
        }
        if (!dims.empty()) {
            spec.synth_dims = tubal::parse_dims(dims);
        }
        spec.gamma_reading = reading == "reshaped" ? tubal::GammaReading::ReshapedObservation
                                                   : tubal::GammaReading::FoldedReconstruction;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tubal::exit_code::input_error;
    } catch (const std::exception& e) {
        std::cerr << "tubal: " << e.what() << '\n';
        return tubal::exit_code::input_error;
    }
    return tubal::run(spec, std::cout, std::cerr);
}
