// Command-line driver: synthesize phantom clips, track a vessel contour with
// one of the optical-flow algorithms, evaluate agreement against truth masks,
// and compare algorithms across datasets.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "veintrack/commands.hpp"

namespace {

struct FlowFlags {
    int levels = 3;
    int window = 20;
    double alpha = 1.0;
    int iters = 250;
    int points = 32;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--levels", levels, "Pyramid levels")->capture_default_str();
        cmd.add_option("--window", window, "Window length in pixels (LK window, FB averaging)")
            ->capture_default_str();
        cmd.add_option("--alpha", alpha, "HS smoothness weight")->capture_default_str();
        cmd.add_option("--iters", iters, "HS iterations per level")->capture_default_str();
        cmd.add_option("--points", points, "Contour point count")->capture_default_str();
    }

    veintrack::TrackerConfig tracker() const {
        veintrack::TrackerConfig config;
        config.point_count = points;
        config.lk.level_count = levels;
        config.lk.window_len = window;
        config.hs.level_count = levels;
        config.hs.alpha = alpha;
        config.hs.iterations = iters;
        config.fb.level_count = levels;
        config.fb.avg_window = window;
        return config;
    }
};

std::vector<veintrack::FlowAlgorithm> parse_algo_list(const std::vector<std::string>& names) {
    std::vector<veintrack::FlowAlgorithm> algos;
    for (const std::string& name : names) {
        const auto algo = veintrack::parse_algorithm(name);
        if (!algo) {
            throw CLI::ValidationError("--algos", "unknown algorithm '" + name + "'");
        }
        algos.push_back(*algo);
    }
    return algos;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"veintrack: optical-flow vessel contour tracking"};
    app.require_subcommand(1);

    // synth
    veintrack::cli::SynthOptions synth;
    std::uint64_t seed_value = 0;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic phantom dataset");
    synth_cmd->add_option("--config", synth.config_file, "key=value phantom config file")
        ->check(CLI::ExistingFile);
    synth_cmd->add_option("--out", synth.out_dir, "Output dataset directory")->required();
    CLI::Option* seed_opt = synth_cmd->add_option("--seed", seed_value, "Override config seed");

    // track
    veintrack::cli::TrackOptions track;
    FlowFlags track_flags;
    std::string track_algo = "lk";
    CLI::App* track_cmd = app.add_subcommand("track", "Track a contour through a dataset");
    track_cmd->add_option("dataset", track.dataset_dir, "Dataset directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    track_cmd->add_option("--algo", track_algo, "Flow algorithm: lk|hs|fb")
        ->capture_default_str();
    track_cmd->add_option("--init", track.init_contour,
                          "Initial contour file (default: dataset contours/contour_00000.txt)");
    track_cmd->add_option("--out", track.out_dir, "Output directory")->required();
    track_flags.add_to(*track_cmd);

    // eval
    veintrack::cli::EvalOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Score tracked contours against truth masks");
    eval_cmd->add_option("contours", eval.contours_dir, "Directory of tracked contour files")
        ->required()
        ->check(CLI::ExistingDirectory);
    eval_cmd->add_option("truth", eval.truth_dir, "Directory of truth mask PGMs")
        ->required()
        ->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--out", eval.out_csv, "Output CSV path")->required();
    eval_cmd->add_option("--threshold", eval.failure_threshold, "Failure threshold")
        ->capture_default_str();

    // compare
    veintrack::cli::CompareOptions compare;
    FlowFlags compare_flags;
    std::vector<std::string> compare_algos = {"lk", "hs", "fb"};
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run track+eval per algorithm per dataset");
    compare_cmd->add_option("datasets", compare.datasets, "Dataset directories (need truth/)")
        ->required();
    compare_cmd->add_option("--algos", compare_algos, "Algorithms to compare")
        ->delimiter(',')
        ->capture_default_str();
    compare_cmd->add_option("--out", compare.out_dir, "Output directory")->required();
    compare_cmd->add_option("--threshold", compare.failure_threshold, "Failure threshold")
        ->capture_default_str();
    compare_cmd->add_option("--jobs", compare.max_parallel,
                            "Max concurrent cells (0 = hardware)");
    compare_flags.add_to(*compare_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            if (seed_opt->count() > 0) synth.seed = seed_value;
            veintrack::cli::cmd_synth(synth, std::cout);
        } else if (track_cmd->parsed()) {
            track.tracker = track_flags.tracker();
            const auto algo = veintrack::parse_algorithm(track_algo);
            if (!algo) {
                std::cerr << "error: unknown algorithm '" << track_algo << "'\n";
                return 1;
            }
            track.tracker.algorithm = *algo;
            veintrack::cli::cmd_track(track, std::cout);
        } else if (eval_cmd->parsed()) {
            veintrack::cli::cmd_eval(eval, std::cout);
        } else if (compare_cmd->parsed()) {
            compare.base = compare_flags.tracker();
            compare.algorithms = parse_algo_list(compare_algos);
            veintrack::cli::cmd_compare(compare, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
