#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "veintrack/dataset.hpp"
#include "veintrack/metrics.hpp"
#include "veintrack/tracker.hpp"

namespace veintrack::cli {

/// Subcommand implementations. All of them throw std::runtime_error /
/// std::invalid_argument on I/O or validation problems; the binary maps that
/// to a nonzero exit. Evaluation verdicts (PASS / FAIL@frame) are ordinary
/// output, not errors.

struct SynthOptions {
    std::filesystem::path config_file;  // empty: built-in defaults
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;  // overrides the config's seed
};

/// Writes frames, truth masks, truth contours, and the echoed config.
void cmd_synth(const SynthOptions& options, std::ostream& log);

struct TrackOptions {
    std::filesystem::path dataset_dir;
    std::filesystem::path out_dir;
    std::filesystem::path init_contour;  // empty: dataset contours/contour_00000.txt
    TrackerConfig tracker;
};

/// Streams the clip pairwise, writing one contour file per frame plus
/// csa.csv ("frame,csa_px2").
void cmd_track(const TrackOptions& options, std::ostream& log);

struct EvalOptions {
    std::filesystem::path contours_dir;
    std::filesystem::path truth_dir;
    std::filesystem::path out_csv;
    double failure_threshold = 0.7;
};

struct EvalResult {
    DiceSeries series;
    std::vector<double> csa;
    FailureCheck failure;
};

/// Rasterizes each tracked contour against the matching truth mask. Writes
/// "frame,dice,csa_px2" rows and logs the verdict line.
EvalResult cmd_eval(const EvalOptions& options, std::ostream& log);

struct CompareOptions {
    std::vector<std::filesystem::path> datasets;
    std::vector<FlowAlgorithm> algorithms;
    std::filesystem::path out_dir;
    TrackerConfig base;    // algorithm field is overridden per cell
    double failure_threshold = 0.7;
    int max_parallel = 0;  // 0: hardware concurrency
};

struct CompareCell {
    std::size_t dataset_index = 0;
    std::string dataset_name;
    FlowAlgorithm algorithm = FlowAlgorithm::lk;
    bool ok = false;
    std::string error;
    double mean_dice = 0.0;
    double min_dice = 0.0;
    FailureCheck failure;
    DiceSeries series;
};

struct AlgoSummary {
    FlowAlgorithm algorithm = FlowAlgorithm::lk;
    int cells_ok = 0;
    double mean_dice = 0.0;  // over successful cells
    int success_count = 0;   // cells with no DICE failure
};

struct CompareResult {
    std::vector<CompareCell> cells;
    std::vector<AlgoSummary> summary;
};

/// Runs track+eval for every dataset x algorithm cell (cells may run
/// concurrently; outputs are partitioned per cell). A failing cell is
/// recorded and the run continues. Writes summary.csv, mean_curve.csv and
/// cells.csv under out_dir.
CompareResult cmd_compare(const CompareOptions& options, std::ostream& log);

}  // namespace veintrack::cli
