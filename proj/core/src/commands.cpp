#include "veintrack/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <mutex>
#include <numeric>
#include <ostream>
#include <semaphore>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "veintrack/pgm.hpp"

namespace veintrack::cli {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create directory: " + dir.string());
    }
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

void cmd_synth(const SynthOptions& options, std::ostream& log) {
    PhantomConfig cfg;
    if (!options.config_file.empty()) {
        cfg = load_phantom_config(options.config_file);
    }
    if (options.seed) {
        cfg.seed = *options.seed;
    }
    validate(cfg);

    ensure_dir(options.out_dir);
    ensure_dir(dataset::truth_dir(options.out_dir));
    ensure_dir(dataset::contours_dir(options.out_dir));

    for (int t = 0; t < cfg.frame_count; ++t) {
        write_pgm(options.out_dir / dataset::frame_name(t), phantom_frame(cfg, t));
        write_mask_pgm(dataset::truth_dir(options.out_dir) / dataset::mask_name(t),
                       truth_mask(cfg, t));
        write_contour_file(dataset::contours_dir(options.out_dir) / dataset::contour_name(t),
                           truth_contour(cfg, t));
    }
    save_phantom_config(options.out_dir / "phantom.cfg", cfg);
    log << "synth: wrote " << cfg.frame_count << " frames (" << cfg.width << "x" << cfg.height
        << ", seed " << cfg.seed << ") to " << options.out_dir.string() << "\n";
}

void cmd_track(const TrackOptions& options, std::ostream& log) {
    const int frame_count = dataset::count_frames(options.dataset_dir);

    fs::path init_path = options.init_contour;
    if (init_path.empty()) {
        init_path = dataset::contours_dir(options.dataset_dir) / dataset::contour_name(0);
    }
    if (!fs::exists(init_path)) {
        throw std::runtime_error("missing initial contour: " + init_path.string());
    }
    Contour contour = read_contour_file(init_path);
    contour.frame_index = 0;
    if (contour.point_count() < 3) {
        throw std::runtime_error("initial contour needs at least 3 points");
    }
    if (options.tracker.point_count != contour.point_count()) {
        throw std::runtime_error("initial contour has N=" + std::to_string(contour.point_count()) +
                                 " but --points is " + std::to_string(options.tracker.point_count));
    }

    ensure_dir(options.out_dir);
    std::ofstream csa_csv(options.out_dir / "csa.csv");
    if (!csa_csv) {
        throw std::runtime_error("cannot write csa.csv in " + options.out_dir.string());
    }
    csa_csv << "frame,csa_px2\n";

    Frame prev = read_pgm(options.dataset_dir / dataset::frame_name(0));
    write_contour_file(options.out_dir / dataset::contour_name(0), contour);
    csa_csv << 0 << "," << format_double(contour_area(contour)) << "\n";

    for (int t = 1; t < frame_count; ++t) {
        Frame next = read_pgm(options.dataset_dir / dataset::frame_name(t));
        contour = advance(contour, prev, next, options.tracker);
        write_contour_file(options.out_dir / dataset::contour_name(t), contour);
        csa_csv << t << "," << format_double(contour_area(contour)) << "\n";
        prev = std::move(next);
    }
    if (!csa_csv) {
        throw std::runtime_error("write failed for csa.csv");
    }
    log << "track: " << to_string(options.tracker.algorithm) << " over " << frame_count
        << " frames -> " << options.out_dir.string() << "\n";
}

EvalResult cmd_eval(const EvalOptions& options, std::ostream& log) {
    const int contour_count = dataset::count_numbered(options.contours_dir, dataset::contour_name);
    const int mask_count = dataset::count_numbered(options.truth_dir, dataset::mask_name);
    if (contour_count == 0) {
        throw std::runtime_error("no contour files in " + options.contours_dir.string());
    }
    if (contour_count != mask_count) {
        throw std::runtime_error("contour/mask count mismatch: " + std::to_string(contour_count) +
                                 " vs " + std::to_string(mask_count));
    }

    EvalResult result;
    result.series.failure_threshold = options.failure_threshold;
    for (int t = 0; t < contour_count; ++t) {
        const Mask truth = read_mask_pgm(options.truth_dir / dataset::mask_name(t));
        const Contour contour =
            read_contour_file(options.contours_dir / dataset::contour_name(t));
        const Mask tracked = contour_to_mask(contour, truth.width, truth.height);
        result.series.values.push_back(dice(tracked, truth));
        result.csa.push_back(contour_area(contour));
    }
    result.failure = detect_failure(result.series);

    if (options.out_csv.has_parent_path()) {
        ensure_dir(options.out_csv.parent_path());
    }
    std::ofstream csv(options.out_csv);
    if (!csv) {
        throw std::runtime_error("cannot write " + options.out_csv.string());
    }
    csv << "frame,dice,csa_px2\n";
    for (int t = 0; t < contour_count; ++t) {
        csv << t << "," << format_double(result.series.values[static_cast<std::size_t>(t)]) << ","
            << format_double(result.csa[static_cast<std::size_t>(t)]) << "\n";
    }
    if (!csv) {
        throw std::runtime_error("write failed for " + options.out_csv.string());
    }

    if (result.failure.failed) {
        log << "FAIL@" << result.failure.first_failing_frame << "\n";
    } else {
        log << "PASS\n";
    }
    return result;
}

namespace {

CompareCell run_cell(const CompareOptions& options, std::size_t dataset_index,
                     FlowAlgorithm algo) {
    const fs::path& ds = options.datasets[dataset_index];
    CompareCell cell;
    cell.dataset_index = dataset_index;
    cell.dataset_name = ds.filename().string();
    cell.algorithm = algo;

    char stem[32];
    std::snprintf(stem, sizeof(stem), "ds%03zu_%s", dataset_index,
                  std::string(to_string(algo)).c_str());
    const fs::path cell_dir = options.out_dir / "cells" / (cell.dataset_name + "_" + stem);

    try {
        TrackOptions track;
        track.dataset_dir = ds;
        track.out_dir = cell_dir;
        track.tracker = options.base;
        track.tracker.algorithm = algo;
        std::ostringstream sink;
        cmd_track(track, sink);

        EvalOptions eval;
        eval.contours_dir = cell_dir;
        eval.truth_dir = dataset::truth_dir(ds);
        eval.out_csv = cell_dir / "dice.csv";
        eval.failure_threshold = options.failure_threshold;
        EvalResult res = cmd_eval(eval, sink);

        cell.ok = true;
        cell.series = std::move(res.series);
        cell.mean_dice = std::accumulate(cell.series.values.begin(), cell.series.values.end(),
                                         0.0) /
                         static_cast<double>(cell.series.values.size());
        cell.min_dice = *std::min_element(cell.series.values.begin(), cell.series.values.end());
        cell.failure = res.failure;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

CompareResult cmd_compare(const CompareOptions& options, std::ostream& log) {
    if (options.datasets.empty() || options.algorithms.empty()) {
        throw std::invalid_argument("cmd_compare: need at least one dataset and one algorithm");
    }
    ensure_dir(options.out_dir);

    int parallel = options.max_parallel;
    if (parallel <= 0) {
        parallel = static_cast<int>(std::thread::hardware_concurrency());
        if (parallel < 1) parallel = 1;
    }
    std::counting_semaphore<> slots(parallel);

    std::vector<std::future<CompareCell>> futures;
    for (std::size_t di = 0; di < options.datasets.size(); ++di) {
        for (const FlowAlgorithm algo : options.algorithms) {
            futures.push_back(std::async(std::launch::async, [&options, di, algo, &slots] {
                slots.acquire();
                CompareCell cell = run_cell(options, di, algo);
                slots.release();
                return cell;
            }));
        }
    }

    CompareResult result;
    result.cells.reserve(futures.size());
    for (auto& f : futures) {
        result.cells.push_back(f.get());
    }

    for (const CompareCell& cell : result.cells) {
        if (cell.ok) {
            log << "cell " << cell.dataset_name << " " << to_string(cell.algorithm)
                << ": mean dice " << format_double(cell.mean_dice)
                << (cell.failure.failed
                        ? " FAIL@" + std::to_string(cell.failure.first_failing_frame)
                        : " PASS")
                << "\n";
        } else {
            log << "cell " << cell.dataset_name << " " << to_string(cell.algorithm)
                << ": error: " << cell.error << "\n";
        }
    }

    // per-algorithm aggregation over successful cells
    std::vector<std::vector<const CompareCell*>> by_algo(options.algorithms.size());
    for (const CompareCell& cell : result.cells) {
        for (std::size_t ai = 0; ai < options.algorithms.size(); ++ai) {
            if (options.algorithms[ai] == cell.algorithm && cell.ok) {
                by_algo[ai].push_back(&cell);
            }
        }
    }

    std::vector<std::vector<double>> curves(options.algorithms.size());
    for (std::size_t ai = 0; ai < options.algorithms.size(); ++ai) {
        AlgoSummary summary;
        summary.algorithm = options.algorithms[ai];
        summary.cells_ok = static_cast<int>(by_algo[ai].size());
        if (!by_algo[ai].empty()) {
            std::vector<DiceSeries> series;
            series.reserve(by_algo[ai].size());
            for (const CompareCell* cell : by_algo[ai]) {
                series.push_back(cell->series);
                summary.mean_dice += cell->mean_dice;
                if (!cell->failure.failed) ++summary.success_count;
            }
            summary.mean_dice /= static_cast<double>(by_algo[ai].size());
            curves[ai] = aggregate(series).mean_curve;
        }
        result.summary.push_back(summary);
    }

    {
        std::ofstream csv(options.out_dir / "summary.csv");
        csv << "algo,datasets,cells_ok,mean_dice,success_count\n";
        for (const AlgoSummary& s : result.summary) {
            csv << to_string(s.algorithm) << "," << options.datasets.size() << "," << s.cells_ok
                << "," << (s.cells_ok > 0 ? format_double(s.mean_dice) : "nan") << ","
                << s.success_count << "\n";
        }
        if (!csv) throw std::runtime_error("write failed for summary.csv");
    }
    {
        std::ofstream csv(options.out_dir / "cells.csv");
        csv << "dataset,algo,status,mean_dice,min_dice,first_fail_frame\n";
        for (const CompareCell& cell : result.cells) {
            csv << cell.dataset_name << "," << to_string(cell.algorithm) << ","
                << (cell.ok ? "ok" : "error") << ","
                << (cell.ok ? format_double(cell.mean_dice) : "nan") << ","
                << (cell.ok ? format_double(cell.min_dice) : "nan") << ","
                << (cell.ok && cell.failure.failed ? std::to_string(cell.failure.first_failing_frame)
                                                   : "-")
                << "\n";
        }
        if (!csv) throw std::runtime_error("write failed for cells.csv");
    }
    {
        std::size_t rows = 0;
        bool any = false;
        for (const auto& curve : curves) {
            if (curve.empty()) continue;
            rows = any ? std::min(rows, curve.size()) : curve.size();
            any = true;
        }
        std::ofstream csv(options.out_dir / "mean_curve.csv");
        csv << "frame";
        for (const FlowAlgorithm algo : options.algorithms) {
            csv << "," << to_string(algo);
        }
        csv << "\n";
        for (std::size_t t = 0; t < rows; ++t) {
            csv << t;
            for (std::size_t ai = 0; ai < options.algorithms.size(); ++ai) {
                csv << "," << (curves[ai].empty() ? "nan" : format_double(curves[ai][t]));
            }
            csv << "\n";
        }
        if (!csv) throw std::runtime_error("write failed for mean_curve.csv");
    }

    return result;
}

}  // namespace veintrack::cli
