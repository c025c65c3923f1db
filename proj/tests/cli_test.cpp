#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "support/synthetic.hpp"
#include "veintrack/commands.hpp"
#include "veintrack/pgm.hpp"

using namespace veintrack;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& stem) {
        path = fs::temp_directory_path() / ("veintrack_" + stem);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

PhantomConfig small_phantom(int frames = 6) {
    PhantomConfig cfg;
    cfg.width = 96;
    cfg.height = 96;
    cfg.frame_count = frames;
    cfg.center_x = 48;
    cfg.center_y = 48;
    cfg.semi_axis_a = 20;
    cfg.semi_axis_b = 14;
    cfg.pulsation_amplitude = 0.06;
    cfg.speckle_sigma = 0.1;
    cfg.seed = 5;
    return cfg;
}

fs::path write_config(const fs::path& dir, const PhantomConfig& cfg) {
    const fs::path path = dir / "phantom_in.cfg";
    save_phantom_config(path, cfg);
    return path;
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

double autocorrelation_peak_lag(const std::vector<double>& series) {
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) /
                        static_cast<double>(series.size());
    std::vector<double> centered(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) centered[i] = series[i] - mean;
    double best = -1e300;
    std::size_t best_lag = 2;
    for (std::size_t lag = 2; lag <= series.size() / 2; ++lag) {
        double acc = 0.0;
        for (std::size_t i = 0; i + lag < centered.size(); ++i) {
            acc += centered[i] * centered[i + lag];
        }
        acc /= static_cast<double>(centered.size() - lag);
        if (acc > best) {
            best = acc;
            best_lag = lag;
        }
    }
    return static_cast<double>(best_lag);
}

}  // namespace

TEST_CASE("PGM round trip is byte-stable") {
    TempDir tmp("pgm");
    std::mt19937_64 rng(1);
    const Frame f = synthetic::random_frame(rng, 33, 21);
    write_pgm(tmp.path / "a.pgm", f);
    const Frame r = read_pgm(tmp.path / "a.pgm");
    REQUIRE(r.same_dims(f));
    write_pgm(tmp.path / "b.pgm", r);
    CHECK(slurp(tmp.path / "a.pgm") == slurp(tmp.path / "b.pgm"));  // quantization is idempotent

    Mask m(17, 9);
    m.set(3, 3, true);
    m.set(16, 8, true);
    write_mask_pgm(tmp.path / "m.pgm", m);
    CHECK(read_mask_pgm(tmp.path / "m.pgm") == m);
}

TEST_CASE("phantom config round-trips through the key=value format") {
    TempDir tmp("cfg");
    PhantomConfig cfg = small_phantom();
    cfg.shadow = ShadowParams{-2.0, 1.1, 0.8};
    cfg.drift_x = 0.25;
    const fs::path path = write_config(tmp.path, cfg);
    const PhantomConfig r = load_phantom_config(path);
    CHECK(r.width == cfg.width);
    CHECK(r.frame_count == cfg.frame_count);
    CHECK(r.semi_axis_a == cfg.semi_axis_a);
    CHECK(r.drift_x == cfg.drift_x);
    CHECK(r.seed == cfg.seed);
    REQUIRE(r.shadow.has_value());
    CHECK(r.shadow->attenuation == cfg.shadow->attenuation);
    CHECK(r.shadow->angle_start == cfg.shadow->angle_start);
}

TEST_CASE("config parser rejects junk") {
    TempDir tmp("cfgbad");
    {
        std::ofstream out(tmp.path / "bad.cfg");
        out << "width = 64\nnot_a_key = 3\n";
    }
    CHECK_THROWS_AS(load_phantom_config(tmp.path / "bad.cfg"), std::runtime_error);
    {
        std::ofstream out(tmp.path / "bad2.cfg");
        out << "width 64\n";
    }
    CHECK_THROWS_AS(load_phantom_config(tmp.path / "bad2.cfg"), std::runtime_error);
    CHECK_THROWS_AS(load_phantom_config(tmp.path / "missing.cfg"), std::runtime_error);
}

TEST_CASE("cmd_synth writes the dataset layout") {
    TempDir tmp("synth");
    const PhantomConfig cfg = small_phantom(2);
    cli::SynthOptions options;
    options.config_file = write_config(tmp.path, cfg);
    options.out_dir = tmp.path / "ds";
    std::ostringstream log;
    cli::cmd_synth(options, log);

    CHECK(fs::exists(options.out_dir / "frame_00000.pgm"));
    CHECK(fs::exists(options.out_dir / "frame_00001.pgm"));
    CHECK_FALSE(fs::exists(options.out_dir / "frame_00002.pgm"));
    CHECK(fs::exists(options.out_dir / "truth" / "mask_00001.pgm"));
    CHECK(fs::exists(options.out_dir / "contours" / "contour_00001.txt"));
    CHECK(fs::exists(options.out_dir / "phantom.cfg"));
    CHECK(dataset::count_frames(options.out_dir) == 2);

    SUBCASE("same seed reruns byte-identically") {
        cli::SynthOptions again = options;
        again.out_dir = tmp.path / "ds2";
        cli::cmd_synth(again, log);
        for (int t = 0; t < 2; ++t) {
            CHECK(slurp(options.out_dir / dataset::frame_name(t)) ==
                  slurp(again.out_dir / dataset::frame_name(t)));
        }
    }

    SUBCASE("seed override changes the frames") {
        cli::SynthOptions other = options;
        other.out_dir = tmp.path / "ds3";
        other.seed = cfg.seed + 1;
        cli::cmd_synth(other, log);
        CHECK(slurp(options.out_dir / dataset::frame_name(0)) !=
              slurp(other.out_dir / dataset::frame_name(0)));
    }
}

TEST_CASE("cmd_track produces contours and a CSA series") {
    TempDir tmp("track");
    PhantomConfig cfg = small_phantom(8);
    cfg.pulsation_amplitude = 0.0;  // static vessel: CSA must stay flat
    cli::SynthOptions synth;
    synth.config_file = write_config(tmp.path, cfg);
    synth.out_dir = tmp.path / "ds";
    std::ostringstream log;
    cli::cmd_synth(synth, log);

    cli::TrackOptions track;
    track.dataset_dir = synth.out_dir;
    track.out_dir = tmp.path / "out";
    track.tracker.algorithm = FlowAlgorithm::lk;
    cli::cmd_track(track, log);

    CHECK(dataset::count_numbered(track.out_dir, dataset::contour_name) == 8);

    // frame 0 contour is the init verbatim
    const Contour init = read_contour_file(dataset::contours_dir(synth.out_dir) /
                                           dataset::contour_name(0));
    const Contour first = read_contour_file(track.out_dir / dataset::contour_name(0));
    CHECK(first.points == init.points);

    // CSA stays within 1% on the static phantom
    std::ifstream csa(track.out_dir / "csa.csv");
    std::string header;
    std::getline(csa, header);
    CHECK(header == "frame,csa_px2");
    std::vector<double> areas;
    std::string line;
    while (std::getline(csa, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        areas.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(areas.size() == 8);
    for (const double a : areas) {
        CHECK(std::abs(a - areas.front()) < 0.01 * areas.front());
    }

    SUBCASE("an explicit --init file is honored") {
        Contour init = read_contour_file(dataset::contours_dir(synth.out_dir) /
                                         dataset::contour_name(0));
        for (auto& p : init.points) p.x += 0.5;
        const fs::path custom = tmp.path / "custom_init.txt";
        write_contour_file(custom, init);

        cli::TrackOptions with_init = track;
        with_init.out_dir = tmp.path / "out_custom";
        with_init.init_contour = custom;
        cli::cmd_track(with_init, log);
        const Contour first = read_contour_file(with_init.out_dir / dataset::contour_name(0));
        CHECK(first.points == init.points);
    }

    SUBCASE("missing init contour is an error") {
        cli::TrackOptions bad = track;
        bad.init_contour = tmp.path / "nope.txt";
        CHECK_THROWS_AS(cli::cmd_track(bad, log), std::runtime_error);
    }
    SUBCASE("point-count mismatch is an error") {
        cli::TrackOptions bad = track;
        bad.out_dir = tmp.path / "out_bad";
        bad.tracker.point_count = 16;  // dataset contours carry 32
        CHECK_THROWS_AS(cli::cmd_track(bad, log), std::runtime_error);
    }
    SUBCASE("empty dataset directory is an error") {
        cli::TrackOptions bad = track;
        bad.dataset_dir = tmp.path / "empty";
        fs::create_directories(bad.dataset_dir);
        CHECK_THROWS_AS(cli::cmd_track(bad, log), std::runtime_error);
    }
}

TEST_CASE("tracked CSA oscillates at the pulsation period") {
    TempDir tmp("period");
    PhantomConfig cfg = small_phantom(90);
    cfg.pulsation_amplitude = 0.1;
    cfg.pulsation_hz = 1.0;
    cfg.fps = 30.0;  // period of 30 frames
    cli::SynthOptions synth;
    synth.config_file = write_config(tmp.path, cfg);
    synth.out_dir = tmp.path / "ds";
    std::ostringstream log;
    cli::cmd_synth(synth, log);

    cli::TrackOptions track;
    track.dataset_dir = synth.out_dir;
    track.out_dir = tmp.path / "out";
    track.tracker.algorithm = FlowAlgorithm::lk;
    cli::cmd_track(track, log);

    std::ifstream csa(track.out_dir / "csa.csv");
    std::string line;
    std::getline(csa, line);  // header
    std::vector<double> areas;
    while (std::getline(csa, line)) {
        areas.push_back(std::stod(line.substr(line.find(',') + 1)));
    }
    REQUIRE(areas.size() == 90);
    CHECK(std::abs(autocorrelation_peak_lag(areas) - 30.0) <= 1.0);
}

TEST_CASE("cmd_eval scores tracked contours and reports the verdict") {
    TempDir tmp("eval");
    const PhantomConfig cfg = small_phantom(5);
    cli::SynthOptions synth;
    synth.config_file = write_config(tmp.path, cfg);
    synth.out_dir = tmp.path / "ds";
    std::ostringstream log;
    cli::cmd_synth(synth, log);

    SUBCASE("truth contours against truth masks pass with high agreement") {
        cli::EvalOptions eval;
        eval.contours_dir = dataset::contours_dir(synth.out_dir);
        eval.truth_dir = dataset::truth_dir(synth.out_dir);
        eval.out_csv = tmp.path / "dice.csv";
        std::ostringstream verdict;
        const cli::EvalResult result = cli::cmd_eval(eval, verdict);
        REQUIRE(result.series.values.size() == 5);
        for (const double v : result.series.values) {
            CHECK(v >= 0.98);
        }
        CHECK_FALSE(result.failure.failed);
        CHECK(verdict.str() == "PASS\n");

        std::ifstream csv(eval.out_csv);
        std::string header;
        std::getline(csv, header);
        CHECK(header == "frame,dice,csa_px2");
    }

    SUBCASE("an offset contour fails and names the frame") {
        // shift every tracked contour by 30 px: near-disjoint from a ~20 px vessel
        const fs::path shifted = tmp.path / "shifted";
        fs::create_directories(shifted);
        for (int t = 0; t < 5; ++t) {
            Contour c = read_contour_file(dataset::contours_dir(synth.out_dir) /
                                          dataset::contour_name(t));
            for (auto& p : c.points) p.x += 30.0;
            write_contour_file(shifted / dataset::contour_name(t), c);
        }
        cli::EvalOptions eval;
        eval.contours_dir = shifted;
        eval.truth_dir = dataset::truth_dir(synth.out_dir);
        eval.out_csv = tmp.path / "dice_shifted.csv";
        std::ostringstream verdict;
        const cli::EvalResult result = cli::cmd_eval(eval, verdict);
        CHECK(result.failure.failed);
        CHECK(result.failure.first_failing_frame == 0);
        CHECK(verdict.str() == "FAIL@0\n");
        for (const double v : result.series.values) CHECK(v < 0.7);
    }

    SUBCASE("an empty contours directory is an error") {
        cli::EvalOptions eval;
        eval.contours_dir = tmp.path / "none";
        fs::create_directories(eval.contours_dir);
        eval.truth_dir = dataset::truth_dir(synth.out_dir);
        eval.out_csv = tmp.path / "x.csv";
        std::ostringstream verdict;
        CHECK_THROWS_AS(cli::cmd_eval(eval, verdict), std::runtime_error);
    }
}

TEST_CASE("cmd_compare emits one summary row per algorithm and keeps going on errors") {
    TempDir tmp("compare");
    const PhantomConfig cfg = small_phantom(5);
    cli::SynthOptions synth;
    synth.config_file = write_config(tmp.path, cfg);
    synth.out_dir = tmp.path / "ds";
    std::ostringstream log;
    cli::cmd_synth(synth, log);

    cli::CompareOptions compare;
    compare.datasets = {synth.out_dir};
    compare.algorithms = {FlowAlgorithm::lk, FlowAlgorithm::hs, FlowAlgorithm::fb};
    compare.out_dir = tmp.path / "cmp";
    const cli::CompareResult result = cli::cmd_compare(compare, log);

    REQUIRE(result.summary.size() == 3);
    for (const auto& s : result.summary) {
        CHECK(s.cells_ok == 1);
        CHECK(s.mean_dice > 0.9);
    }
    CHECK(fs::exists(compare.out_dir / "summary.csv"));
    CHECK(fs::exists(compare.out_dir / "mean_curve.csv"));
    CHECK(fs::exists(compare.out_dir / "cells.csv"));

    SUBCASE("the same dataset listed twice yields identical metric rows") {
        cli::CompareOptions twice = compare;
        twice.datasets = {synth.out_dir, synth.out_dir};
        twice.out_dir = tmp.path / "cmp2";
        twice.algorithms = {FlowAlgorithm::lk};
        const cli::CompareResult r = cli::cmd_compare(twice, log);
        REQUIRE(r.cells.size() == 2);
        CHECK(r.cells[0].mean_dice == r.cells[1].mean_dice);
        CHECK(r.cells[0].min_dice == r.cells[1].min_dice);
    }

    SUBCASE("a dataset without truth is recorded as a failed cell, run continues") {
        const fs::path broken = tmp.path / "broken";
        fs::create_directories(broken);
        fs::copy(synth.out_dir / "frame_00000.pgm", broken / "frame_00000.pgm");
        fs::copy(synth.out_dir / "frame_00001.pgm", broken / "frame_00001.pgm");

        cli::CompareOptions mixed = compare;
        mixed.datasets = {synth.out_dir, broken};
        mixed.algorithms = {FlowAlgorithm::lk};
        mixed.out_dir = tmp.path / "cmp3";
        const cli::CompareResult r = cli::cmd_compare(mixed, log);
        REQUIRE(r.cells.size() == 2);
        CHECK(r.cells[0].ok);
        CHECK_FALSE(r.cells[1].ok);
        CHECK(r.summary[0].cells_ok == 1);
    }
}
