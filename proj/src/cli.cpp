// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "symgen/detail/text_scan.hpp"
#include "symgen/metrics.hpp"
#include "symgen/pipeline.hpp"
#include "symgen/xyzio.hpp"

namespace symgen {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    std::string out;
    detail::format_double(out, v);
    return out;
}

int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
    std::string tier = "easy";
    uint64_t size = 10000;
    uint64_t seed = 0;
    std::string out;
    std::string gt_mode = "full";
    std::string mode = "balanced";
    int threads = 0;
    uint32_t xz_preset = 1;
    double pr_conic = 0.5;
    double pr_translate = 0.8;
    std::string from_manifest;
    std::string config_file;
};

/// key = value lines, '#' comments. Mirrors the generate flags; explicit
/// flags (and SYMGEN_OUT for the output directory) take precedence.
int apply_config_file(GenerateArgs& a, const CLI::App& cmd) {
    std::string text;
    try {
        text = read_text_file(a.config_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: " << a.config_file << ":" << line_no << ": expected key=value\n";
            return 2;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto given = [&cmd](const char* flag) { return cmd.count(flag) > 0; };
        try {
            if (key == "tier") {
                if (!given("--tier")) a.tier = value;
            } else if (key == "size") {
                if (!given("--size")) a.size = std::stoull(value);
            } else if (key == "seed") {
                if (!given("--seed")) a.seed = std::stoull(value);
            } else if (key == "out") {
                if (!given("--out")) a.out = value;
            } else if (key == "gt-mode") {
                if (!given("--gt-mode")) a.gt_mode = value;
            } else if (key == "mode") {
                if (!given("--mode")) a.mode = value;
            } else if (key == "threads") {
                if (!given("--threads")) a.threads = std::stoi(value);
            } else if (key == "xz-preset") {
                if (!given("--xz-preset")) a.xz_preset = static_cast<uint32_t>(std::stoul(value));
            } else if (key == "pr-conic") {
                if (!given("--pr-conic")) a.pr_conic = std::stod(value);
            } else if (key == "pr-translate") {
                if (!given("--pr-translate")) a.pr_translate = std::stod(value);
            } else {
                std::cerr << "error: " << a.config_file << ":" << line_no << ": unknown key '"
                          << key << "'\n";
                return 2;
            }
        } catch (const std::exception&) {
            std::cerr << "error: " << a.config_file << ":" << line_no << ": bad value for '"
                      << key << "'\n";
            return 2;
        }
    }
    return 0;
}

int cmd_generate(const GenerateArgs& a) {
    DatasetConfig cfg;
    if (!a.from_manifest.empty()) {
        cfg = config_from_manifest(a.from_manifest);
    } else {
        auto tier = tier_from_name(a.tier);
        if (!tier) {
            std::cerr << "error: unknown tier '" << a.tier << "'\n";
            return 2;
        }
        cfg = DatasetConfig::for_tier(*tier, a.size, a.seed);
        cfg.gt_mode = a.gt_mode == "minimal" ? GtMode::Minimal : GtMode::Full;
        cfg.perturbation_mode = a.mode == "probabilistic" ? PerturbationMode::Probabilistic
                                                          : PerturbationMode::Balanced;
        cfg.xz_preset = a.xz_preset;
        cfg.pr_conic = a.pr_conic;
        cfg.pr_translate = a.pr_translate;
    }
    if (!a.out.empty()) cfg.output_dir = a.out;
    if (cfg.output_dir.empty()) {
        std::cerr << "error: no output directory (use --out or SYMGEN_OUT)\n";
        return 2;
    }

    DatasetSummary summary;
    try {
        summary = generate_dataset(cfg, a.threads);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& w : summary.warnings) std::cerr << "warning: " << w << "\n";
    for (const std::string& e : summary.errors) std::cerr << "error: " << e << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "generated %llu/%llu records in %.2f s (%.1f records/s)\n",
                  static_cast<unsigned long long>(summary.records_written),
                  static_cast<unsigned long long>(cfg.total_size), summary.seconds,
                  static_cast<double>(summary.records_written) / summary.seconds);
    std::cout << line << "manifest: " << summary.manifest_path.string() << "\n";
    return summary.errors.empty() ? 0 : 1;
}

// ---- inspect ---------------------------------------------------------------

int cmd_inspect(const std::string& file) {
    PointCloud cloud = decode_xyz(read_binary_file(file));
    Bbox box = bounding_box(cloud);
    std::cout << "file: " << file << "\n"
              << "points: " << cloud.size() << "\n"
              << "bbox min: " << fmt(box.lo.x) << " " << fmt(box.lo.y) << " " << fmt(box.lo.z)
              << "\n"
              << "bbox max: " << fmt(box.hi.x) << " " << fmt(box.hi.y) << " " << fmt(box.hi.z)
              << "\n"
              << "bbox diagonal: " << fmt(box.diagonal()) << "\n";

    fs::path gt_path = file;
    gt_path.replace_extension("");  // drop .xz
    gt_path += "-sym.txt";
    if (fs::exists(gt_path)) {
        SymmetrySet gt = parse_gt(read_text_file(gt_path));
        std::cout << "ground truth: " << gt.size() << " symmetries (" << gt.planes.size()
                  << " planes, " << gt.axes.size() << " axes)\n";
        for (const AxisSymmetry& a : gt.axes) {
            std::cout << "  axis period: ";
            if (a.continuous())
                std::cout << "continuous\n";
            else
                std::cout << fmt(a.period) << " rad\n";
        }
    } else {
        std::cout << "ground truth: none (" << gt_path.filename().string() << " not found)\n";
    }
    return 0;
}

// ---- validate-gt ----------------------------------------------------------

int cmd_validate_gt(const std::string& dir, int threads) {
    DatasetConfig cfg = config_from_manifest(fs::path(dir) / "manifest.json");
    cfg.output_dir = dir;

    nlohmann::json manifest = nlohmann::json::parse(read_text_file(fs::path(dir) / "manifest.json"));
    const auto& records = manifest.at("records");

    std::atomic<size_t> next{0};
    std::atomic<int> failures{0};
    std::vector<double> max_residual_per_worker;
    std::mutex out_mutex;

    int worker_count = threads > 0 ? threads : default_threads();
    worker_count = std::max(1, std::min<int>(worker_count, static_cast<int>(records.size())));
    max_residual_per_worker.assign(worker_count, 0.0);

    auto work = [&](int wid) {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            const auto& rj = records[i];
            uint64_t id = rj.at("id").get<uint64_t>();
            try {
                ShapeRecord rec = generate_record(cfg, id, /*keep_clean=*/true);
                SymmetrySet on_disk =
                    parse_gt(read_text_file(fs::path(dir) / rj.at("gt_file").get<std::string>()));
                if (on_disk.size() != rec.gt.size())
                    throw std::runtime_error("GT size differs from regenerated record");
                Rng rng(cfg.master_seed, id, RngStream::Validate);
                std::vector<double> residuals =
                    validate_symmetry_set(*rec.clean_cloud, on_disk, rng);
                double worst = *std::max_element(residuals.begin(), residuals.end());
                max_residual_per_worker[wid] = std::max(max_residual_per_worker[wid], worst);
                if (worst >= kGtResidualThreshold) {
                    ++failures;
                    std::lock_guard<std::mutex> lock(out_mutex);
                    std::cerr << "FAIL " << rj.at("gt_file").get<std::string>() << ": residual "
                              << fmt(worst) << " >= " << fmt(kGtResidualThreshold) << "\n";
                }
            } catch (const std::exception& e) {
                ++failures;
                std::lock_guard<std::mutex> lock(out_mutex);
                std::cerr << "FAIL record " << id << ": " << e.what() << "\n";
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 0; w < worker_count; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();

    double max_residual =
        *std::max_element(max_residual_per_worker.begin(), max_residual_per_worker.end());
    std::cout << "validated " << records.size() << " records, max residual " << fmt(max_residual)
              << " (threshold " << fmt(kGtResidualThreshold) << ")\n";
    if (failures.load() > 0) {
        std::cout << failures.load() << " failures\n";
        return 1;
    }
    return 0;
}

// ---- evaluate ---------------------------------------------------------------

struct ParsedName {
    std::string id;
    std::string class_name;
};

/// "008706-revolution-undersampling+uniform-sym.txt" -> id and class; the
/// perturbation tag is recognized as a suffix since class names also
/// contain dashes.
std::optional<ParsedName> parse_gt_filename(const std::string& filename) {
    const std::string suffix = "-sym.txt";
    if (filename.size() <= suffix.size() ||
        filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) != 0)
        return std::nullopt;
    std::string stem = filename.substr(0, filename.size() - suffix.size());
    size_t dash = stem.find('-');
    if (dash == std::string::npos) return std::nullopt;
    ParsedName out;
    out.id = stem.substr(0, dash);
    std::string rest = stem.substr(dash + 1);
    static const char* tags[] = {"undersampling+uniform", "undersampling+gaussian",
                                 "undersampling", "gaussian", "uniform", "clean"};
    for (const char* tag : tags) {
        std::string t = std::string("-") + tag;
        if (rest.size() > t.size() && rest.compare(rest.size() - t.size(), t.size(), t) == 0) {
            out.class_name = rest.substr(0, rest.size() - t.size());
            return out;
        }
    }
    return std::nullopt;
}

std::map<std::string, fs::path> collect_files(const fs::path& root, const std::string& suffix) {
    std::map<std::string, fs::path> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            out[name] = entry.path();
    }
    return out;
}

struct EvaluateArgs {
    std::string gt_dir;
    std::string pred_dir;
    double angle_thresh_deg = 1.0;
    double dist_thresh = 0.01;
    double period_tol = 0.05;
    std::string phc_mode = "highest";
    std::string json_out;
};

int cmd_evaluate(const EvaluateArgs& a) {
    MatchThresholds th;
    th.max_normal_angle = deg_to_rad(a.angle_thresh_deg);
    th.max_point_distance = a.dist_thresh;
    th.period_rel_tol = a.period_tol;
    PhcMode mode = a.phc_mode == "any" ? PhcMode::Any : PhcMode::Highest;

    std::map<std::string, fs::path> gt_files = collect_files(a.gt_dir, "-sym.txt");
    std::map<std::string, fs::path> pred_files = collect_files(a.pred_dir, "-sym.txt");

    std::vector<ShapeForEval> shapes;
    for (const auto& [name, gt_path] : gt_files) {
        auto parsed = parse_gt_filename(name);
        if (!parsed) continue;
        ShapeForEval shape;
        shape.id = parsed->id;
        shape.class_name = parsed->class_name;
        shape.gt = parse_gt(read_text_file(gt_path));

        fs::path cloud_path = gt_path.parent_path() /
                              (name.substr(0, name.size() - std::string("-sym.txt").size()) + ".xz");
        if (fs::exists(cloud_path)) {
            PointCloud cloud = decode_xyz(read_binary_file(cloud_path));
            shape.bbox_diagonal = bounding_box(cloud).diagonal();
        } else {
            shape.bbox_diagonal = 1.0;
        }

        auto pred_it = pred_files.find(name);
        if (pred_it != pred_files.end()) {
            shape.preds = parse_predictions(read_text_file(pred_it->second));
            shape.has_prediction = true;
        }
        shapes.push_back(std::move(shape));
    }
    if (shapes.empty()) {
        std::cerr << "error: no ground-truth files under " << a.gt_dir << "\n";
        return 2;
    }

    EvalReport report = evaluate(shapes, th, mode);
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";

    char line[128];
    std::snprintf(line, sizeof line, "mAP %.3f\nPHC %.3f\n", report.map, report.phc);
    std::cout << line;
    std::cout << "shapes " << report.shapes.size() << "\n"
              << "angle threshold " << fmt(a.angle_thresh_deg) << " deg\n"
              << "distance threshold " << fmt(a.dist_thresh) << " x bbox diagonal\n"
              << "period tolerance " << fmt(a.period_tol) << "\n"
              << "phc mode " << (mode == PhcMode::Any ? "any" : "highest") << "\n";
    for (const auto& [cls, value] : report.per_class_map) {
        std::snprintf(line, sizeof line, "class %-18s mAP %.3f  PHC %.3f\n", cls.c_str(), value,
                      report.per_class_phc.at(cls));
        std::cout << line;
    }

    if (!a.json_out.empty()) {
        nlohmann::json j;
        j["map"] = report.map;
        j["phc"] = report.phc;
        j["shapes"] = report.shapes.size();
        j["thresholds"] = {{"angle_deg", a.angle_thresh_deg},
                           {"distance_frac", a.dist_thresh},
                           {"period_rel_tol", a.period_tol}};
        j["phc_mode"] = mode == PhcMode::Any ? "any" : "highest";
        j["per_class_map"] = report.per_class_map;
        j["per_class_phc"] = report.per_class_phc;
        j["warnings"] = report.warnings;
        write_file(fs::path(a.json_out), j.dump(2) + "\n");
    }
    return 0;
}

// ---- export -----------------------------------------------------------------

int cmd_export(const std::string& file, const std::string& format, std::string out) {
    if (format != "ply") {
        std::cerr << "error: unsupported export format '" << format << "'\n";
        return 2;
    }
    PointCloud cloud = decode_xyz(read_binary_file(file));
    if (out.empty()) {
        fs::path p = file;
        p.replace_extension(".ply");
        out = p.string();
    }
    std::string text;
    text.reserve(cloud.size() * 24 + 128);
    text += "ply\nformat ascii 1.0\nelement vertex " + std::to_string(cloud.size()) +
            "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
    for (const Vec3& p : cloud) {
        detail::format_double(text, p.x);
        text.push_back(' ');
        detail::format_double(text, p.y);
        text.push_back(' ');
        detail::format_double(text, p.z);
        text.push_back('\n');
    }
    write_file(fs::path(out), text);
    std::cout << "wrote " << out << " (" << cloud.size() << " vertices)\n";
    return 0;
}

// ---- stats -------------------------------------------------------------------

int cmd_stats(const std::string& dir) {
    std::map<std::string, uint64_t> by_class, by_perturbation, by_split;
    uint64_t total = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".xz") continue;
        std::string name = entry.path().filename().string();
        auto parsed = parse_gt_filename(name.substr(0, name.size() - 3) + "-sym.txt");
        if (!parsed) continue;
        ++total;
        ++by_class[parsed->class_name];
        fs::path rel = fs::relative(entry.path(), dir);
        // {tier}/{split}/{class}/file
        auto it = rel.begin();
        if (std::distance(rel.begin(), rel.end()) >= 3) ++it, ++by_split[it->string()];
        std::string stem = name.substr(0, name.size() - 3);
        size_t class_pos = stem.find(parsed->class_name);
        ++by_perturbation[stem.substr(class_pos + parsed->class_name.size() + 1)];
    }
    std::cout << "total " << total << "\n";
    std::cout << "by class:\n";
    for (const auto& [k, v] : by_class) std::cout << "  " << k << " " << v << "\n";
    std::cout << "by perturbation:\n";
    for (const auto& [k, v] : by_perturbation) std::cout << "  " << k << " " << v << "\n";
    std::cout << "by split:\n";
    for (const auto& [k, v] : by_split) std::cout << "  " << k << " " << v << "\n";
    return 0;
}

// ---- bench --------------------------------------------------------------------

double bench_rate(const DatasetConfig& cfg, uint64_t records, int threads) {
    std::atomic<uint64_t> next{0};
    auto start = std::chrono::steady_clock::now();
    auto work = [&]() {
        for (;;) {
            uint64_t id = next.fetch_add(1);
            if (id >= records) return;
            ShapeRecord rec = generate_record(cfg, id);
            volatile double sink = rec.cloud.front().x;  // keep the record alive
            (void)sink;
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return static_cast<double>(records) / seconds;
}

int cmd_bench(const std::string& tier_str, uint64_t records, int threads) {
    auto tier = tier_from_name(tier_str);
    if (!tier) {
        std::cerr << "error: unknown tier '" << tier_str << "'\n";
        return 2;
    }
    DatasetConfig cfg = DatasetConfig::for_tier(*tier, records, 7);
    int max_threads = threads > 0 ? threads : default_threads();

    double single = bench_rate(cfg, records, 1);
    std::printf("1 thread: %.0f records/s\n", single);
    if (max_threads > 1) {
        double multi = bench_rate(cfg, records, max_threads);
        std::printf("%d threads: %.0f records/s (speedup %.2fx)\n", max_threads, multi,
                    multi / single);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"symgen: symmetric point-cloud dataset generator and evaluator"};
    app.require_subcommand(1);
    std::function<int()> action;

    // generate
    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "generate a dataset");
    generate->add_option("--config", gen.config_file,
                         "key=value file mirroring these flags; flags win");
    generate->add_option("--tier", gen.tier, "easy|intermediate-1|intermediate-2|hard|ssl");
    generate->add_option("--size", gen.size, "number of records");
    generate->add_option("--seed", gen.seed, "master seed");
    generate->add_option("--out", gen.out, "output directory")->envname("SYMGEN_OUT");
    generate->add_option("--gt-mode", gen.gt_mode, "full|minimal")
        ->check(CLI::IsMember({"full", "minimal"}));
    generate->add_option("--mode", gen.mode, "balanced|probabilistic")
        ->check(CLI::IsMember({"balanced", "probabilistic"}));
    generate->add_option("--threads", gen.threads, "worker threads (default: all cores)");
    generate->add_option("--xz-preset", gen.xz_preset, "xz compression preset 0-9")
        ->check(CLI::Range(0u, 9u));
    generate->add_option("--pr-conic", gen.pr_conic, "conical extrusion probability");
    generate->add_option("--pr-translate", gen.pr_translate, "translation probability");
    generate->add_option("--from-manifest", gen.from_manifest,
                         "regenerate from an existing manifest");
    generate->callback([&, generate]() {
        action = [&, generate]() {
            if (!gen.config_file.empty()) {
                int rc = apply_config_file(gen, *generate);
                if (rc != 0) return rc;
            }
            return cmd_generate(gen);
        };
    });

    // inspect
    std::string inspect_file;
    CLI::App* inspect = app.add_subcommand("inspect", "print cloud and GT summary");
    inspect->add_option("file", inspect_file, "xz cloud file")->required();
    inspect->callback([&]() { action = [&]() { return cmd_inspect(inspect_file); }; });

    // validate-gt
    std::string validate_dir;
    int validate_threads = 0;
    CLI::App* validate = app.add_subcommand("validate-gt", "re-validate GT against regeneration");
    validate->add_option("dir", validate_dir, "dataset directory with manifest.json")->required();
    validate->add_option("--threads", validate_threads, "worker threads");
    validate->callback(
        [&]() { action = [&]() { return cmd_validate_gt(validate_dir, validate_threads); }; });

    // evaluate
    EvaluateArgs ev;
    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score predictions against GT");
    evaluate_cmd->add_option("--gt", ev.gt_dir, "ground-truth directory")->required();
    evaluate_cmd->add_option("--pred", ev.pred_dir, "prediction directory")->required();
    evaluate_cmd->add_option("--angle-thresh", ev.angle_thresh_deg, "max normal angle, degrees");
    evaluate_cmd->add_option("--dist-thresh", ev.dist_thresh,
                             "max point distance, fraction of bbox diagonal");
    evaluate_cmd->add_option("--period-tol", ev.period_tol, "relative period tolerance");
    evaluate_cmd->add_option("--phc-mode", ev.phc_mode, "highest|any")
        ->check(CLI::IsMember({"highest", "any"}));
    evaluate_cmd->add_option("--json", ev.json_out, "also write the report as JSON");
    evaluate_cmd->callback([&]() { action = [&]() { return cmd_evaluate(ev); }; });

    // export
    std::string export_file, export_format = "ply", export_out;
    CLI::App* export_cmd = app.add_subcommand("export", "convert a cloud for viewers");
    export_cmd->add_option("file", export_file, "xz cloud file")->required();
    export_cmd->add_option("--format", export_format, "output format (ply)");
    export_cmd->add_option("--out", export_out, "output path");
    export_cmd->callback(
        [&]() { action = [&]() { return cmd_export(export_file, export_format, export_out); }; });

    // stats
    std::string stats_dir;
    CLI::App* stats = app.add_subcommand("stats", "class/perturbation/split histograms");
    stats->add_option("dir", stats_dir, "dataset directory")->required();
    stats->callback([&]() { action = [&]() { return cmd_stats(stats_dir); }; });

    // bench
    std::string bench_tier = "easy";
    uint64_t bench_records = 512;
    int bench_threads = 0;
    CLI::App* bench = app.add_subcommand("bench", "measure generation throughput");
    bench->add_option("--tier", bench_tier, "tier to benchmark");
    bench->add_option("--records", bench_records, "records per measurement");
    bench->add_option("--threads", bench_threads, "max worker threads");
    bench->callback([&]() {
        action = [&]() { return cmd_bench(bench_tier, bench_records, bench_threads); };
    });

    std::vector<const char*> argv;
    argv.push_back("symgen");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace symgen
