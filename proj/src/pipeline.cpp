// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "symgen/xyzio.hpp"

namespace symgen {

using nlohmann::json;
namespace fs = std::filesystem;

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Easy: return "easy";
        case Tier::Intermediate1: return "intermediate-1";
        case Tier::Intermediate2: return "intermediate-2";
        case Tier::Hard: return "hard";
        case Tier::Ssl: return "ssl";
    }
    return "unknown";
}

std::optional<Tier> tier_from_name(const std::string& name) {
    for (Tier t : {Tier::Easy, Tier::Intermediate1, Tier::Intermediate2, Tier::Hard, Tier::Ssl})
        if (name == tier_name(t)) return t;
    return std::nullopt;
}

const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "unknown";
}

RotationPolicy default_rotation_policy(Tier t) {
    switch (t) {
        case Tier::Easy:
        case Tier::Intermediate1: return {true, false, false, 0.5};
        case Tier::Intermediate2: return {true, true, false, 0.75};
        case Tier::Hard: return {true, true, true, 1.0};
        case Tier::Ssl: return {true, true, true, 0.8};
    }
    return {};
}

DatasetConfig DatasetConfig::for_tier(Tier t, uint64_t size, uint64_t seed) {
    DatasetConfig cfg;
    cfg.tier = t;
    cfg.total_size = size;
    cfg.master_seed = seed;
    cfg.rotation_policy = default_rotation_policy(t);
    return cfg;
}

std::vector<std::string> tier_classes(Tier t) {
    std::vector<std::string> classes = {"astroid",    "citrus",        "egg-keplero",
                                        "geometric-petal", "lemniscate", "m-convexities",
                                        "mouth"};
    if (t == Tier::Easy) return classes;
    classes.push_back("square");
    classes.push_back("cylinder");
    if (t == Tier::Intermediate1 || t == Tier::Intermediate2) return classes;
    classes.push_back("revolution");
    return classes;  // Hard and Ssl: all ten
}

CurveFamily class_family(const std::string& class_name) {
    if (class_name == "cylinder") return CurveFamily::Ellipse;
    if (class_name == "revolution") return CurveFamily::Bezier;
    for (int i = 0; i < kCurveFamilyCount; ++i) {
        auto f = static_cast<CurveFamily>(i);
        if (class_name == family_name(f)) return f;
    }
    throw std::invalid_argument("unknown dataset class '" + class_name + "'");
}

PerturbationKind perturbation_for_id(const DatasetConfig& cfg, uint64_t id) {
    if (cfg.perturbation_mode == PerturbationMode::Balanced)
        return static_cast<PerturbationKind>(id % kPerturbationKindCount);
    Rng rng(cfg.master_seed, id, RngStream::PerturbKind);
    if (!rng.bernoulli(0.8)) return PerturbationKind::Clean;
    return static_cast<PerturbationKind>(rng.uniform_int(1, kPerturbationKindCount - 1));
}

std::string class_for_id(const DatasetConfig& cfg, uint64_t id) {
    std::vector<std::string> classes = tier_classes(cfg.tier);
    Rng rng(cfg.master_seed, id, RngStream::ClassPick);
    return classes[rng.uniform_int(0, static_cast<int64_t>(classes.size()) - 1)];
}

ShapeRecord generate_record(const DatasetConfig& cfg, uint64_t id, bool keep_clean) {
    ShapeRecord rec;
    rec.id = id;
    rec.class_name = class_for_id(cfg, id);
    rec.perturbation = perturbation_for_id(cfg, id);

    CurveSpec spec;
    spec.family = class_family(rec.class_name);
    {
        Rng rng(cfg.master_seed, id, RngStream::Params);
        spec.params = sample_params(spec.family, rng);
    }
    rec.provenance.spec = spec;

    SolidConfig solid_cfg = cfg.solid;
    solid_cfg.pr_conic = cfg.pr_conic;
    PointCloud clean;
    {
        Rng rng(cfg.master_seed, id, RngStream::Solid);
        auto [cloud, prov] = build_solid(spec, solid_cfg, rng);
        clean = std::move(cloud);
        rec.provenance.construction = prov.construction;
        rec.provenance.l_z = prov.l_z;
    }
    rec.provenance.points_pre_perturb = clean.size();

    PointCloud perturbed;
    {
        Rng rng(cfg.master_seed, id, RngStream::Perturb);
        auto [cloud, draw] = apply_perturbation(clean, rec.perturbation, rng);
        perturbed = std::move(cloud);
        rec.provenance.draw = std::move(draw);
    }

    RigidTransform rt;
    {
        Rng rng(cfg.master_seed, id, RngStream::Rotate);
        const RotationPolicy& policy = cfg.rotation_policy;
        if (policy.probability > 0.0 && rng.bernoulli(policy.probability)) {
            rec.provenance.rotated = true;
            // applied in x, then y, then z order
            if (policy.x) rt.rotation = Mat3::rotation_x(rng.uniform(0.0, kTwoPi)) * rt.rotation;
            if (policy.y) rt.rotation = Mat3::rotation_y(rng.uniform(0.0, kTwoPi)) * rt.rotation;
            if (policy.z) rt.rotation = Mat3::rotation_z(rng.uniform(0.0, kTwoPi)) * rt.rotation;
        }
    }
    {
        Rng rng(cfg.master_seed, id, RngStream::Translate);
        if (rng.bernoulli(cfg.pr_translate)) {
            rec.provenance.translated = true;
            rt.translation = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
        }
    }
    rec.transform = rt;

    rec.cloud = rt.apply(perturbed);
    if (keep_clean) rec.clean_cloud = rt.apply(clean);

    SymmetrySet base =
        lift_symmetries(curve_symmetries_2d(spec), rec.provenance.construction, cfg.gt_mode);
    rec.gt = transform_symmetries(base, rt);
    return rec;
}

namespace {

/// Largest-remainder rounding of n into the three split quotas; every count
/// lands within one of its exact share.
std::array<uint64_t, 3> split_counts(uint64_t n, const SplitRatios& r) {
    const double ratios[3] = {r.train, r.val, r.test};
    std::array<uint64_t, 3> counts{};
    double fracs[3];
    uint64_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        double quota = static_cast<double>(n) * ratios[i];
        counts[i] = static_cast<uint64_t>(quota);
        fracs[i] = quota - static_cast<double>(counts[i]);
        assigned += counts[i];
    }
    while (assigned < n) {
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (fracs[i] > fracs[best]) best = i;
        ++counts[best];
        fracs[best] = -1.0;
        ++assigned;
    }
    return counts;
}

}  // namespace

std::vector<Split> compute_split_assignment(const DatasetConfig& cfg) {
    const std::vector<std::string> classes = tier_classes(cfg.tier);
    std::vector<std::vector<uint64_t>> per_class(classes.size());
    std::vector<Split> assignment(cfg.total_size, Split::Train);

    for (uint64_t id = 0; id < cfg.total_size; ++id) {
        Rng rng(cfg.master_seed, id, RngStream::ClassPick);
        per_class[rng.uniform_int(0, static_cast<int64_t>(classes.size()) - 1)].push_back(id);
    }

    for (size_t c = 0; c < per_class.size(); ++c) {
        std::vector<uint64_t>& ids = per_class[c];
        Rng rng(cfg.master_seed, c, RngStream::SplitShuffle);
        for (size_t i = 0; i + 1 < ids.size(); ++i) {
            size_t j = i + static_cast<size_t>(
                               rng.uniform_int(0, static_cast<int64_t>(ids.size() - i) - 1));
            std::swap(ids[i], ids[j]);
        }
        auto counts = split_counts(ids.size(), cfg.split_ratios);
        size_t k = 0;
        for (uint64_t i = 0; i < counts[0]; ++i) assignment[ids[k++]] = Split::Train;
        for (uint64_t i = 0; i < counts[1]; ++i) assignment[ids[k++]] = Split::Val;
        for (uint64_t i = 0; i < counts[2]; ++i) assignment[ids[k++]] = Split::Test;
    }
    return assignment;
}

std::string shape_filename(uint64_t id, const std::string& class_name, PerturbationKind kind) {
    char idbuf[24];
    std::snprintf(idbuf, sizeof idbuf, "%06llu", static_cast<unsigned long long>(id));
    return std::string(idbuf) + "-" + class_name + "-" + perturbation_tag(kind) + ".xz";
}

std::string gt_filename(uint64_t id, const std::string& class_name, PerturbationKind kind) {
    std::string name = shape_filename(id, class_name, kind);
    name.resize(name.size() - 3);  // drop ".xz"
    return name + "-sym.txt";
}

namespace {

std::string gt_mode_name(GtMode m) { return m == GtMode::Full ? "full" : "minimal"; }

std::string perturbation_mode_name(PerturbationMode m) {
    return m == PerturbationMode::Balanced ? "balanced" : "probabilistic";
}

json config_to_json_obj(const DatasetConfig& cfg) {
    json j;
    j["tier"] = tier_name(cfg.tier);
    j["total_size"] = cfg.total_size;
    j["master_seed"] = cfg.master_seed;
    j["split_ratios"] = {cfg.split_ratios.train, cfg.split_ratios.val, cfg.split_ratios.test};
    j["pr_conic"] = cfg.pr_conic;
    j["pr_translate"] = cfg.pr_translate;
    std::string axes;
    if (cfg.rotation_policy.x) axes += 'x';
    if (cfg.rotation_policy.y) axes += 'y';
    if (cfg.rotation_policy.z) axes += 'z';
    j["rotation_policy"] = {{"axes", axes}, {"probability", cfg.rotation_policy.probability}};
    j["gt_mode"] = gt_mode_name(cfg.gt_mode);
    j["perturbation_mode"] = perturbation_mode_name(cfg.perturbation_mode);
    j["xz_preset"] = cfg.xz_preset;
    j["solid"] = {{"n", cfg.solid.n},
                  {"lz_min", cfg.solid.lz_min},
                  {"lz_max", cfg.solid.lz_max},
                  {"revolution_rotations", cfg.solid.revolution.rotation_count},
                  {"revolution_jitter_deg", cfg.solid.revolution.jitter_deg}};
    j["classes"] = tier_classes(cfg.tier);
    j["noise_model"] = "per-coordinate-iid";
    j["class_sampling"] = "uniform";
    return j;
}

DatasetConfig config_from_json_obj(const json& j) {
    DatasetConfig cfg;
    auto tier = tier_from_name(j.at("tier").get<std::string>());
    if (!tier) throw std::runtime_error("config: unknown tier");
    cfg.tier = *tier;
    cfg.total_size = j.at("total_size").get<uint64_t>();
    cfg.master_seed = j.at("master_seed").get<uint64_t>();
    auto ratios = j.at("split_ratios");
    cfg.split_ratios = {ratios.at(0).get<double>(), ratios.at(1).get<double>(),
                        ratios.at(2).get<double>()};
    cfg.pr_conic = j.at("pr_conic").get<double>();
    cfg.pr_translate = j.at("pr_translate").get<double>();
    std::string axes = j.at("rotation_policy").at("axes").get<std::string>();
    cfg.rotation_policy = {axes.find('x') != std::string::npos,
                           axes.find('y') != std::string::npos,
                           axes.find('z') != std::string::npos,
                           j.at("rotation_policy").at("probability").get<double>()};
    cfg.gt_mode = j.at("gt_mode").get<std::string>() == "minimal" ? GtMode::Minimal : GtMode::Full;
    cfg.perturbation_mode = j.at("perturbation_mode").get<std::string>() == "probabilistic"
                                ? PerturbationMode::Probabilistic
                                : PerturbationMode::Balanced;
    cfg.xz_preset = j.at("xz_preset").get<uint32_t>();
    const json& solid = j.at("solid");
    cfg.solid.n = solid.at("n").get<int>();
    cfg.solid.lz_min = solid.at("lz_min").get<double>();
    cfg.solid.lz_max = solid.at("lz_max").get<double>();
    cfg.solid.revolution.rotation_count = solid.at("revolution_rotations").get<int>();
    cfg.solid.revolution.jitter_deg = solid.at("revolution_jitter_deg").get<double>();
    return cfg;
}

json provenance_to_json(const ShapeRecord& rec) {
    json j;
    const Provenance& prov = rec.provenance;
    j["family"] = family_name(prov.spec.family);
    json params;
    params["a"] = prov.spec.params.a;
    params["b"] = prov.spec.params.b;
    params["m"] = prov.spec.params.m;
    if (prov.spec.family == CurveFamily::Bezier) {
        json cps = json::array();
        for (const Vec3& c : prov.spec.params.control_points) cps.push_back({c.x, c.y, c.z});
        params["control_points"] = cps;
    }
    j["params"] = params;
    switch (prov.construction) {
        case Construction::Cylindrical: j["construction"] = "cylindrical"; break;
        case Construction::Conical: j["construction"] = "conical"; break;
        case Construction::Revolution: j["construction"] = "revolution"; break;
    }
    if (prov.construction != Construction::Revolution) j["l_z"] = prov.l_z;
    j["points_pre_perturb"] = prov.points_pre_perturb;
    j["rotated"] = prov.rotated;
    j["translated"] = prov.translated;
    const PerturbationDraw& draw = prov.draw;
    if (draw.noise_fraction) {
        j["noise_fraction"] = *draw.noise_fraction;
        j["noise_scale"] = *draw.noise_scale;
    }
    if (draw.undersample_fraction) {
        j["undersample_fraction"] = *draw.undersample_fraction;
        j["points_removed"] = draw.removed_indices.size();
    }
    json rot = json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rot.push_back(rec.transform.rotation.m[r][c]);
    j["rotation"] = rot;
    j["translation"] = {rec.transform.translation.x, rec.transform.translation.y,
                        rec.transform.translation.z};
    return j;
}

}  // namespace

std::string config_to_json(const DatasetConfig& cfg) { return config_to_json_obj(cfg).dump(2); }

DatasetConfig config_from_json(const std::string& json_text) {
    return config_from_json_obj(json::parse(json_text));
}

DatasetConfig config_from_manifest(const fs::path& manifest_path) {
    json manifest = json::parse(read_text_file(manifest_path));
    return config_from_json_obj(manifest.at("config"));
}

DatasetSummary generate_dataset(const DatasetConfig& cfg, int threads) {
    auto start = std::chrono::steady_clock::now();
    if (cfg.total_size < 10) throw std::invalid_argument("dataset size must be >= 10");
    double ratio_sum = cfg.split_ratios.train + cfg.split_ratios.val + cfg.split_ratios.test;
    if (std::abs(ratio_sum - 1.0) > 1e-9)
        throw std::invalid_argument("split ratios must sum to 1");
    if (cfg.output_dir.empty()) throw std::invalid_argument("output directory not set");

    DatasetSummary summary;
    const std::vector<std::string> classes = tier_classes(cfg.tier);
    const std::vector<Split> splits = compute_split_assignment(cfg);

    // All leaf directories exist before workers start.
    for (Split s : {Split::Train, Split::Val, Split::Test})
        for (const std::string& cls : classes)
            fs::create_directories(cfg.output_dir / tier_name(cfg.tier) / split_name(s) / cls);

    struct Slot {
        json record;
        std::string error;
        std::string warning;
    };
    std::vector<Slot> slots(cfg.total_size);
    std::atomic<uint64_t> next{0};
    std::atomic<uint64_t> written{0};

    int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;
    worker_count = static_cast<int>(
        std::min<uint64_t>(static_cast<uint64_t>(worker_count), cfg.total_size));

    auto worker = [&]() {
        for (;;) {
            uint64_t id = next.fetch_add(1, std::memory_order_relaxed);
            if (id >= cfg.total_size) return;
            Slot& slot = slots[id];
            try {
                ShapeRecord rec = generate_record(cfg, id);
                Split split = splits[id];
                fs::path dir =
                    cfg.output_dir / tier_name(cfg.tier) / split_name(split) / rec.class_name;
                std::string cloud_name = shape_filename(id, rec.class_name, rec.perturbation);
                std::string gt_name = gt_filename(id, rec.class_name, rec.perturbation);

                std::vector<uint8_t> cloud_bytes = encode_xyz(rec.cloud, cfg.xz_preset);
                std::string gt_text = write_gt(rec.gt);
                write_file(dir / cloud_name, cloud_bytes);
                write_file(dir / gt_name, gt_text);

                json j = provenance_to_json(rec);
                j["id"] = id;
                j["class"] = rec.class_name;
                j["perturbation"] = perturbation_tag(rec.perturbation);
                j["split"] = split_name(split);
                j["points_final"] = rec.cloud.size();
                j["gt_count"] = rec.gt.size();
                fs::path rel = fs::path(tier_name(cfg.tier)) / split_name(split) / rec.class_name;
                j["cloud_file"] = (rel / cloud_name).generic_string();
                j["gt_file"] = (rel / gt_name).generic_string();
                j["cloud_fnv1a64"] = hex64(fnv1a64(cloud_bytes.data(), cloud_bytes.size()));
                j["gt_fnv1a64"] = hex64(fnv1a64(gt_text.data(), gt_text.size()));
                if (rec.gt.size() > 14)
                    slot.warning = "record " + std::to_string(id) + " (" + rec.class_name +
                                   ") has " + std::to_string(rec.gt.size()) +
                                   " symmetries, above the nominal range [1-14]";
                slot.record = std::move(j);
                written.fetch_add(1, std::memory_order_relaxed);
            } catch (const std::exception& e) {
                slot.error = "record " + std::to_string(id) + ": " + e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    json manifest;
    manifest["format"] = "symgen-dataset";
    manifest["version"] = 1;
    manifest["checksum_algo"] = "fnv1a64";
    manifest["config"] = config_to_json_obj(cfg);
    json records = json::array();
    for (Slot& slot : slots) {
        if (!slot.error.empty()) {
            summary.errors.push_back(slot.error);
            continue;
        }
        if (!slot.warning.empty()) summary.warnings.push_back(slot.warning);
        records.push_back(std::move(slot.record));
    }
    manifest["records"] = std::move(records);
    summary.manifest_path = cfg.output_dir / "manifest.json";
    write_file(summary.manifest_path, manifest.dump(2) + "\n");

    summary.records_written = written.load();
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

}  // namespace symgen
