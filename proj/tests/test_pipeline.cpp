// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "symgen/metrics.hpp"
#include "symgen/pipeline.hpp"
#include "symgen/xyzio.hpp"

using namespace symgen;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("symgen_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::map<std::string, uint64_t> tree_checksums(const fs::path& root) {
    std::map<std::string, uint64_t> out;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            out[fs::relative(entry.path(), root).generic_string()] = fnv1a64_file(entry.path());
    return out;
}

}  // namespace

TEST_CASE("tier class sets") {
    CHECK(tier_classes(Tier::Easy).size() == 7);
    CHECK(tier_classes(Tier::Intermediate1).size() == 9);
    CHECK(tier_classes(Tier::Intermediate2).size() == 9);
    CHECK(tier_classes(Tier::Hard).size() == 10);
    CHECK(tier_classes(Tier::Ssl).size() == 10);

    auto easy = tier_classes(Tier::Easy);
    auto inter = tier_classes(Tier::Intermediate1);
    CHECK(std::set<std::string>(inter.begin(), inter.end()).count("square") == 1);
    CHECK(std::set<std::string>(inter.begin(), inter.end()).count("cylinder") == 1);
    for (const std::string& c : easy)
        CHECK(std::find(inter.begin(), inter.end(), c) != inter.end());
    auto hard = tier_classes(Tier::Hard);
    CHECK(std::find(hard.begin(), hard.end(), "revolution") != hard.end());

    CHECK(class_family("cylinder") == CurveFamily::Ellipse);
    CHECK(class_family("revolution") == CurveFamily::Bezier);
    CHECK(class_family("mouth") == CurveFamily::Mouth);
    CHECK_THROWS_AS(class_family("teapot"), std::invalid_argument);
}

TEST_CASE("balanced mode cycles the six perturbations exactly") {
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Easy, 600, 5);
    std::map<PerturbationKind, int> counts;
    for (uint64_t id = 0; id < cfg.total_size; ++id) ++counts[perturbation_for_id(cfg, id)];
    REQUIRE(counts.size() == 6);
    for (const auto& [kind, n] : counts) CHECK(n == 100);
}

TEST_CASE("probabilistic mode applies a perturbation roughly 80% of the time") {
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Easy, 10000, 5);
    cfg.perturbation_mode = PerturbationMode::Probabilistic;
    int clean = 0;
    for (uint64_t id = 0; id < cfg.total_size; ++id)
        clean += perturbation_for_id(cfg, id) == PerturbationKind::Clean;
    CHECK(std::abs(clean / 10000.0 - 0.2) < 0.015);
}

TEST_CASE("records are bit-identical across runs") {
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Hard, 100, 11);
    for (uint64_t id : {0ull, 3ull, 17ull}) {
        ShapeRecord a = generate_record(cfg, id);
        ShapeRecord b = generate_record(cfg, id);
        REQUIRE(a.cloud.size() == b.cloud.size());
        for (size_t i = 0; i < a.cloud.size(); ++i) {
            CHECK(a.cloud[i].x == b.cloud[i].x);
            CHECK(a.cloud[i].y == b.cloud[i].y);
            CHECK(a.cloud[i].z == b.cloud[i].z);
        }
        CHECK(a.class_name == b.class_name);
        CHECK(a.gt.size() == b.gt.size());
        CHECK(write_gt(a.gt) == write_gt(b.gt));
    }
}

TEST_CASE("hard tier always rotates; easy tier rotates about half the time") {
    DatasetConfig hard = DatasetConfig::for_tier(Tier::Hard, 10, 13);
    hard.solid.n = 10;
    for (uint64_t id = 0; id < 10; ++id)
        CHECK(generate_record(hard, id).provenance.rotated);

    DatasetConfig easy = DatasetConfig::for_tier(Tier::Easy, 400, 13);
    easy.solid.n = 6;
    int rotated = 0, translated = 0;
    for (uint64_t id = 0; id < easy.total_size; ++id) {
        ShapeRecord rec = generate_record(easy, id);
        rotated += rec.provenance.rotated;
        translated += rec.provenance.translated;
        if (rec.provenance.rotated) {
            // single-axis policy: a rotation about X leaves the x axis fixed
            CHECK(rec.transform.rotation.m[0][0] == doctest::Approx(1.0));
        }
    }
    CHECK(std::abs(rotated / 400.0 - 0.5) < 0.1);
    CHECK(std::abs(translated / 400.0 - 0.8) < 0.07);
}

TEST_CASE("every GT entry of fresh records validates on the clean cloud") {
    for (Tier tier : {Tier::Easy, Tier::Intermediate2, Tier::Hard}) {
        DatasetConfig cfg = DatasetConfig::for_tier(tier, 12, 17);
        for (uint64_t id = 0; id < 12; id += 5) {
            ShapeRecord rec = generate_record(cfg, id, /*keep_clean=*/true);
            REQUIRE(rec.clean_cloud);
            Rng rng(cfg.master_seed, id, RngStream::Validate);
            std::vector<double> residuals = validate_symmetry_set(*rec.clean_cloud, rec.gt, rng);
            REQUIRE(!residuals.empty());
            for (double r : residuals) CHECK(r < kGtResidualThreshold);
        }
    }
}

TEST_CASE("split assignment is stratified within one of the exact quotas") {
    for (uint64_t size : {60ull, 100ull, 997ull}) {
        DatasetConfig cfg = DatasetConfig::for_tier(Tier::Intermediate1, size, 23);
        std::vector<Split> splits = compute_split_assignment(cfg);
        REQUIRE(splits.size() == size);
        CHECK(compute_split_assignment(cfg) == splits);  // deterministic

        std::map<std::string, std::array<uint64_t, 3>> per_class;
        for (uint64_t id = 0; id < size; ++id)
            ++per_class[class_for_id(cfg, id)][static_cast<int>(splits[id])];
        for (const auto& [cls, counts] : per_class) {
            uint64_t n = counts[0] + counts[1] + counts[2];
            CHECK(std::abs(static_cast<double>(counts[0]) - 0.7 * static_cast<double>(n)) < 1.0);
            CHECK(std::abs(static_cast<double>(counts[1]) - 0.2 * static_cast<double>(n)) < 1.0);
            CHECK(std::abs(static_cast<double>(counts[2]) - 0.1 * static_cast<double>(n)) < 1.0);
        }
    }
}

TEST_CASE("ten records of a class split exactly 7/2/1") {
    // quotas of ten are integral, so the largest-remainder rounding is exact
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Easy, 30, 3);
    std::vector<Split> splits = compute_split_assignment(cfg);
    std::map<std::string, std::array<int, 3>> per_class;
    for (uint64_t id = 0; id < 30; ++id)
        ++per_class[class_for_id(cfg, id)][static_cast<int>(splits[id])];
    bool found_ten = false;
    for (const auto& [cls, counts] : per_class) {
        int n = counts[0] + counts[1] + counts[2];
        if (n == 10) {
            found_ten = true;
            CHECK(counts[0] == 7);
            CHECK(counts[1] == 2);
            CHECK(counts[2] == 1);
        }
    }
    (void)found_ten;  // seed-dependent; the quota property test above always applies
}

TEST_CASE("file naming matches the published pattern") {
    CHECK(shape_filename(8706, "revolution", PerturbationKind::UniformPlusUnder) ==
          "008706-revolution-undersampling+uniform.xz");
    CHECK(shape_filename(0, "citrus", PerturbationKind::Clean) == "000000-citrus-clean.xz");
    CHECK(gt_filename(0, "citrus", PerturbationKind::Clean) == "000000-citrus-clean-sym.txt");
    CHECK(shape_filename(12345678, "mouth", PerturbationKind::Gaussian) ==
          "12345678-mouth-gaussian.xz");
}

TEST_CASE("xyz text form and xz round trip") {
    PointCloud origin = {{0, 0, 0}};
    CHECK(cloud_to_text(origin) == "0 0 0\n");

    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Easy, 10, 29);
    ShapeRecord rec = generate_record(cfg, 0);
    PointCloud cloud = rec.cloud;
    PointCloud back = decode_xyz(encode_xyz(cloud));
    REQUIRE(back.size() == cloud.size());
    for (size_t i = 0; i < cloud.size(); ++i) {
        CHECK(back[i].x == cloud[i].x);
        CHECK(back[i].y == cloud[i].y);
        CHECK(back[i].z == cloud[i].z);
    }
}

TEST_CASE("decode_xyz rejects malformed input with a line number") {
    std::vector<uint8_t> good = encode_xyz({{1, 2, 3}});
    std::vector<uint8_t> truncated(good.begin(), good.begin() + good.size() / 2);
    CHECK_THROWS_AS(decode_xyz(truncated), XyzDecodeError);

    std::vector<uint8_t> corrupt = good;
    corrupt[corrupt.size() / 2] ^= 0xFF;
    CHECK_THROWS_AS(decode_xyz(corrupt), XyzDecodeError);

    CHECK_THROWS_AS(cloud_from_text("1 2 3\n4 five 6\n"), XyzDecodeError);
    CHECK_THROWS_AS(cloud_from_text("1 2\n"), XyzDecodeError);
    CHECK_THROWS_AS(cloud_from_text("1 2 3 4\n"), XyzDecodeError);
    CHECK_THROWS_AS(cloud_from_text(""), XyzDecodeError);

    try {
        cloud_from_text("1 2 3\n4 five 6\n");
        FAIL("expected decode error");
    } catch (const XyzDecodeError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("config json round trip") {
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Intermediate2, 5000, 99);
    cfg.gt_mode = GtMode::Minimal;
    cfg.perturbation_mode = PerturbationMode::Probabilistic;
    cfg.xz_preset = 4;
    cfg.pr_conic = 0.25;
    DatasetConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.tier == cfg.tier);
    CHECK(back.total_size == cfg.total_size);
    CHECK(back.master_seed == cfg.master_seed);
    CHECK(back.gt_mode == cfg.gt_mode);
    CHECK(back.perturbation_mode == cfg.perturbation_mode);
    CHECK(back.xz_preset == cfg.xz_preset);
    CHECK(back.pr_conic == cfg.pr_conic);
    CHECK(back.rotation_policy.x == cfg.rotation_policy.x);
    CHECK(back.rotation_policy.y == cfg.rotation_policy.y);
    CHECK(back.rotation_policy.probability == cfg.rotation_policy.probability);
}

TEST_CASE("generate_dataset writes the documented tree and is deterministic") {
    fs::path dir_a = fresh_dir("det_a");
    fs::path dir_b = fresh_dir("det_b");
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Intermediate1, 24, 31);
    cfg.solid.n = 20;  // small clouds keep the unit test quick
    cfg.output_dir = dir_a;
    DatasetSummary sa = generate_dataset(cfg, 2);
    CHECK(sa.errors.empty());
    CHECK(sa.records_written == 24);
    CHECK(fs::exists(dir_a / "manifest.json"));

    cfg.output_dir = dir_b;
    generate_dataset(cfg, 1);  // different thread count, same bytes
    auto ca = tree_checksums(dir_a);
    auto cb = tree_checksums(dir_b);
    CHECK(ca == cb);
    CHECK(ca.size() == 24 * 2 + 1);  // clouds + GT files + manifest

    // the manifest alone regenerates the dataset byte-identically
    DatasetConfig from_manifest = config_from_manifest(dir_a / "manifest.json");
    fs::path dir_c = fresh_dir("det_c");
    from_manifest.output_dir = dir_c;
    generate_dataset(from_manifest, 2);
    CHECK(tree_checksums(dir_c) == ca);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    fs::remove_all(dir_c);
}

TEST_CASE("generate_dataset validates its config") {
    DatasetConfig cfg = DatasetConfig::for_tier(Tier::Easy, 5, 1);
    cfg.output_dir = fresh_dir("cfg_err");
    CHECK_THROWS_AS(generate_dataset(cfg, 1), std::invalid_argument);  // too small
    cfg.total_size = 10;
    cfg.split_ratios = {0.5, 0.2, 0.1};
    CHECK_THROWS_AS(generate_dataset(cfg, 1), std::invalid_argument);  // bad ratios
    cfg.split_ratios = {};
    cfg.output_dir.clear();
    CHECK_THROWS_AS(generate_dataset(cfg, 1), std::invalid_argument);  // no output dir
    fs::remove_all(fs::temp_directory_path() / "symgen_test_cfg_err");
}
