// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "symgen/curves.hpp"
#include "symgen/geometry.hpp"
#include "symgen/perturb.hpp"
#include "symgen/solids.hpp"
#include "symgen/symmetry.hpp"

namespace symgen {

enum class Tier { Easy, Intermediate1, Intermediate2, Hard, Ssl };

const char* tier_name(Tier t);
std::optional<Tier> tier_from_name(const std::string& name);

enum class Split { Train, Val, Test };

const char* split_name(Split s);

/// Which axes a record may be rotated about, and with what probability.
struct RotationPolicy {
    bool x = false;
    bool y = false;
    bool z = false;
    double probability = 0.0;
};

RotationPolicy default_rotation_policy(Tier t);

/// Perturbation selection: Balanced cycles P0..P5 by record id; Probabilistic
/// draws a non-clean perturbation with probability 0.8.
enum class PerturbationMode { Balanced, Probabilistic };

struct SplitRatios {
    double train = 0.7;
    double val = 0.2;
    double test = 0.1;
};

struct DatasetConfig {
    Tier tier = Tier::Easy;
    uint64_t total_size = 10000;
    SplitRatios split_ratios;
    uint64_t master_seed = 0;
    double pr_conic = 0.5;
    double pr_translate = 0.8;
    RotationPolicy rotation_policy = default_rotation_policy(Tier::Easy);
    GtMode gt_mode = GtMode::Full;
    PerturbationMode perturbation_mode = PerturbationMode::Balanced;
    SolidConfig solid;
    uint32_t xz_preset = 1;
    std::filesystem::path output_dir;

    /// Tier constructor applying the tier's rotation policy.
    static DatasetConfig for_tier(Tier t, uint64_t size, uint64_t seed);
};

/// Everything sampled while producing one record, enough to audit or
/// regenerate it.
struct Provenance {
    CurveSpec spec;
    Construction construction = Construction::Cylindrical;
    double l_z = 0.0;
    PerturbationDraw draw;
    size_t points_pre_perturb = 0;
    bool rotated = false;
    bool translated = false;
};

struct ShapeRecord {
    uint64_t id = 0;
    std::string class_name;
    PerturbationKind perturbation = PerturbationKind::Clean;
    RigidTransform transform;
    PointCloud cloud;  // final: perturbed, then rigidly moved
    SymmetrySet gt;    // post-transform frame
    Provenance provenance;
    std::optional<PointCloud> clean_cloud;  // post-transform, pre-perturbation
};

/// Dataset class names of a tier, in the fixed sampling order.
std::vector<std::string> tier_classes(Tier t);

CurveFamily class_family(const std::string& class_name);

/// Deterministically build record `id` of the configured dataset. With
/// keep_clean the unperturbed post-transform cloud is retained for
/// validation.
ShapeRecord generate_record(const DatasetConfig& cfg, uint64_t id, bool keep_clean = false);

PerturbationKind perturbation_for_id(const DatasetConfig& cfg, uint64_t id);

std::string class_for_id(const DatasetConfig& cfg, uint64_t id);

/// Stratified-by-class split assignment for all ids: per-class counts stay
/// within +-1 of ratio * class size (largest-remainder rounding), shuffled
/// deterministically from the master seed.
std::vector<Split> compute_split_assignment(const DatasetConfig& cfg);

/// "008706-revolution-undersampling+uniform.xz"; ids at or above 10^6 widen
/// naturally.
std::string shape_filename(uint64_t id, const std::string& class_name, PerturbationKind kind);
std::string gt_filename(uint64_t id, const std::string& class_name, PerturbationKind kind);

struct DatasetSummary {
    uint64_t records_written = 0;
    std::vector<std::string> errors;    // per-file failures; non-empty means partial failure
    std::vector<std::string> warnings;  // e.g. GT counts above the nominal range
    std::filesystem::path manifest_path;
    double seconds = 0.0;
};

/// Run the full pipeline: generate every record in parallel, write
/// xz-compressed clouds and GT files under {out}/{tier}/{split}/{class}/,
/// then write the manifest. threads <= 0 means all logical cores.
DatasetSummary generate_dataset(const DatasetConfig& cfg, int threads = 0);

std::string config_to_json(const DatasetConfig& cfg);
DatasetConfig config_from_json(const std::string& json_text);

/// Extract the embedded config from a dataset manifest.
DatasetConfig config_from_manifest(const std::filesystem::path& manifest_path);

}  // namespace symgen
