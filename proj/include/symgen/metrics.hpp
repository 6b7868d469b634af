// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symgen/geometry.hpp"
#include "symgen/symmetry.hpp"

namespace symgen {

/// Static 3D k-d tree over a point set; answers nearest-neighbor queries.
/// Splits on the axis of largest spread and stores small leaf buckets.
class KdTree {
  public:
    explicit KdTree(const PointCloud& points);

    /// Squared distance from q to the nearest stored point.
    double nearest_sq(const Vec3& q) const;

    size_t size() const { return pts_.size(); }

  private:
    struct Node {
        double split;
        int32_t axis;     // -1 marks a leaf
        int32_t left;     // internal: children; leaf: point range [left, right)
        int32_t right;
    };
    int32_t build(int lo, int hi);
    void search(int32_t node, const Vec3& q, double& best) const;

    std::vector<Vec3> pts_;
    std::vector<Node> nodes_;
    int32_t root_ = -1;
};

/// Symmetric squared Chamfer distance: mean over P of squared nearest
/// distance to Q plus the same with the roles swapped.
double chamfer(const PointCloud& p, const PointCloud& q);

/// Chamfer from p against a prebuilt tree plus the reverse direction
/// against a prebuilt tree of p; avoids rebuilding in validation loops.
double chamfer(const PointCloud& p, const KdTree& p_tree, const PointCloud& q,
               const KdTree& q_tree);

/// Minimum Chamfer distance between the cloud and its reflection across the
/// XY, YZ and XZ planes through the centroid.
double asymmetry_score(const PointCloud& p);

struct PredictedSymmetry {
    enum class Kind { Plane, Axis };
    Kind kind = Kind::Plane;
    Vec3 vector;  // plane normal or axis direction, unit
    Vec3 point;
    double period = kContinuousPeriod;  // axes only
    double confidence = 0.0;

    bool continuous() const { return std::isinf(period); }
};

struct MatchThresholds {
    double max_normal_angle = deg_to_rad(1.0);  // radians
    double max_point_distance = 0.01;           // fraction of cloud bbox diagonal
    double period_rel_tol = 0.05;
};

/// Per-prediction match outcome, aligned with the confidence-sorted order.
struct Matching {
    std::vector<int> pred_order;     // indices into the input, confidence-descending
    std::vector<bool> is_tp;         // per sorted prediction
    std::vector<int> matched_gt;     // per sorted prediction, -1 when unmatched
    int gt_count = 0;
};

/// Greedy confidence-descending one-to-one matching of predictions to GT.
Matching match_predictions(const std::vector<PredictedSymmetry>& preds, const SymmetrySet& gt,
                           const MatchThresholds& th, double bbox_diagonal);

/// Confidence-ranked average precision of one shape's predictions.
double average_precision(const Matching& m);

enum class PhcMode { Highest, Any };

struct ShapeEval {
    std::string id;
    std::string class_name;
    double ap = 0.0;
    bool phc_hit = false;
    bool missing_prediction = false;
};

struct EvalReport {
    std::vector<ShapeEval> shapes;
    double map = 0.0;
    double phc = 0.0;
    MatchThresholds thresholds;
    PhcMode phc_mode = PhcMode::Highest;
    std::map<std::string, double> per_class_map;
    std::map<std::string, double> per_class_phc;
    std::vector<std::string> warnings;
};

struct ShapeForEval {
    std::string id;
    std::string class_name;
    SymmetrySet gt;
    std::vector<PredictedSymmetry> preds;
    bool has_prediction = false;
    double bbox_diagonal = 0.0;
};

EvalReport evaluate(const std::vector<ShapeForEval>& shapes, const MatchThresholds& th,
                    PhcMode phc_mode = PhcMode::Highest);

/// Prediction files: the GT layout plus one trailing confidence per line.
std::vector<PredictedSymmetry> parse_predictions(const std::string& text);
std::string write_predictions(const std::vector<PredictedSymmetry>& preds);

// Reference loss components (multitask training math, usable as oracles).

/// (1/K) sum(1 - |n_hat . n|) over matched unit-normal pairs.
double loss_normal(const std::vector<std::pair<Vec3, Vec3>>& matched_normals);

/// Euclidean distance between the predicted and true plane points.
double loss_distance(const Vec3& predicted_center, const Vec3& true_center);

/// Mean over pairs of the reflection-symmetry distance between the true and
/// predicted planes: per-coordinate norms of the difference of the two
/// reflections, averaged over the three coordinates.
double loss_rsd(const PointCloud& cloud,
                const std::vector<std::pair<PlaneSymmetry, PlaneSymmetry>>& matched_planes);

/// Binary cross-entropy with probabilities clamped to [eps, 1-eps].
double loss_confidence(const std::vector<double>& targets, const std::vector<double>& predicted);

struct LossWeights {
    double alpha = 1.0;  // normal
    double beta = 1.0;   // distance
    double gamma = 0.1;  // rsd
    double delta = 1.0;  // confidence
};

double loss_total(double normal, double distance, double rsd, double confidence,
                  const LossWeights& w = {});

/// Minimum-cost one-to-one assignment of the K rows to distinct columns,
/// K <= M. Returns the column picked for each row.
std::vector<int> optimal_assignment(const std::vector<std::vector<double>>& cost);

double assignment_cost(const std::vector<std::vector<double>>& cost,
                       const std::vector<int>& assignment);

}  // namespace symgen
