// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "symgen/detail/text_scan.hpp"

namespace symgen {

namespace {

double coord(const Vec3& v, int axis) { return axis == 0 ? v.x : axis == 1 ? v.y : v.z; }

}  // namespace

KdTree::KdTree(const PointCloud& points) : pts_(points) {
    if (pts_.empty()) throw std::invalid_argument("KdTree: empty point set");
    nodes_.reserve(pts_.size() / 8 + 8);
    root_ = build(0, static_cast<int>(pts_.size()));
}

int32_t KdTree::build(int lo, int hi) {
    constexpr int kLeafSize = 16;
    int32_t id = static_cast<int32_t>(nodes_.size());
    if (hi - lo <= kLeafSize) {
        nodes_.push_back({0.0, -1, lo, hi});
        return id;
    }
    Vec3 min = pts_[lo], max = pts_[lo];
    for (int i = lo + 1; i < hi; ++i) {
        const Vec3& p = pts_[i];
        min = {std::min(min.x, p.x), std::min(min.y, p.y), std::min(min.z, p.z)};
        max = {std::max(max.x, p.x), std::max(max.y, p.y), std::max(max.z, p.z)};
    }
    Vec3 spread = max - min;
    int axis = 0;
    if (spread.y > spread.x) axis = 1;
    if (spread.z > coord(spread, axis)) axis = 2;

    int mid = lo + (hi - lo) / 2;
    std::nth_element(
        pts_.begin() + lo, pts_.begin() + mid, pts_.begin() + hi,
        [axis](const Vec3& a, const Vec3& b) { return coord(a, axis) < coord(b, axis); });
    nodes_.push_back({coord(pts_[mid], axis), axis, -1, -1});
    int32_t left = build(lo, mid);
    int32_t right = build(mid, hi);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void KdTree::search(int32_t ni, const Vec3& q, double& best) const {
    const Node& n = nodes_[ni];
    if (n.axis < 0) {
        for (int i = n.left; i < n.right; ++i) {
            double d = (pts_[i] - q).norm_sq();
            if (d < best) best = d;
        }
        return;
    }
    double diff = coord(q, n.axis) - n.split;
    int32_t near = diff < 0.0 ? n.left : n.right;
    int32_t far = diff < 0.0 ? n.right : n.left;
    search(near, q, best);
    if (diff * diff < best) search(far, q, best);
}

double KdTree::nearest_sq(const Vec3& q) const {
    double best = std::numeric_limits<double>::infinity();
    search(root_, q, best);
    return best;
}

namespace {

double mean_nearest_sq(const PointCloud& from, const KdTree& to) {
    double sum = 0.0;
    for (const Vec3& p : from) sum += to.nearest_sq(p);
    return sum / static_cast<double>(from.size());
}

}  // namespace

double chamfer(const PointCloud& p, const PointCloud& q) {
    if (p.empty() || q.empty()) throw std::invalid_argument("chamfer: empty cloud");
    KdTree pt(p), qt(q);
    return chamfer(p, pt, q, qt);
}

double chamfer(const PointCloud& p, const KdTree& p_tree, const PointCloud& q,
               const KdTree& q_tree) {
    if (p.empty() || q.empty()) throw std::invalid_argument("chamfer: empty cloud");
    return mean_nearest_sq(p, q_tree) + mean_nearest_sq(q, p_tree);
}

double asymmetry_score(const PointCloud& p) {
    if (p.empty()) throw std::invalid_argument("asymmetry_score: empty cloud");
    Vec3 c = centroid(p);
    KdTree tree(p);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& normal : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}) {
        PointCloud reflected = reflect_points(p, {normal, c});
        KdTree rt(reflected);
        best = std::min(best, chamfer(p, tree, reflected, rt));
    }
    return best;
}

namespace {

/// Angle between directions, sign-invariant.
double direction_angle(const Vec3& a, const Vec3& b) {
    double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
    return std::acos(std::clamp(c, 0.0, 1.0));
}

double point_to_plane(const Vec3& point, const PredictedSymmetry& plane) {
    return std::abs((point - plane.point).dot(plane.vector));
}

double point_to_line(const Vec3& point, const PredictedSymmetry& axis) {
    return (point - axis.point).cross(axis.vector).norm();
}

bool period_compatible(double predicted, double truth, double rel_tol) {
    bool pc = std::isinf(predicted), tc = std::isinf(truth);
    if (pc || tc) return pc && tc;
    return std::abs(predicted / truth - 1.0) <= rel_tol;
}

}  // namespace

Matching match_predictions(const std::vector<PredictedSymmetry>& preds, const SymmetrySet& gt,
                           const MatchThresholds& th, double bbox_diagonal) {
    Matching m;
    m.gt_count = static_cast<int>(gt.size());
    m.pred_order.resize(preds.size());
    std::iota(m.pred_order.begin(), m.pred_order.end(), 0);
    std::stable_sort(m.pred_order.begin(), m.pred_order.end(), [&preds](int a, int b) {
        return preds[a].confidence > preds[b].confidence;
    });

    const double max_dist = th.max_point_distance * bbox_diagonal;
    std::vector<bool> plane_used(gt.planes.size(), false);
    std::vector<bool> axis_used(gt.axes.size(), false);
    m.is_tp.assign(preds.size(), false);
    m.matched_gt.assign(preds.size(), -1);

    for (size_t rank = 0; rank < m.pred_order.size(); ++rank) {
        const PredictedSymmetry& pred = preds[m.pred_order[rank]];
        int best = -1;
        double best_angle = std::numeric_limits<double>::infinity();
        if (pred.kind == PredictedSymmetry::Kind::Plane) {
            for (size_t g = 0; g < gt.planes.size(); ++g) {
                if (plane_used[g]) continue;
                double angle = direction_angle(pred.vector, gt.planes[g].normal);
                if (angle > th.max_normal_angle) continue;
                if (point_to_plane(gt.planes[g].point, pred) > max_dist) continue;
                if (angle < best_angle) {
                    best_angle = angle;
                    best = static_cast<int>(g);
                }
            }
            if (best >= 0) {
                plane_used[best] = true;
                m.is_tp[rank] = true;
                m.matched_gt[rank] = best;
            }
        } else {
            for (size_t g = 0; g < gt.axes.size(); ++g) {
                if (axis_used[g]) continue;
                const AxisSymmetry& axis = gt.axes[g];
                double angle = direction_angle(pred.vector, axis.direction);
                if (angle > th.max_normal_angle) continue;
                if (point_to_line(axis.point, pred) > max_dist) continue;
                if (!period_compatible(pred.period, axis.period, th.period_rel_tol)) continue;
                if (angle < best_angle) {
                    best_angle = angle;
                    best = static_cast<int>(g);
                }
            }
            if (best >= 0) {
                axis_used[best] = true;
                m.is_tp[rank] = true;
                // plane matches and axis matches share the id space: axes follow planes
                m.matched_gt[rank] = static_cast<int>(gt.planes.size()) + best;
            }
        }
    }
    return m;
}

double average_precision(const Matching& m) {
    if (m.gt_count == 0) return 0.0;
    double sum = 0.0;
    int tp = 0;
    for (size_t rank = 0; rank < m.is_tp.size(); ++rank) {
        if (m.is_tp[rank]) {
            ++tp;
            sum += static_cast<double>(tp) / static_cast<double>(rank + 1);
        }
    }
    return sum / static_cast<double>(m.gt_count);
}

EvalReport evaluate(const std::vector<ShapeForEval>& shapes, const MatchThresholds& th,
                    PhcMode phc_mode) {
    EvalReport report;
    report.thresholds = th;
    report.phc_mode = phc_mode;
    std::map<std::string, std::pair<double, int>> class_ap;
    std::map<std::string, std::pair<double, int>> class_phc;

    for (const ShapeForEval& shape : shapes) {
        ShapeEval ev;
        ev.id = shape.id;
        ev.class_name = shape.class_name;
        if (!shape.has_prediction) {
            ev.missing_prediction = true;
            report.warnings.push_back("missing prediction for shape " + shape.id);
        } else {
            Matching m = match_predictions(shape.preds, shape.gt, th, shape.bbox_diagonal);
            ev.ap = average_precision(m);
            if (!m.is_tp.empty()) {
                if (phc_mode == PhcMode::Highest)
                    ev.phc_hit = m.is_tp.front();
                else
                    ev.phc_hit = std::find(m.is_tp.begin(), m.is_tp.end(), true) != m.is_tp.end();
            }
        }
        class_ap[ev.class_name].first += ev.ap;
        class_ap[ev.class_name].second += 1;
        class_phc[ev.class_name].first += ev.phc_hit ? 1.0 : 0.0;
        class_phc[ev.class_name].second += 1;
        report.shapes.push_back(std::move(ev));
    }

    if (!report.shapes.empty()) {
        double ap_sum = 0.0, hits = 0.0;
        for (const ShapeEval& ev : report.shapes) {
            ap_sum += ev.ap;
            hits += ev.phc_hit ? 1.0 : 0.0;
        }
        report.map = ap_sum / static_cast<double>(report.shapes.size());
        report.phc = hits / static_cast<double>(report.shapes.size());
    }
    for (const auto& [name, acc] : class_ap) report.per_class_map[name] = acc.first / acc.second;
    for (const auto& [name, acc] : class_phc) report.per_class_phc[name] = acc.first / acc.second;
    return report;
}

std::vector<PredictedSymmetry> parse_predictions(const std::string& text) {
    using Scanner = detail::LineScanner<GtParseError>;
    std::vector<PredictedSymmetry> out;
    long declared = -1;
    int last_line = 0;
    detail::for_each_line(text, [&](int line_no, const char* begin, const char* end) {
        last_line = line_no;
        Scanner sc{begin, end, line_no};
        if (line_no == 1) {
            std::string_view tok = sc.token();
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), declared);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || declared < 0)
                throw GtParseError(1, "expected prediction count, got '" + std::string(tok) + "'");
            sc.expect_eol("count");
            return;
        }
        std::string_view kind = sc.token();
        PredictedSymmetry pred;
        if (kind == "plane") {
            pred.kind = PredictedSymmetry::Kind::Plane;
            pred.vector = {sc.number("nx"), sc.number("ny"), sc.number("nz")};
            pred.point = {sc.number("px"), sc.number("py"), sc.number("pz")};
        } else if (kind == "axis") {
            pred.kind = PredictedSymmetry::Kind::Axis;
            pred.vector = {sc.number("dx"), sc.number("dy"), sc.number("dz")};
            pred.point = {sc.number("px"), sc.number("py"), sc.number("pz")};
            pred.period = sc.number("period");
        } else {
            throw GtParseError(line_no,
                               "expected 'plane' or 'axis', got '" + std::string(kind) + "'");
        }
        pred.confidence = sc.number("confidence");
        if (pred.confidence < 0.0 || pred.confidence > 1.0)
            throw GtParseError(line_no, "confidence outside [0, 1]");
        double len = pred.vector.norm();
        if (std::abs(len - 1.0) > 1e-3)
            throw GtParseError(line_no, "direction is not unit length");
        if (std::abs(len - 1.0) > 1e-9) pred.vector = pred.vector.normalized();
        sc.expect_eol("prediction line");
        out.push_back(pred);
    });
    if (declared < 0) throw GtParseError(1, "empty prediction file");
    if (static_cast<size_t>(declared) != out.size())
        throw GtParseError(last_line, "count mismatch: header says " + std::to_string(declared) +
                                          ", found " + std::to_string(out.size()));
    return out;
}

std::string write_predictions(const std::vector<PredictedSymmetry>& preds) {
    std::string out;
    out.append(std::to_string(preds.size()));
    out.push_back('\n');
    for (const PredictedSymmetry& p : preds) {
        out.append(p.kind == PredictedSymmetry::Kind::Plane ? "plane" : "axis");
        for (double v : {p.vector.x, p.vector.y, p.vector.z, p.point.x, p.point.y, p.point.z}) {
            out.push_back(' ');
            detail::format_double(out, v);
        }
        if (p.kind == PredictedSymmetry::Kind::Axis) {
            out.push_back(' ');
            if (p.continuous())
                out.append("inf");
            else
                detail::format_double(out, p.period);
        }
        out.push_back(' ');
        detail::format_double(out, p.confidence);
        out.push_back('\n');
    }
    return out;
}

double loss_normal(const std::vector<std::pair<Vec3, Vec3>>& matched_normals) {
    if (matched_normals.empty()) throw std::invalid_argument("loss_normal: no pairs");
    double sum = 0.0;
    for (const auto& [predicted, truth] : matched_normals)
        sum += 1.0 - std::abs(predicted.dot(truth));
    return sum / static_cast<double>(matched_normals.size());
}

double loss_distance(const Vec3& predicted_center, const Vec3& true_center) {
    return (predicted_center - true_center).norm();
}

double loss_rsd(const PointCloud& cloud,
                const std::vector<std::pair<PlaneSymmetry, PlaneSymmetry>>& matched_planes) {
    if (matched_planes.empty()) throw std::invalid_argument("loss_rsd: no pairs");
    double sum = 0.0;
    for (const auto& [predicted, truth] : matched_planes) {
        PointCloud by_truth = reflect_points(cloud, truth);
        PointCloud by_pred = reflect_points(cloud, predicted);
        double sx = 0.0, sy = 0.0, sz = 0.0;
        for (size_t i = 0; i < cloud.size(); ++i) {
            Vec3 d = by_truth[i] - by_pred[i];
            sx += d.x * d.x;
            sy += d.y * d.y;
            sz += d.z * d.z;
        }
        sum += (std::sqrt(sx) + std::sqrt(sy) + std::sqrt(sz)) / 3.0;
    }
    return sum / static_cast<double>(matched_planes.size());
}

double loss_confidence(const std::vector<double>& targets, const std::vector<double>& predicted) {
    if (targets.size() != predicted.size())
        throw std::invalid_argument("loss_confidence: length mismatch");
    constexpr double eps = 1e-7;
    double sum = 0.0;
    for (size_t i = 0; i < targets.size(); ++i) {
        double p = std::clamp(predicted[i], eps, 1.0 - eps);
        sum += targets[i] * std::log(p) + (1.0 - targets[i]) * std::log(1.0 - p);
    }
    return -sum;
}

double loss_total(double normal, double distance, double rsd, double confidence,
                  const LossWeights& w) {
    return w.alpha * normal + w.beta * distance + w.gamma * rsd + w.delta * confidence;
}

std::vector<int> optimal_assignment(const std::vector<std::vector<double>>& cost) {
    const int rows = static_cast<int>(cost.size());
    if (rows == 0) return {};
    const int cols = static_cast<int>(cost[0].size());
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("optimal_assignment: ragged cost matrix");
        for (double c : row)
            if (!std::isfinite(c)) throw std::invalid_argument("optimal_assignment: non-finite cost");
    }
    if (rows > cols) throw std::invalid_argument("optimal_assignment: more rows than columns");

    // Shortest augmenting path with potentials, 1-based work arrays.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
    std::vector<int> col_match(cols + 1, 0), way(cols + 1, 0);
    for (int i = 1; i <= rows; ++i) {
        col_match[0] = i;
        int j0 = 0;
        std::vector<double> minv(cols + 1, inf);
        std::vector<bool> used(cols + 1, false);
        do {
            used[j0] = true;
            int i0 = col_match[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= cols; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= cols; ++j) {
                if (used[j]) {
                    u[col_match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_match[j0] != 0);
        do {
            int j1 = way[j0];
            col_match[j0] = col_match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assignment(rows, -1);
    for (int j = 1; j <= cols; ++j)
        if (col_match[j] != 0) assignment[col_match[j] - 1] = j - 1;
    return assignment;
}

double assignment_cost(const std::vector<std::vector<double>>& cost,
                       const std::vector<int>& assignment) {
    double total = 0.0;
    for (size_t i = 0; i < assignment.size(); ++i) total += cost[i][assignment[i]];
    return total;
}

}  // namespace symgen
