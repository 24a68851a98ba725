// Copyright 2026 The ahsal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Saliency benchmark metrics: fixed-threshold precision/recall sweep over the
// 256 8-bit levels, image-adaptive threshold, F-measure and MAE.
//
// Edge conventions: precision is 1 when nothing is predicted, recall is 1
// when the ground truth is empty, and F is 0 when precision and recall are
// both 0.

#pragma once

#include "ahsal/imaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace ahsal {

using BinaryMap = Grid<std::uint8_t>;
/// Strictly binary ground truth (0 or 1 per pixel).
using GroundTruthMask = BinaryMap;

inline constexpr double kBetaSquared = 0.3;
inline constexpr int kLevels = 256;

/// 8-bit level of a [0, 1] saliency value.
inline int quantize(double v) noexcept {
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

/// On iff round(255 * s) >= t. t = 0 turns every pixel on.
inline BinaryMap binarize(const ScalarMap& s, int t) {
    if(t < 0 || t > 255)
        throw Error("binarize: threshold " + std::to_string(t) + " outside [0, 255]");
    BinaryMap out(s.width(), s.height(), 0);
    for(std::size_t i = 0; i < s.size(); ++i)
        out.values()[i] = quantize(s.values()[i]) >= t ? 1 : 0;
    return out;
}

struct PrecisionRecall {
    double precision = 1.0;
    double recall = 1.0;
};

inline PrecisionRecall pr_from_counts(long long tp, long long predicted, long long positives) {
    return {predicted > 0 ? static_cast<double>(tp) / static_cast<double>(predicted) : 1.0,
            positives > 0 ? static_cast<double>(tp) / static_cast<double>(positives) : 1.0};
}

inline PrecisionRecall precision_recall(const BinaryMap& pred, const GroundTruthMask& gt) {
    require_same_shape(pred, gt, "precision_recall");
    long long tp = 0, predicted = 0, positives = 0;
    for(std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred.values()[i] != 0, g = gt.values()[i] != 0;
        tp += (p && g);
        predicted += p;
        positives += g;
    }
    return pr_from_counts(tp, predicted, positives);
}

/// Twice the mean saliency. May exceed 1, in which case nothing is predicted.
inline double adaptive_threshold(const ScalarMap& s) {
    return 2.0 * map_sum(s) / static_cast<double>(s.size());
}

/// Continuous comparison S >= T_a. Zero-saliency pixels are never predicted,
/// so an all-zero map yields an empty mask rather than a full one.
inline BinaryMap adaptive_mask(const ScalarMap& s) {
    const double ta = adaptive_threshold(s);
    BinaryMap out(s.width(), s.height(), 0);
    for(std::size_t i = 0; i < s.size(); ++i) {
        const double v = s.values()[i];
        out.values()[i] = (v >= ta && v > 0.0) ? 1 : 0;
    }
    return out;
}

inline double f_measure(double precision, double recall, double beta2 = kBetaSquared) {
    const double denom = beta2 * precision + recall;
    if(!(denom > 0.0))
        return 0.0;
    return (1.0 + beta2) * precision * recall / denom;
}

inline double mae(const ScalarMap& s, const GroundTruthMask& gt) {
    require_same_shape(s, gt, "mae");
    double sum = 0;
    for(std::size_t i = 0; i < s.size(); ++i)
        sum += std::abs(s.values()[i] - static_cast<double>(gt.values()[i]));
    return sum / static_cast<double>(s.size());
}

struct PRPoint {
    int threshold = 0;
    double precision = 1.0;
    double recall = 1.0;
};

using PRCurve = std::array<PRPoint, kLevels>;

/// Precision/recall at every level t in [0, 255], using a level histogram
/// instead of 256 separate binarizations.
inline PRCurve pr_curve(const ScalarMap& s, const GroundTruthMask& gt) {
    require_same_shape(s, gt, "pr_curve");
    std::array<long long, kLevels> pos{}, neg{};
    long long positives = 0;
    for(std::size_t i = 0; i < s.size(); ++i) {
        const auto level = static_cast<std::size_t>(quantize(s.values()[i]));
        if(gt.values()[i]) {
            ++pos[level];
            ++positives;
        } else {
            ++neg[level];
        }
    }
    PRCurve curve;
    long long tp = 0, predicted = 0;
    for(int t = kLevels - 1; t >= 0; --t) {
        tp += pos[static_cast<std::size_t>(t)];
        predicted += pos[static_cast<std::size_t>(t)] + neg[static_cast<std::size_t>(t)];
        const auto pr = pr_from_counts(tp, predicted, positives);
        curve[static_cast<std::size_t>(t)] = {t, pr.precision, pr.recall};
    }
    return curve;
}

struct ImageMetrics {
    std::string name;
    double mae = 0;
    double threshold = 0; // T_a
    double precision = 0;
    double recall = 0;
    double f_beta = 0;
    PRCurve curve;
};

inline ImageMetrics evaluate_image(std::string name, const ScalarMap& s, const GroundTruthMask& gt) {
    require_same_shape(s, gt, std::string("evaluate " + name).c_str());
    ImageMetrics m;
    m.name = std::move(name);
    m.mae = mae(s, gt);
    m.threshold = adaptive_threshold(s);
    const auto pr = precision_recall(adaptive_mask(s), gt);
    m.precision = pr.precision;
    m.recall = pr.recall;
    m.f_beta = f_measure(pr.precision, pr.recall);
    m.curve = pr_curve(s, gt);
    return m;
}

struct EvalFailure {
    std::string name;
    std::string reason;
};

struct EvalReport {
    std::vector<ImageMetrics> images; // sorted by name
    std::vector<EvalFailure> failures;
    double mean_mae = 0;
    double mean_threshold = 0;
    double mean_precision = 0;
    double mean_recall = 0;
    double mean_f_beta = 0;
    PRCurve curve; // per-threshold mean over images
};

/// Means over images, accumulated in name order so the result does not
/// depend on the order in which images were processed.
inline EvalReport aggregate(std::vector<ImageMetrics> images, std::vector<EvalFailure> failures = {}) {
    if(images.empty())
        throw Error("evaluate: no images were evaluated");
    std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    std::sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    EvalReport rep;
    const double n = static_cast<double>(images.size());
    std::array<double, kLevels> p{}, r{};
    for(const auto& m : images) {
        rep.mean_mae += m.mae;
        rep.mean_threshold += m.threshold;
        rep.mean_precision += m.precision;
        rep.mean_recall += m.recall;
        rep.mean_f_beta += m.f_beta;
        for(std::size_t t = 0; t < kLevels; ++t) {
            p[t] += m.curve[t].precision;
            r[t] += m.curve[t].recall;
        }
    }
    rep.mean_mae /= n;
    rep.mean_threshold /= n;
    rep.mean_precision /= n;
    rep.mean_recall /= n;
    rep.mean_f_beta /= n;
    for(std::size_t t = 0; t < kLevels; ++t)
        rep.curve[t] = {static_cast<int>(t), p[t] / n, r[t] / n};
    rep.images = std::move(images);
    rep.failures = std::move(failures);
    return rep;
}

namespace eval_detail {
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}
} // namespace eval_detail

/// name,mae,T_a,precision,recall,f_beta
inline void write_report_csv(std::ostream& out, const EvalReport& rep) {
    using eval_detail::num;
    out << "name,mae,T_a,precision,recall,f_beta\n";
    for(const auto& m : rep.images)
        out << m.name << ',' << num(m.mae) << ',' << num(m.threshold) << ',' << num(m.precision) << ','
            << num(m.recall) << ',' << num(m.f_beta) << '\n';
}

/// threshold,mean_precision,mean_recall (256 rows)
inline void write_curve_csv(std::ostream& out, const EvalReport& rep) {
    using eval_detail::num;
    out << "threshold,mean_precision,mean_recall\n";
    for(const auto& pt : rep.curve)
        out << pt.threshold << ',' << num(pt.precision) << ',' << num(pt.recall) << '\n';
}

} // namespace ahsal
