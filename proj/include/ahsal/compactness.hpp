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

#pragma once

#include "ahsal/slic.hpp"

#include <cmath>
#include <vector>

namespace ahsal {

struct Centroid {
    double x = 0, y = 0;
    bool fallback = false; // true when the weights were all zero
};

/// Weight-averaged pixel coordinate of the objectness-foreground map. An
/// all-zero map has no centre of interest; the image centre is used instead.
inline Centroid centroid_of_interest(const ScalarMap& of, Warnings* warnings = nullptr) {
    double sw = 0, sx = 0, sy = 0;
    for(int y = 0; y < of.height(); ++y) {
        auto row = of.row(y);
        for(int x = 0; x < of.width(); ++x) {
            const double w = row[static_cast<std::size_t>(x)];
            sw += w;
            sx += w * x;
            sy += w * y;
        }
    }
    if(!(sw > 0.0)) {
        warn(warnings, "compactness: objectness-foreground map is all zero; centroid falls back to the image centre");
        return {(of.width() - 1) / 2.0, (of.height() - 1) / 2.0, true};
    }
    return {sx / sw, sy / sw, false};
}

/// Superpixel containing the rounded centroid. A coordinate with fractional
/// part exactly one half touches two pixels; the lower superpixel index wins.
inline int source_superpixel(const Segmentation& seg, const Centroid& c) {
    const int W = seg.labels.width(), H = seg.labels.height();
    auto candidates = [](double v, int extent) {
        const double fl = std::floor(v);
        std::vector<int> out;
        if(v - fl == 0.5)
            out = {static_cast<int>(fl), static_cast<int>(fl) + 1};
        else
            out = {static_cast<int>(std::lround(v))};
        for(int& k : out)
            k = std::clamp(k, 0, extent - 1);
        return out;
    };
    int best = -1;
    for(int x : candidates(c.x, W))
        for(int y : candidates(c.y, H))
            if(best < 0 || seg.labels(x, y) < best)
                best = seg.labels(x, y);
    return best;
}

/// Superpixel adjacency graph with one objectness-foreground value per vertex.
struct RegionGraph {
    std::vector<std::vector<int>> adjacency; // sorted, no self-loops
    std::vector<double> of;

    int size() const noexcept { return static_cast<int>(adjacency.size()); }
};

/// Mean of a map over each superpixel.
inline std::vector<double> superpixel_means(const Segmentation& seg, const ScalarMap& m) {
    require_same_shape(seg.labels, m, "superpixel_means");
    std::vector<double> sums(static_cast<std::size_t>(seg.count()), 0.0);
    std::vector<long long> counts(static_cast<std::size_t>(seg.count()), 0);
    auto labels = seg.labels.values();
    auto vals = m.values();
    for(std::size_t i = 0; i < labels.size(); ++i) {
        sums[static_cast<std::size_t>(labels[i])] += vals[i];
        ++counts[static_cast<std::size_t>(labels[i])];
    }
    for(std::size_t k = 0; k < sums.size(); ++k)
        sums[k] = counts[k] ? sums[k] / static_cast<double>(counts[k]) : 0.0;
    return sums;
}

/// Two superpixels are adjacent when they share a horizontal or vertical pixel edge.
inline RegionGraph build_region_graph(const Segmentation& seg, std::vector<double> of_values) {
    if(static_cast<int>(of_values.size()) != seg.count())
        throw Error("build_region_graph: one value per superpixel required");
    RegionGraph g;
    g.adjacency.resize(static_cast<std::size_t>(seg.count()));
    g.of = std::move(of_values);
    const auto& L = seg.labels;
    auto link = [&](int a, int b) {
        if(a == b)
            return;
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
    };
    for(int y = 0; y < L.height(); ++y)
        for(int x = 0; x < L.width(); ++x) {
            if(x + 1 < L.width())
                link(L(x, y), L(x + 1, y));
            if(y + 1 < L.height())
                link(L(x, y), L(x, y + 1));
        }
    for(auto& list : g.adjacency) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return g;
}

struct Propagation {
    std::vector<double> c;
    int rounds = 0; // worklist generations processed
};

inline constexpr double kRelaxTolerance = 1e-12;

/// Worklist relaxation c(v_j) <- sqrt(c(v_i) * OF(v_j)) from the source
/// superpixel. The source is seeded with its own value (a zero seed would
/// keep every relaxation at zero). Only vertices whose value rose by more
/// than the tolerance are expanded in the next generation; vertices that the
/// source cannot reach keep zero.
inline Propagation propagate_compactness(const RegionGraph& g, int source, double tolerance = kRelaxTolerance) {
    if(source < 0 || source >= g.size())
        throw Error("propagate_compactness: source vertex " + std::to_string(source) + " not in graph");
    Propagation p;
    p.c.assign(static_cast<std::size_t>(g.size()), 0.0);
    p.c[static_cast<std::size_t>(source)] = g.of[static_cast<std::size_t>(source)];

    std::vector<int> current{source}, next;
    std::vector<char> queued(static_cast<std::size_t>(g.size()), 0);
    while(!current.empty()) {
        ++p.rounds;
        for(int vi : current) {
            for(int vj : g.adjacency[static_cast<std::size_t>(vi)]) {
                const double cand = std::sqrt(p.c[static_cast<std::size_t>(vi)] * g.of[static_cast<std::size_t>(vj)]);
                double& cj = p.c[static_cast<std::size_t>(vj)];
                if(cand > cj) {
                    const bool significant = cand - cj > tolerance;
                    cj = cand;
                    if(significant && !queued[static_cast<std::size_t>(vj)]) {
                        queued[static_cast<std::size_t>(vj)] = 1;
                        next.push_back(vj);
                    }
                }
            }
        }
        for(int v : next)
            queued[static_cast<std::size_t>(v)] = 0;
        current.swap(next);
        next.clear();
    }
    return p;
}

/// Per-pixel lookup of the superpixel's compactness, normalized.
inline ScalarMap compactness_map(const Segmentation& seg, const std::vector<double>& c) {
    if(static_cast<int>(c.size()) != seg.count())
        throw Error("compactness_map: one value per superpixel required");
    ScalarMap cn(seg.labels.width(), seg.labels.height());
    auto labels = seg.labels.values();
    auto dst = cn.values();
    for(std::size_t i = 0; i < labels.size(); ++i)
        dst[i] = c[static_cast<std::size_t>(labels[i])];
    return normalize01(cn);
}

} // namespace ahsal
