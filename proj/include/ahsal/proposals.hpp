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

// Untrained normed-gradient window proposals.
//
// For each (window width, window height) pair on a power-of-two grid the
// image is area-resampled so that one window becomes an 8x8 cell patch. A
// normed gradient (|gx| + |gy|, max over channels, capped at 255) is taken on
// the resampled image and every 8x8 patch is scored against a fixed template
// that rewards gradient on the patch perimeter and penalises gradient in the
// interior, i.e. it prefers windows whose boundary follows a closed contour.
// Greedy non-maximum suppression runs per scale; the survivors of all scales
// are ranked by score.

#pragma once

#include "ahsal/hypotheses.hpp"
#include "ahsal/imaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace ahsal {

struct ProposalParams {
    /// Candidate window side lengths, applied independently to width and height.
    std::vector<int> sizes = {16, 32, 64, 128, 256, 512};
    /// Width/height pairs more elongated than this are not scored. The default
    /// admits every pair of the default size grid.
    double max_aspect = 32.0;
    /// Chebyshev radius (in patch-grid cells) of per-scale suppression.
    int nms_radius = 1;
    /// Template weight per ring of the 8x8 patch, outer border first.
    std::array<double, 4> ring_weights = {1.0, 0.25, -0.5, -1.0};
};

namespace proposals_detail {

inline constexpr int kPatch = 8;

inline std::array<double, kPatch * kPatch> template_weights(const std::array<double, kPatch / 2>& rings) {
    std::array<double, kPatch * kPatch> t{};
    for(int y = 0; y < kPatch; ++y)
        for(int x = 0; x < kPatch; ++x) {
            const int ring = std::min({x, y, kPatch - 1 - x, kPatch - 1 - y});
            t[static_cast<std::size_t>(y * kPatch + x)] = rings[static_cast<std::size_t>(ring)] / (kPatch * kPatch);
        }
    return t;
}

struct ChannelSums {
    IntegralMap<std::int64_t> r, g, b;
    explicit ChannelSums(const RgbImage& img)
        : r(img, [](const Rgb& p) { return p.r; }), g(img, [](const Rgb& p) { return p.g; }),
          b(img, [](const Rgb& p) { return p.b; }) {}
};

/// Cell boundary k of n cells along an extent, in source pixels.
inline int cell_edge(int k, int n, int extent) {
    return static_cast<int>(static_cast<long long>(k) * extent / n);
}

/// Normed gradient of the image area-resampled to cols x rows cells.
inline Grid<double> resampled_gradient(const ChannelSums& sums, int src_w, int src_h, int cols, int rows) {
    Grid<std::array<double, 3>> cells(cols, rows);
    for(int j = 0; j < rows; ++j) {
        const int t = cell_edge(j, rows, src_h), b = cell_edge(j + 1, rows, src_h) - 1;
        for(int i = 0; i < cols; ++i) {
            const int l = cell_edge(i, cols, src_w), r = cell_edge(i + 1, cols, src_w) - 1;
            const double n = static_cast<double>(r - l + 1) * (b - t + 1);
            cells(i, j) = {sums.r.rect_sum(l, t, r, b) / n, sums.g.rect_sum(l, t, r, b) / n,
                           sums.b.rect_sum(l, t, r, b) / n};
        }
    }
    Grid<double> grad(cols, rows);
    for(int j = 0; j < rows; ++j)
        for(int i = 0; i < cols; ++i) {
            const auto& left = cells(std::max(i - 1, 0), j);
            const auto& right = cells(std::min(i + 1, cols - 1), j);
            const auto& up = cells(i, std::max(j - 1, 0));
            const auto& down = cells(i, std::min(j + 1, rows - 1));
            double g = 0;
            for(std::size_t c = 0; c < 3; ++c)
                g = std::max(g, std::abs(right[c] - left[c]) + std::abs(down[c] - up[c]));
            grad(i, j) = std::min(g, 255.0);
        }
    return grad;
}

struct Candidate {
    double score;
    HypothesisWindow window;
};

} // namespace proposals_detail

/// Ranks windows on the size grid by normed-gradient objectness and returns
/// the best n_p (fewer when the grid yields fewer). Deterministic; ties keep
/// generation order (width size, height size, row, column).
inline ProposalSet generate_proposals(const RgbImage& img, int n_p = 1000, const ProposalParams& params = {}) {
    using namespace proposals_detail;
    if(img.width() < 16 || img.height() < 16)
        throw Error("generate_proposals: image must be at least 16x16");
    if(n_p < 1)
        throw Error("generate_proposals: n_p must be positive");

    const int W = img.width(), H = img.height();
    const ChannelSums sums(img);
    const auto weights = template_weights(params.ring_weights);

    std::vector<Candidate> ranked;
    for(int win_w : params.sizes) {
        if(win_w > W || win_w < kPatch)
            continue;
        for(int win_h : params.sizes) {
            if(win_h > H || win_h < kPatch)
                continue;
            if(std::max(win_w, win_h) > params.max_aspect * std::min(win_w, win_h))
                continue;
            const int cols = std::max(kPatch, static_cast<int>(std::lround(static_cast<double>(W) * kPatch / win_w)));
            const int rows = std::max(kPatch, static_cast<int>(std::lround(static_cast<double>(H) * kPatch / win_h)));
            const Grid<double> grad = resampled_gradient(sums, W, H, cols, rows);

            const int px = cols - kPatch + 1, py = rows - kPatch + 1;
            Grid<double> scores(px, py);
            for(int j = 0; j < py; ++j)
                for(int i = 0; i < px; ++i) {
                    double s = 0;
                    for(int v = 0; v < kPatch; ++v) {
                        auto g = grad.row(j + v).subspan(static_cast<std::size_t>(i), kPatch);
                        for(int u = 0; u < kPatch; ++u)
                            s += weights[static_cast<std::size_t>(v * kPatch + u)] * g[static_cast<std::size_t>(u)];
                    }
                    scores(i, j) = s;
                }

            std::vector<int> order(scores.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return scores.values()[static_cast<std::size_t>(a)] > scores.values()[static_cast<std::size_t>(b)]; });
            Grid<std::uint8_t> suppressed(px, py, 0);
            for(int idx : order) {
                const int i = idx % px, j = idx / px;
                if(suppressed(i, j))
                    continue;
                const int rad = params.nms_radius;
                for(int v = std::max(0, j - rad); v <= std::min(py - 1, j + rad); ++v)
                    for(int u = std::max(0, i - rad); u <= std::min(px - 1, i + rad); ++u)
                        suppressed(u, v) = 1;
                HypothesisWindow w;
                w.l = cell_edge(i, cols, W);
                w.r = cell_edge(i + kPatch, cols, W) - 1;
                w.t = cell_edge(j, rows, H);
                w.b = cell_edge(j + kPatch, rows, H) - 1;
                w.score = scores(i, j);
                ranked.push_back({scores(i, j), w});
            }
        }
    }
    // Per-scale survivors are already in score order; the stable merge keeps
    // the deterministic generation order among equal scores.
    std::stable_sort(ranked.begin(), ranked.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    if(ranked.size() > static_cast<std::size_t>(n_p))
        ranked.resize(static_cast<std::size_t>(n_p));

    ProposalSet out;
    out.reserve(ranked.size());
    for(auto& c : ranked)
        out.push_back(c.window);
    return out;
}

} // namespace ahsal
