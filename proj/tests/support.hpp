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


// Seeded input generators and brute-force reference implementations shared
// by the unit tests and the acceptance runner.

#pragma once

#include "ahsal/ahsal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace ahsal::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    ScalarMap real_map(int w, int h, double lo = 0.0, double hi = 1.0) {
        ScalarMap m(w, h);
        for(double& v : m.values())
            v = real(lo, hi);
        return m;
    }

    Grid<int> int_map(int w, int h, int lo, int hi) {
        Grid<int> m(w, h);
        for(int& v : m.values())
            v = integer(lo, hi);
        return m;
    }

    /// Map with exact zeros in a random fraction of pixels, so scans hit ties.
    ScalarMap sparse_map(int w, int h) {
        const double keep = real(0.05, 1.0);
        ScalarMap m(w, h);
        for(double& v : m.values())
            v = coin(keep) ? real() : 0.0;
        if(!(map_max(m) > 0.0))
            m(integer(0, w - 1), integer(0, h - 1)) = 1.0;
        return m;
    }

    HypothesisWindow window(int w, int h) {
        int l = integer(0, w - 1), r = integer(0, w - 1);
        int t = integer(0, h - 1), b = integer(0, h - 1);
        if(l > r)
            std::swap(l, r);
        if(t > b)
            std::swap(t, b);
        return {l, t, r, b, std::nullopt};
    }

    RgbImage rgb_image(int w, int h) {
        RgbImage img(w, h);
        for(Rgb& p : img.values())
            p = {static_cast<std::uint8_t>(integer(0, 255)), static_cast<std::uint8_t>(integer(0, 255)),
                 static_cast<std::uint8_t>(integer(0, 255))};
        return img;
    }

    /// Connected graph: a random spanning tree plus extra random edges.
    RegionGraph connected_graph(int n) {
        RegionGraph g;
        g.adjacency.assign(static_cast<std::size_t>(n), {});
        g.of.resize(static_cast<std::size_t>(n));
        for(double& v : g.of)
            v = real();
        auto link = [&](int a, int b) {
            auto& la = g.adjacency[static_cast<std::size_t>(a)];
            if(a == b || std::find(la.begin(), la.end(), b) != la.end())
                return;
            la.push_back(b);
            g.adjacency[static_cast<std::size_t>(b)].push_back(a);
        };
        for(int v = 1; v < n; ++v)
            link(v, integer(0, v - 1));
        const int extra = integer(0, n);
        for(int k = 0; k < extra; ++k)
            link(integer(0, n - 1), integer(0, n - 1));
        for(auto& list : g.adjacency)
            std::sort(list.begin(), list.end());
        return g;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Reference implementations.

template <typename T>
auto naive_rect_sum(const Grid<T>& m, int l, int t, int r, int b) {
    integral_accumulator_t<T> s{};
    for(int y = t; y <= b; ++y)
        for(int x = l; x <= r; ++x)
            s += static_cast<integral_accumulator_t<T>>(m(x, y));
    return s;
}

/// Margin scan by summing rows/columns from scratch at every step.
inline MarginRect naive_margins(const ScalarMap& ob, double theta) {
    const int W = ob.width(), H = ob.height();
    double total = 0;
    for(int y = 0; y < H; ++y)
        for(int x = 0; x < W; ++x)
            total += ob(x, y);
    const double need = theta * total;
    auto row_sum = [&](int y0, int y1) {
        double s = 0;
        for(int y = y0; y <= y1; ++y)
            for(int x = 0; x < W; ++x)
                s += ob(x, y);
        return s;
    };
    auto col_sum = [&](int x0, int x1) {
        double s = 0;
        for(int y = 0; y < H; ++y)
            for(int x = x0; x <= x1; ++x)
                s += ob(x, y);
        return s;
    };
    MarginRect m{0, 0, W - 1, H - 1};
    m.t = H - 1;
    for(int y = 0; y < H; ++y)
        if(row_sum(0, y) >= need) {
            m.t = y;
            break;
        }
    m.b = 0;
    for(int y = H - 1; y >= 0; --y)
        if(row_sum(y, H - 1) >= need) {
            m.b = y;
            break;
        }
    m.l = W - 1;
    for(int x = 0; x < W; ++x)
        if(col_sum(0, x) >= need) {
            m.l = x;
            break;
        }
    m.r = 0;
    for(int x = W - 1; x >= 0; --x)
        if(col_sum(x, W - 1) >= need) {
            m.r = x;
            break;
        }
    return m;
}

/// Coverage count by testing every pixel against every window.
inline ScalarMap rasterize(const ProposalSet& props, int w, int h) {
    ScalarMap m(w, h, 0.0);
    for(const auto& p : props)
        for(int y = 0; y < h; ++y)
            for(int x = 0; x < w; ++x)
                if(p.l <= x && x <= p.r && p.t <= y && y <= p.b)
                    m(x, y) += 1.0;
    return m;
}

/// Global relaxation over every edge in both directions until a full sweep
/// changes nothing.
inline std::vector<double> fixed_point_compactness(const RegionGraph& g, int source) {
    std::vector<double> c(g.of.size(), 0.0);
    c[static_cast<std::size_t>(source)] = g.of[static_cast<std::size_t>(source)];
    for(int sweep = 0; sweep < 1'000'000; ++sweep) {
        bool changed = false;
        for(std::size_t u = 0; u < g.adjacency.size(); ++u)
            for(int v : g.adjacency[u]) {
                const double cand = std::sqrt(c[u] * g.of[static_cast<std::size_t>(v)]);
                if(cand > c[static_cast<std::size_t>(v)]) {
                    c[static_cast<std::size_t>(v)] = cand;
                    changed = true;
                }
            }
        if(!changed)
            break;
    }
    return c;
}

/// CIE 1976 L*a*b* (D65) from 8-bit sRGB, written out from the published
/// formulas independently of the library code.
inline Lab reference_lab(int r8, int g8, int b8) {
    auto lin = [](int v) {
        const double c = v / 255.0;
        return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    };
    const double r = lin(r8), g = lin(g8), b = lin(b8);
    const double X = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double Y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double Z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    auto f = [](double t) {
        const double e = 0.008856451679035631, k = 903.2962962962963;
        return t > e ? std::cbrt(t) : (k * t + 16.0) / 116.0;
    };
    const double fx = f(X / 0.95047), fy = f(Y / 1.0), fz = f(Z / 1.08883);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

/// Number of pixels at or above a level.
inline std::size_t count_at_least(const ScalarMap& m, double level) {
    return static_cast<std::size_t>(std::count_if(m.values().begin(), m.values().end(), [&](double v) { return v >= level; }));
}

} // namespace ahsal::testing
