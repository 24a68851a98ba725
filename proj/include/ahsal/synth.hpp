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

// Synthetic salient-object benchmark images: a uniform or gently textured
// background carrying one convex object (ellipse or convex polygon) of a
// distinct colour, plus Gaussian pixel noise. Masks are exact.

#pragma once

#include "ahsal/evaluation.hpp"
#include "ahsal/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ahsal {

struct SynthParams {
    int width = 400;
    int height = 300;
    double noise_sigma = 5.0;     // 8-bit levels, i.e. 5/255 of full scale
    double min_area = 0.05;       // object area bounds as a frame fraction
    double max_area = 0.40;
    double min_color_distance = 40.0; // Lab distance object vs background
    double texture_amplitude = 10.0;  // 8-bit levels
};

struct SynthSample {
    RgbImage image;
    GroundTruthMask mask;
    bool textured = false;
    double area_fraction = 0;
};

namespace synth_detail {

struct Point {
    double x, y;
};

inline bool inside_convex(const std::vector<Point>& poly, double x, double y) {
    // Counter-clockwise polygon: the point must be left of every edge.
    for(std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        if((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) < 0)
            return false;
    }
    return true;
}

inline Rgb random_color(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> channel(0, 255);
    return {static_cast<std::uint8_t>(channel(rng)), static_cast<std::uint8_t>(channel(rng)),
            static_cast<std::uint8_t>(channel(rng))};
}

} // namespace synth_detail

/// Deterministic for a given (seed, index) and parameter set.
inline SynthSample synthesize(std::uint64_t seed, std::uint64_t index, const SynthParams& p = {}) {
    using namespace synth_detail;
    if(p.width < 16 || p.height < 16)
        throw Error("synthesize: frame must be at least 16x16");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double W = p.width, H = p.height;
    constexpr double pi = std::numbers::pi;

    SynthSample out;
    const Rgb background = random_color(rng);
    Rgb object = random_color(rng);
    for(int tries = 0; tries < 1000 && distance(color::to_lab(object), color::to_lab(background)) < p.min_color_distance;
        ++tries)
        object = random_color(rng);

    // Shape: convex polygon with vertices on an ellipse (an ellipse when the
    // vertex count is large), rescaled to the target area and placed fully
    // inside the frame.
    std::vector<Point> poly;
    for(int attempt = 0;; ++attempt) {
        if(attempt > 100)
            throw Error("synthesize: cannot place an object with the requested area");
        const double target = p.min_area + 0.1 * (p.max_area - p.min_area) + unit(rng) * 0.8 * (p.max_area - p.min_area);
        const bool ellipse = unit(rng) < 0.5;
        const int vertices = ellipse ? 96 : 5 + static_cast<int>(unit(rng) * 5);
        const double aspect = 0.6 + unit(rng);
        const double rotation = unit(rng) * pi;
        std::vector<double> angles;
        for(int k = 0; k < vertices; ++k)
            angles.push_back((k + (ellipse ? 0.0 : 0.35 * (unit(rng) - 0.5))) * 2 * pi / vertices);
        std::vector<Point> unit_poly;
        for(double a : angles) {
            const double ex = std::cos(a) * aspect, ey = std::sin(a);
            unit_poly.push_back({ex * std::cos(rotation) - ey * std::sin(rotation),
                                 ex * std::sin(rotation) + ey * std::cos(rotation)});
        }
        double area = 0;
        for(std::size_t i = 0; i < unit_poly.size(); ++i) {
            const Point& a = unit_poly[i];
            const Point& b = unit_poly[(i + 1) % unit_poly.size()];
            area += a.x * b.y - b.x * a.y;
        }
        area = std::abs(area) / 2;
        const double scale = std::sqrt(target * W * H / area);
        double minx = 1e9, maxx = -1e9, miny = 1e9, maxy = -1e9;
        for(auto& q : unit_poly) {
            q = {q.x * scale, q.y * scale};
            minx = std::min(minx, q.x);
            maxx = std::max(maxx, q.x);
            miny = std::min(miny, q.y);
            maxy = std::max(maxy, q.y);
        }
        const double margin = 4;
        const double free_x = W - 2 * margin - (maxx - minx), free_y = H - 2 * margin - (maxy - miny);
        if(free_x <= 0 || free_y <= 0)
            continue;
        const double ox = margin - minx + unit(rng) * free_x, oy = margin - miny + unit(rng) * free_y;
        poly.clear();
        for(const auto& q : unit_poly)
            poly.push_back({q.x + ox, q.y + oy});

        out.mask = GroundTruthMask(p.width, p.height, 0);
        long long on = 0;
        for(int y = 0; y < p.height; ++y)
            for(int x = 0; x < p.width; ++x)
                if(inside_convex(poly, x + 0.5, y + 0.5)) {
                    out.mask(x, y) = 1;
                    ++on;
                }
        out.area_fraction = static_cast<double>(on) / (W * H);
        if(out.area_fraction >= p.min_area && out.area_fraction <= p.max_area)
            break;
    }

    out.textured = unit(rng) < 0.5;
    const double fx = (0.5 + unit(rng) * 1.5) * 2 * pi / W, fy = (0.5 + unit(rng) * 1.5) * 2 * pi / H;
    const double phx = unit(rng) * 2 * pi, phy = unit(rng) * 2 * pi;
    std::normal_distribution<double> noise(0.0, p.noise_sigma);
    out.image = RgbImage(p.width, p.height);
    for(int y = 0; y < p.height; ++y)
        for(int x = 0; x < p.width; ++x) {
            const Rgb base = out.mask(x, y) ? object : background;
            const double shade = out.textured && !out.mask(x, y)
                                     ? p.texture_amplitude * std::sin(fx * x + phx) * std::cos(fy * y + phy)
                                     : 0.0;
            auto channel = [&](std::uint8_t v) {
                return static_cast<std::uint8_t>(std::clamp(std::lround(v + shade + noise(rng)), 0L, 255L));
            };
            out.image(x, y) = {channel(base.r), channel(base.g), channel(base.b)};
        }
    return out;
}

} // namespace ahsal
