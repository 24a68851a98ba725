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

#include "ahsal/imaging.hpp"

#include <array>
#include <string>

namespace ahsal {

/// Inclusive bounding rectangle of the salient object.
struct MarginRect {
    int l = 0, t = 0, r = 0, b = 0;
    bool operator==(const MarginRect&) const = default;
};

/// Sweeps objectness mass inwards from each side. t is the first row at which
/// the rows [0, t] hold at least theta of the total mass; b, l and r are the
/// mirror-image scans. All four scans read the same integral image.
inline MarginRect estimate_margins(const ScalarMap& ob, double theta = 0.1) {
    if(!(theta > 0.0 && theta <= 0.5))
        throw Error("estimate_margins: theta must lie in (0, 0.5]");
    for(double v : ob.values())
        if(!(v >= 0.0) || !std::isfinite(v))
            throw Error("estimate_margins: objectness must be finite and nonnegative");
    const auto integral = integral_image(ob);
    const double total = integral.total();
    if(!(total > 0.0))
        throw Error("empty objectness");
    const double need = theta * total;
    const int W = ob.width(), H = ob.height();

    MarginRect m{0, 0, W - 1, H - 1};
    for(m.t = 0; m.t < H - 1 && integral.rows_through(m.t) < need; ++m.t) {}
    for(m.b = H - 1; m.b > 0 && total - integral.rows_through(m.b - 1) < need; --m.b) {}
    for(m.l = 0; m.l < W - 1 && integral.cols_through(m.l) < need; ++m.l) {}
    for(m.r = W - 1; m.r > 0 && total - integral.cols_through(m.r - 1) < need; --m.r) {}
    return m;
}

struct Band {
    int l = 0, t = 0, r = -1, b = -1; // inclusive; empty when r < l or b < t
    Lab mean;
    bool degenerate = true;

    long long area() const noexcept {
        return (r < l || b < t) ? 0 : static_cast<long long>(r - l + 1) * (b - t + 1);
    }
};

/// The exterior of a MarginRect split into a frame: full-width top and bottom
/// bands plus left and right bands spanning rows [t, b].
struct BackgroundBands {
    std::array<Band, 4> bands; // top, bottom, left, right

    int usable() const noexcept {
        int n = 0;
        for(const auto& band : bands)
            n += band.degenerate ? 0 : 1;
        return n;
    }
};

inline BackgroundBands background_bands(const LabImage& img, const MarginRect& m) {
    const int W = img.width(), H = img.height();
    if(!(0 <= m.l && m.l <= m.r && m.r < W && 0 <= m.t && m.t <= m.b && m.b < H))
        throw Error("background_bands: margin rectangle outside the image");
    const IntegralMap<double> sl(img, [](const Lab& p) { return p.l; });
    const IntegralMap<double> sa(img, [](const Lab& p) { return p.a; });
    const IntegralMap<double> sb(img, [](const Lab& p) { return p.b; });

    BackgroundBands out;
    out.bands[0] = {0, 0, W - 1, m.t - 1, {}, true};
    out.bands[1] = {0, m.b + 1, W - 1, H - 1, {}, true};
    out.bands[2] = {0, m.t, m.l - 1, m.b, {}, true};
    out.bands[3] = {m.r + 1, m.t, W - 1, m.b, {}, true};
    for(auto& band : out.bands) {
        const long long n = band.area();
        if(n == 0)
            continue;
        const double inv = 1.0 / static_cast<double>(n);
        band.mean = {sl.rect_sum(band.l, band.t, band.r, band.b) * inv, sa.rect_sum(band.l, band.t, band.r, band.b) * inv,
                     sb.rect_sum(band.l, band.t, band.r, band.b) * inv};
        band.degenerate = false;
    }
    return out;
}

/// Product of Lab distances to every non-degenerate band mean, normalized.
/// Degenerate bands are left out of the product; if none remain the
/// foreground cue is uninformative and the map is all zeros.
inline ScalarMap foreground_map(const LabImage& img, const BackgroundBands& bands, Warnings* warnings = nullptr) {
    ScalarMap fg(img.width(), img.height(), 0.0);
    if(bands.usable() == 0) {
        warn(warnings, "foreground: every background band is empty; foreground map set to zero");
        return fg;
    }
    auto src = img.values();
    auto dst = fg.values();
    for(std::size_t i = 0; i < src.size(); ++i) {
        double prod = 1.0;
        for(const auto& band : bands.bands)
            if(!band.degenerate)
                prod *= distance(src[i], band.mean);
        dst[i] = prod;
    }
    return normalize01(fg);
}

} // namespace ahsal
