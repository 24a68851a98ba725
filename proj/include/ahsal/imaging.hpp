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

#include "ahsal/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace ahsal {

/// Dense row-major 2D grid. Every image and map in the library is a Grid.
template <typename T>
class Grid {
public:
    using value_type = T;

    Grid() = default;

    Grid(int width, int height, const T& fill = T{})
        : width_(width), height_(height) {
        if(width < 1 || height < 1)
            throw Error("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

    T& at(int x, int y) {
        check(x, y);
        return data_[index(x, y)];
    }
    const T& at(int x, int y) const {
        check(x, y);
        return data_[index(x, y)];
    }

    std::span<T> row(int y) noexcept { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
    std::span<const T> row(int y) const noexcept {
        return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
    }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    bool same_shape(const auto& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    bool operator==(const Grid&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }
    void check(int x, int y) const {
        if(x < 0 || y < 0 || x >= width_ || y >= height_)
            throw Error("pixel (" + std::to_string(x) + "," + std::to_string(y) + ") outside " +
                        std::to_string(width_) + "x" + std::to_string(height_) + " grid");
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

struct Lab {
    double l = 0, a = 0, b = 0;
    bool operator==(const Lab&) const = default;
};

inline double distance(const Lab& p, const Lab& q) noexcept {
    const double dl = p.l - q.l, da = p.a - q.a, db = p.b - q.b;
    return std::sqrt(dl * dl + da * da + db * db);
}

using RgbImage = Grid<Rgb>;
using LabImage = Grid<Lab>;
using ScalarMap = Grid<double>;

/// Throws unless both grids have identical dimensions.
inline void require_same_shape(const auto& a, const auto& b, const char* what) {
    if(!a.same_shape(b))
        throw Error(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + ")");
}

// ---------------------------------------------------------------------------
// Colour conversion: sRGB (IEC 61966-2-1) -> CIE XYZ -> CIE 1976 L*a*b*, D65.

namespace color {

inline constexpr std::array<double, 3> kD65White = {0.95047, 1.0, 1.08883};

inline constexpr std::array<std::array<double, 3>, 3> kSrgbToXyz = {{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

inline constexpr double kLabEpsilon = 216.0 / 24389.0;
inline constexpr double kLabKappa = 24389.0 / 27.0;

inline double srgb_to_linear(double v) noexcept {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

inline double lab_f(double t) noexcept {
    return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

/// 8-bit sRGB code value -> linear light, tabulated once.
inline const std::array<double, 256>& linear_table() {
    static const std::array<double, 256> table = [] {
        std::array<double, 256> t{};
        for(int i = 0; i < 256; ++i)
            t[static_cast<std::size_t>(i)] = srgb_to_linear(i / 255.0);
        return t;
    }();
    return table;
}

inline Lab to_lab(Rgb c) noexcept {
    const auto& lin = linear_table();
    const double r = lin[c.r], g = lin[c.g], b = lin[c.b];
    const auto& m = kSrgbToXyz;
    const double x = m[0][0] * r + m[0][1] * g + m[0][2] * b;
    const double y = m[1][0] * r + m[1][1] * g + m[1][2] * b;
    const double z = m[2][0] * r + m[2][1] * g + m[2][2] * b;
    const double fx = lab_f(x / kD65White[0]);
    const double fy = lab_f(y / kD65White[1]);
    const double fz = lab_f(z / kD65White[2]);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

} // namespace color

inline LabImage rgb_to_lab(const RgbImage& img) {
    LabImage out(img.width(), img.height());
    auto src = img.values();
    auto dst = out.values();
    for(std::size_t i = 0; i < src.size(); ++i)
        dst[i] = color::to_lab(src[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Integral images.

/// Accumulator wide enough that 8-megapixel sums of the source type do not
/// overflow or lose integer exactness.
template <typename T>
using integral_accumulator_t =
    std::conditional_t<std::is_integral_v<T>, std::int64_t, std::conditional_t<std::is_same_v<T, long double>, long double, double>>;

/// Zero-padded (W+1)x(H+1) summed-area table. Entry (x, y) holds the sum of
/// the source over [0, x) x [0, y).
template <typename Acc>
class IntegralMap {
public:
    using accumulator_type = Acc;

    IntegralMap() = default;

    template <typename T>
    explicit IntegralMap(const Grid<T>& src) : IntegralMap(src, [](const T& v) { return static_cast<Acc>(v); }) {}

    /// Builds the table over project(src(x, y)), e.g. a single colour channel.
    template <typename T, typename Projection>
    IntegralMap(const Grid<T>& src, Projection project)
        : width_(src.width()), height_(src.height()),
          sums_(static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_ + 1), Acc{}) {
        const std::size_t stride = static_cast<std::size_t>(width_) + 1;
        for(int y = 0; y < height_; ++y) {
            Acc row_sum{};
            const Acc* above = sums_.data() + static_cast<std::size_t>(y) * stride;
            Acc* here = sums_.data() + static_cast<std::size_t>(y + 1) * stride;
            auto src_row = src.row(y);
            for(int x = 0; x < width_; ++x) {
                row_sum += static_cast<Acc>(project(src_row[static_cast<std::size_t>(x)]));
                here[x + 1] = above[x + 1] + row_sum;
            }
        }
    }

    /// Source dimensions (the table itself is one larger in each direction).
    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    Acc operator()(int x, int y) const noexcept {
        return sums_[static_cast<std::size_t>(y) * (static_cast<std::size_t>(width_) + 1) + static_cast<std::size_t>(x)];
    }

    /// Sum over the inclusive pixel rectangle [l, r] x [t, b]. Empty when r < l or b < t.
    Acc rect_sum(int l, int t, int r, int b) const noexcept {
        if(r < l || b < t)
            return Acc{};
        return (*this)(r + 1, b + 1) - (*this)(l, b + 1) - (*this)(r + 1, t) + (*this)(l, t);
    }

    Acc total() const noexcept { return (*this)(width_, height_); }

    /// Sum of rows [0, y] over the full width.
    Acc rows_through(int y) const noexcept { return (*this)(width_, y + 1); }
    /// Sum of columns [0, x] over the full height.
    Acc cols_through(int x) const noexcept { return (*this)(x + 1, height_); }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Acc> sums_;
};

template <typename T>
IntegralMap<integral_accumulator_t<T>> integral_image(const Grid<T>& m) {
    return IntegralMap<integral_accumulator_t<T>>(m);
}

// ---------------------------------------------------------------------------
// Map utilities.

/// Affine rescale to [0, 1]. A constant map carries no information and maps to
/// all zeros.
inline ScalarMap normalize01(const ScalarMap& m) {
    auto vals = m.values();
    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    const double lo = *lo_it, hi = *hi_it;
    ScalarMap out(m.width(), m.height(), 0.0);
    if(!(hi > lo))
        return out;
    const double inv = 1.0 / (hi - lo);
    auto dst = out.values();
    for(std::size_t i = 0; i < vals.size(); ++i)
        dst[i] = std::clamp((vals[i] - lo) * inv, 0.0, 1.0);
    return out;
}

inline double map_max(const ScalarMap& m) {
    auto v = m.values();
    return *std::max_element(v.begin(), v.end());
}

inline double map_sum(const ScalarMap& m) {
    double s = 0;
    for(double v : m.values())
        s += v;
    return s;
}

inline bool all_finite(const ScalarMap& m) {
    return std::all_of(m.values().begin(), m.values().end(), [](double v) { return std::isfinite(v); });
}

} // namespace ahsal
