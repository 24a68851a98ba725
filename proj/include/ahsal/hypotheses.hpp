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

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ahsal {

/// Candidate object box with inclusive pixel bounds.
struct HypothesisWindow {
    int l = 0, t = 0, r = 0, b = 0;
    std::optional<double> score;

    int width() const noexcept { return r - l + 1; }
    int height() const noexcept { return b - t + 1; }
    long long area() const noexcept { return static_cast<long long>(width()) * height(); }

    bool inside(int frame_w, int frame_h) const noexcept {
        return 0 <= l && l <= r && r < frame_w && 0 <= t && t <= b && b < frame_h;
    }
    bool contains(int x, int y) const noexcept { return l <= x && x <= r && t <= y && y <= b; }

    bool operator==(const HypothesisWindow&) const = default;
};

using ProposalSet = std::vector<HypothesisWindow>;

inline double iou(const HypothesisWindow& p, const HypothesisWindow& q) noexcept {
    const int iw = std::min(p.r, q.r) - std::max(p.l, q.l) + 1;
    const int ih = std::min(p.b, q.b) - std::max(p.t, q.t) + 1;
    if(iw <= 0 || ih <= 0)
        return 0.0;
    const double inter = static_cast<double>(iw) * ih;
    return inter / (static_cast<double>(p.area()) + static_cast<double>(q.area()) - inter);
}

/// Per-pixel count of covering windows (unnormalized objectness).
///
/// Each window adds +1/-1 at its four corners of a (W+1)x(H+1) difference
/// table; a 2D prefix sum then yields the coverage count in O(n + W*H).
inline ScalarMap accumulate_hypotheses(const ProposalSet& props, int width, int height) {
    if(props.empty())
        throw Error("no hypotheses");
    if(width < 1 || height < 1)
        throw Error("accumulate_hypotheses: invalid frame size");
    const std::size_t stride = static_cast<std::size_t>(width) + 1;
    std::vector<std::int64_t> diff(stride * (static_cast<std::size_t>(height) + 1), 0);
    auto at = [&](int x, int y) -> std::int64_t& {
        return diff[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x)];
    };
    for(std::size_t i = 0; i < props.size(); ++i) {
        const auto& w = props[i];
        if(!w.inside(width, height))
            throw Error("hypothesis " + std::to_string(i) + " (" + std::to_string(w.l) + "," + std::to_string(w.t) +
                        "," + std::to_string(w.r) + "," + std::to_string(w.b) + ") outside " +
                        std::to_string(width) + "x" + std::to_string(height) + " frame");
        at(w.l, w.t) += 1;
        at(w.r + 1, w.t) -= 1;
        at(w.l, w.b + 1) -= 1;
        at(w.r + 1, w.b + 1) += 1;
    }
    ScalarMap ob(width, height);
    std::vector<std::int64_t> col(static_cast<std::size_t>(width), 0);
    for(int y = 0; y < height; ++y) {
        std::int64_t run = 0;
        for(int x = 0; x < width; ++x) {
            run += at(x, y);
            col[static_cast<std::size_t>(x)] += run;
            ob(x, y) = static_cast<double>(col[static_cast<std::size_t>(x)]);
        }
    }
    return ob;
}

struct ExtendedImage {
    RgbImage image;
    int offset_x = 0;
    int offset_y = 0;
};

/// Border width for one side: ceil(ratio * extent), guarded against
/// representation error in ratio (0.1 * 70 must give 7, not 8).
inline int border_extent(double ratio, int extent) {
    return static_cast<int>(std::ceil(ratio * extent - 1e-9));
}

/// Pads every side with a band of ceil(ratio*W) / ceil(ratio*H) pixels filled
/// with the rounded mean sRGB colour of the image.
inline ExtendedImage extend_image(const RgbImage& img, double ratio = 0.1) {
    if(!(ratio > 0.0 && ratio <= 0.5))
        throw Error("extend_image: border ratio must lie in (0, 0.5]");
    const int bx = border_extent(ratio, img.width());
    const int by = border_extent(ratio, img.height());
    std::uint64_t sr = 0, sg = 0, sb = 0;
    for(const Rgb& p : img.values()) {
        sr += p.r;
        sg += p.g;
        sb += p.b;
    }
    const double n = static_cast<double>(img.size());
    auto mean = [n](std::uint64_t s) { return static_cast<std::uint8_t>(std::lround(static_cast<double>(s) / n)); };
    const Rgb fill{mean(sr), mean(sg), mean(sb)};

    ExtendedImage out{RgbImage(img.width() + 2 * bx, img.height() + 2 * by, fill), bx, by};
    for(int y = 0; y < img.height(); ++y) {
        auto src = img.row(y);
        std::copy(src.begin(), src.end(), out.image.row(y + by).begin() + bx);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Proposal CSV: one window per line "l,t,r,b[,score]", zero-based inclusive
// coordinates in the original image frame; '#' starts a comment line.

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if(first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while(true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if(pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    if(s.empty())
        return false;
    if constexpr(std::is_floating_point_v<T>) {
        // std::from_chars for double is unavailable on some toolchains still in use.
        std::string tmp(s);
        char* end = nullptr;
        out = std::strtod(tmp.c_str(), &end);
        return end == tmp.c_str() + tmp.size() && std::isfinite(out);
    } else {
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && ptr == s.data() + s.size();
    }
}

} // namespace detail

inline ProposalSet parse_proposals(std::istream& in, const std::string& source = "<stream>") {
    ProposalSet props;
    std::string line;
    int line_no = 0;
    while(std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if(text.empty() || text.front() == '#')
            continue;
        const auto fields = detail::split(text, ',');
        auto fail = [&](const std::string& why) {
            return Error(source + ":" + std::to_string(line_no) + ": " + why);
        };
        if(fields.size() != 4 && fields.size() != 5)
            throw fail("expected l,t,r,b[,score]");
        HypothesisWindow w;
        int* coords[4] = {&w.l, &w.t, &w.r, &w.b};
        for(int k = 0; k < 4; ++k)
            if(!detail::parse_number(fields[static_cast<std::size_t>(k)], *coords[k]))
                throw fail("malformed coordinate '" + std::string(fields[static_cast<std::size_t>(k)]) + "'");
        if(fields.size() == 5) {
            double s = 0;
            if(!detail::parse_number(fields[4], s))
                throw fail("malformed score '" + std::string(fields[4]) + "'");
            w.score = s;
        }
        if(w.l < 0 || w.t < 0)
            throw fail("negative coordinate");
        if(w.r < w.l || w.b < w.t)
            throw fail("window has r < l or b < t");
        props.push_back(w);
    }
    return props;
}

inline ProposalSet load_proposals(const std::string& path) {
    std::ifstream in(path);
    if(!in)
        throw Error("cannot open proposal file " + path);
    return parse_proposals(in, path);
}

inline void write_proposals(std::ostream& out, const ProposalSet& props) {
    out << "# l,t,r,b,score\n";
    for(const auto& w : props) {
        out << w.l << ',' << w.t << ',' << w.r << ',' << w.b;
        if(w.score) {
            std::ostringstream s;
            s.precision(9);
            s << *w.score;
            out << ',' << s.str();
        }
        out << '\n';
    }
}

} // namespace ahsal
