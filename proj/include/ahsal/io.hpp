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

// Image file I/O (PNG, JPEG, BMP decode; PNG encode) on top of OpenCV's
// imgcodecs. This is the only header that needs OpenCV.

#pragma once

#include "ahsal/evaluation.hpp"
#include "ahsal/foreground.hpp"
#include "ahsal/imaging.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <string>
#include <vector>

namespace ahsal {

namespace io_detail {

inline const std::vector<int>& png_params() {
    static const std::vector<int> params = {cv::IMWRITE_PNG_COMPRESSION, 6};
    return params;
}

inline void write_png(const std::string& path, const cv::Mat& mat) {
    bool ok = false;
    try {
        ok = cv::imwrite(path, mat, png_params());
    } catch(const cv::Exception& e) {
        throw Error("cannot write " + path + ": " + e.what());
    }
    if(!ok)
        throw Error("cannot write " + path);
}

inline cv::Mat read(const std::string& path, int flags) {
    cv::Mat mat;
    try {
        mat = cv::imread(path, flags);
    } catch(const cv::Exception& e) {
        throw Error("cannot decode " + path + ": " + e.what());
    }
    if(mat.empty())
        throw Error("cannot read image " + path);
    return mat;
}

} // namespace io_detail

inline RgbImage load_rgb(const std::string& path) {
    const cv::Mat bgr = io_detail::read(path, cv::IMREAD_COLOR);
    RgbImage img(bgr.cols, bgr.rows);
    for(int y = 0; y < bgr.rows; ++y) {
        const auto* src = bgr.ptr<cv::Vec3b>(y);
        for(int x = 0; x < bgr.cols; ++x)
            img(x, y) = {src[x][2], src[x][1], src[x][0]};
    }
    return img;
}

inline void save_rgb_png(const std::string& path, const RgbImage& img) {
    cv::Mat bgr(img.height(), img.width(), CV_8UC3);
    for(int y = 0; y < img.height(); ++y) {
        auto* dst = bgr.ptr<cv::Vec3b>(y);
        for(int x = 0; x < img.width(); ++x) {
            const Rgb& p = img(x, y);
            dst[x] = {p.b, p.g, p.r};
        }
    }
    io_detail::write_png(path, bgr);
}

/// 8-bit grayscale PNG with value round(255 * v), v clamped to [0, 1].
inline void save_map_png(const std::string& path, const ScalarMap& m) {
    cv::Mat gray(m.height(), m.width(), CV_8UC1);
    for(int y = 0; y < m.height(); ++y) {
        auto* dst = gray.ptr<std::uint8_t>(y);
        for(int x = 0; x < m.width(); ++x)
            dst[x] = static_cast<std::uint8_t>(quantize(m(x, y)));
    }
    io_detail::write_png(path, gray);
}

/// Grayscale image as a [0, 1] map (value / 255).
inline ScalarMap load_map(const std::string& path) {
    const cv::Mat gray = io_detail::read(path, cv::IMREAD_GRAYSCALE);
    ScalarMap m(gray.cols, gray.rows);
    for(int y = 0; y < gray.rows; ++y) {
        const auto* src = gray.ptr<std::uint8_t>(y);
        for(int x = 0; x < gray.cols; ++x)
            m(x, y) = src[x] / 255.0;
    }
    return m;
}

/// Ground-truth mask, binarized at gray level 128.
inline GroundTruthMask load_mask(const std::string& path) {
    const cv::Mat gray = io_detail::read(path, cv::IMREAD_GRAYSCALE);
    GroundTruthMask m(gray.cols, gray.rows);
    for(int y = 0; y < gray.rows; ++y) {
        const auto* src = gray.ptr<std::uint8_t>(y);
        for(int x = 0; x < gray.cols; ++x)
            m(x, y) = src[x] >= 128 ? 1 : 0;
    }
    return m;
}

inline void save_mask_png(const std::string& path, const BinaryMap& m) {
    cv::Mat gray(m.height(), m.width(), CV_8UC1);
    for(int y = 0; y < m.height(); ++y) {
        auto* dst = gray.ptr<std::uint8_t>(y);
        for(int x = 0; x < m.width(); ++x)
            dst[x] = m(x, y) ? 255 : 0;
    }
    io_detail::write_png(path, gray);
}

/// Superpixel label map as a 16-bit PNG.
inline void save_labels_png16(const std::string& path, const Grid<int>& labels) {
    cv::Mat out(labels.height(), labels.width(), CV_16UC1);
    for(int y = 0; y < labels.height(); ++y) {
        auto* dst = out.ptr<std::uint16_t>(y);
        for(int x = 0; x < labels.width(); ++x) {
            if(labels(x, y) < 0 || labels(x, y) > 65535)
                throw Error("label does not fit a 16-bit PNG");
            dst[x] = static_cast<std::uint16_t>(labels(x, y));
        }
    }
    io_detail::write_png(path, out);
}

inline Grid<int> load_labels_png16(const std::string& path) {
    const cv::Mat in = io_detail::read(path, cv::IMREAD_UNCHANGED);
    if(in.type() != CV_16UC1)
        throw Error(path + " is not a 16-bit single-channel PNG");
    Grid<int> labels(in.cols, in.rows);
    for(int y = 0; y < in.rows; ++y)
        for(int x = 0; x < in.cols; ++x)
            labels(x, y) = in.at<std::uint16_t>(y, x);
    return labels;
}

/// The image with the margin rectangle drawn as a 2-pixel red outline.
inline RgbImage margin_overlay(const RgbImage& img, const MarginRect& m) {
    RgbImage out = img;
    const Rgb red{255, 0, 0};
    for(int k = 0; k < 2; ++k) {
        for(int x = m.l; x <= m.r; ++x) {
            out(x, std::min(m.t + k, m.b)) = red;
            out(x, std::max(m.b - k, m.t)) = red;
        }
        for(int y = m.t; y <= m.b; ++y) {
            out(std::min(m.l + k, m.r), y) = red;
            out(std::max(m.r - k, m.l), y) = red;
        }
    }
    return out;
}

} // namespace ahsal
