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

// Benchmark directory layouts.
//
//   paired-dirs  <root>/{img,images,Imgs}/<stem>.<ext> with masks in
//                <root>/{gt,GT,masks,binarymasks,ground_truth}/<stem>.<ext>
//   msra1000     as paired-dirs, or one flat directory holding <stem>.jpg
//                images next to <stem>.png / <stem>.bmp masks
//   icoseg       <root>/images/<class>/<stem>.jpg with masks in
//                <root>/ground_truth/<class>/<stem>.png; pairs are named
//                "<class>/<stem>"

#pragma once

#include "ahsal/error.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ahsal {

enum class DatasetLayout { paired_dirs, msra1000, icoseg };

inline DatasetLayout parse_layout(const std::string& s) {
    if(s == "paired-dirs")
        return DatasetLayout::paired_dirs;
    if(s == "msra1000")
        return DatasetLayout::msra1000;
    if(s == "icoseg")
        return DatasetLayout::icoseg;
    throw Error("unknown dataset layout '" + s + "' (expected paired-dirs, msra1000 or icoseg)");
}

struct DatasetPair {
    std::string name;
    std::filesystem::path image;
    std::filesystem::path mask;
};

namespace dataset_detail {

namespace fs = std::filesystem;

inline std::string lower_ext(const fs::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e;
}

inline bool is_image(const fs::path& p) {
    const auto e = lower_ext(p);
    return e == ".jpg" || e == ".jpeg" || e == ".png" || e == ".bmp";
}

inline bool is_mask(const fs::path& p) {
    const auto e = lower_ext(p);
    return e == ".png" || e == ".bmp" || e == ".jpg";
}

/// Regular files in dir accepted by pred, keyed by stem. Where several files
/// share a stem, the first in extension priority order wins.
template <typename Pred>
std::map<std::string, fs::path> by_stem(const fs::path& dir, Pred pred, const std::vector<std::string>& priority) {
    std::map<std::string, fs::path> out;
    std::vector<fs::path> files;
    for(const auto& entry : fs::directory_iterator(dir))
        if(entry.is_regular_file() && pred(entry.path()))
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    auto rank = [&](const fs::path& p) {
        const auto it = std::find(priority.begin(), priority.end(), lower_ext(p));
        return static_cast<std::size_t>(it - priority.begin());
    };
    for(const auto& f : files) {
        auto [it, inserted] = out.emplace(f.stem().string(), f);
        if(!inserted && rank(f) < rank(it->second))
            it->second = f;
    }
    return out;
}

inline std::optional<fs::path> first_dir(const fs::path& root, std::initializer_list<const char*> names) {
    for(const char* n : names)
        if(fs::is_directory(root / n))
            return root / n;
    return std::nullopt;
}

inline void pair_dirs(const fs::path& img_dir, const fs::path& gt_dir, const std::string& prefix,
                      std::vector<DatasetPair>& out, Warnings* warnings) {
    const auto images = by_stem(img_dir, is_image, {".jpg", ".jpeg", ".png", ".bmp"});
    const auto masks = by_stem(gt_dir, is_mask, {".png", ".bmp", ".jpg"});
    for(const auto& [stem, path] : images) {
        const auto it = masks.find(stem);
        if(it == masks.end()) {
            warn(warnings, "dataset: no mask for " + path.string() + "; skipped");
            continue;
        }
        out.push_back({prefix + stem, path, it->second});
    }
}

} // namespace dataset_detail

/// Image/mask pairs found under root, sorted by name. Images without a mask
/// are skipped with a warning; finding no pair at all is an error.
inline std::vector<DatasetPair> load_dataset(const std::filesystem::path& root, DatasetLayout layout,
                                             Warnings* warnings = nullptr) {
    namespace fs = std::filesystem;
    using namespace dataset_detail;
    if(!fs::is_directory(root))
        throw Error("dataset root " + root.string() + " is not a directory");
    std::vector<DatasetPair> pairs;
    const auto img_dir = first_dir(root, {"img", "images", "Imgs", "Images"});
    const auto gt_dir = first_dir(root, {"gt", "GT", "masks", "binarymasks", "ground_truth", "GroundTruth"});

    switch(layout) {
    case DatasetLayout::paired_dirs:
        if(!img_dir || !gt_dir)
            throw Error("paired-dirs layout needs image and mask subdirectories under " + root.string());
        pair_dirs(*img_dir, *gt_dir, "", pairs, warnings);
        break;
    case DatasetLayout::msra1000:
        if(img_dir && gt_dir) {
            pair_dirs(*img_dir, *gt_dir, "", pairs, warnings);
        } else {
            // Flat layout: photographs are JPEG, masks are PNG/BMP.
            auto is_photo = [](const fs::path& p) {
                const auto e = lower_ext(p);
                return e == ".jpg" || e == ".jpeg";
            };
            auto is_flat_mask = [](const fs::path& p) {
                const auto e = lower_ext(p);
                return e == ".png" || e == ".bmp";
            };
            const auto images = by_stem(root, is_photo, {".jpg", ".jpeg"});
            const auto masks = by_stem(root, is_flat_mask, {".png", ".bmp"});
            for(const auto& [stem, path] : images) {
                const auto it = masks.find(stem);
                if(it == masks.end()) {
                    warn(warnings, "dataset: no mask for " + path.string() + "; skipped");
                    continue;
                }
                pairs.push_back({stem, path, it->second});
            }
        }
        break;
    case DatasetLayout::icoseg: {
        if(!img_dir || !gt_dir)
            throw Error("icoseg layout needs images/ and ground_truth/ under " + root.string());
        std::vector<fs::path> classes;
        for(const auto& entry : fs::directory_iterator(*img_dir))
            if(entry.is_directory())
                classes.push_back(entry.path());
        std::sort(classes.begin(), classes.end());
        for(const auto& cls : classes) {
            const auto gt_cls = *gt_dir / cls.filename();
            if(!fs::is_directory(gt_cls)) {
                warn(warnings, "dataset: no ground-truth folder for class " + cls.filename().string() + "; skipped");
                continue;
            }
            pair_dirs(cls, gt_cls, cls.filename().string() + "/", pairs, warnings);
        }
        break;
    }
    }
    if(pairs.empty())
        throw Error("dataset " + root.string() + ": no image/mask pairs found");
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return pairs;
}

} // namespace ahsal
