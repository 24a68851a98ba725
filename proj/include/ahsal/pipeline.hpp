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

#include "ahsal/compactness.hpp"
#include "ahsal/foreground.hpp"
#include "ahsal/objectness.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ahsal {

enum class ProposalSource { generated, file };

struct PipelineConfig {
    int n_p = 1000;
    double theta = 0.1;
    int n_sp = 100;
    double border_ratio = 0.1;
    ProposalSource proposal_source = ProposalSource::generated;
    /// Original-frame windows, required when proposal_source == file.
    std::optional<ProposalSet> proposals;
    /// The top (100 - p)% of pixels must reach 0.5 after rescaling.
    double rescale_percentile = 90.0;
    double slic_compactness = 10.0;
    ProposalParams proposal_params;

    void validate() const {
        auto bad = [](const std::string& what) { return Error("invalid config: " + what); };
        if(n_p < 1)
            throw bad("n_p must be >= 1");
        if(!(theta > 0.0 && theta <= 0.5))
            throw bad("theta must lie in (0, 0.5]");
        if(n_sp < 1)
            throw bad("n_sp must be >= 1");
        if(!(border_ratio > 0.0 && border_ratio <= 0.5))
            throw bad("border_ratio must lie in (0, 0.5]");
        if(!(rescale_percentile > 0.0 && rescale_percentile < 100.0))
            throw bad("rescale_percentile must lie in (0, 100)");
        if(!(slic_compactness > 0.0))
            throw bad("slic_compactness must be positive");
        if(proposal_source == ProposalSource::file && !proposals)
            throw bad("proposal_source=file needs a proposal set");
    }
};

struct StageTiming {
    std::string stage;
    double ms = 0;
};

struct SaliencyResult {
    ScalarMap saliency;
    ScalarMap ob, fg, of, cn;
    MarginRect margin;
    Centroid centroid;
    int source_superpixel = 0;
    Segmentation segmentation;
    std::vector<double> superpixel_of;
    std::vector<double> compactness;
    std::size_t proposal_count = 0;
    double gamma = 1.0;
    std::vector<StageTiming> timings;
    double total_ms = 0;
    Warnings warnings;
};

inline ScalarMap of_map(const ScalarMap& ob, const ScalarMap& fg) {
    require_same_shape(ob, fg, "of_map");
    ScalarMap out(ob.width(), ob.height());
    for(std::size_t i = 0; i < out.size(); ++i)
        out.values()[i] = ob.values()[i] * fg.values()[i];
    return out;
}

inline ScalarMap fuse(const ScalarMap& ob, const ScalarMap& fg, const ScalarMap& cn) {
    require_same_shape(ob, fg, "fuse");
    require_same_shape(ob, cn, "fuse");
    ScalarMap out(ob.width(), ob.height());
    for(std::size_t i = 0; i < out.size(); ++i)
        out.values()[i] = ob.values()[i] * fg.values()[i] * cn.values()[i];
    return out;
}

/// Normalizes to [0, 1], then, if fewer than (100 - percentile)% of pixels
/// reach 0.5, applies v -> v^gamma with the largest gamma in [0.01, 1] (found
/// by bisection) that lifts that many pixels to 0.5. The transform is monotone,
/// so pixel rank order is untouched.
inline ScalarMap rescale_saliency(const ScalarMap& s, double percentile = 90.0, Warnings* warnings = nullptr,
                                  double* gamma_out = nullptr) {
    if(!(percentile > 0.0 && percentile < 100.0))
        throw Error("rescale_saliency: percentile must lie in (0, 100)");
    for(double v : s.values())
        if(!(v >= 0.0))
            throw Error("rescale_saliency: saliency must be nonnegative");
    if(gamma_out)
        *gamma_out = 1.0;
    if(!(map_max(s) > 0.0)) {
        warn(warnings, "rescale: saliency map is all zero; left unchanged");
        return s;
    }
    ScalarMap out = normalize01(s);
    const std::size_t n = out.size();
    const auto need = static_cast<std::size_t>(std::ceil((100.0 - percentile) / 100.0 * static_cast<double>(n) - 1e-9));
    if(need == 0)
        return out;

    // The need-th largest value decides the condition for every gamma.
    std::vector<double> vals(out.values().begin(), out.values().end());
    std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(need - 1), vals.end(), std::greater<>());
    const double pivot = vals[need - 1];
    auto satisfied = [&](double gamma) { return std::pow(pivot, gamma) >= 0.5; };
    if(satisfied(1.0))
        return out;

    constexpr double kMinGamma = 0.01;
    double gamma = kMinGamma;
    if(!satisfied(kMinGamma)) {
        warn(warnings, "rescale: too few nonzero pixels to reach the 0.5 level; using the strongest stretch");
    } else {
        double lo = kMinGamma, hi = 1.0; // satisfied(lo), !satisfied(hi)
        for(int it = 0; it < 64 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            (satisfied(mid) ? lo : hi) = mid;
        }
        gamma = lo;
    }
    for(double& v : out.values())
        v = std::pow(v, gamma);
    if(gamma_out)
        *gamma_out = gamma;
    return out;
}

namespace pipeline_detail {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

    template <typename F>
    decltype(auto) run(const char* stage, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        struct Record {
            StageClock& clock;
            const char* stage;
            std::chrono::steady_clock::time_point start;
            ~Record() {
                const auto end = std::chrono::steady_clock::now();
                clock.sink_.push_back({stage, std::chrono::duration<double, std::milli>(end - start).count()});
            }
        } record{*this, stage, start};
        try {
            return f();
        } catch(const Error& e) {
            throw Error(std::string(stage) + ": " + e.what());
        }
    }

private:
    std::vector<StageTiming>& sink_;
};

} // namespace pipeline_detail

/// Full saliency pipeline: objectness -> margins/foreground -> OF ->
/// centroid -> superpixels -> propagation -> compactness -> fuse -> rescale.
inline SaliencyResult detect(const RgbImage& img, const PipelineConfig& cfg = {}) {
    cfg.validate();
    if(img.width() < 16 || img.height() < 16)
        throw Error("detect: image must be at least 16x16");
    const auto start = std::chrono::steady_clock::now();
    SaliencyResult res;
    pipeline_detail::StageClock clock(res.timings);

    const LabImage lab = clock.run("lab", [&] { return rgb_to_lab(img); });

    clock.run("objectness", [&] {
        ObjectnessOptions opt;
        opt.n_p = cfg.n_p;
        opt.border_ratio = cfg.border_ratio;
        opt.generator = cfg.proposal_params;
        if(cfg.proposal_source == ProposalSource::file)
            opt.external = cfg.proposals;
        auto ob = compute_objectness_map(img, opt);
        res.proposal_count = ob.proposals.size();
        res.ob = std::move(ob.ob);
    });

    clock.run("foreground", [&] {
        if(!(map_max(res.ob) > 0.0)) {
            // No objectness contrast: the whole frame is the object hypothesis.
            warn(&res.warnings, "foreground: objectness map is flat; margin spans the whole image");
            res.margin = {0, 0, img.width() - 1, img.height() - 1};
        } else {
            res.margin = estimate_margins(res.ob, cfg.theta);
        }
        res.fg = foreground_map(lab, background_bands(lab, res.margin), &res.warnings);
    });

    clock.run("compactness", [&] {
        res.of = of_map(res.ob, res.fg);
        res.centroid = centroid_of_interest(res.of, &res.warnings);
        res.segmentation = slic_superpixels(lab, SlicParams{cfg.n_sp, cfg.slic_compactness, 10});
        res.source_superpixel = source_superpixel(res.segmentation, res.centroid);
        res.superpixel_of = superpixel_means(res.segmentation, res.of);
        const RegionGraph graph = build_region_graph(res.segmentation, res.superpixel_of);
        res.compactness = propagate_compactness(graph, res.source_superpixel).c;
        res.cn = compactness_map(res.segmentation, res.compactness);
    });

    clock.run("fusion", [&] {
        res.saliency = rescale_saliency(fuse(res.ob, res.fg, res.cn), cfg.rescale_percentile, &res.warnings, &res.gamma);
    });

    res.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

} // namespace ahsal
