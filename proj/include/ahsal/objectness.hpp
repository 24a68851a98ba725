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

#include "ahsal/hypotheses.hpp"
#include "ahsal/proposals.hpp"

#include <optional>

namespace ahsal {

struct ObjectnessOptions {
    int n_p = 1000;
    double border_ratio = 0.1;
    /// Externally supplied windows in the original image frame. When absent,
    /// windows are generated on the extended image.
    std::optional<ProposalSet> external;
    ProposalParams generator;
};

struct ObjectnessResult {
    ScalarMap ob;          // original frame, [0, 1]
    ScalarMap counts;      // original frame, raw coverage counts
    ProposalSet proposals; // extended frame
    ExtendedImage extended;
};

/// Moves original-frame windows into the extended frame.
inline ProposalSet offset_proposals(const ProposalSet& props, int dx, int dy) {
    ProposalSet out = props;
    for(auto& w : out) {
        w.l += dx;
        w.r += dx;
        w.t += dy;
        w.b += dy;
    }
    return out;
}

/// Extended-frame windows clipped back to the original frame; windows that
/// lie entirely in the border are dropped.
inline ProposalSet crop_proposals(const ProposalSet& props, int dx, int dy, int width, int height) {
    ProposalSet out;
    for(auto w : props) {
        w.l = std::max(w.l - dx, 0);
        w.t = std::max(w.t - dy, 0);
        w.r = std::min(w.r - dx, width - 1);
        w.b = std::min(w.b - dy, height - 1);
        if(w.l <= w.r && w.t <= w.b)
            out.push_back(w);
    }
    return out;
}

inline ScalarMap crop(const ScalarMap& m, int x0, int y0, int width, int height) {
    ScalarMap out(width, height);
    for(int y = 0; y < height; ++y) {
        auto src = m.row(y + y0).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(width));
        std::copy(src.begin(), src.end(), out.row(y).begin());
    }
    return out;
}

/// Extend -> propose (or offset external windows) -> accumulate -> crop ->
/// normalize. Normalizing after the crop keeps the original frame's range at
/// exactly [0, 1].
inline ObjectnessResult compute_objectness_map(const RgbImage& img, const ObjectnessOptions& opt = {}) {
    ObjectnessResult res;
    res.extended = extend_image(img, opt.border_ratio);
    const auto& ext = res.extended;
    if(opt.external) {
        for(std::size_t i = 0; i < opt.external->size(); ++i)
            if(!(*opt.external)[i].inside(img.width(), img.height()))
                throw Error("external hypothesis " + std::to_string(i) + " outside the " + std::to_string(img.width()) +
                            "x" + std::to_string(img.height()) + " image");
        res.proposals = offset_proposals(*opt.external, ext.offset_x, ext.offset_y);
    } else {
        res.proposals = generate_proposals(ext.image, opt.n_p, opt.generator);
    }
    const ScalarMap full = accumulate_hypotheses(res.proposals, ext.image.width(), ext.image.height());
    res.counts = crop(full, ext.offset_x, ext.offset_y, img.width(), img.height());
    res.ob = normalize01(res.counts);
    return res;
}

} // namespace ahsal
