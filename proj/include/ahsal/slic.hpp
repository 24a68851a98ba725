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

// SLIC superpixels: k-means in (L, a, b, x, y) with grid-seeded centres and
// local 2S x 2S search windows, followed by a connectivity pass.

#pragma once

#include "ahsal/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace ahsal {

struct Superpixel {
    Lab mean;
    long long count = 0;
    double cx = 0, cy = 0; // centroid
};

struct Segmentation {
    Grid<int> labels;
    std::vector<Superpixel> regions;

    int count() const noexcept { return static_cast<int>(regions.size()); }
};

struct SlicParams {
    int superpixels = 100;
    double compactness = 10.0;
    int iterations = 10;
};

namespace slic_detail {

struct Center {
    double l, a, b, x, y;
};

inline double lab_gradient(const LabImage& img, int x, int y) {
    const int W = img.width(), H = img.height();
    const Lab& r = img(std::min(x + 1, W - 1), y);
    const Lab& l = img(std::max(x - 1, 0), y);
    const Lab& d = img(x, std::min(y + 1, H - 1));
    const Lab& u = img(x, std::max(y - 1, 0));
    auto sq = [](const Lab& p, const Lab& q) {
        return (p.l - q.l) * (p.l - q.l) + (p.a - q.a) * (p.a - q.a) + (p.b - q.b) * (p.b - q.b);
    };
    return sq(r, l) + sq(d, u);
}

/// Labels 4-connected components; returns the component count.
inline int label_components(const Grid<int>& labels, Grid<int>& comp, std::vector<int>& comp_label,
                            std::vector<long long>& comp_size) {
    const int W = labels.width(), H = labels.height();
    comp = Grid<int>(W, H, -1);
    comp_label.clear();
    comp_size.clear();
    std::vector<std::pair<int, int>> stack;
    int next = 0;
    for(int y = 0; y < H; ++y)
        for(int x = 0; x < W; ++x) {
            if(comp(x, y) >= 0)
                continue;
            const int lab = labels(x, y);
            long long size = 0;
            comp(x, y) = next;
            stack.push_back({x, y});
            while(!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++size;
                const int nx[4] = {cx - 1, cx + 1, cx, cx};
                const int ny[4] = {cy, cy, cy - 1, cy + 1};
                for(int k = 0; k < 4; ++k) {
                    if(nx[k] < 0 || ny[k] < 0 || nx[k] >= W || ny[k] >= H)
                        continue;
                    if(comp(nx[k], ny[k]) < 0 && labels(nx[k], ny[k]) == lab) {
                        comp(nx[k], ny[k]) = next;
                        stack.push_back({nx[k], ny[k]});
                    }
                }
            }
            comp_label.push_back(lab);
            comp_size.push_back(size);
            ++next;
        }
    return next;
}

/// Keeps, per label, its largest connected piece if it is at least
/// min_size pixels; every other piece is merged into the largest adjacent
/// region, smallest pieces first. Returns consecutive labels in raster order.
inline Grid<int> enforce_connectivity(const Grid<int>& labels, long long min_size) {
    const int W = labels.width(), H = labels.height();
    Grid<int> comp;
    std::vector<int> comp_label;
    std::vector<long long> comp_size;
    const int n = label_components(labels, comp, comp_label, comp_size);

    int max_label = *std::max_element(comp_label.begin(), comp_label.end());
    std::vector<int> largest(static_cast<std::size_t>(max_label) + 1, -1);
    for(int c = 0; c < n; ++c) {
        int& best = largest[static_cast<std::size_t>(comp_label[static_cast<std::size_t>(c)])];
        if(best < 0 || comp_size[static_cast<std::size_t>(c)] > comp_size[static_cast<std::size_t>(best)])
            best = c;
    }

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for(int y = 0; y < H; ++y)
        for(int x = 0; x < W; ++x) {
            const int a = comp(x, y);
            if(x + 1 < W && comp(x + 1, y) != a) {
                adj[static_cast<std::size_t>(a)].push_back(comp(x + 1, y));
                adj[static_cast<std::size_t>(comp(x + 1, y))].push_back(a);
            }
            if(y + 1 < H && comp(x, y + 1) != a) {
                adj[static_cast<std::size_t>(a)].push_back(comp(x, y + 1));
                adj[static_cast<std::size_t>(comp(x, y + 1))].push_back(a);
            }
        }
    for(auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    // Union-find over components; root carries the merged size.
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<long long> size = comp_size;
    auto find = [&](int c) {
        while(parent[static_cast<std::size_t>(c)] != c) {
            parent[static_cast<std::size_t>(c)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(c)])];
            c = parent[static_cast<std::size_t>(c)];
        }
        return c;
    };

    std::vector<int> orphans;
    for(int c = 0; c < n; ++c)
        if(largest[static_cast<std::size_t>(comp_label[static_cast<std::size_t>(c)])] != c ||
           comp_size[static_cast<std::size_t>(c)] < min_size)
            orphans.push_back(c);
    std::stable_sort(orphans.begin(), orphans.end(), [&](int a, int b) {
        return comp_size[static_cast<std::size_t>(a)] < comp_size[static_cast<std::size_t>(b)];
    });

    for(int c : orphans) {
        const int root = find(c);
        int target = -1;
        for(int nb : adj[static_cast<std::size_t>(c)]) {
            const int r = find(nb);
            if(r == root)
                continue;
            if(target < 0 || size[static_cast<std::size_t>(r)] > size[static_cast<std::size_t>(target)] ||
               (size[static_cast<std::size_t>(r)] == size[static_cast<std::size_t>(target)] && r < target))
                target = r;
        }
        if(target < 0)
            continue;
        parent[static_cast<std::size_t>(root)] = target;
        size[static_cast<std::size_t>(target)] += size[static_cast<std::size_t>(root)];
    }

    Grid<int> out(W, H);
    std::vector<int> relabel(static_cast<std::size_t>(n), -1);
    int next = 0;
    for(int y = 0; y < H; ++y)
        for(int x = 0; x < W; ++x) {
            const int r = find(comp(x, y));
            int& id = relabel[static_cast<std::size_t>(r)];
            if(id < 0)
                id = next++;
            out(x, y) = id;
        }
    return out;
}

} // namespace slic_detail

/// Per-region mean colour, pixel count and centroid for a label map.
inline std::vector<Superpixel> region_statistics(const LabImage& img, const Grid<int>& labels, int count) {
    std::vector<Superpixel> regions(static_cast<std::size_t>(count));
    for(int y = 0; y < img.height(); ++y)
        for(int x = 0; x < img.width(); ++x) {
            auto& sp = regions[static_cast<std::size_t>(labels(x, y))];
            const Lab& p = img(x, y);
            sp.mean.l += p.l;
            sp.mean.a += p.a;
            sp.mean.b += p.b;
            sp.cx += x;
            sp.cy += y;
            ++sp.count;
        }
    for(auto& sp : regions) {
        if(sp.count == 0)
            continue;
        const double inv = 1.0 / static_cast<double>(sp.count);
        sp.mean = {sp.mean.l * inv, sp.mean.a * inv, sp.mean.b * inv};
        sp.cx *= inv;
        sp.cy *= inv;
    }
    return regions;
}

inline Segmentation slic_superpixels(const LabImage& img, const SlicParams& params = {}) {
    using slic_detail::Center;
    const int W = img.width(), H = img.height();
    const long long N = static_cast<long long>(W) * H;
    if(params.superpixels < 1)
        throw Error("slic: superpixel count must be at least 1");
    if(params.superpixels > N)
        throw Error("slic: " + std::to_string(params.superpixels) + " superpixels requested for " + std::to_string(N) +
                    " pixels");

    const double step = std::sqrt(static_cast<double>(N) / params.superpixels);
    const int nx = std::clamp(static_cast<int>(std::lround(W / step)), 1, W);
    const int ny = std::clamp(static_cast<int>(std::lround(H / step)), 1, H);
    const double cell_w = static_cast<double>(W) / nx, cell_h = static_cast<double>(H) / ny;
    const double spatial = std::sqrt(cell_w * cell_h);
    const int radius = static_cast<int>(std::ceil(std::max(cell_w, cell_h)));
    const double ws = (params.compactness / spatial) * (params.compactness / spatial);

    Grid<int> labels(W, H);
    std::vector<Center> centers;
    centers.reserve(static_cast<std::size_t>(nx) * ny);
    for(int j = 0; j < ny; ++j)
        for(int i = 0; i < nx; ++i) {
            int cx = std::min(static_cast<int>((i + 0.5) * cell_w), W - 1);
            int cy = std::min(static_cast<int>((j + 0.5) * cell_h), H - 1);
            // Move the seed off edges: lowest gradient in its 3x3 neighbourhood.
            double best = slic_detail::lab_gradient(img, cx, cy);
            int bx = cx, by = cy;
            for(int dy = -1; dy <= 1; ++dy)
                for(int dx = -1; dx <= 1; ++dx) {
                    const int x = cx + dx, y = cy + dy;
                    if(x < 0 || y < 0 || x >= W || y >= H)
                        continue;
                    const double g = slic_detail::lab_gradient(img, x, y);
                    if(g < best) {
                        best = g;
                        bx = x;
                        by = y;
                    }
                }
            const Lab& p = img(bx, by);
            centers.push_back({p.l, p.a, p.b, static_cast<double>(bx), static_cast<double>(by)});
        }
    // Initial assignment by grid cell guarantees every pixel a label even if
    // no centre reaches it later.
    for(int y = 0; y < H; ++y)
        for(int x = 0; x < W; ++x) {
            const int i = std::min(static_cast<int>(x / cell_w), nx - 1);
            const int j = std::min(static_cast<int>(y / cell_h), ny - 1);
            labels(x, y) = j * nx + i;
        }

    Grid<double> dist(W, H);
    for(int iter = 0; iter < params.iterations; ++iter) {
        std::fill(dist.values().begin(), dist.values().end(), std::numeric_limits<double>::infinity());
        for(std::size_t k = 0; k < centers.size(); ++k) {
            const Center& c = centers[k];
            const int x0 = std::max(0, static_cast<int>(c.x) - radius), x1 = std::min(W - 1, static_cast<int>(c.x) + radius);
            const int y0 = std::max(0, static_cast<int>(c.y) - radius), y1 = std::min(H - 1, static_cast<int>(c.y) + radius);
            for(int y = y0; y <= y1; ++y) {
                auto lab_row = img.row(y);
                auto dist_row = dist.row(y);
                auto label_row = labels.row(y);
                const double dyy = (y - c.y) * (y - c.y);
                for(int x = x0; x <= x1; ++x) {
                    const Lab& p = lab_row[static_cast<std::size_t>(x)];
                    const double dl = p.l - c.l, da = p.a - c.a, db = p.b - c.b;
                    const double dxx = (x - c.x) * (x - c.x);
                    const double d = dl * dl + da * da + db * db + ws * (dxx + dyy);
                    if(d < dist_row[static_cast<std::size_t>(x)]) {
                        dist_row[static_cast<std::size_t>(x)] = d;
                        label_row[static_cast<std::size_t>(x)] = static_cast<int>(k);
                    }
                }
            }
        }
        std::vector<Center> sums(centers.size(), Center{0, 0, 0, 0, 0});
        std::vector<long long> counts(centers.size(), 0);
        for(int y = 0; y < H; ++y)
            for(int x = 0; x < W; ++x) {
                const auto k = static_cast<std::size_t>(labels(x, y));
                const Lab& p = img(x, y);
                sums[k].l += p.l;
                sums[k].a += p.a;
                sums[k].b += p.b;
                sums[k].x += x;
                sums[k].y += y;
                ++counts[k];
            }
        for(std::size_t k = 0; k < centers.size(); ++k) {
            if(counts[k] == 0)
                continue;
            const double inv = 1.0 / static_cast<double>(counts[k]);
            centers[k] = {sums[k].l * inv, sums[k].a * inv, sums[k].b * inv, sums[k].x * inv, sums[k].y * inv};
        }
    }

    const auto min_size = std::max<long long>(1, static_cast<long long>(cell_w * cell_h / 4.0));
    Segmentation seg;
    seg.labels = slic_detail::enforce_connectivity(labels, min_size);
    const int count = *std::max_element(seg.labels.values().begin(), seg.labels.values().end()) + 1;
    seg.regions = region_statistics(img, seg.labels, count);
    return seg;
}

} // namespace ahsal
