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

// ahsal: batch saliency detection, benchmark evaluation, proposal dumps and
// synthetic benchmark generation.

#include "ahsal/ahsal.hpp"
#include "ahsal/io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::mutex g_log_mutex;

void log_line(const std::string& msg) {
    std::lock_guard lock(g_log_mutex);
    std::cerr << msg << '\n';
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
    if(workers <= 1) {
        for(std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for(std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for(std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if(!out)
        throw ahsal::Error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

/// Pipeline flags shared by detect, eval and proposals. Every flag mirrors a
/// config-file key.
struct SettingFlags {
    std::string config_file;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    bool dump = false, debug = false;
    CLI::Option* dump_opt = nullptr;
    CLI::Option* debug_opt = nullptr;

    void add(CLI::App& app, bool with_outputs) {
        app.add_option("--config", config_file, "Flat key = value config file")->check(CLI::ExistingFile);
        auto opt = [&](const std::string& key, const std::string& flag, const std::string& help) {
            options[key] = app.add_option(flag, values[key], help);
        };
        opt("n_p", "--n-p", "Number of window hypotheses (default 1000)");
        opt("theta", "--theta", "Margin mass fraction (default 0.1)");
        opt("n_sp", "--n-sp", "Superpixel target count (default 100)");
        opt("border_ratio", "--border-ratio", "Border extension ratio (default 0.1)");
        opt("proposal_source", "--proposal-source", "generated | file");
        opt("proposals", "--proposals", "Proposal CSV, or a directory of <stem>.csv files");
        opt("rescale_percentile", "--rescale-percentile", "Rescale percentile p (default 90)");
        opt("slic_compactness", "--slic-compactness", "SLIC compactness weight (default 10)");
        opt("jobs", "--jobs,-j", "Worker threads (default: logical cores)");
        if(with_outputs) {
            dump_opt = app.add_flag("--dump-intermediates", dump, "Also write OB/FG/OF/CN maps");
            debug_opt = app.add_flag("--debug", debug, "Write margin overlay, label map and superpixel table");
        }
    }

    ahsal::RunSettings resolve() const {
        ahsal::SettingMap flags;
        for(const auto& [key, option] : options)
            if(option->count() > 0)
                flags[key] = values.at(key);
        if(dump_opt && dump_opt->count() > 0)
            flags["dump_intermediates"] = "true";
        if(debug_opt && debug_opt->count() > 0)
            flags["debug"] = "true";
        const ahsal::SettingMap file = config_file.empty() ? ahsal::SettingMap{} : ahsal::load_settings_file(config_file);
        return ahsal::resolve_settings(ahsal::merge_settings({file, ahsal::settings_from_env(), flags}));
    }
};

json settings_json(const ahsal::RunSettings& s) {
    json j = json::object();
    for(const auto& [k, v] : ahsal::describe(s))
        j[k] = v;
    return j;
}

json timings_json(const ahsal::SaliencyResult& r) {
    json j = json::object();
    for(const auto& t : r.timings)
        j[t.stage] = t.ms;
    j["total"] = r.total_ms;
    return j;
}

/// Proposals for one image when the source is a file: `proposals` names the
/// CSV itself or a directory holding <stem>.csv.
ahsal::ProposalSet proposals_for(const ahsal::RunSettings& s, const std::string& stem) {
    const fs::path p = s.proposals_path;
    if(fs::is_directory(p))
        return ahsal::load_proposals((p / (stem + ".csv")).string());
    return ahsal::load_proposals(p.string());
}

ahsal::SaliencyResult run_detect(const ahsal::RgbImage& img, const ahsal::RunSettings& s, const std::string& stem) {
    ahsal::PipelineConfig cfg = s.pipeline;
    if(cfg.proposal_source == ahsal::ProposalSource::file)
        cfg.proposals = proposals_for(s, stem);
    return ahsal::detect(img, cfg);
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for(const auto& in : inputs) {
        if(fs::is_directory(in)) {
            std::vector<fs::path> found;
            for(const auto& e : fs::directory_iterator(in))
                if(e.is_regular_file() && ahsal::dataset_detail::is_image(e.path()))
                    found.push_back(e.path());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.emplace_back(in);
        }
    }
    return files;
}

/// Writes every output belonging to one detected image; returns its sidecar.
json write_detection(const fs::path& out_dir, const std::string& stem, const ahsal::RgbImage& img,
                     const ahsal::SaliencyResult& r, const ahsal::RunSettings& s) {
    ahsal::save_map_png((out_dir / (stem + ".png")).string(), r.saliency);
    json side;
    side["margin"] = {{"l", r.margin.l}, {"t", r.margin.t}, {"r", r.margin.r}, {"b", r.margin.b}};
    side["centroid"] = {{"x", r.centroid.x}, {"y", r.centroid.y}, {"fallback", r.centroid.fallback}};
    side["source_superpixel"] = r.source_superpixel;
    side["superpixels"] = r.segmentation.count();
    side["proposals"] = r.proposal_count;
    side["gamma"] = r.gamma;
    side["timings_ms"] = timings_json(r);
    side["warnings"] = r.warnings;
    side["config"] = settings_json(s);
    write_json(out_dir / (stem + ".json"), side);

    if(s.dump_intermediates) {
        ahsal::save_map_png((out_dir / (stem + "_ob.png")).string(), r.ob);
        ahsal::save_map_png((out_dir / (stem + "_fg.png")).string(), r.fg);
        ahsal::save_map_png((out_dir / (stem + "_of.png")).string(), ahsal::normalize01(r.of));
        ahsal::save_map_png((out_dir / (stem + "_cn.png")).string(), r.cn);
    }
    if(s.debug) {
        write_json(out_dir / (stem + "_margin.json"), side["margin"]);
        ahsal::save_rgb_png((out_dir / (stem + "_margin.png")).string(), ahsal::margin_overlay(img, r.margin));
        ahsal::save_labels_png16((out_dir / (stem + "_labels.png")).string(), r.segmentation.labels);
        std::ostringstream csv;
        csv << "superpixel,of,c\n";
        for(std::size_t k = 0; k < r.compactness.size(); ++k)
            csv << k << ',' << ahsal::eval_detail::num(r.superpixel_of[k]) << ','
                << ahsal::eval_detail::num(r.compactness[k]) << '\n';
        write_text(out_dir / (stem + "_superpixels.csv"), csv.str());
    }
    return side;
}

json manifest_base(const std::string& command, const ahsal::RunSettings& s) {
    json m;
    m["tool"] = "ahsal";
    m["version"] = ahsal::kVersion;
    m["command"] = command;
    m["started"] = timestamp();
    m["config"] = settings_json(s);
    return m;
}

int cmd_detect(const std::vector<std::string>& inputs, const fs::path& out_dir, const ahsal::RunSettings& s) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto files = expand_inputs(inputs);
    if(files.empty())
        throw ahsal::Error("detect: no input images");
    fs::create_directories(out_dir);
    std::vector<json> entries(files.size());
    std::atomic<int> failures{0};
    parallel_for(files.size(), s.jobs, [&](std::size_t i) {
        const auto& file = files[i];
        const std::string stem = file.stem().string();
        json e;
        e["input"] = file.string();
        try {
            const auto img = ahsal::load_rgb(file.string());
            const auto r = run_detect(img, s, stem);
            write_detection(out_dir, stem, img, r, s);
            e["output"] = (out_dir / (stem + ".png")).string();
            e["status"] = "ok";
            e["timings_ms"] = timings_json(r);
        } catch(const std::exception& ex) {
            ++failures;
            e["status"] = "error";
            e["error"] = ex.what();
            log_line("error: " + file.string() + ": " + ex.what());
        }
        entries[i] = std::move(e);
    });
    json m = manifest_base("detect", s);
    m["inputs"] = inputs;
    m["output_dir"] = out_dir.string();
    m["entries"] = entries;
    m["failures"] = failures.load();
    m["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_json(out_dir / "manifest.json", m);
    return failures.load() == 0 ? 0 : 1;
}

int cmd_eval(const fs::path& dataset, const std::string& layout, const std::string& maps_dir, bool detect,
             const fs::path& out_dir, const ahsal::RunSettings& s) {
    const auto t0 = std::chrono::steady_clock::now();
    if(maps_dir.empty() == !detect)
        throw ahsal::Error("eval: give exactly one of --maps or --detect");
    ahsal::Warnings warnings;
    const auto pairs = ahsal::load_dataset(dataset, ahsal::parse_layout(layout), &warnings);
    for(const auto& w : warnings)
        log_line("warning: " + w);
    fs::create_directories(out_dir);
    const fs::path saved_maps = out_dir / "maps";
    if(detect)
        fs::create_directories(saved_maps);

    std::vector<std::optional<ahsal::ImageMetrics>> metrics(pairs.size());
    std::vector<std::optional<ahsal::EvalFailure>> failed(pairs.size());
    parallel_for(pairs.size(), s.jobs, [&](std::size_t i) {
        const auto& pair = pairs[i];
        try {
            const auto gt = ahsal::load_mask(pair.mask.string());
            ahsal::ScalarMap sal;
            if(detect) {
                const auto img = ahsal::load_rgb(pair.image.string());
                ahsal::require_same_shape(img, gt, "image vs mask");
                const auto r = run_detect(img, s, pair.image.stem().string());
                sal = r.saliency;
                const fs::path target = saved_maps / (pair.name + ".png");
                fs::create_directories(target.parent_path());
                ahsal::save_map_png(target.string(), sal);
                // Score the map exactly as written to disk.
                sal = ahsal::load_map(target.string());
            } else {
                sal = ahsal::load_map((fs::path(maps_dir) / (pair.name + ".png")).string());
            }
            metrics[i] = ahsal::evaluate_image(pair.name, sal, gt);
        } catch(const std::exception& ex) {
            failed[i] = ahsal::EvalFailure{pair.name, ex.what()};
            log_line("skip: " + pair.name + ": " + ex.what());
        }
    });
    std::vector<ahsal::ImageMetrics> ok;
    std::vector<ahsal::EvalFailure> bad;
    for(auto& m : metrics)
        if(m)
            ok.push_back(std::move(*m));
    for(auto& f : failed)
        if(f)
            bad.push_back(std::move(*f));
    const auto report = ahsal::aggregate(std::move(ok), std::move(bad));

    std::ostringstream csv, curve;
    ahsal::write_report_csv(csv, report);
    ahsal::write_curve_csv(curve, report);
    write_text(out_dir / "report.csv", csv.str());
    write_text(out_dir / "curve.csv", curve.str());

    json j;
    j["images"] = report.images.size();
    j["failures"] = json::array();
    for(const auto& f : report.failures)
        j["failures"].push_back({{"name", f.name}, {"reason", f.reason}});
    j["mean_mae"] = report.mean_mae;
    j["mean_T_a"] = report.mean_threshold;
    j["mean_precision"] = report.mean_precision;
    j["mean_recall"] = report.mean_recall;
    j["mean_f_beta"] = report.mean_f_beta;
    j["beta_squared"] = ahsal::kBetaSquared;
    j["dataset"] = dataset.string();
    j["layout"] = layout;
    j["source"] = detect ? "detect" : maps_dir;
    j["config"] = settings_json(s);
    write_json(out_dir / "report.json", j);

    json m = manifest_base("eval", s);
    m["dataset"] = dataset.string();
    m["output_dir"] = out_dir.string();
    m["pairs"] = pairs.size();
    m["evaluated"] = report.images.size();
    m["failures"] = report.failures.size();
    m["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    write_json(out_dir / "manifest.json", m);

    std::cout << "images " << report.images.size() << "  MAE " << report.mean_mae << "  F_beta "
              << report.mean_f_beta << "  P " << report.mean_precision << "  R " << report.mean_recall << '\n';
    return report.failures.empty() ? 0 : 1;
}

int cmd_proposals(const std::string& image, const std::string& out_csv, const ahsal::RunSettings& s) {
    const auto img = ahsal::load_rgb(image);
    const auto ext = ahsal::extend_image(img, s.pipeline.border_ratio);
    const auto props = ahsal::crop_proposals(ahsal::generate_proposals(ext.image, s.pipeline.n_p), ext.offset_x,
                                             ext.offset_y, img.width(), img.height());
    std::ostringstream csv;
    ahsal::write_proposals(csv, props);
    if(out_csv.empty() || out_csv == "-")
        std::cout << csv.str();
    else
        write_text(out_csv, csv.str());
    return 0;
}

int cmd_synth(int count, const fs::path& out_dir, std::uint64_t seed, const ahsal::SynthParams& params) {
    if(count < 1)
        throw ahsal::Error("synth: count must be at least 1");
    fs::create_directories(out_dir / "img");
    fs::create_directories(out_dir / "gt");
    json entries = json::array();
    for(int i = 0; i < count; ++i) {
        const auto sample = ahsal::synthesize(seed, static_cast<std::uint64_t>(i), params);
        char name[32];
        std::snprintf(name, sizeof name, "synth_%04d", i);
        ahsal::save_rgb_png((out_dir / "img" / (std::string(name) + ".png")).string(), sample.image);
        ahsal::save_mask_png((out_dir / "gt" / (std::string(name) + ".png")).string(), sample.mask);
        entries.push_back({{"name", name}, {"area_fraction", sample.area_fraction}, {"textured", sample.textured}});
    }
    json m;
    m["tool"] = "ahsal";
    m["version"] = ahsal::kVersion;
    m["command"] = "synth";
    m["seed"] = seed;
    m["count"] = count;
    m["width"] = params.width;
    m["height"] = params.height;
    m["noise_sigma"] = params.noise_sigma;
    m["entries"] = entries;
    write_json(out_dir / "manifest.json", m);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Augmented-hypotheses salient object detection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ahsal::kVersion);

    auto* detect = app.add_subcommand("detect", "Compute saliency maps for images or directories");
    std::vector<std::string> detect_inputs;
    std::string detect_out = "out";
    SettingFlags detect_flags;
    detect->add_option("inputs", detect_inputs, "Image files or directories")->required();
    detect->add_option("-o,--out", detect_out, "Output directory");
    detect_flags.add(*detect, true);

    auto* eval = app.add_subcommand("eval", "Benchmark saliency maps against ground truth");
    std::string eval_dataset, eval_layout = "paired-dirs", eval_maps, eval_out = "eval";
    bool eval_detect = false;
    SettingFlags eval_flags;
    eval->add_option("--dataset", eval_dataset, "Dataset root")->required();
    eval->add_option("--layout", eval_layout, "paired-dirs | msra1000 | icoseg");
    eval->add_option("--maps", eval_maps, "Directory of precomputed <name>.png saliency maps");
    eval->add_flag("--detect", eval_detect, "Run the detector on every dataset image");
    eval->add_option("-o,--out", eval_out, "Report directory");
    eval_flags.add(*eval, false);

    auto* props = app.add_subcommand("proposals", "Dump generated window proposals as CSV");
    std::string props_image, props_out;
    SettingFlags props_flags;
    props->add_option("image", props_image, "Input image")->required();
    props->add_option("-o,--out", props_out, "Output CSV (default stdout)");
    props_flags.add(*props, false);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark");
    int synth_count = 50;
    std::string synth_out = "synth";
    std::uint64_t synth_seed = 42;
    ahsal::SynthParams synth_params;
    synth->add_option("--count,-n", synth_count, "Number of image/mask pairs");
    synth->add_option("-o,--out", synth_out, "Output directory (img/ and gt/ are created)");
    synth->add_option("--seed", synth_seed, "Random seed");
    synth->add_option("--width", synth_params.width, "Frame width");
    synth->add_option("--height", synth_params.height, "Frame height");

    CLI11_PARSE(app, argc, argv);

    try {
        if(*detect)
            return cmd_detect(detect_inputs, detect_out, detect_flags.resolve());
        if(*eval)
            return cmd_eval(eval_dataset, eval_layout, eval_maps, eval_detect, eval_out, eval_flags.resolve());
        if(*props)
            return cmd_proposals(props_image, props_out, props_flags.resolve());
        if(*synth)
            return cmd_synth(synth_count, synth_out, synth_seed, synth_params);
    } catch(const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
