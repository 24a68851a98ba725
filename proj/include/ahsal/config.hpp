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

// Run settings as flat "key = value" text. Sources are layered, later ones
// winning: built-in defaults, config file, AHSAL_<KEY> environment
// variables, command-line flags.

#pragma once

#include "ahsal/hypotheses.hpp"
#include "ahsal/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <thread>

namespace ahsal {

struct RunSettings {
    PipelineConfig pipeline;
    /// CSV file (single image) or directory of <stem>.csv files.
    std::string proposals_path;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool dump_intermediates = false;
    bool debug = false;
};

using SettingMap = std::map<std::string, std::string>;

inline const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "n_p",  "theta",      "n_sp",         "border_ratio",       "proposal_source", "proposals",
        "jobs", "rescale_percentile", "slic_compactness", "dump_intermediates", "debug"};
    return keys;
}

inline bool is_setting_key(const std::string& key) {
    const auto& keys = setting_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

inline SettingMap parse_settings(std::istream& in, const std::string& source) {
    SettingMap out;
    std::string line;
    int line_no = 0;
    while(std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if(text.empty() || text.front() == '#')
            continue;
        const auto eq = text.find('=');
        if(eq == std::string_view::npos)
            throw Error(source + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key(detail::trim(text.substr(0, eq)));
        if(!is_setting_key(key))
            throw Error(source + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        out[key] = std::string(detail::trim(text.substr(eq + 1)));
    }
    return out;
}

inline SettingMap load_settings_file(const std::string& path) {
    std::ifstream in(path);
    if(!in)
        throw Error("cannot open config file " + path);
    return parse_settings(in, path);
}

inline std::string env_name(const std::string& key) {
    std::string name = "AHSAL_";
    for(char c : key)
        name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

inline SettingMap settings_from_env() {
    SettingMap out;
    for(const auto& key : setting_keys())
        if(const char* v = std::getenv(env_name(key).c_str()))
            out[key] = v;
    return out;
}

/// Later layers override earlier ones.
inline SettingMap merge_settings(std::initializer_list<SettingMap> layers) {
    SettingMap out;
    for(const auto& layer : layers)
        for(const auto& [k, v] : layer)
            out[k] = v;
    return out;
}

inline RunSettings resolve_settings(const SettingMap& m) {
    RunSettings s;
    auto bad = [](const std::string& key, const std::string& value) {
        return Error("invalid value '" + value + "' for " + key);
    };
    auto get_int = [&](const std::string& key, int& out) {
        if(auto it = m.find(key); it != m.end())
            if(!detail::parse_number(detail::trim(it->second), out))
                throw bad(key, it->second);
    };
    auto get_double = [&](const std::string& key, double& out) {
        if(auto it = m.find(key); it != m.end())
            if(!detail::parse_number(detail::trim(it->second), out))
                throw bad(key, it->second);
    };
    auto get_bool = [&](const std::string& key, bool& out) {
        if(auto it = m.find(key); it != m.end()) {
            const auto& v = it->second;
            if(v == "1" || v == "true" || v == "yes" || v == "on")
                out = true;
            else if(v == "0" || v == "false" || v == "no" || v == "off")
                out = false;
            else
                throw bad(key, v);
        }
    };
    get_int("n_p", s.pipeline.n_p);
    get_double("theta", s.pipeline.theta);
    get_int("n_sp", s.pipeline.n_sp);
    get_double("border_ratio", s.pipeline.border_ratio);
    get_double("rescale_percentile", s.pipeline.rescale_percentile);
    get_double("slic_compactness", s.pipeline.slic_compactness);
    get_int("jobs", s.jobs);
    get_bool("dump_intermediates", s.dump_intermediates);
    get_bool("debug", s.debug);
    if(auto it = m.find("proposals"); it != m.end())
        s.proposals_path = it->second;
    if(auto it = m.find("proposal_source"); it != m.end()) {
        if(it->second == "generated")
            s.pipeline.proposal_source = ProposalSource::generated;
        else if(it->second == "file")
            s.pipeline.proposal_source = ProposalSource::file;
        else
            throw bad("proposal_source", it->second);
    }
    if(s.jobs < 1)
        throw bad("jobs", std::to_string(s.jobs));
    if(s.pipeline.proposal_source == ProposalSource::file && s.proposals_path.empty())
        throw Error("proposal_source=file requires the proposals key");
    // The proposal set itself is attached per image; validate everything else.
    PipelineConfig probe = s.pipeline;
    if(probe.proposal_source == ProposalSource::file)
        probe.proposals = ProposalSet{};
    probe.validate();
    return s;
}

/// Effective settings as key/value pairs, for manifests.
inline SettingMap describe(const RunSettings& s) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return std::string(buf);
    };
    return {
        {"n_p", std::to_string(s.pipeline.n_p)},
        {"theta", num(s.pipeline.theta)},
        {"n_sp", std::to_string(s.pipeline.n_sp)},
        {"border_ratio", num(s.pipeline.border_ratio)},
        {"proposal_source", s.pipeline.proposal_source == ProposalSource::file ? "file" : "generated"},
        {"proposals", s.proposals_path},
        {"rescale_percentile", num(s.pipeline.rescale_percentile)},
        {"slic_compactness", num(s.pipeline.slic_compactness)},
        {"jobs", std::to_string(s.jobs)},
        {"dump_intermediates", s.dump_intermediates ? "true" : "false"},
        {"debug", s.debug ? "true" : "false"},
    };
}

} // namespace ahsal
