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


// End-to-end checks that drive the command-line tool.

#include "support.hpp"

#include "ahsal/io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace ahsal {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        root_ = fs::temp_directory_path() / ("ahsal_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    /// Runs the tool with the given arguments; stderr goes to root_/stderr.txt.
    int run(const std::string& args, const std::string& env = "") const {
        const std::string cmd = env + " " AHSAL_CLI_PATH " " + args + " > " + (root_ / "stdout.txt").string() + " 2> " +
                                (root_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    fs::path write_image(const std::string& name, std::uint64_t index) const {
        SynthParams p;
        p.width = 96;
        p.height = 72;
        const fs::path path = root_ / "in" / name;
        fs::create_directories(path.parent_path());
        save_rgb_png(path.string(), synthesize(7, index, p).image);
        return path;
    }

    fs::path root_;
};

TEST_F(Cli, DetectSingleImage) {
    const fs::path img = write_image("one.png", 0);
    const fs::path out = root_ / "out";
    ASSERT_EQ(run("detect " + img.string() + " -o " + out.string()), 0) << slurp(root_ / "stderr.txt");
    EXPECT_TRUE(fs::exists(out / "one.png"));
    EXPECT_TRUE(fs::exists(out / "manifest.json"));
    const ScalarMap s = load_map((out / "one.png").string());
    EXPECT_EQ(s.width(), 96);
    EXPECT_EQ(s.height(), 72);
    const json side = json::parse(slurp(out / "one.json"));
    EXPECT_TRUE(side.contains("margin"));
    EXPECT_TRUE(side.contains("timings_ms"));
    EXPECT_FALSE(fs::exists(out / "one_ob.png"));
}

TEST_F(Cli, DetectDirectoryOfThree) {
    for(int k = 0; k < 3; ++k)
        write_image("im" + std::to_string(k) + ".png", static_cast<std::uint64_t>(k));
    const fs::path out = root_ / "out";
    ASSERT_EQ(run("detect " + (root_ / "in").string() + " -o " + out.string() + " --jobs 2 --dump-intermediates"), 0);
    const json m = json::parse(slurp(out / "manifest.json"));
    ASSERT_EQ(m["entries"].size(), 3u);
    for(int k = 0; k < 3; ++k) {
        const std::string stem = "im" + std::to_string(k);
        EXPECT_TRUE(fs::exists(out / (stem + ".png")));
        for(const char* suffix : {"_ob.png", "_fg.png", "_of.png", "_cn.png"})
            EXPECT_TRUE(fs::exists(out / (stem + suffix))) << stem << suffix;
    }
}

TEST_F(Cli, CorruptImageFailsThatFileOnly) {
    write_image("a.png", 0);
    write_image("c.png", 2);
    std::ofstream(root_ / "in" / "b.png") << "not a png";
    const fs::path out = root_ / "out";
    EXPECT_NE(run("detect " + (root_ / "in").string() + " -o " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "a.png"));
    EXPECT_TRUE(fs::exists(out / "c.png"));
    EXPECT_FALSE(fs::exists(out / "b.png"));
    EXPECT_NE(slurp(root_ / "stderr.txt").find("b.png"), std::string::npos);
    const json m = json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(m["failures"], 1);
}

TEST_F(Cli, DebugOutputs) {
    const fs::path img = write_image("d.png", 1);
    const fs::path out = root_ / "out";
    ASSERT_EQ(run("detect " + img.string() + " -o " + out.string() + " --debug"), 0);
    for(const char* f : {"d_margin.json", "d_margin.png", "d_labels.png", "d_superpixels.csv"})
        EXPECT_TRUE(fs::exists(out / f)) << f;
    const Grid<int> labels = load_labels_png16((out / "d_labels.png").string());
    EXPECT_EQ(labels.width(), 96);
}

TEST_F(Cli, EnvironmentAndFlagsLayerOverConfigFile) {
    const fs::path img = write_image("e.png", 3);
    std::ofstream(root_ / "run.cfg") << "n_sp = 80\ntheta = 0.2\n";
    const fs::path out = root_ / "out";
    ASSERT_EQ(run("detect " + img.string() + " -o " + out.string() + " --config " + (root_ / "run.cfg").string() +
                      " --theta 0.15",
                  "AHSAL_N_SP=50 AHSAL_THETA=0.3"),
              0)
        << slurp(root_ / "stderr.txt");
    const json m = json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(m["config"]["n_sp"], "50");
    EXPECT_EQ(m["config"]["theta"], "0.15");
}

TEST_F(Cli, ExternalProposalFile) {
    const fs::path img = write_image("p.png", 4);
    std::ofstream(root_ / "p.csv") << "10,10,60,50\n0,0,95,71\n";
    const fs::path out = root_ / "out";
    ASSERT_EQ(run("detect " + img.string() + " -o " + out.string() + " --proposal-source file --proposals " +
                  (root_ / "p.csv").string()),
              0)
        << slurp(root_ / "stderr.txt");
    const json side = json::parse(slurp(out / "p.json"));
    EXPECT_EQ(side["proposals"], 2);
    std::ofstream(root_ / "bad.csv") << "5,5,2,2\n";
    EXPECT_NE(run("detect " + img.string() + " -o " + out.string() + " --proposal-source file --proposals " +
                  (root_ / "bad.csv").string()),
              0);
}

TEST_F(Cli, ProposalsDump) {
    const fs::path img = write_image("q.png", 5);
    ASSERT_EQ(run("proposals " + img.string() + " --n-p 50 -o " + (root_ / "q.csv").string()), 0);
    const ProposalSet props = load_proposals((root_ / "q.csv").string());
    EXPECT_LE(props.size(), 50u);
    EXPECT_FALSE(props.empty());
    for(const auto& w : props)
        EXPECT_TRUE(w.inside(96, 72));
}

TEST_F(Cli, SynthIsDeterministic) {
    const fs::path a = root_ / "a", b = root_ / "b";
    ASSERT_EQ(run("synth --count 5 --seed 42 --width 120 --height 90 -o " + a.string()), 0);
    ASSERT_EQ(run("synth --count 5 --seed 42 --width 120 --height 90 -o " + b.string()), 0);
    for(int k = 0; k < 5; ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "synth_%04d.png", k);
        for(const char* dir : {"img", "gt"}) {
            ASSERT_TRUE(fs::exists(a / dir / name));
            EXPECT_EQ(slurp(a / dir / name), slurp(b / dir / name));
        }
        const GroundTruthMask gt = load_mask((a / "gt" / name).string());
        long long on = 0;
        for(auto v : gt.values())
            on += v;
        const double area = static_cast<double>(on) / static_cast<double>(gt.size());
        EXPECT_GE(area, 0.05);
        EXPECT_LE(area, 0.40);
    }
}

TEST_F(Cli, EvalWithPerfectMaps) {
    const fs::path data = root_ / "data";
    ASSERT_EQ(run("synth --count 3 --seed 1 --width 64 --height 48 -o " + data.string()), 0);
    // The ground truth itself is a perfect saliency map.
    const fs::path out = root_ / "eval";
    ASSERT_EQ(run("eval --dataset " + data.string() + " --maps " + (data / "gt").string() + " -o " + out.string()), 0)
        << slurp(root_ / "stderr.txt");
    const json rep = json::parse(slurp(out / "report.json"));
    EXPECT_EQ(rep["mean_mae"], 0.0);
    EXPECT_EQ(rep["mean_f_beta"], 1.0);
    EXPECT_TRUE(fs::exists(out / "curve.csv"));
    EXPECT_TRUE(fs::exists(out / "report.csv"));
}

TEST_F(Cli, EvalDetectSavesMaps) {
    const fs::path data = root_ / "data";
    ASSERT_EQ(run("synth --count 2 --seed 3 --width 96 --height 72 -o " + data.string()), 0);
    const fs::path out = root_ / "eval";
    ASSERT_EQ(run("eval --dataset " + data.string() + " --detect -o " + out.string()), 0)
        << slurp(root_ / "stderr.txt");
    EXPECT_TRUE(fs::exists(out / "maps" / "synth_0000.png"));
    EXPECT_TRUE(fs::exists(out / "maps" / "synth_0001.png"));
    EXPECT_NE(run("eval --dataset " + data.string() + " -o " + out.string()), 0);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_NE(run(""), 0);
    EXPECT_NE(run("detect"), 0);
    EXPECT_NE(run("detect " + (root_ / "none.png").string() + " --theta 2 -o " + (root_ / "o").string()), 0);
}

} // namespace
} // namespace ahsal
