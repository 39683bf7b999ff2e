// Copyright 2026 The Weakwire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakwire_tools/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "weakwire/serialize.h"
#include "weakwire_tools/figures.h"

using namespace weakwire;
using namespace weakwire::tools;

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "weakwire");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("weakwire_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string write(const std::string &name, const std::string &text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string &name) {
        return (dir_ / name).string();
    }
    static std::string read(const std::string &p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }
    std::string sqrt_swap(int sign_a, int sign_b) {
        return write("sq" + std::to_string(sign_a) + std::to_string(sign_b) + ".json",
                     R"({"n_qubits": 2, "prep": [{"wire": 0, "bloch": [1, 0, 0]}, {"wire": 1, "bloch": [0, 1, 0]}],
                         "moments": [[{"type": "swap_alpha", "wires": [0, 1], "alpha": 0.5}]],
                         "meas": [{"wire": 0, "bloch": [0, 0, 1], "outcome": )" +
                         std::to_string(sign_a) + R"(}, {"wire": 1, "bloch": [0, 0, 1], "outcome": )" +
                         std::to_string(sign_b) + "}]}");
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, weak_emits_input_cut_vectors) {
    CliRun r = run({"weak", "--input", sqrt_swap(1, 1)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    CVec3 w_a = cvec3_from_json(j["cuts"][0]["w"][0]);
    EXPECT_LT((w_a - CVec3(1, Complex(0, -1), 1)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(j["probability"].get<double>(), 0.25, 1e-12);
    EXPECT_EQ(j["cuts"].size(), 2u);
}

TEST_F(CliTest, weak_forbidden_outcome_exits_2) {
    CliRun r = run({"weak", "--input", sqrt_swap(1, -1)});
    EXPECT_EQ(r.code, kExitForbidden);
    EXPECT_NE(r.err.find("zero transition amplitude"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, weak_identity_circuit_matches_anchor_relations) {
    std::string in = write("id.json", R"({"n_qubits": 1, "prep": [{"wire": 0, "bloch": [0, 0, 1]}],
        "moments": [[]], "meas": [{"wire": 0, "bloch": [1, 0, 0], "outcome": 1}]})");
    CliRun r = run({"weak", "--input", in});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    CVec3 w = cvec3_from_json(j["cuts"][0]["w"][0]);
    const CVec3 i_hat(0, 0, 1);
    EXPECT_LT((w - (i_hat + Complex(0, 1) * complex_cross(i_hat, w))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(CliTest, input_errors_exit_1) {
    EXPECT_EQ(run({"weak", "--input", write("bad.json", "{ not json")}).code, kExitInput);
    EXPECT_EQ(run({"weak", "--input", path("missing.json")}).code, kExitInput);
    EXPECT_EQ(run({"weak"}).code, kExitInput);
    EXPECT_EQ(run({"frobnicate"}).code, kExitInput);
    EXPECT_EQ(run({"reproduce", "--figure", "fig9"}).code, kExitInput);
    EXPECT_EQ(run({"sweep", "--input", sqrt_swap(1, 1), "--tau-step", "-1"}).code, kExitInput);
    EXPECT_EQ(run({"hv-solve", "--input", sqrt_swap(1, 1), "--mode", "loose"}).code, kExitInput);
    EXPECT_EQ(run({"sweep", "--input", sqrt_swap(1, 1), "--gate", "3:0"}).code, kExitInput);
}

TEST_F(CliTest, help_exits_0) {
    CliRun r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("hv-solve"), std::string::npos);
}

TEST_F(CliTest, sweep_csv_reparses) {
    std::string out = path("sweep.csv");
    CliRun r = run({"sweep", "--input", sqrt_swap(-1, 1), "--tau-step", "0.01", "--output", out});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(out);
    SeriesTable t = read_series_csv(in);
    EXPECT_EQ(t.tau.size(), 51u);
    EXPECT_EQ(t.tau.back(), 0.5);
}

TEST_F(CliTest, verify_passes_and_fails_by_tolerance) {
    CliRun ok = run({"verify", "--input", sqrt_swap(1, 1)});
    ASSERT_EQ(ok.code, kExitOk) << ok.out << ok.err;
    auto j = nlohmann::json::parse(ok.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_FALSE(j["checks"].empty());
    // Roundoff alone exceeds an absurdly small tolerance.
    CliRun strict = run({"verify", "--input", sqrt_swap(1, 1), "--tolerance", "1e-300"});
    EXPECT_EQ(strict.code, kExitVerification);
    EXPECT_EQ(run({"verify", "--input", sqrt_swap(1, -1)}).code, kExitForbidden);
}

TEST_F(CliTest, hv_solve_all_outcomes) {
    CliRun r = run({"hv-solve", "--input", sqrt_swap(1, 1), "--all-outcomes", "--seeds", "60"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["counts"]["00"], 2);
    EXPECT_EQ(j["counts"]["01"], 0);
    EXPECT_EQ(j["counts"]["10"], 4);
    EXPECT_EQ(j["counts"]["11"], 2);
    EXPECT_EQ(j["probabilities"]["10"], 0.5);
    CliRun single = run({"hv-solve", "--input", sqrt_swap(-1, -1), "--seeds", "30"});
    ASSERT_EQ(single.code, kExitOk);
    EXPECT_EQ(nlohmann::json::parse(single.out)["counts"]["11"], 2);
}

TEST_F(CliTest, reproduce_fig5_rows) {
    CliRun r = run({"reproduce", "--figure", "fig5"});
    ASSERT_EQ(r.code, kExitOk);
    auto rows = nlohmann::json::parse(r.out)["rows"];
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[1]["outcome"], "00");
    EXPECT_EQ(rows[1]["tau"], 0.5);
    CVec3 w_a = cvec3_from_json(rows[1]["w_a"]);
    EXPECT_LT((w_a - CVec3(Complex(1, 1), Complex(1, -1), 1)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(CliTest, reproduce_fig3_is_byte_identical_and_fits) {
    std::string a = path("a.csv"), b = path("b.csv"), fit = path("fit.json");
    ASSERT_EQ(run({"reproduce", "--figure", "fig3", "--tau-step", "0.01", "--output", a, "--fit-output", fit}).code,
              kExitOk);
    ASSERT_EQ(run({"reproduce", "--figure", "fig3", "--tau-step", "0.01", "--output", b}).code, kExitOk);
    EXPECT_EQ(read(a), read(b));
    auto j = nlohmann::json::parse(read(fit));
    EXPECT_LE(j["max_residual"].get<double>(), 1e-8);
    EXPECT_EQ(j["points"], 231);
}

TEST(figures, exchange_fit_recovers_a_known_sinusoid) {
    std::vector<double> t, a, b;
    for (int k = 0; k <= 100; ++k) {
        const double x = 0.023 * k;
        t.push_back(x);
        a.push_back(0.3 + 0.7 * std::cos(2.9 * x) - 0.2 * std::sin(2.9 * x));
        b.push_back(0.3 - 0.7 * std::cos(2.9 * x) + 0.2 * std::sin(2.9 * x));
    }
    ExchangeFit f = fit_exchange_pair(t, a, b);
    EXPECT_NEAR(f.omega, 2.9, 1e-9);
    EXPECT_NEAR(f.offset, 0.3, 1e-9);
    EXPECT_NEAR(f.cos_amp, 0.7, 1e-9);
    EXPECT_NEAR(f.sin_amp, -0.2, 1e-9);
    EXPECT_LT(f.max_residual, 1e-9);
}
