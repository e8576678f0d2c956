// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line tool: these spawn the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "spectriv/io.hpp"
#include "spectriv/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "spectriv_cli_test";

int run(const std::string& args, const std::string& stdout_file = "",
        const std::string& extra_env = "") {
    std::string cmd = extra_env + " " + std::string(SPECTRIV_CLI_PATH) + " " + args;
    if (!stdout_file.empty()) {
        cmd += " > " + stdout_file + " 2>&1";
    } else {
        cmd += " > /dev/null 2>&1";
    }
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void put(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::size_t count_lines(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++count;
    }
    return count;
}

struct WorkDirSetup {
    WorkDirSetup() {
        fs::remove_all(kWorkDir);
        fs::create_directories(kWorkDir);
    }
} setup_once;

}  // namespace

TEST_CASE("simulate writes one header line plus n records, reproducibly") {
    const auto config = kWorkDir / "sim.json";
    put(config, R"({"case":"polynomial","a":1.0,"K":2,"n":10,"sigma":0.5,"endo":0.0,"seed":7})");
    const auto out1 = kWorkDir / "s1.jsonl";
    const auto out2 = kWorkDir / "s2.jsonl";
    CHECK(run("simulate --config " + config.string() + " --out " + out1.string()) == 0);
    CHECK(run("simulate --config " + config.string() + " --out " + out2.string()) == 0);
    CHECK(count_lines(out1) == 11);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("FLIR_SEED and --seed override the config seed") {
    const auto config = kWorkDir / "sim_seed.json";
    put(config, R"({"case":"polynomial","K":2,"n":5,"sigma":0.5,"seed":7})");
    const auto base = kWorkDir / "seed_base.jsonl";
    const auto env = kWorkDir / "seed_env.jsonl";
    const auto env2 = kWorkDir / "seed_env2.jsonl";
    const auto flag = kWorkDir / "seed_flag.jsonl";
    CHECK(run("simulate --config " + config.string() + " --out " + base.string()) == 0);
    CHECK(run("simulate --config " + config.string() + " --out " + env.string(), "",
              "FLIR_SEED=99") == 0);
    CHECK(run("simulate --config " + config.string() + " --out " + env2.string(), "",
              "FLIR_SEED=99") == 0);
    CHECK(slurp(env) != slurp(base));
    CHECK(slurp(env) == slurp(env2));
    // the flag wins over the environment
    CHECK(run("simulate --config " + config.string() + " --seed 99 --out " + flag.string(), "",
              "FLIR_SEED=1234") == 0);
    CHECK(slurp(flag) == slurp(env));
}

TEST_CASE("simulate -> estimate round trip") {
    const auto config = kWorkDir / "sim_rt.json";
    put(config, R"({"case":"polynomial","K":3,"n":60,"sigma":0.5,"endo":0.4,"seed":3})");
    const auto sample = kWorkDir / "rt.jsonl";
    REQUIRE(run("simulate --config " + config.string() + " --out " + sample.string()) == 0);
    const auto beta = kWorkDir / "rt_beta.json";
    const auto diag = kWorkDir / "rt_diag.json";
    CHECK(run("estimate --sample " + sample.string() + " --alpha 0.05 --nu 0 --out " +
              beta.string() + " --diagnostics " + diag.string()) == 0);
    const auto f = spectriv::io::fourier_from_json(slurp(beta));
    CHECK(f.support() == 3);
    const auto d = json::parse(slurp(diag));
    CHECK(d.at("alpha").get<double>() == doctest::Approx(0.05));
    CHECK(d.at("lambda_identity_residual").get<double>() < 1e-10);
}

TEST_CASE("estimate with a huge threshold returns the zero function") {
    const auto config = kWorkDir / "sim_zero.json";
    put(config, R"({"case":"polynomial","K":2,"n":20,"sigma":0.5,"seed":5})");
    const auto sample = kWorkDir / "zero.jsonl";
    REQUIRE(run("simulate --config " + config.string() + " --out " + sample.string()) == 0);
    const auto beta = kWorkDir / "zero_beta.json";
    CHECK(run("estimate --sample " + sample.string() + " --alpha 1e9 --out " + beta.string()) ==
          0);
    const auto f = spectriv::io::fourier_from_json(slurp(beta));
    for (int k = -2; k <= 2; ++k) CHECK(f.coeff(k) == std::complex<double>{0.0, 0.0});
}

TEST_CASE("noiseless exogenous fixture is recovered within 1e-6") {
    // perfectly correlated instrument, slope on k = 0 only, first-stage gap
    // threshold between w_1 = 1/2 and w_0 = 1
    const auto config = kWorkDir / "fixture.json";
    put(config, R"({"case":"polynomial","a":1.0,"K":1,"slope_K":0,"n":400,)"
                R"("sigma":1e-12,"endo":0.0,"seed":21,"correlation":"perfect"})");
    const auto sample = kWorkDir / "fixture.jsonl";
    REQUIRE(run("simulate --config " + config.string() + " --out " + sample.string()) == 0);
    const auto beta = kWorkDir / "fixture_beta.json";
    REQUIRE(run("estimate --sample " + sample.string() + " --alpha 0.7 --nu 0 --out " +
                beta.string()) == 0);
    const auto f = spectriv::io::fourier_from_json(slurp(beta));
    // the fixture slope is make_slope(p=2, rho=1, K=0) = {0: 1}
    auto diff = f;
    diff.set_coeff(0, f.coeff(0) - 1.0);
    CHECK(spectriv::sobolev_norm_sq(diff, 0.0) < 1e-6);
}

TEST_CASE("missing input file exits with code 2") {
    CHECK(run("estimate --sample /definitely/not/there.jsonl --alpha 0.1") == 2);
    CHECK(run("simulate --config /definitely/not/there.json") == 2);
    CHECK(run("rates --config /definitely/not/there.json") == 2);
}

TEST_CASE("malformed sample line is reported with its line number") {
    const auto path = kWorkDir / "broken.jsonl";
    put(path, "{\"kind\":\"spectriv.sample\",\"n\":1,\"K\":0,\"sigma\":1.0,\"endo\":0.0}\n"
              "this is not json\n");
    const auto log = kWorkDir / "broken.log";
    CHECK(run("estimate --sample " + path.string() + " --alpha 0.1", log.string()) == 1);
    CHECK(slurp(log).find("line 2") != std::string::npos);
}

TEST_CASE("rates: validation errors, defaults, table and thread determinism") {
    const auto bad = kWorkDir / "bad_rates.json";
    put(bad, R"({"reps":1})");
    const auto log = kWorkDir / "bad_rates.log";
    CHECK(run("rates --config " + bad.string() + " --out-dir " + (kWorkDir / "x").string(),
              log.string()) == 1);
    CHECK(slurp(log).find("reps") != std::string::npos);

    const auto defaults_log = kWorkDir / "defaults.log";
    CHECK(run("rates --print-defaults", defaults_log.string()) == 0);
    const auto defaults = json::parse(slurp(defaults_log));
    CHECK(defaults.at("reps").get<int>() == 200);
    CHECK(defaults.at("case").get<std::string>() == "polynomial");

    const auto config = kWorkDir / "rates.json";
    put(config, R"({"case":"polynomial","K":4,"n_grid":[200,400,800],"reps":8,)"
                R"("sigma":0.5,"endo":0.5,"master_seed":17})");
    const auto table = kWorkDir / "rates_table.log";
    const auto dir1 = kWorkDir / "rates1";
    const auto dir8 = kWorkDir / "rates8";
    CHECK(run("rates --config " + config.string() + " --out-dir " + dir1.string() +
              " --threads 1", table.string()) == 0);
    CHECK(run("rates --config " + config.string() + " --out-dir " + dir8.string() +
              " --threads 8") == 0);
    CHECK(slurp(table).find("-0.5714") != std::string::npos);  // -2(p-nu)/(2(p+a)+1)
    CHECK(slurp(dir1 / "summary.json") == slurp(dir8 / "summary.json"));
    CHECK(count_lines(dir1 / "risks.csv") == 1 + 3 * 8);
}

TEST_CASE("balance and link-check emit reports") {
    const auto bal = kWorkDir / "balance.json";
    CHECK(run("balance --variant polynomial --n 100000 --a 1 --p 2 --nu 0 --out " +
              bal.string()) == 0);
    const auto b = json::parse(slurp(bal));
    CHECK(b.at("kstar").get<long>() >= 1);
    CHECK(b.at("rate").get<double>() > 0.0);
    CHECK(b.at("n").get<std::size_t>() == 100000);

    const auto link = kWorkDir / "link.json";
    CHECK(run("link-check --decay polynomial --a 1 --K 50 --d 41 --out " + link.string()) == 0);
    const auto l = json::parse(slurp(link));
    CHECK(l.at("all_pass").get<bool>());
    CHECK(l.at("minimal_d").get<double>() == doctest::Approx(40.4784).epsilon(1e-4));
}
