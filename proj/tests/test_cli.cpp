// SPDX-License-Identifier: Apache-2.0
//
// mimo-sinr: downlink SINR density toolkit for matched-filter multi-user MIMO
// Copyright (C) 2026 The mimo-sinr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include "experiment.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace msinr::cli;

namespace {

struct Result
{
    int status = -1;
    std::string out;
};

Result run_cli(const std::string &args)
{
    const std::string cmd = std::string(MSINR_CLI_PATH) + " " + args + " 2>&1";
    Result r;
    FILE *pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe))
        r.out += buf;
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string read_file(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / ("msinr_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

// Validator for the draft-07 keywords used by the shipped schema.
bool validate(const json &value, const json &schema, const json &root, std::string &why, const std::string &at)
{
    if (schema.contains("$ref"))
    {
        const std::string ref = schema["$ref"];
        return validate(value, root.at(json::json_pointer(ref.substr(1))), root, why, at);
    }
    if (schema.contains("oneOf"))
    {
        int matches = 0;
        for (const auto &alt : schema["oneOf"])
        {
            std::string ignored;
            matches += validate(value, alt, root, ignored, at) ? 1 : 0;
        }
        if (matches != 1)
        {
            why = at + ": matches " + std::to_string(matches) + " oneOf branches";
            return false;
        }
        return true;
    }
    if (schema.contains("type"))
    {
        auto is = [&](const std::string &t) {
            if (t == "null")
                return value.is_null();
            if (t == "object")
                return value.is_object();
            if (t == "integer")
                return value.is_number_integer();
            if (t == "number")
                return value.is_number();
            if (t == "string")
                return value.is_string();
            if (t == "array")
                return value.is_array();
            return false;
        };
        bool ok = false;
        if (schema["type"].is_array())
            for (const auto &t : schema["type"])
                ok = ok || is(t);
        else
            ok = is(schema["type"]);
        if (!ok)
        {
            why = at + ": wrong type";
            return false;
        }
    }
    if (value.is_number())
    {
        const double v = value;
        if (schema.contains("minimum") && v < schema["minimum"].get<double>())
            return why = at + ": below minimum", false;
        if (schema.contains("maximum") && v > schema["maximum"].get<double>())
            return why = at + ": above maximum", false;
        if (schema.contains("exclusiveMinimum") && v <= schema["exclusiveMinimum"].get<double>())
            return why = at + ": not above exclusiveMinimum", false;
    }
    if (value.is_object())
    {
        if (schema.contains("required"))
            for (const auto &key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    return why = at + ": missing " + key.get<std::string>(), false;
        const json props = schema.value("properties", json::object());
        for (const auto &[key, v] : value.items())
        {
            if (props.contains(key))
            {
                if (!validate(v, props[key], root, why, at + "/" + key))
                    return false;
            }
            else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false)
            {
                return why = at + ": unexpected " + key, false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("preset table")
{
    REQUIRE(presets().size() == 6);
    const auto *fig1 = find_preset("fig1");
    REQUIRE(fig1);
    CHECK(fig1->points.size() == 3);
    for (const auto &p : fig1->points)
        CHECK((p.n_antennas == 16 && p.n_users == 8));

    const auto *fig2 = find_preset("fig2");
    REQUIRE(fig2);
    for (const auto &p : fig2->points)
        CHECK((p.n_antennas == 32 && p.n_users == 16));

    const auto *fig3 = find_preset("fig3");
    REQUIRE(fig3);
    for (const auto &p : fig3->points)
        CHECK((p.n_antennas == 128 && p.n_users == 64));
    CHECK(fig3->points[0].snr_db == 0.0);
    CHECK(fig3->points[1].snr_db == 5.0);
    CHECK(fig3->points[2].snr_db == 10.0);

    const double fixed_snr[] = {0.0, 5.0, 10.0};
    for (int i = 0; i < 3; ++i)
    {
        const auto *p = find_preset("fig" + std::to_string(4 + i));
        REQUIRE(p);
        REQUIRE(p->points.size() == kAntennaSweep.size());
        for (std::size_t j = 0; j < p->points.size(); ++j)
        {
            CHECK(p->points[j].snr_db == fixed_snr[i]);
            CHECK(p->points[j].n_users == 8);
            CHECK(p->points[j].n_antennas == kAntennaSweep[j]);
        }
    }
    CHECK(find_preset("fig7") == nullptr);
}

TEST_CASE("presets subcommand")
{
    const auto r = run_cli("presets");
    CHECK(r.status == 0);
    for (int i = 1; i <= 6; ++i)
        CHECK(r.out.find("fig" + std::to_string(i)) != std::string::npos);
    CHECK(r.out.find("bpsk") != std::string::npos);
}

TEST_CASE("usage errors exit with 2")
{
    const auto dir = fresh_dir("usage");
    CHECK(run_cli("run --samples 0 --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("run --n-users 1 --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("run --preset fig9 --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("run --format xml --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("run --outputs bogus --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("run --modulation bpsk --alpha-tilde 2 --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("run --gamma-min 0 --gamma-max 1 --out-dir " + dir.string()).status == 2);
    CHECK(run_cli("").status == 2);
}

TEST_CASE("unwritable output exits with 4")
{
    const auto blocker = fs::temp_directory_path() / "msinr_cli_blocker";
    fs::remove_all(blocker);
    std::ofstream(blocker) << "file, not a directory\n";
    const auto r = run_cli("run --samples 100 --out-dir " + (blocker / "sub").string());
    CHECK(r.status == 4);
    CHECK(r.out.find("msinr:") != std::string::npos);
    fs::remove(blocker);
}

TEST_CASE("convergence failure exits with 3 and names the SINR point")
{
    const auto dir = fresh_dir("convergence");
    const auto r = run_cli("run -N 64 -K 32 --samples 100 --rel-tol 1e-15 --max-subdivisions 10 --outputs analytic_curve "
                           "--gamma-min 2 --gamma-max 4 --gamma-points 3 --out-dir " + dir.string());
    CHECK(r.status == 3);
    CHECK(r.out.find("gamma") != std::string::npos);
}

TEST_CASE("reruns are byte-identical and summaries follow the schema")
{
    const std::string args = "run -N 16 -K 8 --snr-db 5 --samples 20000 --seed 42 --gamma-points 64 ";
    const auto a = fresh_dir("rerun_a");
    const auto b = fresh_dir("rerun_b");
    REQUIRE(run_cli(args + "--out-dir " + a.string()).status == 0);
    REQUIRE(run_cli(args + "--out-dir " + b.string()).status == 0);

    const std::string stem = "N16_K8_snr5dB";
    for (const char *suffix : {"_analytic.csv", "_empirical.csv"})
    {
        const auto fa = read_file(a / (stem + suffix));
        CHECK(!fa.empty());
        CHECK(fa == read_file(b / (stem + suffix)));
    }

    auto sa = json::parse(read_file(a / (stem + "_summary.json")));
    auto sb = json::parse(read_file(b / (stem + "_summary.json")));
    const json schema = json::parse(read_file(MSINR_SCHEMA_PATH));
    std::string why;
    CHECK_MESSAGE(validate(sa, schema, schema, why, ""), why);

    CHECK(sa["config"]["n_antennas"] == 16);
    CHECK(sa["seed"] == 42);
    CHECK(sa["l1"].get<double>() < 0.2);
    CHECK(sa["normalization_check"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    sa.erase("runtime_s");
    sb.erase("runtime_s");
    CHECK(sa == sb);

    // a different seed changes the empirical curve
    const auto c = fresh_dir("rerun_c");
    REQUIRE(run_cli("run -N 16 -K 8 --snr-db 5 --samples 20000 --seed 43 --gamma-points 64 --out-dir " + c.string())
                .status == 0);
    CHECK(read_file(a / (stem + "_empirical.csv")) != read_file(c / (stem + "_empirical.csv")));
}

TEST_CASE("output subsets and JSON curves")
{
    const auto dir = fresh_dir("subset");
    const auto r = run_cli("run -N 8 -K 4 --snr-db 0 --samples 5000 --format json --outputs analytic_curve,ser "
                           "--modulation qpsk --out-dir " + dir.string());
    REQUIRE(r.status == 0);
    CHECK(fs::exists(dir / "N8_K4_snr0dB_analytic.json"));
    CHECK_FALSE(fs::exists(dir / "N8_K4_snr0dB_empirical.json"));
    const auto curve = json::parse(read_file(dir / "N8_K4_snr0dB_analytic.json"));
    CHECK(curve["kind"] == "analytic");
    CHECK(curve["gamma"].size() == 512);

    const auto summary = json::parse(read_file(dir / "N8_K4_snr0dB_summary.json"));
    CHECK(summary["l1"].is_null());
    CHECK(summary["moments"].is_null());
    CHECK(summary["sum_rate"].is_null());
    CHECK(summary["ser"]["alpha_tilde"] == 2.0);
    CHECK(summary["ser"]["beta_tilde"] == 1.0);
    const json schema = json::parse(read_file(MSINR_SCHEMA_PATH));
    std::string why;
    CHECK_MESSAGE(validate(summary, schema, schema, why, ""), why);
}
