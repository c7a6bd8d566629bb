// End-to-end checks of the epibranch binary: file inventories, reference
// values through the full pipeline, exit codes, and byte-level determinism.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ebp/ingest.hpp"
#include "ebp/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

#define REQUIRE(cond, msg)                                                     \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " "       \
                      << msg << "\n";                                          \
            ++failures;                                                        \
        }                                                                      \
    } while (0)

int run(const std::string& args) {
    std::string cmd = std::string(EPIBRANCH_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::size_t line_count(const std::string& path) {
    std::string text = ebp::read_file(path);
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

const std::string kData = std::string(EPIBRANCH_DATA) + "/bulgaria.csv";

} // namespace

int main() {
    fs::remove_all("cli_test_out");
    fs::create_directories("cli_test_out");
    const std::string out = "cli_test_out/";

    // ---- simulate: inventory, row counts, determinism
    std::string sim_args = "simulate --family geometric --m 1.1093 --q 0.3 "
                           "--init-n 1 --days 30 --reps 5000 --seed 42";
    REQUIRE(run(sim_args + " --out " + out + "sim_a --threads 1") == 0,
            "simulate failed");
    REQUIRE(run(sim_args + " --out " + out + "sim_b --threads 4") == 0,
            "simulate rerun failed");
    for (const char* f : {"ensemble.csv", "trajectory.csv", "cases.csv",
                          "simulate_metadata.json"})
        REQUIRE(fs::exists(out + "sim_a/" + f), std::string(f) + " missing");
    REQUIRE(line_count(out + "sim_a/ensemble.csv") == 31,
            "ensemble.csv should have a header plus one row per day");

    for (const char* f : {"ensemble.csv", "trajectory.csv", "cases.csv"}) {
        std::string a = ebp::read_file(out + "sim_a/" + f);
        std::string b = ebp::read_file(out + "sim_b/" + f);
        REQUIRE(a == b, std::string(f) +
                            " differs across thread counts (same seed)");
    }
    // identical argv twice gives identical bytes, metadata included
    REQUIRE(run(sim_args + " --out " + out + "sim_a2 --threads 1") == 0,
            "simulate rerun failed");
    REQUIRE(ebp::read_file(out + "sim_a/simulate_metadata.json") !=
                ebp::read_file(out + "sim_b/simulate_metadata.json"),
            "different argv should be visible in the metadata");
    {
        std::string m1 = ebp::read_file(out + "sim_a/simulate_metadata.json");
        // re-run with the same argv except the out dir; normalize it away
        std::string m2 = ebp::read_file(out + "sim_a2/simulate_metadata.json");
        size_t p;
        while ((p = m1.find("sim_a2")) != std::string::npos) m1.erase(p, 6);
        while ((p = m1.find("sim_a")) != std::string::npos) m1.erase(p, 5);
        while ((p = m2.find("sim_a2")) != std::string::npos) m2.erase(p, 6);
        while ((p = m2.find("sim_a")) != std::string::npos) m2.erase(p, 5);
        REQUIRE(m1 == m2, "metadata differs beyond the output directory");
    }

    // single-day, single-rep run: one data row
    REQUIRE(run("simulate --family geometric --m 1.1 --q 0.3 --days 1 --reps 1 "
                "--seed 3 --out " + out + "sim_tiny") == 0,
            "tiny simulate failed");
    REQUIRE(line_count(out + "sim_tiny/ensemble.csv") == 2,
            "days=1 should emit a single data row");

    // the emitted case series parses back through the ingestion path
    {
        ebp::ParseOptions keep;
        keep.trim_leading_zeros = false;
        auto parsed = ebp::parse_csv(ebp::read_file(out + "sim_a/cases.csv"), keep);
        REQUIRE(parsed.series.n() == 30, "cases.csv should carry 30 days");
    }

    // ---- estimate: reference values through the whole pipeline
    REQUIRE(run("estimate --input " + kData + " --seed 7 --out " + out +
                "est --format csv,json,svg") == 0,
            "estimate failed");
    for (const char* f :
         {"m_path_harris.csv", "m_path_lotka_nagaev.csv",
          "m_path_crump_hove.csv", "estimates.json", "m_dynamics.svg",
          "estimate_metadata.json"})
        REQUIRE(fs::exists(out + "est/" + f), std::string(f) + " missing");
    {
        json j = json::parse(ebp::read_file(out + "est/estimates.json"));
        bool found_harris = false;
        for (const auto& pe : j["point_estimates"]) {
            if (pe["kind"] == "harris") {
                found_harris = true;
                double v = pe["value"].get<double>();
                REQUIRE(std::abs(v - 327.0 / 293.0) < 1e-12,
                        "harris point estimate off: " + std::to_string(v));
                REQUIRE(pe.contains("ci"), "harris point estimate lacks a CI");
                REQUIRE(pe["ci"]["lower"].get<double>() <= v &&
                            v <= pe["ci"]["upper"].get<double>(),
                        "CI does not bracket the point estimate");
            }
        }
        REQUIRE(found_harris, "no harris entry in point_estimates");
        REQUIRE(j["config"].contains("seed"), "seed missing from config echo");
    }

    // ---- forecast: curve files for all three estimators
    REQUIRE(run("forecast --input " + kData + " --s 10 --horizon 5 --out " +
                out + "fc") == 0,
            "forecast failed");
    int curves = 0;
    for (const char* f : {"forecast_harris.csv", "forecast_lotka_nagaev.csv",
                          "forecast_crump_hove.csv"})
        if (fs::exists(out + "fc/" + f)) ++curves;
    REQUIRE(curves == 3, "expected 3 forecast curves");
    for (const char* f : {"alpha_harris.csv", "alpha_lotka_nagaev.csv",
                          "alpha_crump_hove.csv"})
        REQUIRE(fs::exists(out + "fc/" + f), std::string(f) + " missing");
    // days 10..26 inclusive plus header
    REQUIRE(line_count(out + "fc/forecast_harris.csv") == 18,
            "forecast_harris.csv should cover days 10..26");

    // ---- backtest: reference rows under the pinned mean
    REQUIRE(run("backtest --input " + kData + " --horizon 5 --m-override "
                "1.1093 --ci-reps 0 --out " + out + "bt") == 0,
            "backtest failed");
    {
        std::string csv = ebp::read_file(out + "bt/backtest.csv");
        REQUIRE(csv.find("1,32,38") != std::string::npos, "k=1 row wrong");
        REQUIRE(csv.find("2,24,29") != std::string::npos, "k=2 row wrong");
        REQUIRE(csv.find("3,24,22") != std::string::npos, "k=3 row wrong");
        REQUIRE(csv.find("4,21,22") != std::string::npos, "k=4 row wrong");
    }

    // ---- report: one value column per input
    {
        std::string c2 = out + "copy2.csv", c3 = out + "copy3.csv";
        fs::copy_file(kData, c2, fs::copy_options::overwrite_existing);
        fs::copy_file(kData, c3, fs::copy_options::overwrite_existing);
        REQUIRE(run("report --input " + kData + " " + c2 + " " + c3 +
                    " --out " + out + "rep") == 0,
                "report failed");
        std::string head = ebp::read_file(out + "rep/report_m_comparison.csv");
        head = head.substr(0, head.find('\n'));
        REQUIRE(std::count(head.begin(), head.end(), ',') == 3,
                "expected day plus 3 value columns, got header: " + head);
        REQUIRE(fs::exists(out + "rep/report_alpha_comparison.csv"),
                "alpha comparison missing");
        // single input: degenerate single-column comparison
        REQUIRE(run("report --input " + kData + " --out " + out + "rep1") == 0,
                "single-input report failed");
        std::string h1 = ebp::read_file(out + "rep1/report_m_comparison.csv");
        h1 = h1.substr(0, h1.find('\n'));
        REQUIRE(std::count(h1.begin(), h1.end(), ',') == 1,
                "expected a single value column");
    }

    // ---- law JSON (file and inline) and an initial distribution
    {
        std::string law_file = out + "law.json";
        ebp::write_file(law_file,
                        "{\"family\":\"poisson\",\"lambda\":0.9,\"q\":0.2,"
                        "\"truncation\":4}");
        REQUIRE(run("simulate --law " + law_file + " --days 5 --reps 100 "
                    "--seed 11 --out " + out + "sim_law") == 0,
                "simulate with a law file failed");
        json meta = json::parse(
            ebp::read_file(out + "sim_law/simulate_metadata.json"));
        REQUIRE(meta["law"]["family"] == "poisson", "law file not honored");
        REQUIRE(meta["law"]["truncation"] == 4, "truncation lost");

        REQUIRE(run("simulate --law "
                    "'{\"family\":\"geometric\",\"p\":0.5,\"q\":0.2}' "
                    "--init-dist 0.5,0.5 --days 5 --reps 100 --seed 11 --out " +
                    out + "sim_inline") == 0,
                "simulate with inline law JSON failed");
        json meta2 = json::parse(
            ebp::read_file(out + "sim_inline/simulate_metadata.json"));
        REQUIRE(meta2["init"]["kind"] == "distribution",
                "init distribution not honored");
    }

    // ---- cumulative input equals the daily input
    {
        auto daily = ebp::parse_csv(ebp::read_file(kData));
        std::string cum = "date,value\n";
        for (int day = 1; day <= daily.series.n(); ++day)
            cum += ebp::format_date(daily.series.date(day)) + "," +
                   std::to_string(daily.series.u(day)) + "\n";
        ebp::write_file(out + "cumulative.csv", cum);
        REQUIRE(run("estimate --input " + out + "cumulative.csv "
                    "--value-kind cumulative --ci-reps 0 --out " + out +
                    "est_cum") == 0,
                "cumulative estimate failed");
        std::string a = ebp::read_file(out + "est/m_path_harris.csv");
        std::string b = ebp::read_file(out + "est_cum/m_path_harris.csv");
        REQUIRE(a == b, "cumulative input gave a different harris path");
    }

    // ---- mismatched spans align on the trailing overlap with a warning
    {
        auto full = ebp::parse_csv(ebp::read_file(kData));
        std::string shorter = "date,value\n";
        for (int day = 7; day <= full.series.n(); ++day)
            shorter += ebp::format_date(full.series.date(day)) + "," +
                       std::to_string(full.series.z2(day)) + "\n";
        ebp::write_file(out + "shorter.csv", shorter);
        REQUIRE(run("report --input " + kData + " " + out + "shorter.csv "
                    "--out " + out + "rep_mix") == 0,
                "mixed-span report failed");
        json idx = json::parse(
            ebp::read_file(out + "rep_mix/report_index.json"));
        bool warned = false;
        for (const auto& w : idx["warnings"])
            if (w["message"].get<std::string>().find("trailing") !=
                std::string::npos)
                warned = true;
        REQUIRE(warned, "no trailing-overlap warning in the index");
        std::string head =
            ebp::read_file(out + "rep_mix/report_m_comparison.csv");
        std::size_t rows = 0;
        for (char ch : head)
            if (ch == '\n') ++rows;
        REQUIRE(rows == 15, "expected 14 aligned rows plus header, got " +
                                std::to_string(rows));
    }

    // ---- estimate without CIs needs no seed
    REQUIRE(run("estimate --input " + kData + " --ci-reps 0 --out " + out +
                "est_nociseed") == 0,
            "estimate with --ci-reps 0 should not need a seed");

    // ---- svg output is emitted and well-formed
    REQUIRE(run("forecast --input " + kData + " --s 10 --format svg --out " +
                out + "fc_svg") == 0,
            "svg forecast failed");
    {
        std::string svg = ebp::read_file(out + "fc_svg/forecast.svg");
        REQUIRE(svg.rfind("<svg", 0) == 0 &&
                    svg.find("</svg>") != std::string::npos,
                "forecast.svg is not an svg document");
    }

    // ---- exit codes
    REQUIRE(run("simulate --family geometric --m 1.0 --q 0.6 --seed 1 --out " +
                out + "x") == 2,
            "infeasible calibration should exit 2");
    REQUIRE(run("estimate --input /does/not/exist.csv --seed 1 --out " + out +
                "x") == 1,
            "missing input should exit 1");
    REQUIRE(run("forecast --input " + kData + " --s 99 --out " + out + "x") == 2,
            "base day outside the series should exit 2");
    REQUIRE(run("backtest --input " + kData + " --horizon 40 --seed 1 --out " +
                out + "x") == 2,
            "oversized backtest window should exit 2");
    REQUIRE(run("estimate --input " + kData + " --out " + out + "x") == 2,
            "CI without a seed should exit 2");
    REQUIRE(run("simulate --days 5 --out " + out + "x") == 2,
            "missing seed should exit 2");
    REQUIRE(run("bogus-subcommand") == 2, "unknown subcommand should exit 2");
    {
        std::string one = out + "one.csv";
        ebp::write_file(one, "date,value\n2020-01-01,5\n");
        REQUIRE(run("estimate --input " + one + " --seed 1 --out " + out + "x") == 1,
                "length-1 series should exit 1 (insufficient data)");
    }

    if (failures == 0) {
        std::cout << "cli integration: all checks passed\n";
        return 0;
    }
    std::cerr << "cli integration: " << failures << " failure(s)\n";
    return 1;
}
