#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <regex>
#include <sstream>

#include "svw/cli.hpp"
#include "test_support.hpp"

namespace cli = svw::cli;
using std::numbers::pi;
using svw::testing::parse_csv;
using svw::testing::read_file;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "svw-ent");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

} // namespace

TEST(CliEvolve, TwoDotsQuarterPeriodRow) {
    svw::testing::TempDir dir("svw_evolve");
    const auto path = dir.path() / "e.csv";
    const auto r = run({"evolve", "--n", "2", "--m", "1", "--tau-max", fmt_double(pi), "--steps", "5", "--out",
                        path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(read_file(path));
    ASSERT_EQ(rows.size(), 6U);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"tau", "P_0", "P_1", "entropy"}));
    EXPECT_NEAR(std::stod(rows[2][0]), pi / 4, 1e-14);
    EXPECT_NEAR(std::stod(rows[2][3]), 1.0, 1e-12);
    EXPECT_NEAR(std::stod(rows[1][3]), 0.0, 1e-15);
}

TEST(CliEvolve, InitialRowIsProductState) {
    const auto r = run({"evolve", "--n", "3", "--m", "1", "--steps", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[1], (std::vector<std::string>{"0", "1", "0", "0"}));
    // Default tau_max is one period 2 pi / N.
    EXPECT_NEAR(std::stod(rows.back()[0]), 2 * pi / 3, 1e-14);
}

TEST(CliEvolve, SevenDotsStationaryRow) {
    const auto r = run({"evolve", "--n", "7", "--m", "1", "--tau-max", fmt_double(2 * pi / 7), "--steps", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_NEAR(std::stod(rows[2][0]), pi / 7, 1e-15);
    EXPECT_NEAR(std::stod(rows[2][3]), 0.9997, 5e-5);
}

TEST(CliEvolve, DeterministicBytes) {
    const std::vector<std::string> args{"evolve", "--n", "6", "--m", "3", "--steps", "257", "--tau-max", "5"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
    EXPECT_EQ(parse_csv(a.out).size(), 258U);
}

TEST(CliEvolve, SvgMatchesCsv) {
    svw::testing::TempDir dir("svw_evolve_svg");
    const auto path = dir.path() / "run.csv";
    const auto r = run({"evolve", "--n", "5", "--m", "2", "--steps", "40", "--out", path.string(), "--svg"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto svg = read_file(dir.path() / "run.svg");
    EXPECT_TRUE(svw::testing::xml_well_formed(svg));
    const std::regex re("points=\"([^\"]*)\"");
    std::size_t polylines = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        const std::string pts = (*it)[1];
        EXPECT_EQ(static_cast<std::size_t>(std::count(pts.begin(), pts.end(), ' ')) + 1, 40U);
        ++polylines;
    }
    EXPECT_EQ(polylines, 4U); // P_0, P_1, P_2, entropy
}

TEST(CliEvolve, ErrorsAndExitCodes) {
    EXPECT_EQ(run({"evolve", "--n", "4", "--out", "/nonexistent-dir/x.csv"}).code, cli::kExitFailure);
    EXPECT_EQ(run({"evolve", "--steps", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"evolve", "--tau-max", "-1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"evolve", "--n", "3", "--m", "4"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"evolve", "--svg"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"evolve", "--bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(CliConfig, FlagsOverrideFileOverrideDefaults) {
    svw::testing::TempDir dir("svw_config");
    const auto ini = dir.path() / "run.ini";
    svw::output::write_text(ini, "[evolve]\nn=5\nsteps=3\n");

    auto from_file = parse_csv(run({"--config", ini.string(), "evolve"}).out);
    EXPECT_EQ(from_file.size(), 4U);
    EXPECT_NEAR(std::stod(from_file.back()[0]), 2 * pi / 5, 1e-14);

    auto overridden = parse_csv(run({"--config", ini.string(), "evolve", "--n", "2"}).out);
    EXPECT_EQ(overridden.size(), 4U);
    EXPECT_NEAR(std::stod(overridden.back()[0]), pi, 1e-14);

    auto defaults = parse_csv(run({"evolve"}).out);
    EXPECT_EQ(defaults.size(), 513U);
    EXPECT_NEAR(std::stod(defaults.back()[0]), pi / 2, 1e-14);
}

TEST(CliMaxima, MagicNumberTable) {
    const auto r = run({"maxima", "--n-min", "2", "--n-max", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 7U);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "tau_prime", "tau_double_prime", "max_entropy", "argmax_tau"}));
    for (int i = 1; i <= 5; ++i) {
        EXPECT_FALSE(rows[i][1].empty());
        EXPECT_NEAR(std::stod(rows[i][3]), 1.0, 1e-10);
    }
    EXPECT_TRUE(rows[6][1].empty());
    EXPECT_NEAR(std::stod(rows[6][3]), 0.9997, 5e-5);
}

TEST(CliMaxima, TwoDotsRootIsQuarterPi) {
    const auto rows = parse_csv(run({"maxima", "--n-min", "2", "--n-max", "2"}).out);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_NEAR(std::stod(rows[1][1]), 0.7853981633974483, 1e-15);
}

TEST(CliMaxima, NoRootPastSix) {
    const auto rows = parse_csv(run({"maxima", "--n-min", "7", "--n-max", "8"}).out);
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_TRUE(rows[1][1].empty());
    EXPECT_TRUE(rows[2][1].empty());
}

TEST(CliMaxima, RejectsGeneralM) {
    const auto r = run({"maxima", "--m", "2"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("single initial excitation"), std::string::npos);
    EXPECT_EQ(run({"maxima", "--n-min", "5", "--n-max", "3"}).code, cli::kExitUsage);
}

TEST(CliVerify, ExitCodes) {
    EXPECT_EQ(run({"verify", "--n-min", "2", "--n-max", "6", "--m", "1"}).code, cli::kExitOk);
    const auto ten = run({"verify", "--n-min", "10", "--n-max", "10", "--m", "5"});
    EXPECT_EQ(ten.code, cli::kExitOk);
    EXPECT_NE(ten.out.find("N=10 M= 5"), std::string::npos);
    EXPECT_NE(ten.out.find("PASS"), std::string::npos);
    EXPECT_EQ(run({"verify", "--n-max", "20"}).code, cli::kExitUsage);
}

TEST(CliVerify, ReportFileAndDefaultMRange) {
    svw::testing::TempDir dir("svw_verify");
    const auto path = dir.path() / "report.txt";
    const auto r = run({"verify", "--n-max", "5", "--samples", "8", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_file(path), r.out);
    // N = 2..5 with M = 0..N/2: 2 + 2 + 3 + 3 configurations.
    EXPECT_NE(r.out.find("10 of 10 configurations passed"), std::string::npos);
}

TEST(CliVerify, WorkerCountDoesNotChangeReport) {
    ::setenv("SVW_WORKERS", "1", 1);
    EXPECT_EQ(cli::worker_count(), 1);
    const auto serial = run({"verify", "--n-max", "7", "--samples", "16"});
    ::setenv("SVW_WORKERS", "3", 1);
    EXPECT_EQ(cli::worker_count(), 3);
    const auto parallel = run({"verify", "--n-max", "7", "--samples", "16"});
    ::unsetenv("SVW_WORKERS");
    EXPECT_EQ(serial.out, parallel.out);
}

TEST(CliFigures, WritesAllDataSets) {
    svw::testing::TempDir dir("svw_figures");
    const auto r = run({"figures", "--out-dir", dir.path().string(), "--svg"});
    ASSERT_EQ(r.code, 0) << r.err;

    const auto fig3 = parse_csv(read_file(dir.path() / "fig3.csv"));
    ASSERT_EQ(fig3.size(), 30U); // header + N = 2..30
    EXPECT_EQ(fig3[6][0], "7");
    EXPECT_NEAR(std::stod(fig3[6][3]), 0.9997, 5e-5);

    const auto fig2 = parse_csv(read_file(dir.path() / "fig2.csv"));
    std::map<int, double> peak;
    for (std::size_t i = 1; i < fig2.size(); ++i) {
        const int n = std::stoi(fig2[i][0]);
        peak[n] = std::max(peak[n], std::stod(fig2[i][3]));
    }
    for (int n = 2; n <= 6; ++n) {
        EXPECT_NEAR(peak[n], 1.0, 1e-6) << n;
    }
    for (int n = 7; n <= 10; ++n) {
        EXPECT_LT(peak[n], 1.0 - 1e-6) << n;
    }

    // N = 2: the entanglement peak sits where both Schmidt coefficients equal 1/2.
    const auto fig1 = parse_csv(read_file(dir.path() / "fig1.csv"));
    double best = -1.0;
    std::vector<std::string> best_row;
    for (std::size_t i = 1; i < fig1.size(); ++i) {
        if (fig1[i][0] == "2" && std::stod(fig1[i][4]) > best) {
            best = std::stod(fig1[i][4]);
            best_row = fig1[i];
        }
    }
    EXPECT_NEAR(std::stod(best_row[2]), 0.5, 1e-12);
    EXPECT_NEAR(std::stod(best_row[3]), 0.5, 1e-12);

    for (const char* name : {"fig1.svg", "fig2.svg", "fig3.svg"}) {
        EXPECT_TRUE(svw::testing::xml_well_formed(read_file(dir.path() / name))) << name;
    }
    const auto svg3 = read_file(dir.path() / "fig3.svg");
    const std::regex re("points=\"([^\"]*)\"");
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg3, m, re));
    const std::string pts = m[1];
    EXPECT_EQ(static_cast<std::size_t>(std::count(pts.begin(), pts.end(), ' ')) + 1, fig3.size() - 1);
}

TEST(CliFigures, RequiresOutDir) { EXPECT_EQ(run({"figures"}).code, cli::kExitUsage); }
