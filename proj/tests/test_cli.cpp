#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "qcg/cli.hpp"
#include "qcg/config.hpp"
#include "qcg/report_io.hpp"

using namespace qcg;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

std::string config_path(const std::string& name) { return std::string(QCG_CONFIG_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "qcg_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QCG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesAndResolvesRelativePaths) {
    const auto cfg = load_run_config(config_path("decreasing_envelope.json"));
    ASSERT_TRUE(cfg.reports_csv);
    EXPECT_TRUE(fs::exists(*cfg.reports_csv));
    EXPECT_EQ(cfg.theorem, "lemma3");
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_run_config(nlohmann::json{{"famly", "identity"}}), ParseError);
    EXPECT_THROW(parse_run_config(nlohmann::json{{"theorem", "lemma9"}}), ParseError);
    EXPECT_THROW(parse_run_config(nlohmann::json{{"format", "xml"}}), ParseError);
    EXPECT_THROW(parse_run_config(nlohmann::json{{"field_csv", "/nonexistent.csv"}}), ParseError);
    EXPECT_THROW(parse_run_config(nlohmann::json{{"rel_tol", -1.0}}), DomainError);
    EXPECT_THROW(parse_run_config(nlohmann::json{{"alpha", "half"}}), ParseError);
}

TEST(Config, StatementFixesWeightAndRadius) {
    auto cfg = parse_run_config(nlohmann::json{{"family", "log-stretch"}, {"theorem", "thm2"}, {"N", 1}});
    EXPECT_DOUBLE_EQ(config_r0(cfg), std::numbers::e);
    cfg = parse_run_config(nlohmann::json{{"family", "power"}, {"theorem", "cor1"}, {"r0", 2.0}});
    EXPECT_THROW(config_r0(cfg), ParseError);
    cfg = parse_run_config(nlohmann::json{{"family", "power"}, {"R_min", 1.0}, {"R_max", 10.0}});
    EXPECT_THROW(config_grid(cfg, config_r0(cfg)), ParseError);
}

TEST(Config, EnvironmentOverridesRelativeTolerance) {
    RunConfig cfg;
    ::setenv("QCG_QUAD_RTOL", "1e-7", 1);
    apply_environment(cfg);
    ::unsetenv("QCG_QUAD_RTOL");
    EXPECT_EQ(cfg.quad.rel_tol, 1e-7);
}

TEST(ReportCsv, PropertyRoundTripPreservesValues) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> mant(1.0, 10.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    std::vector<GrowthReport> reports;
    double R = 1.0;
    for (int i = 0; i < 200; ++i) {
        GrowthReport r;
        R *= 1.0 + mant(rng);
        r.R = R;
        r.M_R = mant(rng) * std::pow(10.0, expo(rng));
        r.I_R = mant(rng);
        r.Lambda_R = mant(rng) * 1e-3;
        r.envelope = mant(rng) * std::pow(10.0, expo(rng));
        r.ratio = -r.envelope;
        if (i % 3 != 0) {
            r.floor = mant(rng);
        }
        r.converged = i % 7 != 0;
        reports.push_back(r);
    }
    std::stringstream ss;
    write_reports_csv(ss, reports);
    const auto back = read_reports_csv(ss);
    EXPECT_EQ(back, reports);
}

TEST(ReportCsv, RejectsMalformedTables) {
    std::istringstream wrong_header("a,b\n1,2\n");
    EXPECT_THROW(read_reports_csv(wrong_header), ParseError);
    std::istringstream short_row(std::string(kReportHeader) + "\n1,2,3\n");
    EXPECT_THROW(read_reports_csv(short_row), ParseError);
    std::istringstream bad_status(std::string(kReportHeader) + "\n1,1,1,1,1,1,,maybe\n");
    EXPECT_THROW(read_reports_csv(bad_status), ParseError);
}

TEST(Analyze, IdentityEnvelopeIsOne) {
    auto cfg = load_run_config(config_path("identity_lemma3.json"));
    std::stringstream out;
    EXPECT_EQ(cli::cmd_analyze(cfg, out), cli::kExitOk);
    const auto reports = read_reports_csv(out);
    ASSERT_EQ(reports.size(), 13u);
    for (const auto& r : reports) {
        EXPECT_NEAR(r.envelope, 1.0, 1e-6);
        EXPECT_NEAR(r.Lambda_R, 2.0 * pi / std::log(r.R), 1e-9 * r.Lambda_R);
        EXPECT_EQ(r.floor, std::optional<double>(1.0));
    }
}

TEST(Analyze, PowerEnvelopeIsOne) {
    auto cfg = load_run_config(config_path("power_lemma3.json"));
    std::stringstream out;
    EXPECT_EQ(cli::cmd_analyze(cfg, out), cli::kExitOk);
    for (const auto& r : read_reports_csv(out)) {
        EXPECT_NEAR(r.envelope, 1.0, 1e-6);
    }
}

TEST(Analyze, TabulatedFieldRuns) {
    auto cfg = load_run_config(config_path("tabulated_lemma3.json"));
    std::stringstream out;
    EXPECT_EQ(cli::cmd_analyze(cfg, out), cli::kExitOk);
    const auto reports = read_reports_csv(out);
    ASSERT_EQ(reports.size(), 13u);
    for (const auto& r : reports) {
        ASSERT_TRUE(r.floor);
        EXPECT_GE(r.envelope, *r.floor * (1.0 - 1e-8));
    }
    // K is not constant past r = 1, so psi = 1/t is not extremal and the floor is strict
    EXPECT_GT(reports.back().envelope, *reports.back().floor * 1.01);
}

TEST(Analyze, JsonFormat) {
    auto cfg = load_run_config(config_path("identity_lemma3.json"));
    cfg.format = "json";
    std::stringstream out;
    EXPECT_EQ(cli::cmd_analyze(cfg, out), cli::kExitOk);
    const auto doc = nlohmann::json::parse(out.str());
    ASSERT_EQ(doc.size(), 13u);
    EXPECT_NEAR(doc[0]["envelope"].get<double>(), 1.0, 1e-6);
}

TEST(Analyze, MalformedConfigWritesNoOutput) {
    const auto cfg_path = scratch("bad.json");
    const auto out_path = scratch("bad_out.csv");
    fs::remove(out_path);
    std::ofstream(cfg_path) << R"({"family": "identity", "r0": 10.0, "R_min": 10.0, "R_max": 1e6})";
    EXPECT_NE(run_cli("analyze --config " + cfg_path.string() + " --out " + out_path.string()), 0);
    EXPECT_FALSE(fs::exists(out_path));
}

TEST(Analyze, RepeatedRunsAreByteIdentical) {
    const auto a = scratch("det_a.csv");
    const auto b = scratch("det_b.csv");
    const auto cfg = config_path("power_cor1.json");
    ASSERT_EQ(run_cli("analyze --config " + cfg + " --out " + a.string()), 0);
    ASSERT_EQ(run_cli("analyze --config " + cfg + " --out " + b.string()), 0);
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Verify, Corollary2OnPowerFamily) {
    const auto cfg = load_run_config(config_path("power_cor2.json"));
    std::stringstream out;
    EXPECT_EQ(cli::cmd_verify(cfg, out), cli::kExitOk);
    const auto text = out.str();
    const auto doc = nlohmann::json::parse(text.substr(text.find('{')));
    EXPECT_EQ(doc["verdict"], "bounded-below");
    EXPECT_NEAR(doc["tail_min"].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(doc["constant"].get<double>(), 2.0, 1e-10);
}

TEST(Verify, Theorem2OnLogStretch) {
    const auto cfg = load_run_config(config_path("logstretch_thm2.json"));
    std::stringstream out;
    EXPECT_EQ(cli::cmd_verify(cfg, out), cli::kExitOk);
    const auto text = out.str();
    const auto doc = nlohmann::json::parse(text.substr(text.find('{')));
    EXPECT_EQ(doc["verdict"], "bounded-below");
    EXPECT_NEAR(doc["tail_min"].get<double>(), 1.0, 1e-6);
    EXPECT_NEAR(doc["exponent"].get<double>(), 0.5, 1e-4);
}

TEST(Verify, DecreasingFixtureTendsToZero) {
    const auto cfg = load_run_config(config_path("decreasing_envelope.json"));
    std::stringstream out;
    EXPECT_EQ(cli::cmd_verify(cfg, out), cli::kExitDecay);
    EXPECT_NE(out.str().find("tends-to-zero"), std::string::npos);
    EXPECT_EQ(run_cli("verify --config " + config_path("decreasing_envelope.json")), 3);
}

TEST(Lemma5Cmd, ExitStatus) {
    std::stringstream out;
    EXPECT_EQ(cli::cmd_lemma5(1, std::exp(std::numbers::e), {}, out), cli::kExitOk);
    EXPECT_NE(out.str().find("closed_form"), std::string::npos);
    EXPECT_EQ(run_cli("lemma5 --N 0 --R 2.718281828459045"), 0);
    EXPECT_EQ(run_cli("lemma5 --N 2 --R 3814279.1047602206"), 0);
    EXPECT_NE(run_cli("lemma5 --N 1 --R 2.0"), 0);
    EXPECT_NE(run_cli("lemma5 --N 5 --R 1e300"), 0);
}

TEST(RingCheckCmd, IdentityAllHoldWithExtremalMinimum) {
    const auto ann = AnnulusSpec({}, 1.0, std::numbers::e);
    const auto rows = cli::run_ring_trials(RadialProfile::identity(), ann, 20, 42, {});
    ASSERT_EQ(rows.size(), 21u);
    double min_rhs = INFINITY;
    for (const auto& t : rows) {
        ASSERT_TRUE(t.row);
        EXPECT_TRUE(t.row->holds);
        min_rhs = std::min(min_rhs, t.row->rhs);
    }
    EXPECT_EQ(rows.front().kind, "extremal");
    EXPECT_EQ(min_rhs, rows.front().row->rhs);
    EXPECT_NEAR(min_rhs, 2.0 * pi, 1e-9);
}

TEST(RingCheckCmd, PowerFamilyAndDeterminism) {
    const auto cfg = load_run_config(config_path("power_ring.json"));
    std::stringstream a;
    std::stringstream b;
    EXPECT_EQ(cli::cmd_ring_check(cfg, 20, 7, a), cli::kExitOk);
    EXPECT_EQ(cli::cmd_ring_check(cfg, 20, 7, b), cli::kExitOk);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().find("false"), std::string::npos);
}

TEST(RingCheckCmd, ZeroTrialsIsUsageError) {
    const auto cfg = load_run_config(config_path("identity_ring.json"));
    std::stringstream out;
    EXPECT_THROW(cli::cmd_ring_check(cfg, 0, 42, out), cli::UsageError);
    EXPECT_EQ(run_cli("ring-check --config " + config_path("identity_ring.json") + " --trials 0"), 1);
}

TEST(FamiliesCmd, ListsCatalog) {
    std::stringstream out;
    EXPECT_EQ(cli::cmd_families(out), cli::kExitOk);
    EXPECT_NE(out.str().find("log-stretch"), std::string::npos);
    EXPECT_EQ(run_cli("families"), 0);
}
