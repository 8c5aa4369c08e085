#include <gtest/gtest.h>

#include <sstream>

#include "lilambda/cli.hpp"

using namespace lilambda;
using namespace lilambda::cli;

namespace {

const std::string data_dir = LILAMBDA_DATA_DIR;

RunConfig eta_config(int lo, int hi) {
    RunConfig c;
    c.method = LambdaMethod::eta;
    c.n_min = lo;
    c.n_max = hi;
    c.stieltjes_path = data_dir + "/stieltjes_100.tsv";
    return c;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(Parse, Ranges) {
    EXPECT_EQ(parse_range("1..10"), std::make_pair(1, 10));
    EXPECT_EQ(parse_range("7"), std::make_pair(7, 7));
    EXPECT_THROW(parse_range("1..x"), CliError);
    EXPECT_THROW(parse_range(""), CliError);
}

TEST(Parse, ModelAndInjection) {
    EXPECT_TRUE(parse_model("riemann").riemann);
    const auto m = parse_model("0.1,0.0");
    EXPECT_DOUBLE_EQ(m.r_minus2, 0.1);
    EXPECT_THROW(parse_model("0.1"), CliError);
    const auto i = parse_injection("0.7,2.0");
    EXPECT_DOUBLE_EQ(i.beta, 0.7);
    EXPECT_EQ(i.multiplicity, 1);
    EXPECT_EQ(parse_injection("0.7,2.0,3").multiplicity, 3);
    EXPECT_THROW(parse_injection("0.7,2.0,1.5"), CliError);
}

TEST(Compute, EtaCsvRows) {
    std::ostringstream out, err;
    ASSERT_EQ(run_compute(eta_config(1, 10), out, err), exit_ok) << err.str();
    const auto ls = lines(out.str());
    ASSERT_EQ(ls.size(), 11u);
    EXPECT_EQ(ls[0], "n,lambda,method,precision_digits,truncation,tail_estimate");
    EXPECT_EQ(ls[1].rfind("1,2.3095708966121033814", 0), 0u) << ls[1];
    // digits = ceil(0.61 * 10) + 10 + 20
    EXPECT_NE(ls[1].find(",eta,37,J=10,"), std::string::npos) << ls[1];
}

TEST(Compute, Deterministic) {
    std::ostringstream a, b, err;
    auto cfg = eta_config(1, 20);
    cfg.format = Format::json;
    ASSERT_EQ(run_compute(cfg, a, err), exit_ok);
    ASSERT_EQ(run_compute(cfg, b, err), exit_ok);
    EXPECT_EQ(a.str(), b.str());
    const auto j = nlohmann::json::parse(a.str());
    EXPECT_EQ(j["rows"].size(), 20u);
    EXPECT_EQ(j["method"], "eta");
}

TEST(Compute, AutoDigitsFollowPolicy) {
    auto cfg = eta_config(1, 100);
    const auto s = compute_series(cfg, LambdaMethod::eta);
    EXPECT_EQ(s.precision_used, 61u + 10u + 20u);
}

TEST(Compute, ExitCodes) {
    std::ostringstream out, err;
    RunConfig direct;
    direct.method = LambdaMethod::direct;
    direct.n_max = 5;
    EXPECT_EQ(run_compute(direct, out, err), exit_missing_input);
    direct.zeros_path = "/nonexistent/zeros.txt";
    EXPECT_EQ(run_compute(direct, out, err), exit_missing_input);

    auto eta = eta_config(1, 5);
    eta.stieltjes_path.clear();
    EXPECT_EQ(run_compute(eta, out, err), exit_missing_input);
    EXPECT_EQ(run_compute(eta_config(1, 101), out, err), exit_missing_input);

    auto low = eta_config(1, 100);
    low.digits = 40;
    EXPECT_EQ(run_compute(low, out, err), exit_precision);

    EXPECT_EQ(run_compute(eta_config(5, 3), out, err), exit_bad_range);
    EXPECT_EQ(run_compute(eta_config(0, 3), out, err), exit_bad_range);
}

TEST(Compute, DirectOnSyntheticCatalogCarriesMetadata) {
    RunConfig cfg;
    cfg.method = LambdaMethod::direct;
    cfg.synthetic = 500;
    cfg.n_max = 3;
    cfg.fast = true;
    std::ostringstream out, err;
    ASSERT_EQ(run_compute(cfg, out, err), exit_ok) << err.str();
    const auto ls = lines(out.str());
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_NE(ls[3].find(",direct,"), std::string::npos);
    EXPECT_NE(ls[3].find(",K=500,"), std::string::npos);
}

TEST(Compare, EtaAgainstFromZ) {
    auto cfg = eta_config(1, 30);
    cfg.command = Command::compare;
    cfg.against = LambdaMethod::from_Z;
    cfg.zeros_path = data_dir + "/riemann_zeros_100k.txt";
    cfg.max_zeros = 10000;
    cfg.tol = 1e-8;
    std::ostringstream out, err;
    EXPECT_EQ(run_compare(cfg, out, err), exit_ok) << out.str() << err.str();
    EXPECT_NE(out.str().find("result=pass"), std::string::npos);
}

TEST(Compare, DirectAgainstEta) {
    auto cfg = eta_config(1, 50);
    cfg.method = LambdaMethod::direct;
    cfg.against = LambdaMethod::eta;
    cfg.zeros_path = data_dir + "/riemann_zeros_100k.txt";
    cfg.max_zeros = 10000;
    cfg.fast = true;
    cfg.tol = 1e-3;
    std::ostringstream out, err;
    EXPECT_EQ(run_compare(cfg, out, err), exit_ok) << err.str();
}

TEST(Compare, IdenticalMethodsRejected) {
    auto cfg = eta_config(1, 5);
    cfg.against = LambdaMethod::eta;
    std::ostringstream out, err;
    EXPECT_EQ(run_compare(cfg, out, err), exit_bad_comparison);
    cfg.against.reset();
    EXPECT_EQ(run_compare(cfg, out, err), exit_bad_comparison);
}

TEST(Compare, ToleranceFailureIsReported) {
    auto cfg = eta_config(1, 10);
    cfg.method = LambdaMethod::direct;
    cfg.against = LambdaMethod::eta;
    cfg.zeros_path = data_dir + "/riemann_zeros_100k.txt";
    cfg.max_zeros = 50;
    cfg.fast = true;
    cfg.tol = 1e-12;
    std::ostringstream out, err;
    EXPECT_EQ(run_compare(cfg, out, err), exit_failure);
    EXPECT_NE(out.str().find("result=fail"), std::string::npos);
}

TEST(Diagnose, RegimesAndReportFields) {
    RunConfig cfg;
    cfg.method = LambdaMethod::direct;
    cfg.synthetic = 10000;
    cfg.n_min = 50;
    cfg.n_max = 400;
    cfg.fast = true;
    std::ostringstream out, err;
    ASSERT_EQ(run_diagnose(cfg, out, err), exit_ok) << err.str();
    auto j = nlohmann::json::parse(out.str());
    EXPECT_EQ(j["regime"], "tempered");
    for (const char* k : {"A", "B", "envelope_rate", "sign_changes", "n_range"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["n_range"][0], 50);

    cfg.inject = Injection{0.7, 2.0, 1};
    std::ostringstream out2;
    ASSERT_EQ(run_diagnose(cfg, out2, err), exit_ok) << err.str();
    EXPECT_EQ(nlohmann::json::parse(out2.str())["regime"], "oscillatory");
}

TEST(Diagnose, ShortRange) {
    RunConfig cfg;
    cfg.method = LambdaMethod::direct;
    cfg.synthetic = 100;
    cfg.n_min = 1;
    cfg.n_max = 10;
    std::ostringstream out, err;
    EXPECT_EQ(run_diagnose(cfg, out, err), exit_bad_range);
}

TEST(Compute, EtaRequiresRiemannModel) {
    auto cfg = eta_config(1, 5);
    cfg.model = CountingModel::custom(0.1, 0.0);
    std::ostringstream out, err;
    EXPECT_EQ(run_compute(cfg, out, err), exit_failure);
}
