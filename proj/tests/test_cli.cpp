#include "cli/commands.hpp"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    args.insert(args.begin(), "eqmargin");
    const int code = eqmargin::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) result.push_back(line);
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir {
public:
    TempDir()
        : path_(fs::temp_directory_path() /
                (std::string("eqmargin_cli_") +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

const std::string kSummary = "50,0,50,0.2,1";

}  // namespace

TEST(CliTest, EquivalenceDecisionText) {
    const auto r = run({"test", "--summary", kSummary, "--delta", "0.6"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("equivalence claimed"), std::string::npos);
    EXPECT_NE(r.out.find("[-0.13211, 0.53211]"), std::string::npos);
}

TEST(CliTest, EquivalenceDecisionCsvAndJsonAgree) {
    const auto csv = run({"test", "--summary", kSummary, "--delta", "0.5", "--format", "csv"});
    ASSERT_EQ(csv.code, 0);
    const auto rows = lines(csv.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].rfind("equivalence,false,", 0), 0u);

    const auto js = run({"test", "--summary", kSummary, "--delta", "0.5", "--format", "json"});
    ASSERT_EQ(js.code, 0);
    const auto doc = nlohmann::json::parse(js.out);
    EXPECT_EQ(doc["command"], "test");
    EXPECT_FALSE(doc["decision"]["reject_null"].get<bool>());
    EXPECT_NEAR(doc["decision"]["interval"]["upper"].get<double>(), 0.53211, 1e-5);
    EXPECT_EQ(doc["config"]["delta"].get<double>(), 0.5);
}

TEST(CliTest, CsvFileInput) {
    TempDir dir;
    const auto file = dir.path() / "groups.csv";
    std::ofstream(file) << "group,value\ncontrol,1.0\ncontrol,2.0\ncontrol,3.0\ntreated,2.0\ntreated,3.0\ntreated,4.0\n";
    const auto r = run({"test", "--csv", file.string(), "--delta", "5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(doc["decision"]["interval"]["estimate"].get<double>(), 1.0);
    EXPECT_TRUE(doc["decision"]["reject_null"].get<bool>());
}

TEST(CliTest, NonInferiorityFromReportedInterval) {
    const auto ok = run({"test", "--ci", "-0.1,0.3,0.9", "--ni-bound", "-0.2", "--direction", "lower"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_NE(ok.out.find("non-inferiority demonstrated"), std::string::npos);

    const auto fail = run({"test", "--ci", "-0.1,0.3,0.9", "--ni-bound", "-0.05", "--direction", "lower"});
    ASSERT_EQ(fail.code, 0);
    EXPECT_EQ(fail.out.find("non-inferiority demonstrated"), std::string::npos);

    const auto mismatch = run({"test", "--ci", "-0.1,0.3,0.95", "--ni-bound", "-0.2", "--direction", "lower"});
    EXPECT_EQ(mismatch.code, 3);
}

TEST(CliTest, MalformedInputExitsTwo) {
    EXPECT_EQ(run({"test", "--summary", kSummary}).code, 2);
    EXPECT_EQ(run({"test", "--summary", "50,0,50", "--delta", "1"}).code, 2);
    EXPECT_EQ(run({"test", "--summary", kSummary, "--delta", "1", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"test", "--csv", "/nonexistent/file.csv", "--delta", "1"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"simulate", "--reps", "10"}).code, 2);
    EXPECT_EQ(run({"fer"}).code, 2);
    EXPECT_EQ(run({"replicate", "--reps", "2000"}).code, 2);
}

TEST(CliTest, DomainErrorsExitThree) {
    const auto r = run({"test", "--summary", "1,0,50,0.2,1", "--delta", "0.5"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
    EXPECT_EQ(run({"test", "--summary", kSummary, "--delta", "0.5", "--alpha", "0.7"}).code, 3);
    EXPECT_EQ(run({"simulate", "--seed", "1", "--p-grid", "0,1.5", "--reps", "100"}).code, 3);
}

TEST(CliTest, LeadFromSymmetricInterval) {
    const auto r = run({"lead", "--ci", "-0.4,0.4,0.9", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(doc["lead"]["delta_of_x"].get<double>(), 0.4 + 0.001);
}

TEST(CliTest, LeadFromSummaryIsClaimed) {
    const auto r = run({"lead", "--summary", kSummary, "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].substr(rows[1].rfind(',') + 1), "true");
    EXPECT_EQ(rows[1].rfind("0.5331102434131183,", 0), 0u);
}

TEST(CliTest, CurveRows) {
    const auto r = run({"curve", "--summary", kSummary, "--grid", "0.1:1.0:10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0], "delta,alpha_min");
    EXPECT_EQ(rows[2], "0.20000000000000001,0.5");
    double prev = 1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double a = std::stod(rows[i].substr(rows[i].find(',') + 1));
        EXPECT_LT(a, prev) << rows[i];
        prev = a;
    }
    EXPECT_EQ(run({"curve", "--summary", kSummary, "--grid", "1:0.1:10"}).code, 3);
    EXPECT_EQ(run({"curve", "--summary", kSummary, "--grid", "0.1-1"}).code, 2);
}

TEST(CliTest, SimulateSmallGrid) {
    const auto r = run({"simulate", "--p-grid", "0,1", "--reps", "2000", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], "p,correlation,rejection_rate,pseudo_type1,null_true_fraction,fer_numerator_rate,mc_se");
    EXPECT_EQ(rows[2].rfind("1,1,1,1,", 0), 0u);
    EXPECT_NE(r.err.find("simulate: 2 points"), std::string::npos);
}

TEST(CliTest, SimulateOutputIsReproducibleAcrossWorkers) {
    const std::vector<std::string> base{"simulate", "--grid-points", "5", "--reps", "3000", "--seed", "11"};
    auto with_workers = [&](const std::string& w) {
        auto args = base;
        args.insert(args.end(), {"--workers", w});
        return run(args).out;
    };
    const auto one = with_workers("1");
    EXPECT_EQ(one, with_workers("1"));
    EXPECT_EQ(one, with_workers("3"));
    EXPECT_EQ(one, with_workers("0"));
    EXPECT_EQ(lines(one).size(), 6u);
}

TEST(CliTest, SimulateJsonRecordsConfig) {
    const auto r = run({"simulate", "--p-grid", "0.5", "--reps", "500", "--seed", "5", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["config"]["seed"].get<long>(), 5);
    EXPECT_EQ(doc["config"]["reps_per_point"].get<long>(), 500);
    EXPECT_DOUBLE_EQ(doc["config"]["ci_level"].get<double>(), 0.9);
    ASSERT_EQ(doc["results"].size(), 1u);
}

TEST(CliTest, OutputFileIsWrittenWhole) {
    TempDir dir;
    const auto target = dir.path() / "sim.csv";
    const auto r = run({"simulate", "--p-grid", "0,1", "--reps", "1000", "--seed", "2", "-o", target.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("simulate:"), std::string::npos);
    const auto direct = run({"simulate", "--p-grid", "0,1", "--reps", "1000", "--seed", "2"});
    EXPECT_EQ(slurp(target), direct.out);
    EXPECT_FALSE(fs::exists(target.string() + ".tmp"));
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++entries;
    EXPECT_EQ(entries, 1u);
}

TEST(CliTest, FerReportsAndWarns) {
    const auto r = run({"fer", "--reps", "2000", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out)[0], "theta,alpha,lead_epsilon,reps,estimate,mc_se,rejection_rate,false_claims");
    EXPECT_EQ(r.err.find("warning"), std::string::npos);

    const auto w = run({"fer", "--reps", "1000", "--seed", "3", "--target-se", "0.001"});
    ASSERT_EQ(w.code, 0);
    EXPECT_NE(w.err.find("warning:"), std::string::npos);
    EXPECT_EQ(run({"fer", "--seed", "3", "--lead-epsilon", "0"}).code, 3);
}

TEST(CliTest, ReplicateModes) {
    for (const std::string mode : {"nhst", "equivalence"}) {
        const auto r = run({"replicate", "--mode", mode, "--reps", "2000", "--seed", "4", "--format", "json"});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto doc = nlohmann::json::parse(r.out);
        const double prob = doc["result"]["probability"].get<double>();
        EXPECT_GT(prob, 0.4) << mode;
        EXPECT_LT(prob, 0.6) << mode;
    }
    EXPECT_EQ(run({"replicate", "--mode", "bayes", "--seed", "4"}).code, 2);
    EXPECT_EQ(run({"replicate", "--reps", "10", "--seed", "4"}).code, 3);
}
