#include <gtest/gtest.h>
#include <sys/wait.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "ldc/workbench/cli.hpp"
#include "ldc/workbench/io.hpp"
#include "ldc/workbench/pareto.hpp"
#include "ldc/workbench/report.hpp"
#include "ldc/workbench/service.hpp"
#include "support.hpp"

namespace ldc::workbench {
namespace {

namespace fs = std::filesystem;

TEST(Csv, RoundTrip) {
  const auto m = load_evaluations_csv(test::data("university.csv"));
  EXPECT_EQ(m.alternatives(), 29u);
  EXPECT_EQ(m.criteria(), 4u);
  std::stringstream buf;
  write_evaluations_csv(buf, m);
  const auto back = read_evaluations_csv(buf);
  EXPECT_EQ(back.alternative_ids(), m.alternative_ids());
  EXPECT_EQ(back.values().data(), m.values().data());
}

TEST(Csv, RejectsMalformedInput) {
  std::stringstream bad_cell("alternative,x,y\nA,1,oops\n");
  EXPECT_THROW(read_evaluations_csv(bad_cell), FormatError);
  std::stringstream short_row("alternative,x,y\nA,1\n");
  EXPECT_THROW(read_evaluations_csv(short_row), FormatError);
}

TEST(Csv, AlignColumns) {
  std::stringstream in("alternative,Ph,M\nA,1,2\n");
  const auto m = align_columns(read_evaluations_csv(in), {{"M", ""}, {"Ph", ""}});
  EXPECT_EQ(m.criterion_ids(), (std::vector<std::string>{"M", "Ph"}));
  EXPECT_EQ(m.at(0, 0), 2.0);
  EXPECT_THROW(align_columns(m, {{"Q", ""}}), FormatError);
}

TEST(ProblemJson, RoundTripPreservesEverything) {
  for (const char* name : {"students_piecewise.json", "university.json"}) {
    const char* csv = std::string(name).rfind("students", 0) == 0 ? "students.csv" : "university.csv";
    const ProblemFile f = load_problem(test::data(name), test::data(csv));
    const json doc = problem_to_json(f);
    const ProblemFile back = problem_from_json(doc);
    EXPECT_EQ(problem_to_json(back), doc) << name;
    ASSERT_EQ(back.problem.statements.size(), f.problem.statements.size());
    for (std::size_t k = 0; k < f.problem.statements.size(); ++k)
      EXPECT_EQ(describe(back.problem.statements[k]), describe(f.problem.statements[k]));
  }
}

TEST(ProblemJson, RejectsBadDocuments) {
  EXPECT_THROW(problem_from_json(json::parse(R"({"name": 3})")), FormatError);
  EXPECT_THROW(statement_from_json(json::parse(R"({"type": "bogus"})")), FormatError);
  EXPECT_THROW(statement_from_json(json::parse(R"({"type": "preference", "a": "A"})")), FormatError);
}

TEST(ProblemJson, StatementForms) {
  const auto s = statement_from_json(json::parse(
      R"({"type": "importance", "i": "M", "j": "Ph", "relation": "strict",
          "range": {"from": 18, "to": 25, "upper_open": true}})"));
  EXPECT_EQ(describe(s), "phi(M) > phi(Ph) on [18, 25[");
  EXPECT_EQ(statement_from_json(statement_to_json(s)).index(), s.index());
  const auto r = statement_from_json(json::parse(R"({"type": "ranking", "groups": [["A"], ["B", "C"]]})"));
  EXPECT_EQ(describe(r), "ranking A > B ~ C");
}

TEST(SamplerJson, Overrides) {
  const auto cfg = sampler_from_json(json::parse(R"({"samples": 50, "seed": 3, "epsilon_mode": "fixed_fraction"})"));
  EXPECT_EQ(cfg.samples, 50u);
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.epsilon_mode, EpsilonMode::fixed_fraction);
  EXPECT_EQ(cfg.burn_in, SamplerConfig{}.burn_in);
  EXPECT_EQ(sampler_from_json(to_json(cfg)).seed, 3u);
}

bool dominates_oracle(const EvaluationMatrix& m, std::size_t a, std::size_t b) {
  bool strict = false;
  for (std::size_t i = 0; i < m.criteria(); ++i) {
    if (m.at(a, i) < m.at(b, i)) return false;
    strict = strict || m.at(a, i) > m.at(b, i);
  }
  return strict;
}

TEST(Pareto, RankedUniversitiesAreMutuallyNondominated) {
  const auto p = test::load("university.json", "university.csv");
  std::vector<std::string> ids;
  Matrix<double> v(p.ranked.size(), 4);
  for (std::size_t k = 0; k < p.ranked.size(); ++k) {
    ids.push_back(p.ranked[k]);
    for (std::size_t i = 0; i < 4; ++i) v(k, i) = p.evaluations.at(p.evaluations.index_of(p.ranked[k]), i);
  }
  const auto fronts = pareto_fronts(EvaluationMatrix(ids, p.evaluations.criterion_ids(), v));
  ASSERT_EQ(fronts.size(), 1u);
  EXPECT_EQ(fronts[0].size(), 19u);
}

TEST(Pareto, ChainGivesOneFrontPerAlternative) {
  Matrix<double> v(4, 2);
  for (std::size_t a = 0; a < 4; ++a) v(a, 0) = v(a, 1) = 3.0 - a;
  const auto fronts = pareto_fronts(EvaluationMatrix({"a", "b", "c", "d"}, {"x", "y"}, v));
  EXPECT_EQ(fronts, (std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"c"}, {"d"}}));
}

TEST(Pareto, AgreesWithPairwiseOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(0, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 12;
    Matrix<double> v(n, 3);
    std::vector<std::string> ids;
    for (std::size_t a = 0; a < n; ++a) {
      ids.push_back("a" + std::to_string(a));
      for (std::size_t i = 0; i < 3; ++i) v(a, i) = u(rng);
    }
    const EvaluationMatrix m(ids, {"x", "y", "z"}, v);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) EXPECT_EQ(dominates(m, a, b), dominates_oracle(m, a, b));
    // Peel fronts with the oracle.
    std::vector<bool> left(n, true);
    std::vector<std::vector<std::string>> expected;
    for (std::size_t remaining = n; remaining > 0;) {
      std::vector<std::string> front;
      std::vector<std::size_t> members;
      for (std::size_t a = 0; a < n; ++a) {
        if (!left[a]) continue;
        bool dominated = false;
        for (std::size_t b = 0; b < n; ++b) dominated = dominated || (left[b] && dominates_oracle(m, b, a));
        if (!dominated) members.push_back(a);
      }
      for (auto a : members) {
        front.push_back(ids[a]);
        left[a] = false;
      }
      remaining -= members.size();
      expected.push_back(front);
    }
    EXPECT_EQ(pareto_fronts(m), expected);
  }
}

TEST(Report, TextViews) {
  const auto p = test::load("students.json", "students.csv");
  const std::string ror = format_ror(robust_ordinal_regression(p));
  EXPECT_NE(ror.find("G"), std::string::npos);
  const auto sys = build_edm(test::load("students_weighted_sum.json", "students.csv"));
  const std::string text = format_conflicts(diagnose(sys));
  EXPECT_NE(text.find("C > B"), std::string::npos);
}

int cli(std::vector<const char*> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "ldc");
  std::ostringstream o, e;
  const int code = run_cli(static_cast<int>(args.size()), args.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

TEST(Cli, ExitCodes) {
  const std::string students = test::data("students.json"), csv = test::data("students.csv");
  const std::string ws = test::data("students_weighted_sum.json");
  std::string out;
  EXPECT_EQ(cli({"validate", "-p", students.c_str(), "-e", csv.c_str()}, &out), kExitOk);
  EXPECT_EQ(cli({"check", "-p", students.c_str(), "-e", csv.c_str()}, &out), kExitOk);
  EXPECT_EQ(out, "epsilon_star=1\n");
  EXPECT_EQ(cli({"check", "-p", ws.c_str(), "-e", csv.c_str()}), kExitIncompatible);
  EXPECT_EQ(cli({"diagnose", "-p", ws.c_str(), "-e", csv.c_str()}, &out), kExitIncompatible);
  EXPECT_NE(out.find("E > F"), std::string::npos);
  EXPECT_EQ(cli({"ror", "-p", ws.c_str(), "-e", csv.c_str()}), kExitIncompatible);
  EXPECT_EQ(cli({"check", "-p", "/nonexistent.json"}), kExitInvalid);
  EXPECT_EQ(cli({"bogus"}), kExitInvalid);
  EXPECT_EQ(cli({"fronts", "-e", csv.c_str(), "--json"}, &out), kExitOk);
  EXPECT_EQ(json::parse(out)["fronts"][0], json::parse(R"(["A", "C", "I"])"));
  EXPECT_EQ(cli({"explain", "-p", students.c_str(), "-e", csv.c_str(), "--ranking", "H>G", "--samples", "200"}),
            kExitIncompatible);
  EXPECT_EQ(cli({"explain", "-p", students.c_str(), "-e", csv.c_str(), "--ranking", "G>I>H", "--samples", "500"}),
            kExitOk);
}

TEST(Cli, InvalidProblemExitCode) {
  const fs::path dir = fs::temp_directory_path() / "ldc_cli_invalid";
  fs::create_directories(dir);
  json doc = json::parse(std::ifstream(test::data("students.json")));
  doc["statements"][0]["a"] = "Z";
  std::ofstream(dir / "bad.json") << doc.dump();
  const std::string path = (dir / "bad.json").string(), csv = test::data("students.csv");
  std::string out;
  EXPECT_EQ(cli({"validate", "-p", path.c_str(), "-e", csv.c_str()}, &out), kExitInvalid);
  EXPECT_NE(out.find("Z"), std::string::npos);
  EXPECT_EQ(cli({"check", "-p", path.c_str(), "-e", csv.c_str()}), kExitInvalid);
}

int run_binary(const std::string& args) {
  const int status = std::system((std::string(LDC_CLI) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(CliBinary, SeededSmaaIsByteIdentical) {
  const fs::path dir = fs::temp_directory_path() / "ldc_cli_binary";
  fs::create_directories(dir);
  const std::string base = "smaa -p " + test::data("students.json") + " -e " + test::data("students.csv") +
                           " --samples 2000 --seed 5 --json";
  ASSERT_EQ(run_binary(base + " --out " + (dir / "a.json").string() + " > /dev/null"), 0);
  ASSERT_EQ(run_binary(base + " --out " + (dir / "b.json").string() + " > /dev/null"), 0);
  const std::string a = slurp(dir / "a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.json"));
  EXPECT_EQ(run_binary("check -p " + test::data("students_weighted_sum.json") + " -e " + test::data("students.csv") +
                       " > /dev/null"),
            3);
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = service_.bind_any_port();
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_.listen_after_bind(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int k = 0; k < 100 && !client_->Get("/jobs/none"); ++k)
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  void TearDown() override {
    service_.wait_for_jobs();
    service_.stop();
    thread_.join();
  }

  std::string create(const std::string& name, const std::string& csv) {
    const json doc = problem_to_json(load_problem(test::data(name), test::data(csv)));
    auto res = client_->Post("/problems", doc.dump(), "application/json");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    return json::parse(res->body)["id"];
  }

  static std::string code_of(const httplib::Result& res) { return json::parse(res->body)["error"]["code"]; }

  Service service_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ServiceTest, ElicitationLoop) {
  const std::string id = create("students.json", "students.csv");
  auto got = client_->Get("/problems/" + id);
  ASSERT_EQ(got->status, 200);
  EXPECT_EQ(json::parse(got->body)["problem"]["name"], "students-interval");

  auto feas = client_->Get("/problems/" + id + "/feasibility");
  ASSERT_EQ(feas->status, 200);
  EXPECT_NEAR(json::parse(feas->body)["epsilon_star"].get<double>(), 1.0, 1e-9);

  auto ror = client_->Get("/problems/" + id + "/ror");
  ASSERT_EQ(ror->status, 200);

  auto job = client_->Post("/problems/" + id + "/smaa", R"({"samples": 2000, "seed": 3})", "application/json");
  ASSERT_EQ(job->status, 202);
  const std::string job_id = json::parse(job->body)["job"];
  service_.wait_for_jobs();
  auto done = client_->Get("/jobs/" + job_id);
  ASSERT_EQ(done->status, 200);
  const json body = json::parse(done->body);
  EXPECT_EQ(body["status"], "done");
  EXPECT_TRUE(body["result"].contains("pwi"));

  auto indices = client_->Get("/problems/" + id + "/indices?sample=barycenter&samples=500");
  ASSERT_EQ(indices->status, 200);
  EXPECT_TRUE(json::parse(indices->body).contains("importance"));
  EXPECT_EQ(client_->Get("/problems/" + id + "/indices?sample=median")->status, 422);

  // Statement replacement that makes the problem incompatible.
  const json bad = json::parse(R"([{"type": "preference", "a": "H", "b": "G", "relation": "strict"},
                                   {"type": "preference", "a": "B", "b": "H", "relation": "strict"},
                                   {"type": "preference", "a": "G", "b": "B", "relation": "strict"}])");
  auto put = client_->Put("/problems/" + id + "/statements", bad.dump(), "application/json");
  ASSERT_EQ(put->status, 200);
  auto conflict = client_->Get("/problems/" + id + "/feasibility");
  ASSERT_EQ(conflict->status, 200);
  const json report = json::parse(conflict->body);
  EXPECT_FALSE(report["compatible"].get<bool>());
  EXPECT_FALSE(report["conflicts"].empty());
  auto rejected = client_->Post("/problems/" + id + "/smaa", "{}", "application/json");
  EXPECT_EQ(rejected->status, 422);
  EXPECT_EQ(code_of(rejected), "incompatible");
}

TEST_F(ServiceTest, Errors) {
  EXPECT_EQ(client_->Get("/problems/nope")->status, 404);
  EXPECT_EQ(client_->Get("/jobs/nope")->status, 404);
  auto garbage = client_->Post("/problems", "{not json", "application/json");
  EXPECT_EQ(garbage->status, 422);
  EXPECT_EQ(code_of(garbage), "invalid_json");
  json doc = problem_to_json(load_problem(test::data("students.json"), test::data("students.csv")));
  doc["statements"][0]["b"] = "Z";
  auto invalid = client_->Post("/problems", doc.dump(), "application/json");
  EXPECT_EQ(invalid->status, 422);
  EXPECT_EQ(code_of(invalid), "invalid_problem");
  const std::string id = create("students.json", "students.csv");
  auto bad = client_->Put("/problems/" + id + "/statements", R"([{"type": "preference", "a": "A", "b": "Q"}])",
                          "application/json");
  EXPECT_EQ(bad->status, 422);
  EXPECT_EQ(code_of(bad), "invalid_statement");
}

TEST_F(ServiceTest, SecondJobOnSameProblemConflicts) {
  const std::string id = create("university.json", "university.csv");
  auto first = client_->Post("/problems/" + id + "/smaa", R"({"samples": 20000})", "application/json");
  ASSERT_EQ(first->status, 202);
  auto second = client_->Post("/problems/" + id + "/smaa", R"({"samples": 10})", "application/json");
  // The first job may already be done on a fast machine.
  if (second->status != 202) {
    EXPECT_EQ(second->status, 409);
    EXPECT_EQ(code_of(second), "job_running");
  }
}

}  // namespace
}  // namespace ldc::workbench
