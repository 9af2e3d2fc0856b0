#include "ldc/workbench/service.hpp"

#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "ldc/elicitation.hpp"
#include "ldc/smaa.hpp"
#include "ldc/workbench/io.hpp"

namespace ldc::workbench {

json feasibility_report(const Problem& problem) {
  const ConstraintSystem system = build_edm(problem);
  const Compatibility c = check_compatibility(system);
  json out = to_json(c);
  if (!c.compatible()) out["conflicts"] = to_json(diagnose(system));
  return out;
}

namespace {

struct Job {
  explicit Job(std::string p = {}) : problem(std::move(p)) {}
  std::string problem;
  std::string status = "running";
  json result;
  std::string error;
};

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& code, const std::string& message,
          json extra = json::object()) {
  json err = {{"code", code}, {"message", message}};
  for (auto it = extra.begin(); it != extra.end(); ++it) err[it.key()] = it.value();
  send(res, status, {{"error", err}});
}

}  // namespace

struct Service::Impl {
  httplib::Server server;
  std::mutex mutex;
  std::condition_variable idle;
  std::map<std::string, ProblemFile> problems;
  std::map<std::string, Job> jobs;
  std::map<std::string, std::string> running;  // problem id -> job id
  std::vector<std::thread> workers;
  std::size_t next_problem = 1;
  std::size_t next_job = 1;

  Impl() { routes(); }

  ~Impl() {
    server.stop();
    for (auto& t : workers)
      if (t.joinable()) t.join();
  }

  /// Copy of a stored problem, or nullopt after answering 404.
  std::optional<ProblemFile> lookup(const std::string& id, httplib::Response& res) {
    std::lock_guard lock(mutex);
    auto it = problems.find(id);
    if (it == problems.end()) {
      fail(res, 404, "not_found", "unknown problem '" + id + "'");
      return std::nullopt;
    }
    return it->second;
  }

  static std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res, bool allow_empty) {
    if (req.body.empty()) {
      if (allow_empty) return json::object();
      fail(res, 422, "invalid_json", "request body is empty");
      return std::nullopt;
    }
    try {
      return json::parse(req.body);
    } catch (const json::exception& e) {
      fail(res, 422, "invalid_json", e.what());
      return std::nullopt;
    }
  }

  /// Runs an engine call, mapping domain errors onto status codes.
  template <class F>
  static void guarded(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const IncompatibleError& e) {
      fail(res, 422, "incompatible", e.what());
    } catch (const ValidationError& e) {
      fail(res, 422, "invalid_problem", e.what());
    } catch (const FormatError& e) {
      fail(res, 422, "invalid_document", e.what());
    } catch (const std::exception& e) {
      fail(res, 500, "internal", e.what());
    }
  }

  void routes() {
    server.Post("/problems", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res, false);
      if (!body) return;
      guarded(res, [&] {
        ProblemFile f = problem_from_json(*body);
        const ValidationReport report = validate(f.problem);
        if (!report.ok()) return fail(res, 422, "invalid_problem", report.summary(), {{"issues", to_json(report)["issues"]}});
        std::string id;
        {
          std::lock_guard lock(mutex);
          id = "p" + std::to_string(next_problem++);
          problems[id] = f;
        }
        send(res, 201, {{"id", id}, {"problem", problem_to_json(f)}});
      });
    });

    server.Get(R"(/problems/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto f = lookup(req.matches[1], res);
      if (f) send(res, 200, {{"id", std::string(req.matches[1])}, {"problem", problem_to_json(*f)}});
    });

    server.Put(R"(/problems/([^/]+)/statements)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto f = lookup(id, res);
      if (!f) return;
      auto body = parse_body(req, res, false);
      if (!body) return;
      std::vector<PreferenceStatement> statements;
      try {
        statements = statements_from_json(*body);
      } catch (const FormatError& e) {
        return fail(res, 422, "invalid_statement", e.what());
      }
      f->problem.statements = std::move(statements);
      const ValidationReport report = validate(f->problem);
      if (!report.ok())
        return fail(res, 422, "invalid_statement", report.summary(), {{"issues", to_json(report)["issues"]}});
      std::lock_guard lock(mutex);
      if (running.count(id)) return fail(res, 409, "job_running", "an SMAA job is running on this problem");
      problems[id] = *f;
      send(res, 200, {{"id", id}, {"statements", f->problem.statements.size()}});
    });

    server.Get(R"(/problems/([^/]+)/feasibility)", [this](const httplib::Request& req, httplib::Response& res) {
      auto f = lookup(req.matches[1], res);
      if (f) guarded(res, [&] { send(res, 200, feasibility_report(f->problem)); });
    });

    server.Get(R"(/problems/([^/]+)/ror)", [this](const httplib::Request& req, httplib::Response& res) {
      auto f = lookup(req.matches[1], res);
      if (f) guarded(res, [&] { send(res, 200, to_json(robust_ordinal_regression(f->problem))); });
    });

    server.Post(R"(/problems/([^/]+)/smaa)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto f = lookup(id, res);
      if (!f) return;
      auto body = parse_body(req, res, true);
      if (!body) return;
      guarded(res, [&] {
        const SamplerConfig cfg = sampler_from_json(*body, f->smaa);
        const ConstraintSystem system = build_edm(f->problem);
        if (!check_compatibility(system).compatible())
          return fail(res, 422, "incompatible", "preference statements admit no compatible capacity");
        std::string job;
        {
          std::lock_guard lock(mutex);
          if (running.count(id)) return fail(res, 409, "job_running", "an SMAA job is already running on this problem");
          job = "j" + std::to_string(next_job++);
          jobs[job] = Job(id);
          running[id] = job;
          workers.emplace_back([this, job, id, cfg, system, problem = f->problem] {
            Job done(id);
            try {
              done.result = to_json(smaa_run(problem, system, cfg));
              done.status = "done";
            } catch (const std::exception& e) {
              done.status = "failed";
              done.error = e.what();
            }
            std::lock_guard inner(mutex);
            jobs[job] = std::move(done);
            running.erase(id);
            idle.notify_all();
          });
        }
        send(res, 202, {{"job", job}, {"problem", id}, {"config", to_json(cfg)}});
      });
    });

    server.Get(R"(/jobs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex);
      auto it = jobs.find(req.matches[1]);
      if (it == jobs.end()) return fail(res, 404, "not_found", "unknown job '" + std::string(req.matches[1]) + "'");
      json body = {{"id", it->first}, {"problem", it->second.problem}, {"status", it->second.status}};
      if (it->second.status == "done") body["result"] = it->second.result;
      if (it->second.status == "failed") body["error"] = it->second.error;
      send(res, 200, body);
    });

    server.Get(R"(/problems/([^/]+)/indices)", [this](const httplib::Request& req, httplib::Response& res) {
      auto f = lookup(req.matches[1], res);
      if (!f) return;
      const std::string sample = req.has_param("sample") ? req.get_param_value("sample") : "barycenter";
      if (sample != "barycenter") return fail(res, 422, "unsupported_sample", "only sample=barycenter is supported");
      guarded(res, [&] {
        SamplerConfig cfg = f->smaa;
        if (req.has_param("samples")) cfg.samples = std::stoul(req.get_param_value("samples"));
        const ConstraintSystem system = build_edm(f->problem);
        const Matrix<double> samples = har_sample(system, cfg);
        std::vector<double> mean(samples.cols(), 0.0);
        for (std::size_t s = 0; s < samples.rows(); ++s)
          for (std::size_t j = 0; j < samples.cols(); ++j) mean[j] += samples(s, j) / static_cast<double>(samples.rows());
        const auto ldc = LevelDependentCapacity::from_parameters(system.layout(), mean);
        send(res, 200,
             {{"sample", "barycenter"},
              {"samples", cfg.samples},
              {"capacity", to_json(ldc, f->problem.criteria)},
              {"importance", to_json(importance_profile(ldc), f->problem.criteria)},
              {"interaction", to_json(interaction_profile(ldc), f->problem.criteria)}});
      });
    });
  }
};

Service::Service() : impl_(std::make_unique<Impl>()) {}
Service::~Service() = default;

int Service::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool Service::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }
bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }

void Service::wait_for_jobs() {
  std::unique_lock lock(impl_->mutex);
  impl_->idle.wait(lock, [&] { return impl_->running.empty(); });
}

}  // namespace ldc::workbench
