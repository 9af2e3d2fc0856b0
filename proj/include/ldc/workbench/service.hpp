/// HTTP/JSON service hosting the elicitation loop.
#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "ldc/model.hpp"

namespace ldc::workbench {

/// Feasibility view shared by the CLI and the service: eps*, and the minimal
/// conflicts when the statements are incompatible.
nlohmann::json feasibility_report(const Problem& problem);

/// In-memory problem store with job-based SMAA runs, one job per problem at a time.
///
///   POST /problems                       create from a problem document
///   GET  /problems/{id}
///   PUT  /problems/{id}/statements       replace the statement set
///   GET  /problems/{id}/feasibility
///   GET  /problems/{id}/ror
///   POST /problems/{id}/smaa             body: sampler overrides; returns a job id
///   GET  /jobs/{id}
///   GET  /problems/{id}/indices?sample=barycenter
///
/// Errors are {"error": {"code": ..., "message": ...}} with status 404, 409 or 422.
class Service {
 public:
  Service();
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds to an ephemeral port and returns it; serve with listen_after_bind().
  int bind_any_port(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen_after_bind();
  void stop();
  /// Waits for every SMAA job to finish.
  void wait_for_jobs();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ldc::workbench
