#include "ldc/workbench/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ldc/elicitation.hpp"
#include "ldc/smaa.hpp"
#include "ldc/workbench/io.hpp"
#include "ldc/workbench/pareto.hpp"
#include "ldc/workbench/report.hpp"
#include "ldc/workbench/service.hpp"

namespace ldc::workbench {

namespace {

struct Inputs {
  std::string problem;
  std::string evaluations;
  bool json = false;
};

void add_inputs(CLI::App* cmd, Inputs& in, bool problem_required = true) {
  auto* p = cmd->add_option("-p,--problem", in.problem, "problem JSON file");
  if (problem_required) p->required();
  cmd->add_option("-e,--evaluations", in.evaluations, "evaluation CSV file");
  cmd->add_flag("--json", in.json, "emit JSON on stdout");
}

ProblemFile load(const Inputs& in) {
  return load_problem(in.problem, in.evaluations.empty() ? std::nullopt : std::optional<std::string>(in.evaluations));
}

std::string epsilon_text(double eps) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", eps);
  return buf;
}

/// Parses "A>B=C>D": groups split by '>', ties by '='.
FullRanking parse_ranking(const std::string& text) {
  FullRanking r;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, '>')) {
    std::vector<std::string> members;
    std::stringstream ties(group);
    std::string id;
    while (std::getline(ties, id, '='))
      if (!id.empty()) members.push_back(id);
    r.groups.push_back(std::move(members));
  }
  return r;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Level dependent Choquet integral preference workbench", "ldc"};
  app.require_subcommand(1);

  Inputs validate_in, check_in, diagnose_in, ror_in, smaa_in, explain_in, fronts_in;
  auto* validate_cmd = app.add_subcommand("validate", "check a problem and its evaluations");
  add_inputs(validate_cmd, validate_in);
  auto* check_cmd = app.add_subcommand("check", "solve for the largest epsilon");
  add_inputs(check_cmd, check_in);
  auto* diagnose_cmd = app.add_subcommand("diagnose", "list minimal conflicting statement sets");
  add_inputs(diagnose_cmd, diagnose_in);
  int diagnose_max = 4;
  diagnose_cmd->add_option("--max-size", diagnose_max, "largest conflict size searched");
  auto* ror_cmd = app.add_subcommand("ror", "necessary and possible preference relations");
  add_inputs(ror_cmd, ror_in);

  auto* smaa_cmd = app.add_subcommand("smaa", "stochastic multicriteria acceptability analysis");
  add_inputs(smaa_cmd, smaa_in);
  std::optional<std::size_t> samples, burn_in, thin;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> chains;
  std::string out_path;
  smaa_cmd->add_option("--samples", samples, "number of samples");
  smaa_cmd->add_option("--burn-in", burn_in, "discarded steps per chain");
  smaa_cmd->add_option("--thin", thin, "steps between recorded samples");
  smaa_cmd->add_option("--seed", seed, "random seed");
  smaa_cmd->add_option("--chains", chains, "independent chains");
  smaa_cmd->add_option("--out", out_path, "write the JSON result to this file");

  auto* explain_cmd = app.add_subcommand("explain", "barycenter of the capacities compatible with a full ranking");
  add_inputs(explain_cmd, explain_in);
  std::string ranking;
  explain_cmd->add_option("--ranking", ranking, "ranking to add, e.g. A>B=C>D");
  std::optional<std::size_t> explain_samples;
  explain_cmd->add_option("--samples", explain_samples, "number of samples");

  auto* fronts_cmd = app.add_subcommand("fronts", "non-dominated fronts of the evaluations");
  add_inputs(fronts_cmd, fronts_in, false);

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP/JSON service");
  std::optional<int> port;
  std::string host = "127.0.0.1";
  serve_cmd->add_option("--port", port, "port (falls back to LDC_PORT, then 8080)");
  serve_cmd->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*validate_cmd) {
      const ProblemFile f = load(validate_in);
      const ValidationReport report = validate(f.problem);
      if (validate_in.json) {
        out << to_json(report).dump(2) << '\n';
      } else {
        out << format_validation(report);
      }
      return report.ok() ? kExitOk : kExitInvalid;
    }

    if (*check_cmd) {
      const ProblemFile f = load(check_in);
      const Compatibility c = check_compatibility(build_edm(f.problem));
      if (check_in.json) {
        out << to_json(c).dump(2) << '\n';
      } else {
        out << "epsilon_star=" << (c.feasible ? epsilon_text(c.epsilon_star) : std::string("infeasible")) << '\n';
      }
      return c.compatible() ? kExitOk : kExitIncompatible;
    }

    if (*diagnose_cmd) {
      const ProblemFile f = load(diagnose_in);
      const ConstraintSystem system = build_edm(f.problem);
      const Compatibility c = check_compatibility(system);
      std::vector<Conflict> conflicts;
      if (!c.compatible()) conflicts = diagnose(system, {diagnose_max, 20});
      if (diagnose_in.json) {
        json j = to_json(c);
        j["conflicts"] = to_json(conflicts);
        out << j.dump(2) << '\n';
      } else if (c.compatible()) {
        out << "compatible, epsilon_star=" << epsilon_text(c.epsilon_star) << '\n';
      } else {
        out << format_conflicts(conflicts);
      }
      return c.compatible() ? kExitOk : kExitIncompatible;
    }

    if (*ror_cmd) {
      const ProblemFile f = load(ror_in);
      const RorResult r = robust_ordinal_regression(f.problem);
      out << (ror_in.json ? to_json(r).dump(2) + "\n" : format_ror(r));
      return kExitOk;
    }

    if (*smaa_cmd) {
      const ProblemFile f = load(smaa_in);
      SamplerConfig cfg = f.smaa;
      if (samples) cfg.samples = *samples;
      if (burn_in) cfg.burn_in = *burn_in;
      if (thin) cfg.thinning = *thin;
      if (seed) cfg.seed = *seed;
      if (chains) cfg.chains = *chains;
      cfg.check();
      const SmaaResult r = smaa_run(f.problem, cfg);
      json j = to_json(r);
      j["config"] = to_json(cfg);
      if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw FormatError("cannot write '" + out_path + "'");
        file << j.dump(2) << '\n';
      }
      out << (smaa_in.json ? j.dump(2) + "\n" : format_smaa(r));
      return kExitOk;
    }

    if (*explain_cmd) {
      ProblemFile f = load(explain_in);
      if (!ranking.empty()) f.problem.statements.push_back(parse_ranking(ranking));
      SamplerConfig cfg = f.smaa;
      if (explain_samples) cfg.samples = *explain_samples;
      try {
        const Explanation e = explain_full_ranking(f.problem, cfg);
        out << (explain_in.json ? to_json(e, f.problem.criteria).dump(2) + "\n"
                                : format_explanation(e, f.problem.criteria));
        return kExitOk;
      } catch (const IncompatibleRankingError& e) {
        out << (explain_in.json ? json{{"compatible", false}, {"conflicts", to_json(e.conflicts())}}.dump(2) + "\n"
                                : format_conflicts(e.conflicts()));
        return kExitIncompatible;
      }
    }

    if (*fronts_cmd) {
      EvaluationMatrix m;
      if (!fronts_in.evaluations.empty()) {
        m = load_evaluations_csv(fronts_in.evaluations);
      } else if (!fronts_in.problem.empty()) {
        m = load(fronts_in).problem.evaluations;
      } else {
        throw FormatError("fronts needs -e evaluations.csv or -p problem.json");
      }
      const auto fronts = pareto_fronts(m);
      out << (fronts_in.json ? json{{"fronts", fronts}}.dump(2) + "\n" : format_fronts(fronts));
      return kExitOk;
    }

    if (*serve_cmd) {
      int p = 8080;
      if (port) {
        p = *port;
      } else if (const char* env = std::getenv("LDC_PORT")) {
        p = std::atoi(env);
      }
      Service service;
      if (!service.bind(host, p)) {
        err << "cannot bind " << host << ":" << p << '\n';
        return kExitFailure;
      }
      out << "listening on http://" << host << ":" << p << std::endl;
      service.listen_after_bind();
      return kExitOk;
    }
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ValidationError& e) {
    err << "invalid problem: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IncompatibleError& e) {
    err << "incompatible: " << e.what() << '\n';
    return kExitIncompatible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace ldc::workbench
