/// Problem (JSON) and evaluation (CSV) file formats, and JSON views of results.
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "ldc/elicitation.hpp"
#include "ldc/model.hpp"
#include "ldc/smaa.hpp"

namespace ldc::workbench {

using nlohmann::json;

/// Malformed document: bad JSON, wrong field types, non-numeric CSV cells.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  Problem problem;
  /// Sampler overrides from the "smaa" object, applied on top of defaults.
  SamplerConfig smaa;
  bool has_smaa = false;
};

/// Header `alternative,<criterion ids...>`, one row per alternative.
EvaluationMatrix read_evaluations_csv(std::istream& in);
EvaluationMatrix load_evaluations_csv(const std::string& path);
void write_evaluations_csv(std::ostream& out, const EvaluationMatrix& m);

/// Reorders the columns of m to the given criterion order. Throws FormatError
/// when a criterion is missing.
EvaluationMatrix align_columns(const EvaluationMatrix& m, const std::vector<Criterion>& criteria);

/// Evaluations come from the optional "evaluations" array unless given here.
ProblemFile problem_from_json(const json& doc, const EvaluationMatrix* evaluations = nullptr);
json problem_to_json(const ProblemFile& file, bool include_evaluations = true);
ProblemFile load_problem(const std::string& json_path, const std::optional<std::string>& csv_path);

PreferenceStatement statement_from_json(const json& j);
json statement_to_json(const PreferenceStatement& s);
std::vector<PreferenceStatement> statements_from_json(const json& j);

SamplerConfig sampler_from_json(const json& j, SamplerConfig base = {});
json to_json(const SamplerConfig& cfg);

json to_json(const ValidationReport& report);
json to_json(const Compatibility& c);
json to_json(const std::vector<Conflict>& conflicts);
json to_json(const RorResult& r);
json to_json(const SmaaResult& r);
json to_json(const LevelDependentCapacity& ldc, const std::vector<Criterion>& criteria);
json to_json(const ImportanceProfile& p, const std::vector<Criterion>& criteria);
json to_json(const InteractionProfile& p, const std::vector<Criterion>& criteria);
json to_json(const Explanation& e, const std::vector<Criterion>& criteria);

}  // namespace ldc::workbench
