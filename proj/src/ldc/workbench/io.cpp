#include "ldc/workbench/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ldc::workbench {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError(where + ": not a number: '" + s + "'");
  }
  if (used != s.size()) throw FormatError(where + ": not a number: '" + s + "'");
  return v;
}

template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(where + ": " + e.what());
  }
}

PreferenceRelation relation_from(const json& j, const char* key) {
  if (!j.contains(key)) return PreferenceRelation::strict;
  const auto s = j.at(key).get<std::string>();
  if (s == "strict") return PreferenceRelation::strict;
  if (s == "weak") return PreferenceRelation::weak;
  if (s == "indifferent") return PreferenceRelation::indifferent;
  throw FormatError("unknown relation '" + s + "'");
}

IndexRange range_from(const json& j) {
  if (!j.contains("range")) return Comprehensive{};
  const json& r = j.at("range");
  if (r.is_string()) {
    if (r.get<std::string>() == "comprehensive") return Comprehensive{};
    throw FormatError("unknown range '" + r.get<std::string>() + "'");
  }
  if (r.contains("interval")) return IntervalIndex{r.at("interval").get<int>()};
  LevelRange lr;
  lr.from = r.at("from").get<double>();
  lr.to = r.at("to").get<double>();
  lr.lower_open = r.value("lower_open", false);
  lr.upper_open = r.value("upper_open", false);
  return lr;
}

json range_to(const IndexRange& r) {
  if (std::holds_alternative<Comprehensive>(r)) return "comprehensive";
  if (auto* iv = std::get_if<IntervalIndex>(&r)) return {{"interval", iv->r}};
  const auto& lr = std::get<LevelRange>(r);
  return {{"from", lr.from}, {"to", lr.to}, {"lower_open", lr.lower_open}, {"upper_open", lr.upper_open}};
}

std::string pair_name(const std::vector<Criterion>& c, std::pair<int, int> p) {
  return c[p.first].id + "," + c[p.second].id;
}

json matrix_json(const Matrix<double>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json bool_matrix_json(const Matrix<char>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c) != 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Infinite epsilons (infeasible programs) become null.
json epsilon_matrix_json(const Matrix<double>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(std::isfinite(m(r, c)) ? json(m(r, c)) : json(nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

EvaluationMatrix read_evaluations_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split_csv(line);
      break;
    }
  }
  if (header.size() < 2 || header.front() != "alternative")
    throw FormatError("evaluation CSV must start with 'alternative,<criterion ids>'");
  std::vector<std::string> criteria(header.begin() + 1, header.end());
  std::vector<std::string> ids;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    const std::string where = "line " + std::to_string(lineno);
    if (cells.size() != header.size()) throw FormatError(where + ": expected " + std::to_string(header.size()) + " cells");
    ids.push_back(cells[0]);
    for (std::size_t k = 1; k < cells.size(); ++k) values.push_back(parse_number(cells[k], where));
  }
  Matrix<double> m(ids.size(), criteria.size());
  m.data() = std::move(values);
  return EvaluationMatrix(std::move(ids), std::move(criteria), std::move(m));
}

EvaluationMatrix load_evaluations_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_evaluations_csv(in);
}

void write_evaluations_csv(std::ostream& out, const EvaluationMatrix& m) {
  out << "alternative";
  for (const auto& c : m.criterion_ids()) out << ',' << c;
  out << '\n';
  for (std::size_t a = 0; a < m.alternatives(); ++a) {
    out << m.alternative_ids()[a];
    for (std::size_t i = 0; i < m.criteria(); ++i) out << ',' << json(m.at(a, i)).dump();
    out << '\n';
  }
}

EvaluationMatrix align_columns(const EvaluationMatrix& m, const std::vector<Criterion>& criteria) {
  std::vector<std::size_t> src;
  std::vector<std::string> ids;
  for (const auto& c : criteria) {
    const auto& cols = m.criterion_ids();
    auto it = std::find(cols.begin(), cols.end(), c.id);
    if (it == cols.end()) throw FormatError("evaluations lack criterion '" + c.id + "'");
    src.push_back(static_cast<std::size_t>(it - cols.begin()));
    ids.push_back(c.id);
  }
  if (src.size() != m.criteria()) throw FormatError("evaluations carry columns that are not criteria");
  Matrix<double> v(m.alternatives(), src.size());
  for (std::size_t a = 0; a < m.alternatives(); ++a)
    for (std::size_t i = 0; i < src.size(); ++i) v(a, i) = m.at(a, src[i]);
  return EvaluationMatrix(m.alternative_ids(), std::move(ids), std::move(v));
}

PreferenceStatement statement_from_json(const json& j) {
  return guarded("statement", [&]() -> PreferenceStatement {
    const auto type = j.at("type").get<std::string>();
    if (type == "preference") return AltPreference{j.at("a").get<std::string>(), j.at("b").get<std::string>(), relation_from(j, "relation")};
    if (type == "importance")
      return ImportanceComparison{j.at("i").get<std::string>(), j.at("j").get<std::string>(), relation_from(j, "relation"),
                                  range_from(j)};
    if (type == "interaction") {
      const auto sign = j.at("sign").get<std::string>();
      if (sign != "positive" && sign != "negative") throw FormatError("interaction sign must be positive or negative");
      return InteractionSign{j.at("i").get<std::string>(), j.at("j").get<std::string>(),
                             sign == "positive" ? InteractionSignKind::positive : InteractionSignKind::negative,
                             range_from(j)};
    }
    if (type == "ranking") return FullRanking{j.at("groups").get<std::vector<std::vector<std::string>>>()};
    throw FormatError("unknown statement type '" + type + "'");
  });
}

json statement_to_json(const PreferenceStatement& s) {
  return std::visit(
      [](const auto& st) -> json {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, AltPreference>) {
          return {{"type", "preference"}, {"a", st.a}, {"b", st.b}, {"relation", to_string(st.relation)}};
        } else if constexpr (std::is_same_v<T, ImportanceComparison>) {
          return {{"type", "importance"}, {"i", st.i}, {"j", st.j}, {"relation", to_string(st.relation)},
                  {"range", range_to(st.range)}};
        } else if constexpr (std::is_same_v<T, InteractionSign>) {
          return {{"type", "interaction"}, {"i", st.i}, {"j", st.j},
                  {"sign", st.sign == InteractionSignKind::positive ? "positive" : "negative"},
                  {"range", range_to(st.range)}};
        } else {
          return {{"type", "ranking"}, {"groups", st.groups}};
        }
      },
      s);
}

std::vector<PreferenceStatement> statements_from_json(const json& j) {
  const json& list = j.is_object() && j.contains("statements") ? j.at("statements") : j;
  if (!list.is_array()) throw FormatError("statements must be an array");
  std::vector<PreferenceStatement> out;
  for (const auto& s : list) out.push_back(statement_from_json(s));
  return out;
}

SamplerConfig sampler_from_json(const json& j, SamplerConfig cfg) {
  return guarded("smaa", [&] {
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("burn_in")) cfg.burn_in = j.at("burn_in").get<std::size_t>();
    if (j.contains("thinning")) cfg.thinning = j.at("thinning").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("chains")) cfg.chains = j.at("chains").get<unsigned>();
    if (j.contains("epsilon_mode")) {
      const auto m = j.at("epsilon_mode").get<std::string>();
      if (m == "boundary") {
        cfg.epsilon_mode = EpsilonMode::boundary;
      } else if (m == "fixed_fraction") {
        cfg.epsilon_mode = EpsilonMode::fixed_fraction;
      } else {
        throw FormatError("unknown epsilon_mode '" + m + "'");
      }
    }
    if (j.contains("epsilon_fraction")) cfg.epsilon_fraction = j.at("epsilon_fraction").get<double>();
    try {
      cfg.check();
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("smaa: ") + e.what());
    }
    return cfg;
  });
}

json to_json(const SamplerConfig& cfg) {
  return {{"samples", cfg.samples},
          {"burn_in", cfg.burn_in},
          {"thinning", cfg.thinning},
          {"seed", cfg.seed},
          {"chains", cfg.chains},
          {"epsilon_mode", cfg.epsilon_mode == EpsilonMode::boundary ? "boundary" : "fixed_fraction"},
          {"epsilon_fraction", cfg.epsilon_fraction}};
}

ProblemFile problem_from_json(const json& doc, const EvaluationMatrix* evaluations) {
  return guarded("problem", [&] {
    ProblemFile f;
    Problem& p = f.problem;
    p.name = doc.value("name", "");
    const json& sc = doc.at("scale");
    auto bps = sc.at("breakpoints").get<std::vector<double>>();
    const double alpha = sc.contains("alpha") ? sc.at("alpha").get<double>() : (bps.empty() ? 0.0 : bps.front());
    const double beta = sc.contains("beta") ? sc.at("beta").get<double>() : (bps.empty() ? 0.0 : bps.back());
    p.scale = Scale(alpha, beta, std::move(bps));
    const auto variant = doc.value("capacity_variant", std::string("interval"));
    if (variant == "interval") {
      p.variant = LdcVariant::interval;
    } else if (variant == "piecewise_linear") {
      p.variant = LdcVariant::piecewise_linear;
    } else {
      throw FormatError("unknown capacity_variant '" + variant + "'");
    }
    const auto kind = doc.value("capacity_kind", std::string("two_additive"));
    if (kind == "additive") {
      p.kind = CapacityKind::additive;
    } else if (kind == "two_additive") {
      p.kind = CapacityKind::two_additive;
    } else if (kind == "general") {
      p.kind = CapacityKind::general;
    } else {
      throw FormatError("unknown capacity_kind '" + kind + "'");
    }
    for (const auto& c : doc.at("criteria")) {
      if (c.is_string()) {
        p.criteria.push_back({c.get<std::string>(), c.get<std::string>()});
      } else {
        const auto id = c.at("id").get<std::string>();
        p.criteria.push_back({id, c.value("name", id)});
      }
    }
    if (doc.contains("statements")) p.statements = statements_from_json(doc.at("statements"));
    if (doc.contains("ranked_alternatives")) p.ranked = doc.at("ranked_alternatives").get<std::vector<std::string>>();
    if (evaluations) {
      p.evaluations = align_columns(*evaluations, p.criteria);
    } else if (doc.contains("evaluations")) {
      std::vector<std::string> ids;
      std::vector<std::string> cols;
      for (const auto& c : p.criteria) cols.push_back(c.id);
      const json& ev = doc.at("evaluations");
      Matrix<double> m(ev.size(), cols.size());
      std::size_t a = 0;
      for (const auto& row : ev) {
        ids.push_back(row.at("id").get<std::string>());
        const auto v = row.at("values").get<std::vector<double>>();
        if (v.size() != cols.size()) throw FormatError("evaluation row '" + ids.back() + "' has the wrong length");
        for (std::size_t i = 0; i < v.size(); ++i) m(a, i) = v[i];
        ++a;
      }
      p.evaluations = EvaluationMatrix(std::move(ids), std::move(cols), std::move(m));
    } else {
      std::vector<std::string> cols;
      for (const auto& c : p.criteria) cols.push_back(c.id);
      p.evaluations = EvaluationMatrix({}, std::move(cols), Matrix<double>(0, p.criteria.size()));
    }
    if (doc.contains("smaa")) {
      f.smaa = sampler_from_json(doc.at("smaa"));
      f.has_smaa = true;
    }
    return f;
  });
}

json problem_to_json(const ProblemFile& file, bool include_evaluations) {
  const Problem& p = file.problem;
  json doc;
  doc["name"] = p.name;
  doc["scale"] = {{"alpha", p.scale.alpha()},
                  {"beta", p.scale.beta()},
                  {"breakpoints", std::vector<double>(p.scale.breakpoints().begin(), p.scale.breakpoints().end())}};
  doc["capacity_variant"] = to_string(p.variant);
  doc["capacity_kind"] = to_string(p.kind);
  doc["criteria"] = json::array();
  for (const auto& c : p.criteria) doc["criteria"].push_back({{"id", c.id}, {"name", c.name}});
  doc["statements"] = json::array();
  for (const auto& s : p.statements) doc["statements"].push_back(statement_to_json(s));
  if (!p.ranked.empty()) doc["ranked_alternatives"] = p.ranked;
  if (include_evaluations) {
    doc["evaluations"] = json::array();
    for (std::size_t a = 0; a < p.evaluations.alternatives(); ++a) {
      const auto row = p.evaluations.row(a);
      doc["evaluations"].push_back(
          {{"id", p.evaluations.alternative_ids()[a]}, {"values", std::vector<double>(row.begin(), row.end())}});
    }
  }
  if (file.has_smaa) doc["smaa"] = to_json(file.smaa);
  return doc;
}

ProblemFile load_problem(const std::string& json_path, const std::optional<std::string>& csv_path) {
  std::ifstream in(json_path);
  if (!in) throw FormatError("cannot open '" + json_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(json_path + ": " + e.what());
  }
  if (csv_path) {
    const EvaluationMatrix m = load_evaluations_csv(*csv_path);
    return problem_from_json(doc, &m);
  }
  return problem_from_json(doc);
}

json to_json(const ValidationReport& report) {
  json issues = json::array();
  for (const auto& i : report.issues) issues.push_back({{"location", i.location}, {"message", i.message}});
  return {{"valid", report.ok()}, {"issues", issues}};
}

json to_json(const Compatibility& c) {
  return {{"feasible", c.feasible},
          {"compatible", c.compatible()},
          {"epsilon_star", std::isfinite(c.epsilon_star) ? json(c.epsilon_star) : json(nullptr)}};
}

json to_json(const std::vector<Conflict>& conflicts) {
  json out = json::array();
  for (const auto& c : conflicts) out.push_back({{"statements", c.statements}, {"labels", c.labels}});
  return out;
}

json to_json(const RorResult& r) {
  return {{"alternatives", r.alternatives},
          {"necessary", bool_matrix_json(r.necessary)},
          {"possible", bool_matrix_json(r.possible)},
          {"epsilon_necessary", epsilon_matrix_json(r.epsilon_necessary)},
          {"epsilon_possible", epsilon_matrix_json(r.epsilon_possible)}};
}

json to_json(const SmaaResult& r) {
  json summary = json::array();
  for (std::size_t a = 0; a < r.summary.size(); ++a) {
    const auto& s = r.summary[a];
    json top = json::array();
    for (const auto& [rank, share] : s.most_frequent) top.push_back({{"rank", rank}, {"share", share}});
    summary.push_back({{"alternative", r.alternatives[a]},
                       {"best", s.best},
                       {"best_share", s.best_share},
                       {"worst", s.worst},
                       {"worst_share", s.worst_share},
                       {"most_frequent", top}});
  }
  return {{"alternatives", r.alternatives},
          {"samples", r.samples},
          {"rai", matrix_json(r.rai)},
          {"pwi", matrix_json(r.pwi)},
          {"ties", matrix_json(r.ties)},
          {"expected", r.expected},
          {"expected_ranking", expected_ranking(r)},
          {"summary", summary}};
}

json to_json(const LevelDependentCapacity& ldc, const std::vector<Criterion>& criteria) {
  json members = json::array();
  for (std::size_t k = 0; k < ldc.members().size(); ++k) {
    const auto& m = ldc.members()[k];
    json terms = json::array();
    for (std::size_t t = 0; t < m.terms().size(); ++t) {
      std::vector<std::string> set;
      for (int i = 0; i < m.criteria(); ++i)
        if (contains(m.terms()[t], i)) set.push_back(criteria[i].id);
      terms.push_back({{"set", set}, {"mobius", m.coefficients()[t]}});
    }
    json entry = {{"terms", terms}};
    if (ldc.variant() == LdcVariant::interval) {
      entry["interval"] = {ldc.scale().breakpoint(static_cast<int>(k)), ldc.scale().breakpoint(static_cast<int>(k) + 1)};
    } else {
      entry["level"] = ldc.scale().breakpoint(static_cast<int>(k));
    }
    members.push_back(std::move(entry));
  }
  return {{"variant", to_string(ldc.variant())}, {"kind", to_string(ldc.kind())}, {"members", members}};
}

json to_json(const ImportanceProfile& p, const std::vector<Criterion>& criteria) {
  json out = json::object();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<double> blocks;
    for (std::size_t b = 0; b < p.blocks.cols(); ++b) blocks.push_back(p.blocks(i, b));
    out[criteria[i].id] = {{"blocks", blocks}, {"comprehensive", p.comprehensive[i]}};
  }
  return out;
}

json to_json(const InteractionProfile& p, const std::vector<Criterion>& criteria) {
  json out = json::object();
  for (std::size_t k = 0; k < p.pairs.size(); ++k) {
    std::vector<double> blocks;
    for (std::size_t b = 0; b < p.blocks.cols(); ++b) blocks.push_back(p.blocks(k, b));
    out[pair_name(criteria, p.pairs[k])] = {{"blocks", blocks}, {"comprehensive", p.comprehensive[k]}};
  }
  return out;
}

json to_json(const Explanation& e, const std::vector<Criterion>& criteria) {
  json scores = json::object();
  for (std::size_t a = 0; a < e.alternatives.size(); ++a) scores[e.alternatives[a]] = e.scores[a];
  return {{"barycenter", to_json(e.barycenter, criteria)},
          {"importance", to_json(e.importance, criteria)},
          {"interaction", to_json(e.interaction, criteria)},
          {"scores", scores}};
}

}  // namespace ldc::workbench
