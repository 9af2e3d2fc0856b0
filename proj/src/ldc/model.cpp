#include "ldc/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ldc {

// Scale -----------------------------------------------------------------------

Scale::Scale(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (!breakpoints_.empty()) {
    alpha_ = breakpoints_.front();
    beta_ = breakpoints_.back();
  }
}

Scale::Scale(double alpha, double beta, std::vector<double> breakpoints)
    : alpha_(alpha), beta_(beta), breakpoints_(std::move(breakpoints)) {}

int Scale::interval_of(double t) const {
  if (!(t >= alpha_ && t <= beta_)) {
    std::ostringstream os;
    os << "level " << t << " outside scale [" << alpha_ << ", " << beta_ << "]";
    throw std::out_of_range(os.str());
  }
  const int p = intervals();
  for (int r = 1; r < p; ++r)
    if (t < breakpoints_[r]) return r;
  return p;
}

int Scale::lower_breakpoint(double t) const {
  int r = 0;
  for (int k = 0; k <= intervals(); ++k)
    if (breakpoints_[k] < t) r = k;
  return r;
}

std::vector<std::string> Scale::problems() const {
  std::vector<std::string> out;
  if (breakpoints_.size() < 2) {
    out.push_back("at least two breakpoints are required");
    return out;
  }
  for (double a : breakpoints_)
    if (!std::isfinite(a)) out.push_back("breakpoints must be finite");
  for (std::size_t k = 1; k < breakpoints_.size(); ++k)
    if (!(breakpoints_[k] > breakpoints_[k - 1])) {
      out.push_back("breakpoints not strictly increasing");
      break;
    }
  if (breakpoints_.front() != alpha_) out.push_back("first breakpoint must equal alpha");
  if (breakpoints_.back() != beta_) out.push_back("last breakpoint must equal beta");
  return out;
}

// EvaluationMatrix ------------------------------------------------------------

EvaluationMatrix::EvaluationMatrix(std::vector<std::string> alternatives,
                                   std::vector<std::string> criteria, Matrix<double> values)
    : alternatives_(std::move(alternatives)), criteria_(std::move(criteria)), values_(std::move(values)) {
  if (values_.rows() != alternatives_.size() || values_.cols() != criteria_.size())
    throw std::invalid_argument("evaluation matrix shape does not match its labels");
}

std::optional<std::size_t> EvaluationMatrix::find(const std::string& alternative) const {
  auto it = std::find(alternatives_.begin(), alternatives_.end(), alternative);
  if (it == alternatives_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - alternatives_.begin());
}

std::size_t EvaluationMatrix::index_of(const std::string& alternative) const {
  auto k = find(alternative);
  if (!k) throw std::out_of_range("unknown alternative '" + alternative + "'");
  return *k;
}

// Moebius capacities ----------------------------------------------------------

std::vector<Subset> term_layout(int n, CapacityKind kind) {
  if (n < 1 || n > kMaxCriteria) throw std::invalid_argument("criteria count out of range");
  if (kind == CapacityKind::general && n > kMaxGeneralCriteria)
    throw std::invalid_argument("general capacities support at most 12 criteria");
  std::vector<Subset> terms;
  for (int i = 0; i < n; ++i) terms.push_back(singleton(i));
  if (kind == CapacityKind::additive) return terms;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) terms.push_back(singleton(i) | singleton(j));
  if (kind == CapacityKind::two_additive) return terms;
  for (Subset s = 1; s <= full_set(n); ++s)
    if (popcount(s) >= 3) terms.push_back(s);
  return terms;
}

MobiusCapacity::MobiusCapacity(int n, CapacityKind kind, std::vector<double> coefficients)
    : n_(n), kind_(kind), terms_(term_layout(n, kind)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != terms_.size())
    throw std::invalid_argument("coefficient count does not match the capacity layout");
}

MobiusCapacity MobiusCapacity::additive(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  return MobiusCapacity(n, CapacityKind::additive, std::move(weights));
}

MobiusCapacity MobiusCapacity::two_additive(std::vector<double> singletons, const Matrix<double>& pairs) {
  const int n = static_cast<int>(singletons.size());
  if (pairs.rows() != static_cast<std::size_t>(n) || pairs.cols() != static_cast<std::size_t>(n))
    throw std::invalid_argument("pair matrix must be n x n");
  std::vector<double> c = std::move(singletons);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.push_back(pairs(i, j));
  return MobiusCapacity(n, CapacityKind::two_additive, std::move(c));
}

MobiusCapacity MobiusCapacity::from_set_function(int n, CapacityKind kind, std::span<const double> mu) {
  const std::size_t size = std::size_t{1} << n;
  if (mu.size() != size) throw std::invalid_argument("set function must have 2^n values");
  std::vector<double> m(mu.begin(), mu.end());
  for (int i = 0; i < n; ++i)
    for (Subset s = 0; s < size; ++s)
      if (contains(s, i)) m[s] -= m[s ^ singleton(i)];
  auto terms = term_layout(n, kind);
  std::vector<bool> in_layout(size, false);
  std::vector<double> c;
  for (Subset t : terms) {
    in_layout[t] = true;
    c.push_back(m[t]);
  }
  for (Subset s = 1; s < size; ++s)
    if (!in_layout[s] && std::abs(m[s]) > kCapacityTolerance)
      throw std::invalid_argument("set function is not representable with the requested capacity kind");
  return MobiusCapacity(n, kind, std::move(c));
}

double MobiusCapacity::mobius(Subset s) const {
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (terms_[k] == s) return coefficients_[k];
  return 0.0;
}

double MobiusCapacity::value(Subset e) const {
  double v = 0.0;
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if ((terms_[k] & ~e) == 0) v += coefficients_[k];
  return v;
}

std::vector<double> MobiusCapacity::set_function() const {
  if (n_ > 20) throw std::invalid_argument("set function table too large");
  std::vector<double> mu(std::size_t{1} << n_, 0.0);
  for (std::size_t k = 0; k < terms_.size(); ++k) mu[terms_[k]] = coefficients_[k];
  for (int i = 0; i < n_; ++i)
    for (Subset s = 0; s < mu.size(); ++s)
      if (contains(s, i)) mu[s] += mu[s ^ singleton(i)];
  return mu;
}

bool MobiusCapacity::normalized(double tol) const {
  double total = 0.0;
  for (double c : coefficients_) total += c;
  return std::abs(total - 1.0) <= tol;
}

double MobiusCapacity::monotonicity_violation() const {
  double worst = 0.0;
  if (kind_ != CapacityKind::general) {
    // m_i + sum_{j in E} m_ij is smallest for E = {j : m_ij < 0}.
    Matrix<double> pair(n_, n_, 0.0);
    if (kind_ == CapacityKind::two_additive) {
      std::size_t k = static_cast<std::size_t>(n_);
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++k) pair(i, j) = pair(j, i) = coefficients_[k];
    }
    for (int i = 0; i < n_; ++i) {
      double v = coefficients_[i];
      for (int j = 0; j < n_; ++j)
        if (j != i) v += std::min(0.0, pair(i, j));
      worst = std::max(worst, -v);
    }
    return worst;
  }
  const auto mu = set_function();
  for (Subset e = 0; e < mu.size(); ++e)
    for (int i = 0; i < n_; ++i)
      if (!contains(e, i)) worst = std::max(worst, mu[e] - mu[e | singleton(i)]);
  return worst;
}

// Layout and LDC --------------------------------------------------------------

LdcLayout::LdcLayout(LdcVariant variant, Scale scale, int n, CapacityKind kind)
    : variant_(variant), scale_(std::move(scale)), n_(n), kind_(kind), terms_(term_layout(n, kind)) {}

int LdcLayout::blocks() const {
  return variant_ == LdcVariant::interval ? scale_.intervals() : scale_.intervals() + 1;
}

int LdcLayout::term_index(Subset s) const {
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (terms_[k] == s) return static_cast<int>(k);
  return -1;
}

LevelDependentCapacity::LevelDependentCapacity(LdcVariant variant, Scale scale,
                                               std::vector<MobiusCapacity> members)
    : variant_(variant), scale_(std::move(scale)), members_(std::move(members)) {
  if (!scale_.valid()) throw std::invalid_argument("invalid scale: " + scale_.problems().front());
  const std::size_t expected = variant_ == LdcVariant::interval ? scale_.intervals() : scale_.intervals() + 1;
  if (members_.size() != expected)
    throw std::invalid_argument("level dependent capacity needs " + std::to_string(expected) +
                                " member capacities, got " + std::to_string(members_.size()));
  for (const auto& m : members_) {
    if (m.criteria() != members_.front().criteria() || m.kind() != members_.front().kind())
      throw std::invalid_argument("member capacities must share criteria count and kind");
    if (!m.normalized(kFeasibilityTolerance)) throw std::invalid_argument("member capacity is not normalized");
    if (!m.monotone(kFeasibilityTolerance)) throw std::invalid_argument("member capacity is not monotone");
  }
}

LevelDependentCapacity LevelDependentCapacity::from_parameters(const LdcLayout& layout,
                                                               std::span<const double> theta) {
  if (theta.size() != static_cast<std::size_t>(layout.size()))
    throw std::invalid_argument("parameter vector does not match layout");
  std::vector<MobiusCapacity> members;
  const int k = layout.terms_per_block();
  for (int b = 0; b < layout.blocks(); ++b) {
    std::vector<double> c(theta.begin() + b * k, theta.begin() + (b + 1) * k);
    members.emplace_back(layout.criteria(), layout.kind(), std::move(c));
  }
  return LevelDependentCapacity(layout.variant(), layout.scale(), std::move(members));
}

const MobiusCapacity& LevelDependentCapacity::member(int k) const {
  const int idx = variant_ == LdcVariant::interval ? k - 1 : k;
  if (idx < 0 || idx >= static_cast<int>(members_.size())) throw std::out_of_range("member index out of range");
  return members_[idx];
}

LdcLayout LevelDependentCapacity::layout() const { return LdcLayout(variant_, scale_, criteria(), kind()); }

std::vector<double> LevelDependentCapacity::parameters() const {
  std::vector<double> theta;
  for (const auto& m : members_) theta.insert(theta.end(), m.coefficients().begin(), m.coefficients().end());
  return theta;
}

// Statements ------------------------------------------------------------------

const char* to_string(CapacityKind kind) {
  switch (kind) {
    case CapacityKind::additive: return "additive";
    case CapacityKind::two_additive: return "two_additive";
    case CapacityKind::general: return "general";
  }
  return "?";
}

const char* to_string(LdcVariant variant) {
  return variant == LdcVariant::interval ? "interval" : "piecewise_linear";
}

const char* to_string(PreferenceRelation relation) {
  switch (relation) {
    case PreferenceRelation::strict: return "strict";
    case PreferenceRelation::weak: return "weak";
    case PreferenceRelation::indifferent: return "indifferent";
  }
  return "?";
}

namespace {

const char* symbol(PreferenceRelation r) {
  switch (r) {
    case PreferenceRelation::strict: return " > ";
    case PreferenceRelation::weak: return " >= ";
    case PreferenceRelation::indifferent: return " ~ ";
  }
  return " ? ";
}

std::string suffix(const IndexRange& r) {
  if (std::holds_alternative<Comprehensive>(r)) return "";
  return " on " + describe(r);
}

}  // namespace

std::string describe(const IndexRange& r) {
  std::ostringstream os;
  if (std::holds_alternative<Comprehensive>(r)) {
    os << "comprehensive";
  } else if (auto* iv = std::get_if<IntervalIndex>(&r)) {
    os << "interval " << iv->r;
  } else {
    const auto& lr = std::get<LevelRange>(r);
    os << (lr.lower_open ? "]" : "[") << lr.from << ", " << lr.to << (lr.upper_open ? "[" : "]");
  }
  return os.str();
}

std::string describe(const PreferenceStatement& s) {
  return std::visit(
      [](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, AltPreference>) {
          return st.a + symbol(st.relation) + st.b;
        } else if constexpr (std::is_same_v<T, ImportanceComparison>) {
          return "phi(" + st.i + ")" + symbol(st.relation) + "phi(" + st.j + ")" + suffix(st.range);
        } else if constexpr (std::is_same_v<T, InteractionSign>) {
          return "I(" + st.i + "," + st.j + ")" +
                 (st.sign == InteractionSignKind::positive ? " > 0" : " < 0") + suffix(st.range);
        } else {
          std::string out = "ranking ";
          for (std::size_t g = 0; g < st.groups.size(); ++g) {
            if (g) out += " > ";
            for (std::size_t k = 0; k < st.groups[g].size(); ++k) {
              if (k) out += " ~ ";
              out += st.groups[g][k];
            }
          }
          return out;
        }
      },
      s);
}

// Problem ---------------------------------------------------------------------

std::size_t Problem::criterion_index(const std::string& id) const {
  for (std::size_t i = 0; i < criteria.size(); ++i)
    if (criteria[i].id == id) return i;
  throw std::out_of_range("unknown criterion '" + id + "'");
}

std::vector<std::size_t> Problem::ranked_indices() const {
  std::vector<std::size_t> out;
  if (ranked.empty()) {
    for (std::size_t a = 0; a < evaluations.alternatives(); ++a) out.push_back(a);
  } else {
    for (const auto& id : ranked) out.push_back(evaluations.index_of(id));
  }
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < issues.size(); ++k) {
    if (k) os << "; ";
    os << issues[k].location << ": " << issues[k].message;
  }
  return os.str();
}

namespace {

class Checker {
 public:
  explicit Checker(const Problem& p) : p_(p) {
    for (const auto& c : p.criteria) criteria_.insert(c.id);
    for (const auto& a : p.evaluations.alternative_ids()) alternatives_.insert(a);
  }

  void add(std::string where, std::string what) { report.issues.push_back({std::move(where), std::move(what)}); }

  void alternative(const std::string& where, const std::string& id) {
    if (!alternatives_.count(id)) add(where, "unknown alternative '" + id + "'");
  }

  void criterion_pair(const std::string& where, const std::string& i, const std::string& j) {
    if (!criteria_.count(i)) add(where, "unknown criterion '" + i + "'");
    if (!criteria_.count(j)) add(where, "unknown criterion '" + j + "'");
    if (i == j) add(where, "criteria of a pairwise statement must differ");
  }

  void range(const std::string& where, const IndexRange& r) {
    if (auto* iv = std::get_if<IntervalIndex>(&r)) {
      if (iv->r < 1 || iv->r > p_.scale.intervals())
        add(where, "interval index " + std::to_string(iv->r) + " out of range");
    } else if (auto* lr = std::get_if<LevelRange>(&r)) {
      if (!p_.scale.contains(lr->from) || !p_.scale.contains(lr->to)) add(where, "level range outside the scale");
      if (!(lr->from < lr->to)) add(where, "level range must satisfy from < to");
    }
  }

  ValidationReport report;

 private:
  const Problem& p_;
  std::set<std::string> criteria_;
  std::set<std::string> alternatives_;
};

}  // namespace

ValidationReport validate(const Problem& p) {
  Checker c(p);
  for (const auto& msg : p.scale.problems()) c.add("scale", msg);
  const int n = static_cast<int>(p.criteria.size());
  if (n == 0) c.add("criteria", "at least one criterion is required");
  if (n > kMaxCriteria) c.add("criteria", "too many criteria");
  if (p.kind == CapacityKind::general && n > kMaxGeneralCriteria)
    c.add("criteria", "general capacities support at most 12 criteria");
  {
    std::set<std::string> seen;
    for (const auto& cr : p.criteria)
      if (!seen.insert(cr.id).second) c.add("criteria", "duplicate criterion id '" + cr.id + "'");
  }
  const auto& ev = p.evaluations;
  if (ev.criteria() != p.criteria.size()) {
    c.add("evaluations", "column count does not match the criteria");
  } else {
    for (std::size_t i = 0; i < ev.criteria(); ++i)
      if (ev.criterion_ids()[i] != p.criteria[i].id)
        c.add("evaluations", "column '" + ev.criterion_ids()[i] + "' does not match criterion '" +
                                 p.criteria[i].id + "'");
  }
  {
    std::set<std::string> seen;
    for (const auto& a : ev.alternative_ids())
      if (!seen.insert(a).second) c.add("evaluations", "duplicate alternative id '" + a + "'");
  }
  if (p.scale.valid()) {
    for (std::size_t a = 0; a < ev.alternatives(); ++a)
      for (std::size_t i = 0; i < ev.criteria(); ++i) {
        const double x = ev.at(a, i);
        if (!std::isfinite(x) || !p.scale.contains(x)) {
          std::ostringstream os;
          os << "value out of scale: " << x;
          c.add("evaluations[" + ev.alternative_ids()[a] + "][" + ev.criterion_ids()[i] + "]", os.str());
        }
      }
  }
  for (std::size_t k = 0; k < p.statements.size(); ++k) {
    const std::string where = "statements[" + std::to_string(k) + "]";
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, AltPreference>) {
            c.alternative(where, st.a);
            c.alternative(where, st.b);
            if (st.a == st.b) c.add(where, "alternatives of a preference must differ");
          } else if constexpr (std::is_same_v<T, ImportanceComparison>) {
            c.criterion_pair(where, st.i, st.j);
            c.range(where, st.range);
          } else if constexpr (std::is_same_v<T, InteractionSign>) {
            c.criterion_pair(where, st.i, st.j);
            c.range(where, st.range);
          } else {
            std::set<std::string> seen;
            if (st.groups.size() < 2) c.add(where, "a ranking needs at least two groups");
            for (const auto& g : st.groups) {
              if (g.empty()) c.add(where, "empty ranking group");
              for (const auto& a : g) {
                c.alternative(where, a);
                if (!seen.insert(a).second) c.add(where, "alternative '" + a + "' ranked twice");
              }
            }
          }
        },
        p.statements[k]);
  }
  for (const auto& a : p.ranked) c.alternative("ranked_alternatives", a);
  return c.report;
}

void require_valid(const Problem& problem) {
  auto report = validate(problem);
  if (!report.ok()) throw ValidationError(report.summary());
}

}  // namespace ldc
