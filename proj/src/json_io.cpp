#include "waring7/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "waring7/errors.hpp"

namespace waring7 {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) parse_error(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double finite_number(const Json& j) {
  if (!j.is_number()) parse_error("expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_error("non-finite number");
  return x;
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json map_to_json(const ProjMap& m) {
  return {{"domain", m.domain}, {"codomain", m.codomain}, {"matrix", matrix_to_json(m.matrix)}};
}

Json point_to_json(const ProjPoint& p) { return {scalar_to_json(p[0]), scalar_to_json(p[1])}; }

Json provenance_to_json(const TermProvenance& p) {
  return {{"pair", p.pair}, {"root", p.root}, {"fixed_point", p.fixed_point}};
}

Side side_from_json(const Json& j) {
  if (!j.is_string()) parse_error("\"side\" must be a string");
  const auto s = j.get<std::string>();
  if (s == "primal") return Side::Primal;
  if (s == "dual") return Side::Dual;
  parse_error("\"side\" must be \"primal\" or \"dual\"");
}

std::vector<Scalar> scalar_list(const Json& j, std::size_t expected, const char* what) {
  if (!j.is_array() || j.size() != expected) {
    parse_error(std::string(what) + " must be an array of " + std::to_string(expected) + " scalars");
  }
  std::vector<Scalar> out;
  for (const auto& z : j) out.push_back(scalar_from_json(z));
  return out;
}

Json trial_to_json(const ProbeTrial& t) {
  Json qd = Json::array();
  for (const auto& d : t.q_discriminant) qd.push_back(optional_number(d));
  return {{"trial", t.trial},
          {"frame", frame_to_json(t.frame)},
          {"success", t.success},
          {"failure", t.failure ? failure_to_json(*t.failure) : Json(nullptr)},
          {"residual", optional_number(t.residual)},
          {"composite_discriminant", optional_number(t.discriminant)},
          {"fixed_points", t.fixed_point_count ? Json(*t.fixed_point_count) : Json(nullptr)},
          {"g_relative_norm", optional_number(t.g_relative_norm)},
          {"q_discriminant", std::move(qd)}};
}

}  // namespace

Json scalar_to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_number()) return {finite_number(j), 0.0};
  if (!j.is_array() || j.size() != 2) parse_error("a scalar must be [re, im]");
  return {finite_number(j[0]), finite_number(j[1])};
}

Json form_to_json(const HomogeneousForm& f) {
  Json coeffs = Json::array();
  for (const Scalar z : f.coeffs()) coeffs.push_back(scalar_to_json(z));
  return {{"side", f.side() == Side::Primal ? "primal" : "dual"},
          {"nvars", f.nvars()},
          {"degree", f.degree()},
          {"coeffs", std::move(coeffs)}};
}

HomogeneousForm form_from_json(const Json& j) {
  const Side side = side_from_json(field(j, "side"));
  const int nvars = int_field(j, "nvars");
  const int degree = int_field(j, "degree");
  if (nvars != 2 && nvars != 3) parse_error("\"nvars\" must be 2 or 3");
  if (degree < 0 || degree > 64) parse_error("\"degree\" out of range");
  const std::size_t n = monomial_count(nvars, degree);

  const bool dense = j.contains("coeffs");
  const bool sparse = j.contains("terms");
  if (dense == sparse) parse_error("a form needs exactly one of \"coeffs\" or \"terms\"");
  if (dense) return HomogeneousForm(side, nvars, degree, scalar_list(j["coeffs"], n, "\"coeffs\""));

  const Json& terms = j["terms"];
  if (!terms.is_array()) parse_error("\"terms\" must be an array");
  std::vector<Scalar> coeffs(n, 0.0);
  std::set<std::size_t> seen;
  for (const Json& t : terms) {
    const Json& e = field(t, "exp");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(nvars)) {
      parse_error("\"exp\" must have one entry per variable");
    }
    Exponent exp{0, 0, 0};
    int total = 0;
    for (int k = 0; k < nvars; ++k) {
      if (!e[static_cast<std::size_t>(k)].is_number_integer()) parse_error("exponents must be integers");
      exp[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k)].get<int>();
      if (exp[static_cast<std::size_t>(k)] < 0) parse_error("exponents must be non-negative");
      total += exp[static_cast<std::size_t>(k)];
    }
    if (total != degree) parse_error("exponent does not match \"degree\"");
    const std::size_t idx = monomial_index(nvars, exp);
    if (!seen.insert(idx).second) parse_error("repeated exponent in \"terms\"");
    coeffs[idx] = scalar_from_json(field(t, "value"));
  }
  return HomogeneousForm(side, nvars, degree, std::move(coeffs));
}

Json frame_to_json(const Eigen::Matrix3cd& rows) { return {{"rows", matrix_to_json(rows)}}; }

Eigen::Matrix3cd frame_from_json(const Json& j) {
  Eigen::Matrix3cd m;
  if (j.is_array()) {
    if (j.size() != 3) parse_error("a frame needs three dual linear forms");
    for (int r = 0; r < 3; ++r) {
      const HomogeneousForm x = form_from_json(j[static_cast<std::size_t>(r)]);
      if (x.side() != Side::Dual || x.nvars() != 3 || x.degree() != 1) {
        parse_error("frame rows must be ternary dual linear forms");
      }
      for (int c = 0; c < 3; ++c) m(r, c) = x[static_cast<std::size_t>(c)];
    }
    return m;
  }
  const Json& rows = field(j, "rows");
  if (!rows.is_array() || rows.size() != 3) parse_error("\"rows\" must hold three rows");
  for (int r = 0; r < 3; ++r) {
    const auto row = scalar_list(rows[static_cast<std::size_t>(r)], 3, "a frame row");
    for (int c = 0; c < 3; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Json failure_to_json(const FailureReason& r) {
  Json j = {{"code", std::string(to_string(r.code))}, {"label", r.label()}, {"detail", r.detail}};
  j["index"] = r.index >= 0 ? Json(r.index) : Json(nullptr);
  return j;
}

Json decomposition_to_json(const Decomposition& dec, const std::vector<TermProvenance>& provenance) {
  Json terms = Json::array();
  for (const auto& t : dec.terms) {
    Json dir = Json::array();
    for (const Scalar z : t.direction.coeffs()) dir.push_back(scalar_to_json(z));
    terms.push_back({{"coeff", scalar_to_json(t.coefficient)}, {"direction", std::move(dir)}});
  }
  Json prov = Json::array();
  for (const auto& p : provenance) prov.push_back(provenance_to_json(p));
  return {{"degree", dec.degree}, {"terms", std::move(terms)}, {"residual", dec.target_residual},
          {"provenance", std::move(prov)}};
}

Decomposition decomposition_from_json(const Json& j) {
  Decomposition dec;
  dec.degree = int_field(j, "degree");
  if (dec.degree < 0 || dec.degree > 64) parse_error("\"degree\" out of range");
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) parse_error("\"terms\" must be an array");
  for (const Json& t : terms) {
    const Scalar c = scalar_from_json(field(t, "coeff"));
    const Json& d = field(t, "direction");
    HomogeneousForm v(Side::Primal, 3, 1);
    if (d.is_object()) {
      v = form_from_json(d);
      if (v.side() != Side::Primal || v.nvars() != 3 || v.degree() != 1) {
        parse_error("directions must be ternary primal linear forms");
      }
    } else {
      v = HomogeneousForm::linear(Side::Primal, scalar_list(d, 3, "\"direction\""));
    }
    dec.terms.push_back({c, std::move(v)});
  }
  if (j.contains("residual") && j["residual"].is_number()) dec.target_residual = j["residual"].get<double>();
  return dec;
}

Json chain_to_json(const ThetaChain& chain) {
  Json q = Json::array();
  for (const auto& qi : chain.q) q.push_back(form_to_json(qi));
  Json theta = Json::array();
  for (const auto& t : chain.theta) {
    theta.push_back({{"index", t.index},
                     {"source_perp", {form_to_json(t.source_perp.first), form_to_json(t.source_perp.second)}},
                     {"target_perp", {form_to_json(t.target_perp.first), form_to_json(t.target_perp.second)}},
                     {"omega_source", map_to_json(t.omega_source)},
                     {"omega_target", map_to_json(t.omega_target)},
                     {"psi", map_to_json(t.psi)},
                     {"theta", map_to_json(t.theta)}});
  }
  Json points = Json::array();
  for (const auto& p : chain.fixed.points) points.push_back(point_to_json(p));
  return {{"frame", frame_to_json(chain.frame.dual_matrix())},
          {"q", std::move(q)},
          {"theta", std::move(theta)},
          {"composite", map_to_json(chain.composite)},
          {"fixed_points",
           {{"kind", std::string(to_string(chain.fixed.kind))},
            {"discriminant", chain.fixed.discriminant},
            {"points", std::move(points)}}},
          {"closure_residuals", chain.closure_residuals}};
}

Json probe_report_to_json(const ProbeReport& report) {
  Json failures = Json::object();
  for (const auto& [k, v] : report.failures) failures[k] = v;
  Json counts = Json::object();
  for (const auto& [k, v] : report.fixed_point_counts) counts[std::to_string(k)] = v;
  Json records = Json::array();
  for (const auto& t : report.records) records.push_back(trial_to_json(t));
  return {{"trials", report.trials},
          {"seed", report.seed},
          {"successes", report.successes},
          {"success_rate", report.trials > 0 ? static_cast<double>(report.successes) / report.trials : 0.0},
          {"failures", std::move(failures)},
          {"fixed_point_counts", std::move(counts)},
          {"records", std::move(records)}};
}

Json experiment_report_to_json(const ExperimentReport& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases) {
    Json probe = probe_report_to_json(c.probe);
    probe.erase("records");
    cases.push_back({{"name", c.name},
                     {"claim", c.claim.empty() ? Json(nullptr) : Json(c.claim)},
                     {"form", form_to_json(c.form)},
                     {"eligible", c.eligible},
                     {"observed", c.observed},
                     {"frequency", c.eligible > 0 ? static_cast<double>(c.observed) / c.eligible : 0.0},
                     {"required_fraction", c.required_fraction},
                     {"calibrated", c.calibrated},
                     {"passed", c.passed},
                     {"summary", std::move(probe)}});
  }
  return {{"seed", report.seed}, {"frames", report.frames}, {"cases", std::move(cases)},
          {"all_passed", report.all_passed}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

std::string dump_json(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace waring7
