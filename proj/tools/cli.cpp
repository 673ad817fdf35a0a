#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gplastic/error.hpp"
#include "gplastic/generalized.hpp"
#include "gplastic/plastic.hpp"
#include "gplastic/verifier.hpp"

namespace gplastic::cli {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Scenario ingestion

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

const Json& require(const Json& obj, const std::string& pointer, const char* key) {
  if (!obj.contains(key)) throw ScenarioError(pointer, std::string("missing required field '") + key + "'");
  return obj.at(key);
}

std::string entry_text(const Json& v, const std::string& pointer) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ScenarioError(pointer, "expected a polynomial string or an integer");
}

RationalFn parse_entry(const Chart& chart, const Json& v, const std::string& pointer) {
  const std::string text = entry_text(v, pointer);
  try {
    return chart.parse(text);
  } catch (const ParseError& e) {
    throw ScenarioError(pointer, "cannot parse '" + text + "': " + e.what());
  } catch (const Error& e) {
    throw ScenarioError(pointer, "cannot parse '" + text + "': " + e.what());
  }
}

FnMatrix parse_matrix(const Chart& chart, const Json& v, const std::string& pointer) {
  const std::size_t n = chart.dim();
  if (!v.is_array() || v.size() != n) throw ScenarioError(pointer, "expected " + std::to_string(n) + " rows");
  FnMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = v[i];
    if (!row.is_array() || row.size() != n)
      throw ScenarioError(child(pointer, i), "expected a row of " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_entry(chart, row[j], child(child(pointer, i), j));
  }
  return m;
}

Connection parse_connection(const Chart& chart, const Json& v, const std::string& pointer) {
  const std::size_t n = chart.dim();
  if (!v.is_array() || v.size() != n)
    throw ScenarioError(pointer, "expected " + std::to_string(n) + " matrices Gamma^k, one per upper index k");
  std::vector<std::vector<std::vector<RationalFn>>> gamma(n);
  for (std::size_t k = 0; k < n; ++k) {
    const FnMatrix m = parse_matrix(chart, v[k], child(pointer, k));
    gamma[k].assign(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gamma[k][i][j] = m(i, j);
  }
  return Connection(gamma);
}

struct Scenario {
  Chart chart{1};
  std::optional<Metric> metric;
  Connection nabla{1};  // flat unless the scenario gives Christoffel symbols
  std::map<std::string, Tensor11> tensors;
  std::vector<std::string> tensor_order;
  std::optional<GenOperator> op;

  const Connection& connection() const { return nabla; }
};

Scenario load(const Json& doc) {
  if (!doc.is_object()) throw ScenarioError("", "scenario must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static const std::vector<std::string> known = {"chart",     "metric",   "connection", "christoffels",
                                                   "tensors",   "operator", "checks",     "description"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ScenarioError("/" + key, "unknown field");
  }
  Scenario s;
  const Json& chart = require(doc, "", "chart");
  if (!chart.is_object()) throw ScenarioError("/chart", "expected an object");
  const Json& dim = require(chart, "/chart", "dim");
  if (!dim.is_number_unsigned()) throw ScenarioError("/chart/dim", "expected a positive integer");
  std::vector<std::string> coords;
  if (chart.contains("coords")) {
    const Json& c = chart.at("coords");
    if (!c.is_array() || c.size() != dim.get<std::size_t>())
      throw ScenarioError("/chart/coords", "expected one coordinate name per dimension");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_string()) throw ScenarioError(child("/chart/coords", i), "expected a string");
      coords.push_back(c[i].get<std::string>());
    }
  }
  try {
    s.chart = Chart(dim.get<std::size_t>(), coords);
  } catch (const Error& e) {
    throw ScenarioError("/chart", e.what());
  }

  s.nabla = Connection(s.chart.dim());
  if (doc.contains("metric")) {
    try {
      s.metric.emplace(parse_matrix(s.chart, doc.at("metric"), "/metric"));
    } catch (const InvalidInput& e) {
      throw ScenarioError("/metric", e.what());
    }
  }
  if (doc.contains("connection") && doc.contains("christoffels"))
    throw ScenarioError("/christoffels", "give the Christoffel symbols either here or under /connection, not both");
  if (doc.contains("connection")) {
    const Json& c = doc.at("connection");
    if (!c.is_object()) throw ScenarioError("/connection", "expected an object");
    s.nabla = parse_connection(s.chart, require(c, "/connection", "christoffels"), "/connection/christoffels");
  } else if (doc.contains("christoffels")) {
    s.nabla = parse_connection(s.chart, doc.at("christoffels"), "/christoffels");
  }
  if (doc.contains("tensors")) {
    const Json& t = doc.at("tensors");
    if (!t.is_object()) throw ScenarioError("/tensors", "expected an object of named tensors");
    for (const auto& [name, value] : t.items()) {
      if (name != "J" && name != "J1" && name != "J2")
        throw ScenarioError("/tensors/" + name, "tensor names are J, J1 and J2");
      s.tensors.emplace(name, parse_matrix(s.chart, value, "/tensors/" + name));
      s.tensor_order.push_back(name);
    }
  }
  if (doc.contains("operator")) {
    const Json& o = doc.at("operator");
    if (!o.is_object()) throw ScenarioError("/operator", "expected an object with blocks TT, TF, FT, FF");
    auto block = [&](const char* key) { return parse_matrix(s.chart, require(o, "/operator", key), child("/operator", key)); };
    s.op.emplace(block("TT"), block("TF"), block("FT"), block("FF"));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Checks

Json rows(const Scenario& s, const FnMatrix& m) { return Json(m.to_strings(s.chart.coords())); }

Json operator_json(const Scenario& s, const GenOperator& op) {
  return {{"TT", rows(s, op.tt())}, {"TF", rows(s, op.tf())}, {"FT", rows(s, op.ft())}, {"FF", rows(s, op.ff())}};
}

Json vector_json(const Scenario& s, const std::vector<RationalFn>& comps) {
  Json j = Json::array();
  for (const auto& f : comps) j.push_back(f.str(s.chart.coords()));
  return j;
}

std::string coord_name(const Scenario& s, std::size_t i) { return "d" + s.chart.coords()[i]; }

struct Outcome {
  bool pass = true;
  Json residual;
};

Outcome from_matrix(const Scenario& s, const FnMatrix& m) {
  if (m.is_zero()) return {};
  return {false, rows(s, m)};
}

const Metric& need_metric(const Scenario& s, const std::string& pointer) {
  if (!s.metric) throw ScenarioError(pointer, "this check needs a metric");
  return *s.metric;
}

const Tensor11& need_tensor(const Scenario& s, const std::string& name, const std::string& pointer) {
  auto it = s.tensors.find(name);
  if (it == s.tensors.end()) throw ScenarioError(pointer, "tensor '" + name + "' is not defined");
  return it->second;
}

Outcome check_tensor(const Scenario& s, const std::string& check, const Tensor11& j, const std::string& pointer) {
  const std::size_t n = s.chart.dim();
  if (check == "plastic") return from_matrix(s, matrix_cubic_residual(j, 1));
  if (check == "dual-plastic") return from_matrix(s, matrix_cubic_residual(j, -1));
  if (check == "integrable") {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const VectorField v = nijenhuis_tm(j, VectorField::basis(n, a), VectorField::basis(n, b));
        if (!v.is_zero())
          return {false, {{"at", {coord_name(s, a), coord_name(s, b)}}, {"N(J)", vector_json(s, v.components())}}};
      }
    return {};
  }
  if (check == "parallel") {
    for (std::size_t a = 0; a < n; ++a) {
      const Tensor11 d = cov_deriv_tensor11(s.connection(), VectorField::basis(n, a), j);
      if (!d.is_zero()) return {false, {{"direction", coord_name(s, a)}, {"nabla J", rows(s, d)}}};
    }
    return {};
  }
  if (check == "g-symmetric") {
    const Metric& g = need_metric(s, pointer);
    return from_matrix(s, g.matrix() * j - j.transpose() * g.matrix());
  }
  throw ScenarioError(pointer, "unknown check '" + check + "'");
}

Outcome check_global(const Scenario& s, const std::string& check, const std::string& pointer) {
  const std::size_t n = s.chart.dim();
  const Connection& nabla = s.connection();
  if (check == "quasi-statistical") {
    const Metric& g = need_metric(s, pointer);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const RationalFn q = quasi_statistical_residual(g, nabla, i, j, k);
          if (!q.is_zero())
            return {false,
                    {{"at", {coord_name(s, i), coord_name(s, j), coord_name(s, k)}}, {"value", q.str(s.chart.coords())}}};
        }
    return {};
  }
  if (check == "metric-parallel") {
    const Metric& g = need_metric(s, pointer);
    for (std::size_t a = 0; a < n; ++a) {
      const FnMatrix d = cov_deriv_metric(nabla, VectorField::basis(n, a), g);
      if (!d.is_zero()) return {false, {{"direction", coord_name(s, a)}, {"nabla g", rows(s, d)}}};
    }
    return {};
  }
  if (check == "torsion-free") {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const VectorField t = torsion(nabla, VectorField::basis(n, a), VectorField::basis(n, b));
        if (!t.is_zero()) return {false, {{"at", {coord_name(s, a), coord_name(s, b)}}, {"T", vector_json(s, t.components())}}};
      }
    return {};
  }
  throw ScenarioError(pointer, "unknown check '" + check + "'");
}

// Builds the operator a structure-level check acts on.
GenOperator resolve_structure(const Scenario& s, const Json& entry, const std::string& pointer) {
  std::string kind;
  if (entry.is_object() && entry.contains("structure")) {
    if (!entry.at("structure").is_string()) throw ScenarioError(child(pointer, "structure"), "expected a string");
    kind = entry.at("structure").get<std::string>();
  } else if (s.op) {
    kind = "operator";
  } else if (s.tensors.count("J1") && s.tensors.count("J2")) {
    kind = "diag";
  } else {
    throw ScenarioError(pointer, "no operator and no J1/J2 pair; name a structure (operator, diag, two-tensor, dual)");
  }
  const std::string at = child(pointer, "structure");
  if (kind == "operator") {
    if (!s.op) throw ScenarioError(at, "no operator given");
    return *s.op;
  }
  if (kind == "diag") {
    if (s.tensors.count("J1") && s.tensors.count("J2"))
      return build_diag_structure(s.tensors.at("J1"), s.tensors.at("J2"));
    const Tensor11& j = need_tensor(s, "J", at);
    return build_diag_structure(j, j);
  }
  if (kind == "two-tensor")
    return build_two_tensor_structure(need_metric(s, at), need_tensor(s, "J1", at), need_tensor(s, "J2", at));
  if (kind == "dual") return build_dual_structure(need_metric(s, at), need_tensor(s, "J", at));
  throw ScenarioError(at, "unknown structure '" + kind + "'");
}

Outcome check_structure(const Scenario& s, const std::string& check, const GenOperator& j, const std::string& pointer) {
  const std::size_t n = s.chart.dim();
  const Connection& nabla = s.connection();
  if (check == "generalized-plastic") {
    const GenOperator r = gen_cubic_residual(j, 1);
    if (r.is_zero()) return {};
    return {false, operator_json(s, r)};
  }
  if (check == "nabla-integrable") {
    auto section = [n](std::size_t i) {
      return i < n ? GenSection::of_vector(VectorField::basis(n, i)) : GenSection::of_form(OneForm::basis(n, i - n));
    };
    auto name = [&](std::size_t i) { return i < n ? coord_name(s, i) : "d" + s.chart.coords()[i - n] + "*"; };
    for (std::size_t a = 0; a < 2 * n; ++a)
      for (std::size_t b = a + 1; b < 2 * n; ++b) {
        const GenSection v = gen_nijenhuis(nabla, j, section(a), section(b));
        if (!v.is_zero())
          return {false,
                  {{"at", {name(a), name(b)}},
                   {"vector", vector_json(s, v.vec.components())},
                   {"form", vector_json(s, v.form.components())}}};
      }
    return {};
  }
  if (check == "hat-parallel" || check == "check-parallel") {
    const Lift lift = check == "hat-parallel" ? Lift::Hat : Lift::Check;
    const Metric* g = lift == Lift::Hat ? &need_metric(s, pointer) : nullptr;
    for (std::size_t a = 0; a < n; ++a) {
      const GenOperator d = gen_cov_deriv(lift, nabla, g, j, VectorField::basis(n, a));
      if (!d.is_zero()) return {false, {{"direction", coord_name(s, a)}, {"derivative", operator_json(s, d)}}};
    }
    return {};
  }
  throw ScenarioError(pointer, "unknown check '" + check + "'");
}

bool is_tensor_check(const std::string& c) {
  return c == "plastic" || c == "dual-plastic" || c == "integrable" || c == "parallel" || c == "g-symmetric";
}
bool is_global_check(const std::string& c) {
  return c == "quasi-statistical" || c == "metric-parallel" || c == "torsion-free";
}
bool is_structure_check(const std::string& c) {
  return c == "generalized-plastic" || c == "nabla-integrable" || c == "hat-parallel" || c == "check-parallel";
}

Json outcome_json(Json head, const Outcome& o) {
  head["verdict"] = o.pass ? "pass" : "fail";
  if (!o.pass) head["residual"] = o.residual;
  return head;
}

std::uint64_t read_u64(const Json& entry, const std::string& pointer, const char* key, std::uint64_t fallback) {
  if (!entry.contains(key)) return fallback;
  const Json& v = entry.at(key);
  if (!v.is_number_unsigned()) throw ScenarioError(child(pointer, key), "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

Json check_scenario(const Json& doc, bool float_crosscheck, bool& all_pass) {
  const Scenario s = load(doc);
  const Json& checks = require(doc, "", "checks");
  if (!checks.is_array()) throw ScenarioError("/checks", "expected an array");
  Json results = Json::array();
  all_pass = true;
  for (std::size_t idx = 0; idx < checks.size(); ++idx) {
    const std::string pointer = child("/checks", idx);
    const Json& entry = checks[idx];
    std::string check;
    if (entry.is_string()) {
      check = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("suite")) {
      if (!entry.at("suite").is_string()) throw ScenarioError(child(pointer, "suite"), "expected a suite id");
      const std::string id = entry.at("suite").get<std::string>();
      if (!is_suite(id)) throw ScenarioError(child(pointer, "suite"), "unknown suite '" + id + "'");
      SuiteOptions opt;
      opt.trials = read_u64(entry, pointer, "trials", opt.trials);
      opt.seed = read_u64(entry, pointer, "seed", opt.seed);
      if (entry.contains("dim")) {
        const std::uint64_t d = read_u64(entry, pointer, "dim", 2);
        if (d < 2 || d > 4) throw ScenarioError(child(pointer, "dim"), "dimension must be in [2, 4]");
        opt.dim = d;
      }
      opt.float_crosscheck = float_crosscheck;
      const SuiteReport report = run_suite(id, opt);
      all_pass = all_pass && report.pass();
      results.push_back({{"check", "suite"}, {"suite", id}, {"verdict", report.pass() ? "pass" : "fail"},
                         {"report", report.to_json()}});
      continue;
    } else if (entry.is_object() && entry.contains("check") && entry.at("check").is_string()) {
      check = entry.at("check").get<std::string>();
    } else {
      throw ScenarioError(pointer, "expected a check name, a {\"check\": ...} object or a {\"suite\": ...} object");
    }

    if (is_tensor_check(check)) {
      std::vector<std::string> names;
      if (entry.is_object() && entry.contains("tensor")) {
        if (!entry.at("tensor").is_string()) throw ScenarioError(child(pointer, "tensor"), "expected a tensor name");
        names.push_back(entry.at("tensor").get<std::string>());
        need_tensor(s, names[0], child(pointer, "tensor"));
      } else {
        names = s.tensor_order;
        if (names.empty()) throw ScenarioError(pointer, "check '" + check + "' needs a tensor");
      }
      for (const auto& name : names) {
        const Outcome o = check_tensor(s, check, s.tensors.at(name), pointer);
        all_pass = all_pass && o.pass;
        results.push_back(outcome_json({{"check", check}, {"tensor", name}}, o));
      }
    } else if (is_global_check(check)) {
      const Outcome o = check_global(s, check, pointer);
      all_pass = all_pass && o.pass;
      results.push_back(outcome_json({{"check", check}}, o));
    } else if (is_structure_check(check)) {
      Json head = {{"check", check}};
      Outcome o;
      try {
        const GenOperator j = resolve_structure(s, entry, pointer);
        o = check_structure(s, check, j, pointer);
      } catch (const InvalidInput& e) {
        // The structure cannot be built from these tensors: a failed check,
        // with the violated identity as the residual.
        o.pass = false;
        o.residual = {{"error", e.what()}};
        if (!e.residual().empty()) o.residual["residual"] = e.residual();
      }
      all_pass = all_pass && o.pass;
      results.push_back(outcome_json(head, o));
    } else {
      throw ScenarioError(pointer, "unknown check '" + check + "'");
    }
  }
  return results;
}

std::vector<std::vector<std::string>> split_matrix_argument(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::stringstream rows_in(text);
  std::string row;
  while (std::getline(rows_in, row, ';')) {
    std::vector<std::string> entries;
    std::stringstream cols(row);
    std::string e;
    while (std::getline(cols, e, ',')) entries.push_back(e);
    if (!row.empty() && row.back() == ',') entries.emplace_back();
    out.push_back(entries);
  }
  if (!text.empty() && text.back() == ';') out.emplace_back();
  return out;
}

namespace {

Json classify(const std::string& argument) {
  const auto parts = split_matrix_argument(argument);
  if (parts.size() != 2 || parts[0].size() != 2 || parts[1].size() != 2)
    throw InvalidInput("expected a 2x2 matrix written as 'a11,a12;a21,a22'");
  FieldElem e[2][2];
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      try {
        e[i][j] = FieldElem::parse(parts[i][j]);
      } catch (const ParseError& err) {
        throw InvalidInput("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") '" + parts[i][j] +
                           "': " + err.what());
      }
    }
  const Matrix2 a(e[0][0], e[0][1], e[1][0], e[1][1]);
  Json out;
  out["matrix"] = a.to_strings();
  const Matrix2 r = matrix_cubic_residual(a, 1);
  if (!r.is_zero()) {
    out["plastic"] = false;
    out["branch"] = "none";
    out["residual"] = r.to_strings();
    return out;
  }
  out["plastic"] = true;
  try {
    const CanonicalForm cf = canonical_form(a);
    out["branch"] = "conjugate";
    out["C"] = cf.c.to_strings();
    out["B"] = cf.b.to_strings();
  } catch (const ScalarPlastic&) {
    out["branch"] = "scalar";
  }
  return out;
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}

  // Returns false when the output file cannot be written.
  bool emit(const Json& j, std::ostream& err) const {
    const std::string text = j.dump(2) + "\n";
    if (path_.empty()) {
      out_ << text;
      return true;
    }
    std::ofstream f(path_);
    if (!f || !(f << text)) {
      err << "error: cannot write " << path_ << "\n";
      return false;
    }
    return true;
  }

 private:
  std::ostream& out_;
  std::string path_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of plastic and generalized plastic structures", "gplastic"};
  app.require_subcommand(1);

  std::string output;
  std::string scenario_path;
  std::string suite_id;
  std::string matrix;
  std::size_t trials = 25;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  bool float_check = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", output, "Write the JSON report to this file instead of standard output");
  };
  auto add_float = [&](CLI::App* sub) {
    sub->add_flag("--float-crosscheck", float_check, "Also embed exact-zero residuals in the reals and sample them");
  };

  CLI::App* check = app.add_subcommand("check", "Run the checks listed in a scenario file");
  check->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  add_float(check);
  add_common(check);

  CLI::App* suite = app.add_subcommand("suite", "Run a property suite, or 'all'");
  suite->add_option("id", suite_id, "Suite id or 'all'")->required();
  suite->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  suite->add_option("--seed", seed, "Run seed");
  suite->add_option("--dim", dim, "Pin every trial to this dimension (2 to 4); default: the suite's own schedule")
      ->check(CLI::Range(2, 4));
  add_float(suite);
  add_common(suite);

  CLI::App* cls = app.add_subcommand("classify", "Classify a 2x2 matrix written as 'a11,a12;a21,a22'");
  cls->add_option("matrix", matrix, "Matrix entries in Q(rho) syntax")->required();
  add_common(cls);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const Emitter emitter(out, output);
  try {
    if (*cls) {
      return emitter.emit(classify(matrix), err) ? kPass : kInputError;
    }
    if (*suite) {
      SuiteOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      if (dim != 0) opt.dim = dim;
      opt.float_crosscheck = float_check;
      if (suite_id == "all") {
        Json reports = Json::array();
        bool pass = true;
        double ms = 0;
        for (const auto& id : suite_ids()) {
          const SuiteReport r = run_suite(id, opt);
          pass = pass && r.pass();
          ms += r.ms;
          reports.push_back(r.to_json());
        }
        Json j;
        j["suite"] = "all";
        j["trials"] = trials;
        j["seed"] = seed;
        j["verdict"] = pass ? "pass" : "fail";
        j["reports"] = reports;
        j["ms"] = ms;
        if (!emitter.emit(j, err)) return kInputError;
        return pass ? kPass : kFail;
      }
      if (!is_suite(suite_id)) {
        err << "error: unknown suite '" << suite_id << "'; known: all";
        for (const auto& id : suite_ids()) err << ", " << id;
        err << "\n";
        return kInputError;
      }
      const SuiteReport r = run_suite(suite_id, opt);
      if (!emitter.emit(r.to_json(), err)) return kInputError;
      return r.pass() ? kPass : kFail;
    }

    std::ifstream in(scenario_path);
    if (!in) {
      err << "error: " << scenario_path << ": cannot open file\n";
      return kInputError;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      err << "error: " << scenario_path << ": " << location(text, e.byte == 0 ? 0 : e.byte - 1)
          << ": invalid JSON: " << e.what() << "\n";
      return kInputError;
    }
    bool pass = true;
    Json results;
    try {
      results = check_scenario(doc, float_check, pass);
    } catch (const ScenarioError& e) {
      err << "error: " << scenario_path << ": " << e.what() << "\n";
      return kInputError;
    }
    Json j;
    j["scenario"] = scenario_path;
    j["verdict"] = pass ? "pass" : "fail";
    j["checks"] = results;
    if (!emitter.emit(j, err)) return kInputError;
    return pass ? kPass : kFail;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace gplastic::cli
