#include "pjrp/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "pjrp/errors.hpp"

namespace pjrp::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ValidationError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing field '") + key + "'");
  return *it;
}

std::string str_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ValidationError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Rational rational_of(const Json& v, const std::string& what) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(parse_bigint(v.dump()));
  throw ValidationError(what + " must be a rational string or an integer");
}

BigInt integer_of(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return parse_bigint(v.dump());
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  throw ValidationError(what + " must be an integer");
}

std::uint64_t u64_of(const Json& v, const std::string& what) {
  BigInt b = integer_of(v, what);
  if (b < 0 || !b.fits_ulong_p()) throw ValidationError(what + " is out of range");
  return b.get_ui();
}

std::uint32_t u32_of(const Json& v, const std::string& what) {
  auto x = u64_of(v, what);
  if (x > std::numeric_limits<std::uint32_t>::max()) throw ValidationError(what + " is out of range");
  return static_cast<std::uint32_t>(x);
}

Json integer_json(const BigInt& v) {
  if (v >= 0 && v.fits_ulong_p()) return Json(static_cast<std::uint64_t>(v.get_ui()));
  if (v < 0 && v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(to_string(v));
}

Json rational_json(const Rational& r) { return Json(r.str()); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json literal_json(const reduction::Literal& l) {
  return Json(l.positive ? static_cast<std::int64_t>(l.var) : -static_cast<std::int64_t>(l.var));
}

}  // namespace

Json to_json(const cost::Instance& inst) {
  Json j;
  j["K0"] = rational_json(inst.K0());
  Json list = Json::array();
  for (const auto& c : inst.commodities()) {
    Json e;
    e["id"] = c.id;
    e["kind"] = std::string(cost::to_string(c.kind));
    e["K"] = rational_json(c.K);
    e["h"] = rational_json(c.h);
    e["lambda"] = rational_json(c.lambda);
    if (!c.meta.empty()) {
      Json m = Json::object();
      if (c.meta.l) m["l"] = *c.meta.l;
      if (c.meta.m) m["m"] = *c.meta.m;
      if (c.meta.i) m["i"] = *c.meta.i;
      if (c.meta.r) m["r"] = *c.meta.r;
      e["meta"] = std::move(m);
    }
    list.push_back(std::move(e));
  }
  j["commodities"] = std::move(list);
  return j;
}

cost::Instance instance_from_json(const Json& j) {
  Rational K0 = rational_of(field(j, "K0"), "K0");
  const Json& list = field(j, "commodities");
  if (!list.is_array()) throw ValidationError("'commodities' must be an array");
  std::vector<cost::Commodity> cs;
  for (const auto& e : list) {
    cost::Commodity c;
    c.id = str_field(e, "id");
    c.kind = cost::parse_kind(str_field(e, "kind"));
    c.K = rational_of(field(e, "K"), c.id + ".K");
    c.h = rational_of(field(e, "h"), c.id + ".h");
    c.lambda = rational_of(field(e, "lambda"), c.id + ".lambda");
    if (auto it = e.find("meta"); it != e.end() && !it->is_null()) {
      if (!it->is_object()) throw ValidationError(c.id + ".meta must be an object");
      for (auto [key, slot] : {std::pair{"l", &c.meta.l}, std::pair{"m", &c.meta.m}, std::pair{"i", &c.meta.i},
                               std::pair{"r", &c.meta.r}}) {
        if (auto m = it->find(key); m != it->end()) *slot = u32_of(*m, c.id + ".meta." + key);
      }
    }
    cs.push_back(std::move(c));
  }
  return cost::Instance(std::move(cs), K0);
}

Json to_json(const cost::Policy& pol) {
  Json cycles = Json::object();
  for (const auto& [id, t] : pol.cycles()) cycles[id] = integer_json(t);
  Json j;
  j["cycles"] = std::move(cycles);
  return j;
}

cost::Policy policy_from_json(const Json& j) {
  const Json& cycles = field(j, "cycles");
  if (!cycles.is_object()) throw ValidationError("'cycles' must be an object");
  cost::Policy pol;
  for (const auto& [id, v] : cycles.items()) pol.set(id, integer_of(v, "cycle of " + id));
  return pol;
}

Json to_json(const primes::VpSet& vp) {
  Json j;
  Json pairs = Json::array();
  for (const auto& p : vp.pairs) pairs.push_back(Json::array({p.lower, p.upper}));
  j["pairs"] = std::move(pairs);
  j["pp"] = vp.pp;
  j["pp_cap"] = vp.params.pp_cap ? Json(*vp.params.pp_cap) : Json(nullptr);
  j["params"] = {{"b", vp.params.b}, {"b_tilde", vp.params.b_tilde}, {"n", vp.params.n}, {"B", vp.params.B.str()}};
  return j;
}

primes::VpSet vpset_from_json(const Json& j) {
  const Json& params = field(j, "params");
  std::optional<Rational> B;
  if (auto it = params.find("B"); it != params.end()) B = rational_of(*it, "params.B");
  std::optional<primes::Prime> cap;
  if (auto it = j.find("pp_cap"); it != j.end() && !it->is_null()) cap = u64_of(*it, "pp_cap");
  primes::VpSet vp;
  vp.params = primes::make_params(u64_of(field(params, "n"), "params.n"), u64_of(field(params, "b"), "params.b"),
                                  u64_of(field(params, "b_tilde"), "params.b_tilde"), B, cap);
  const Json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw ValidationError("'pairs' must be an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("each pair must be [lower, upper]");
    vp.pairs.push_back({u64_of(p[0], "pair lower"), u64_of(p[1], "pair upper")});
  }
  const Json& pp = field(j, "pp");
  if (!pp.is_array()) throw ValidationError("'pp' must be an array");
  for (const auto& p : pp) vp.pp.push_back(u64_of(p, "pp entry"));
  return vp;
}

Json to_json(const reduction::Gamma& gamma) {
  Json j = to_json(gamma.instance);
  Json clauses = Json::array();
  for (const auto& c : gamma.cnf.clauses) {
    Json lits = Json::array();
    for (const auto& l : c.literals) lits.push_back(literal_json(l));
    clauses.push_back(std::move(lits));
  }
  j["cnf"] = {{"num_vars", gamma.cnf.num_vars}, {"clauses", std::move(clauses)}};
  j["vp"] = to_json(gamma.vp);
  const auto& a = gamma.alphas;
  j["alphas"] = {{"alpha_c", a.alpha_c.str()},
                 {"alpha_v", a.alpha_v.str()},
                 {"alpha_v_upper", a.alpha_v_upper.str()},
                 {"alpha_v_lower", a.alpha_v_lower.str()},
                 {"a_n", a.a_n.str()}};
  Json roles = Json::object();
  for (const auto& c : gamma.constants) {
    roles[c.id] = {{"kind", "constant"}, {"l", c.l}, {"m", c.m}, {"p", c.p}, {"v", c.v}, {"t_star", integer_json(c.t_star)}};
  }
  for (const auto& v : gamma.variables) {
    roles[v.id] = {{"kind", "variable"}, {"i", v.i}, {"lower", v.pair.lower}, {"upper", v.pair.upper}};
  }
  for (const auto& c : gamma.clauses) {
    Json lits = Json::array();
    for (const auto& l : c.clause.literals) lits.push_back(literal_json(l));
    roles[c.id] = {{"kind", "clause"},
                   {"r", c.r},
                   {"literals", std::move(lits)},
                   {"primes", c.primes},
                   {"t_star", integer_json(c.t_star)}};
  }
  j["roles"] = std::move(roles);
  return j;
}

reduction::Gamma gamma_from_json(const Json& j) {
  const Json& cnf_j = field(j, "cnf");
  reduction::CnfFormula cnf;
  cnf.num_vars = u32_of(field(cnf_j, "num_vars"), "cnf.num_vars");
  const Json& clauses = field(cnf_j, "clauses");
  if (!clauses.is_array()) throw ValidationError("'cnf.clauses' must be an array");
  for (const auto& c : clauses) {
    if (!c.is_array() || c.size() != 3) throw ValidationError("each clause must list exactly 3 literals");
    reduction::Clause clause;
    for (std::size_t k = 0; k < 3; ++k) {
      BigInt v = integer_of(c[k], "literal");
      BigInt a = abs(v);
      if (v == 0 || !a.fits_ulong_p() || a.get_ui() > std::numeric_limits<std::uint32_t>::max())
        throw ValidationError("literal out of range");
      clause.literals[k] = {static_cast<std::uint32_t>(a.get_ui()), v > 0};
    }
    cnf.clauses.push_back(clause);
  }
  auto gamma = reduction::build_gamma(cnf, vpset_from_json(field(j, "vp")));
  auto stored = instance_from_json(j);
  if (to_json(stored) != to_json(gamma.instance))
    throw ValidationError("stored commodities disagree with the instance rebuilt from 'cnf' and 'vp'");
  if (auto it = j.find("alphas"); it != j.end()) {
    Json expected = to_json(gamma)["alphas"];
    if (*it != expected) throw ValidationError("stored alphas disagree with the rebuilt instance");
  }
  return gamma;
}

harness::SearchWindow window_from_json(const Json& j) {
  const Json& wins = field(j, "windows");
  if (!wins.is_object()) throw ValidationError("'windows' must be an object");
  harness::SearchWindow w;
  for (const auto& [id, v] : wins.items()) {
    if (v.is_array()) {
      std::vector<Natural> c;
      for (const auto& t : v) c.push_back(integer_of(t, "candidate of " + id));
      w.set(id, std::move(c));
    } else if (v.is_object()) {
      w.set_range(id, integer_of(field(v, "lo"), id + ".lo"), integer_of(field(v, "hi"), id + ".hi"));
    } else {
      throw ValidationError("window of '" + id + "' must be a list or {lo, hi}");
    }
  }
  return w;
}

Json to_json(const harness::SearchWindow& win) {
  Json wins = Json::object();
  for (const auto& [id, c] : win.candidates()) {
    Json list = Json::array();
    for (const auto& t : c) list.push_back(integer_json(t));
    wins[id] = std::move(list);
  }
  return Json{{"windows", std::move(wins)}};
}

Json to_json(const harness::SolveResult& res) {
  Json j;
  j["policy"] = to_json(res.policy);
  j["cost"] = rational_json(res.cost);
  j["explored"] = integer_json(res.explored);
  return j;
}

Json to_json(const reduction::TruthAssignment& a) {
  Json j = Json::array();
  for (bool v : a.values) j.push_back(v);
  return j;
}

namespace {

template <class T, class F>
Json optional_json(const std::optional<T>& v, F f) {
  return v ? f(*v) : Json(nullptr);
}

Json report_json(const VerificationReport& rep) {
  Json list = Json::array();
  for (const auto& e : rep.entries) {
    list.push_back({{"name", e.name},
                    {"relation", std::string(to_string(e.relation))},
                    {"lhs", e.lhs.str()},
                    {"rhs", e.rhs.str()},
                    {"margin", e.margin.str()},
                    {"pass", e.pass},
                    {"notes", e.notes}});
  }
  return list;
}

}  // namespace

Json to_json(const harness::ExperimentReport& rep) {
  Json j;
  j["mode"] = std::string(harness::to_string(rep.mode));
  j["num_vars"] = rep.num_vars;
  j["num_clauses"] = rep.num_clauses;
  j["satisfying_assignments"] = rep.satisfying_assignments;
  j["satisfiable"] = rep.satisfying_assignments > 0;
  j["optimum"] = to_json(rep.optimum);
  j["variables_on_pair_primes"] = rep.variables_on_pair_primes;
  j["constants_and_clauses_at_t_star"] = rep.constants_and_clauses_at_t_star;
  j["interior_variables"] = rep.interior_variables;
  j["extracted"] = optional_json(rep.extracted, [](const auto& a) { return to_json(a); });
  j["extracted_satisfies"] = optional_json(rep.extracted_satisfies, [](bool b) { return Json(b); });
  j["agreement"] = optional_json(rep.agreement, [](bool b) { return Json(b); });
  j["best_satisfying_cost"] = optional_json(rep.best_satisfying_cost, rational_json);
  j["best_unsatisfying_cost"] = optional_json(rep.best_unsatisfying_cost, rational_json);
  j["enumeration_gap"] = optional_json(rep.enumeration_gap, rational_json);
  j["enumeration_gap_sign"] = optional_json(rep.enumeration_gap, [](const Rational& r) { return Json(r.sign()); });
  const auto& g = rep.bound_gap;
  Json deltas = Json::array();
  for (const auto& d : g.deltas) deltas.push_back(d.str());
  j["bound_gap"] = {{"gap", g.gap.str()},
                    {"sign", g.gap.sign()},
                    {"variables_difference", g.variables_difference.str()},
                    {"clauses_difference", g.clauses_difference.str()},
                    {"worst_clause", optional_json(g.worst_clause, [](const std::string& s) { return Json(s); })},
                    {"deltas", std::move(deltas)},
                    {"entries", report_json(g.report)}};
  return j;
}

void write_report_csv(std::ostream& os, const VerificationReport& rep) {
  os << "name,relation,lhs,rhs,margin,pass,notes\n";
  for (const auto& e : rep.entries) {
    os << csv_field(e.name) << ',' << to_string(e.relation) << ',' << e.lhs.str() << ',' << e.rhs.str() << ','
       << e.margin.str() << ',' << (e.pass ? "true" : "false") << ',' << csv_field(e.notes) << '\n';
  }
}

void write_conditions_csv(std::ostream& os, const std::vector<primes::ConditionRow>& rows) {
  os << "condition,pass,margin,note\n";
  for (const auto& r : rows) {
    os << csv_field(r.condition) << ',' << (r.pass ? "true" : "false") << ',' << r.margin.str() << ','
       << csv_field(r.note) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const std::vector<harness::CurveRow>& rows) {
  os << "t,lb,ub\n";
  for (const auto& r : rows) os << to_string(r.t) << ',' << r.lb.str() << ',' << r.ub.str() << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) { return parse_json(read_file(path)); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

}  // namespace pjrp::io
