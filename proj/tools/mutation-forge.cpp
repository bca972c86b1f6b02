#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mforge/constants.hpp"
#include "mforge/io.hpp"
#include "mforge/mutation.hpp"
#include "mforge/random.hpp"
#include "mforge/stability.hpp"
#include "mforge/thresholds.hpp"

using namespace mforge;

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string field = "rationals";
  bool field_given = false;
  uint64_t seed = 1;
  Budgets budgets;
  std::string out;
  std::string format = "json";
  bool verify = false;
  bool random = false;
  unsigned prime = 2;
  // generate
  unsigned n = 2;
  std::vector<long> e{-2, -1}, f{0};
  std::vector<size_t> mult_m, mult_n;
  long p = -1;
};

// Result of a command: the document to print and whether the math checks passed.
struct Outcome {
  Json result;
  bool ok = true;
  std::string failure;
  std::string csv;  // sweep only
};

Json load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ParseError("no input file given");
  std::ifstream in(cfg.input);
  if (!in) throw ParseError("cannot read " + cfg.input);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

FieldTag field_of(const RunConfig& cfg, const Json& doc) {
  if (cfg.field_given || !doc.contains("field")) return FieldTag::parse(cfg.field);
  if (!doc["field"].is_string()) throw ParseError("field: expected a string");
  return FieldTag::parse(doc["field"].get<std::string>());
}

Json config_json(const RunConfig& cfg, FieldTag f) {
  return Json{{"command", cfg.command},
              {"input", cfg.input},
              {"field", f.name()},
              {"seed", cfg.seed},
              {"budgets", {{"subspaces", cfg.budgets.subspaces}, {"orbit", cfg.budgets.orbit}}},
              {"format", cfg.format}};
}

size_t get_p(const Json& doc) { return doc.contains("p") ? size_from_json(doc["p"], "p") : 0; }

template <ExactField F>
ThetaP<F> theta_p_from_doc(FieldTag f, const Json& doc, Json& out) {
  std::vector<std::string> warnings;
  auto h = hom_data_from_json<F>(f, doc["hom_data"], &warnings);
  auto hr = check_hom_data(h);
  if (auto* c = hr.first_failure()) throw DomainError("hom data fails " + c->name);
  auto mult = multiplicities_from_json(require_key(doc, "multiplicities", "input"));
  out["warnings"] = warnings;
  return build_theta_p(h, mult, get_p(doc));
}

// validate ------------------------------------------------------------------

template <ExactField F>
Outcome validate_in(FieldTag f, const Json& doc) {
  Outcome o;
  o.result = Json::object();
  if (doc.contains("hom_data")) {
    std::vector<std::string> warnings;
    auto h = hom_data_from_json<F>(f, doc["hom_data"], &warnings);
    auto hr = check_hom_data(h);
    o.result["warnings"] = warnings;
    o.result["hom_data"] = to_json(hr);
    o.ok = o.ok && hr.ok();
    if (auto* c = hr.first_failure()) o.failure = "hom data: " + c->name;
    if (hr.ok() && doc.contains("multiplicities")) {
      auto tp = build_theta_p(h, multiplicities_from_json(doc["multiplicities"]), get_p(doc));
      auto tr = validate_theta(tp.theta);
      o.result["theta_p"] = to_json(tr);
      o.ok = o.ok && tr.ok();
      if (auto* c = tr.first_failure()) o.failure = c->name;
    }
  }
  if (doc.contains("theta")) {
    auto t = theta_from_json<F>(f, doc["theta"]);
    auto tr = validate_theta(t);
    o.result["theta"] = to_json(tr);
    o.ok = o.ok && tr.ok();
    if (auto* c = tr.first_failure()) o.failure = c->name;
  }
  if (!doc.contains("hom_data") && !doc.contains("theta")) throw ParseError("input needs \"theta\" or \"hom_data\"");
  o.result["ok"] = o.ok;
  return o;
}

// mutate / dual ---------------------------------------------------------------

template <ExactField F>
std::pair<Theta<F>, Point<F>> theta_and_point(FieldTag f, const RunConfig& cfg, const Json& doc, Json& out) {
  if (cfg.random) {
    Rng rng(cfg.seed);
    RandomThetaLimits lim;
    auto t = random_theta<F>(rng, f, lim);
    auto w = random_point_W0(rng, t);
    out["theta"] = to_json(t);
    out["point"] = to_json(w);
    return {t, w};
  }
  if (doc.contains("hom_data")) {
    auto tp = theta_p_from_doc<F>(f, doc, out);
    auto mult = multiplicities_from_json(doc["multiplicities"]);
    auto h = hom_data_from_json<F>(f, doc["hom_data"]);
    const size_t dim = rs_dim(h, mult);
    auto w = vector_from_json<F>(f, require_key(doc, "w", "input"), dim, "w");
    return {tp.theta, point_from_rs(h, mult, tp, w)};
  }
  auto t = theta_from_json<F>(f, require_key(doc, "theta", "input"));
  return {t, point_from_json(t, require_key(doc, "point", "input"))};
}

template <ExactField F>
Outcome mutate_in(FieldTag f, const RunConfig& cfg, const Json& doc) {
  Outcome o;
  o.result = Json::object();
  auto [t, w] = theta_and_point<F>(f, cfg, doc, o.result);
  require_valid(t, "mutate");
  require_W0(t, w);
  auto dual = build_dual(t);
  auto ch = standard_chart(t, w);
  auto c = chart_choice(t, w, ch);
  auto z = mutate(t, dual, w, c);
  o.result["dual"] = to_json(dual.theta);
  o.result["identifications"] = Json{{"kernel_rho2", to_json(dual.kernel)},
                                     {"quotient_projection", to_json(dual.quot.projection)},
                                     {"quotient_section", to_json(dual.quot.section)}};
  o.result["choice"] = Json{{"u", to_json(c.u)}, {"v", to_json(c.v)}, {"kernel", to_json(c.kernel)}};
  o.result["mutated"] = to_json(z);
  if (cfg.verify) {
    auto rep = verify_mutation(t, w);
    o.result["verify"] = to_json(rep);
    o.ok = rep.ok();
    if (auto* c = rep.first_failure()) o.failure = c->name;
  }
  return o;
}

template <ExactField F>
Outcome dual_in(FieldTag f, const Json& doc) {
  Outcome o;
  o.result = Json::object();
  Theta<F> t;
  if (doc.contains("hom_data")) {
    t = theta_p_from_doc<F>(f, doc, o.result).theta;
    o.result["theta"] = to_json(t);
  } else {
    t = theta_from_json<F>(f, require_key(doc, "theta", "input"));
  }
  require_valid(t, "dual");
  auto d1 = build_dual(t);
  auto v = validate_theta(d1.theta);
  auto d2 = build_dual(d1.theta);
  auto dd = double_dual_witness(t, d1, d2);
  o.result["dual"] = to_json(d1.theta);
  o.result["dual_valid"] = to_json(v);
  o.result["double_dual"] = to_json(dd.checks);
  o.ok = v.ok() && dd.checks.ok();
  return o;
}

// stability -------------------------------------------------------------------

GroupMode mode_of(const Json& doc) {
  std::string m = doc.value("mode", "full");
  if (m == "full") return GroupMode::full;
  if (m == "reduced") return GroupMode::reduced;
  throw ParseError("mode must be \"full\" or \"reduced\"");
}

Outcome stability_in(FieldTag f, const RunConfig& cfg, const Json& doc) {
  Outcome o;
  o.result = Json::object();
  if (f.rational()) {
    // Exact scans need a finite field; rational input is reduced modulo a prime.
    f = FieldTag::prime(cfg.prime);
    o.result["label"] = "finite-field verdict over " + f.name() + " (input reduced from rationals)";
  } else {
    o.result["label"] = "finite-field verdict over " + f.name();
  }
  if (doc.contains("kronecker")) {
    auto k = kronecker_from_json(f, doc["kronecker"]);
    auto v = kronecker_semistable(k, cfg.budgets);
    o.result["verdict"] = to_json(v);
    if (doc.value("mutate", false)) {
      auto a = kronecker_mutate(k);
      auto va = kronecker_semistable(a, cfg.budgets);
      o.result["mutated"] = to_json(a);
      o.result["mutated_verdict"] = to_json(va);
      o.ok = va.semistable == v.semistable && va.stable == v.stable;
    }
    return o;
  }
  std::vector<std::string> warnings;
  auto h = hom_data_from_json<ModP>(f, require_key(doc, "hom_data", "input"), &warnings);
  auto mult = multiplicities_from_json(require_key(doc, "multiplicities", "input"));
  auto pol = polarization_from_json(require_key(doc, "polarization", "input"));
  auto w = vector_from_json<ModP>(f, require_key(doc, "w", "input"), rs_dim(h, mult), "w");
  auto mode = mode_of(doc);
  o.result["warnings"] = warnings;
  o.result["mode"] = mode == GroupMode::full ? "full" : "reduced";
  if (doc.contains("p")) {
    auto c = compare_stability(h, mult, pol, w, get_p(doc), mode, cfg.budgets);
    o.result["comparison"] = to_json(c);
    o.ok = c.ok();
  } else {
    o.result["verdict"] = to_json(is_semistable_rs(h, mult, pol, w, mode, cfg.budgets));
  }
  return o;
}

// polarization ---------------------------------------------------------------

Outcome polarization_in(FieldTag f, const Json& doc) {
  Outcome o;
  auto mult = multiplicities_from_json(require_key(doc, "multiplicities", "input"));
  auto pol = polarization_from_json(require_key(doc, "polarization", "input"));
  const size_t p = get_p(doc);
  std::vector<size_t> h1;
  if (doc.contains("hom_data")) {
    auto h = hom_data_from_json<Rational>(FieldTag::rationals(), doc["hom_data"]);
    check_mult(h, mult);
    for (size_t j = 0; j < h.r; ++j) h1.push_back(h.hom(j, h.target(0)));
  } else {
    const auto& a = require_key(doc, "h1", "input");
    if (!a.is_array()) throw ParseError("h1: expected an array");
    for (const auto& x : a) h1.push_back(size_from_json(x, "h1"));
  }
  (void)f;
  auto in = check_polarization(pol, mult);
  auto mp = map_polarization(pol, mult, h1, p);
  o.result = Json{{"input_totals", {{"sources", in.source_total.str()}, {"targets", in.target_total.str()}}},
                  {"input_positive", in.positive},
                  {"mapped", to_json(mp)}};
  o.ok = in.normalized() && mp.issues.empty();
  return o;
}

// constants -------------------------------------------------------------------

template <ExactField F>
Outcome constants_in(FieldTag f, const RunConfig& cfg, const Json& doc) {
  Outcome o;
  o.result = Json::object();
  SearchOptions opt;
  opt.seed = cfg.seed;
  if (doc.contains("samples")) opt.samples = size_from_json(doc["samples"], "samples");
  if (doc.contains("exhaustive_limit")) opt.exhaustive_limit = size_from_json(doc["exhaustive_limit"], "exhaustive_limit");
  SearchReport rep;
  if (doc.contains("sigma")) {
    const auto& s = doc["sigma"];
    const size_t which = size_from_json(require_key(s, "which", "sigma"), "sigma.which");
    const size_t n = size_from_json(require_key(s, "n", "sigma"), "sigma.n");
    const size_t m = size_from_json(require_key(s, "m", "sigma"), "sigma.m");
    if (which > 1) throw DomainError("sigma.which must be 0 or 1");
    const Sigma sg = which == 0 ? Sigma::zero : Sigma::one;
    opt.reference = c_formula(sg, static_cast<unsigned>(n), static_cast<unsigned>(m));
    auto tau = which == 0 ? sigma0<F>(f, static_cast<unsigned>(n)) : sigma1<F>(f, static_cast<unsigned>(n));
    rep = c_tau_search(tau, m, opt);
    o.result["closed_form"] = opt.reference->str();
    o.result["witness_matches_closed_form"] = rep.witness ? Json(*rep.witness == *opt.reference) : Json(nullptr);
  } else {
    auto h = hom_data_from_json<F>(f, require_key(doc, "hom_data", "input"));
    if (doc.contains("reference")) opt.reference = rational_from_json(doc["reference"], "reference");
    rep = c_tau_rs(h, size_from_json(require_key(doc, "m", "input"), "m"), opt);
  }
  o.result["search"] = to_json(rep);
  o.ok = !rep.exceeds_reference;
  return o;
}

// thresholds and sweep --------------------------------------------------------

ThresholdInput threshold_input(const Json& doc) {
  ThresholdInput in;
  in.m1 = size_from_json(require_key(doc, "m1", "input"), "m1");
  in.m2 = size_from_json(require_key(doc, "m2", "input"), "m2");
  in.n1 = size_from_json(require_key(doc, "n1", "input"), "n1");
  in.t = doc.contains("t") ? rational_from_json(doc["t"], "t") : Rational(1, 2);
  return in;
}

std::vector<int> cases_of(const Json& doc) {
  if (!doc.contains("cases")) return {1, 2};
  std::vector<int> out;
  for (const auto& c : doc["cases"]) {
    if (!c.is_number_integer() || (c.get<int>() != 1 && c.get<int>() != 2)) throw ParseError("cases: each case is 1 or 2");
    out.push_back(c.get<int>());
  }
  return out;
}

Json rational_list(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

Outcome thresholds_in(const Json& doc) {
  Outcome o;
  o.result = Json::object();
  if (doc.contains("example")) {
    const size_t which = size_from_json(doc["example"], "example");
    const unsigned n = static_cast<unsigned>(size_from_json(require_key(doc, "n", "input"), "n"));
    if (which == 1) {
      auto ex = singular_values_ex1(n);
      auto det = singular_detector(1, 1, n + 2);
      o.result = Json{{"n", n},
                      {"singular", rational_list(ex.singular)},
                      {"detector", rational_list(det.values)},
                      {"nonempty_quotients", ex.nonempty_quotients},
                      {"singular_quotients", ex.singular_quotients},
                      {"dim_general", ex.dim_general},
                      {"dim_last", ex.dim_last},
                      {"empty_above", ex.empty_above.str()},
                      {"reduced_bound", ex.reduced_bound.str()}};
      o.ok = ex.singular == det.values;
    } else if (which == 2) {
      const unsigned k = static_cast<unsigned>(size_from_json(require_key(doc, "k", "input"), "k"));
      auto ex = singular_values_ex2(n, k);
      auto det = singular_detector(1, k, n * k + 1);
      o.result = Json{{"n", n},
                      {"k", k},
                      {"singular", rational_list(ex.singular)},
                      {"detector", rational_list(det.values)},
                      {"t_max", ex.t_max.str()},
                      {"t_max_formula", ex.t_max_formula.str()},
                      {"t1", ex.t1.str()},
                      {"t2", ex.t2.str()},
                      {"strict_chain", ex.strict_chain},
                      {"t2_equals_tmax", ex.t2_equals_tmax}};
      o.ok = ex.t_max == ex.t_max_formula && (ex.strict_chain || (n == 1 && ex.t2_equals_tmax));
    } else {
      throw ParseError("example must be 1 or 2");
    }
    return o;
  }
  if (doc.contains("polarization")) {
    auto rep = thm56_range(polarization_from_json(doc["polarization"]), multiplicities_from_json(require_key(doc, "multiplicities", "input")),
                           get_p(doc));
    o.result["range"] = to_json(rep);
    return o;
  }
  auto in = threshold_input(doc);
  for (int which : cases_of(doc)) {
    Json row;
    if (doc.contains("n")) {
      const unsigned n = static_cast<unsigned>(size_from_json(doc["n"], "n"));
      row = to_json(thm64_ok(n, in, which));
    } else {
      const auto& dj = require_key(doc, "dims", "input");
      TypeDims d{size_from_json(require_key(dj, "a", "dims"), "dims.a"), size_from_json(require_key(dj, "h1", "dims"), "dims.h1"),
                 size_from_json(require_key(dj, "h2", "dims"), "dims.h2")};
      Rational ct = doc.contains("c_tau") ? rational_from_json(doc["c_tau"], "c_tau") : Rational(0);
      Rational cs = doc.contains("c_taustar") ? rational_from_json(doc["c_taustar"], "c_taustar") : Rational(0);
      row = to_json(thm59_ok(d, in, ct, cs, which));
    }
    o.result["case" + std::to_string(which)] = row;
  }
  return o;
}

std::string csv_config_line(const Json& config) { return "# config " + config.dump() + "\n"; }

Outcome sweep_in(FieldTag f, const RunConfig& cfg, const Json& doc) {
  Outcome o;
  ThresholdInput base;
  unsigned n = 0;
  std::vector<Rational> extra;
  if (doc.contains("example")) {
    const size_t which = size_from_json(doc["example"], "example");
    n = static_cast<unsigned>(size_from_json(require_key(doc, "n", "input"), "n"));
    if (which == 1) {
      base.m1 = 1, base.m2 = 1, base.n1 = n + 2;
      extra = singular_values_ex1(n).singular;
    } else if (which == 2) {
      const unsigned k = static_cast<unsigned>(size_from_json(require_key(doc, "k", "input"), "k"));
      base.m1 = 1, base.m2 = k, base.n1 = n * k + 1;
      extra = singular_values_ex2(n, k).singular;
    } else {
      throw ParseError("example must be 1 or 2");
    }
  } else {
    base = threshold_input(doc);
    n = static_cast<unsigned>(size_from_json(require_key(doc, "n", "input"), "n"));
  }
  Rational step = doc.contains("step") ? rational_from_json(doc["step"], "step") : Rational(1, 10);
  auto cases = cases_of(doc);
  auto rows = sweep(base, step, cases, [n](const ThresholdInput& in, int which) { return thm64_ok(n, in, which); });
  // Values from the closed-form lists are flagged as well.
  for (auto& r : rows)
    for (const auto& v : extra)
      if (r.t == v) r.singular = true;
  for (const auto& v : extra) {
    bool present = false;
    for (const auto& r : rows) present = present || r.t == v;
    if (!present) throw DomainError("closed-form singular value " + v.str() + " missing from the sweep grid");
  }

  // Optional stability column for one point of O(-2)^m1 + O(-1)^m2 -> O^n1 over GF(p).
  std::vector<std::string> stab(rows.size());
  const bool with_point = doc.contains("w");
  if (with_point) {
    FieldTag g = f.rational() ? FieldTag::prime(cfg.prime) : f;
    ProjectiveData pd{n, {-2, -1}, {0}, {}};
    auto h = projective_space_hom_data<ModP>(g, pd);
    Multiplicities mult{{base.m1, base.m2}, {base.n1}};
    auto w = vector_from_json<ModP>(g, doc["w"], rs_dim(h, mult), "w");
    auto mode = mode_of(doc);
    for (size_t i = 0; i < rows.size(); ++i) {
      const Rational& t = rows[i].t;
      Polarization pol{{(Rational(1) - t) / Rational(static_cast<long>(base.m1)), t / Rational(static_cast<long>(base.m2))},
                       {Rational(1, static_cast<long>(base.n1))}};
      try {
        auto v = is_semistable_rs(h, mult, pol, w, mode, cfg.budgets);
        stab[i] = std::string(v.semistable ? "true" : "false") + "," + (v.stable ? "true" : "false");
      } catch (const BudgetExceeded&) {
        stab[i] = "budget_exceeded,budget_exceeded";
      }
    }
  }

  if (cfg.format == "csv") {
    std::string body = sweep_csv(rows);
    if (with_point) {
      std::istringstream in(body);
      std::string line, out;
      size_t i = 0;
      bool header = true;
      while (std::getline(in, line)) {
        out += line + (header ? ",semistable,stable" : "," + stab[i++]) + "\n";
        header = false;
      }
      body = out;
    }
    o.csv = body;
  } else {
    Json a = Json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      Json x{{"t", r.t.str()}, {"case", r.which}, {"verdict", r.verdict}, {"failing_condition", r.failing}, {"singular", r.singular}};
      if (with_point) x["stability"] = stab[i];
      a.push_back(std::move(x));
    }
    o.result = Json{{"rows", a}};
  }
  return o;
}

// generate --------------------------------------------------------------------

template <ExactField F>
Outcome generate_in(FieldTag f, const RunConfig& cfg) {
  Outcome o;
  ProjectiveData pd{cfg.n, cfg.e, cfg.f, {}};
  auto h = projective_space_hom_data<F>(f, pd);
  Json proj{{"projective", {{"n", cfg.n}, {"e", cfg.e}, {"f", cfg.f}}}};
  o.result = Json{{"hom_data", proj}, {"warnings", pd.warnings}, {"explicit", to_json(h)}};
  if (!cfg.mult_m.empty() || !cfg.mult_n.empty()) {
    Multiplicities mult{cfg.mult_m, cfg.mult_n};
    const size_t p = cfg.p < 0 ? 0 : static_cast<size_t>(cfg.p);
    auto tp = build_theta_p(h, mult, p);
    o.result["multiplicities"] = to_json(mult);
    o.result["p"] = p;
    o.result["theta"] = to_json(tp.theta);
    o.result["rs_dim"] = rs_dim(h, mult);
  }
  return o;
}

// -----------------------------------------------------------------------------

template <ExactField F>
Outcome dispatch_field(FieldTag f, const RunConfig& cfg, const Json& doc) {
  const auto& c = cfg.command;
  if (c == "validate") return validate_in<F>(f, doc);
  if (c == "mutate") return mutate_in<F>(f, cfg, doc);
  if (c == "dual") return dual_in<F>(f, doc);
  if (c == "constants") return constants_in<F>(f, cfg, doc);
  if (c == "generate") return generate_in<F>(f, cfg);
  throw ParseError("unknown command " + c);
}

Outcome run(const RunConfig& cfg, FieldTag& f) {
  Json doc = cfg.command == "generate" || (cfg.command == "mutate" && cfg.random) ? Json::object() : load_input(cfg);
  if (!doc.is_object()) throw ParseError("input must be a JSON object");
  f = field_of(cfg, doc);
  const auto& c = cfg.command;
  if (c == "stability") return stability_in(f, cfg, doc);
  if (c == "polarization") return polarization_in(f, doc);
  if (c == "thresholds") return thresholds_in(doc);
  if (c == "sweep") return sweep_in(f, cfg, doc);
  if (f.rational()) return dispatch_field<Rational>(f, cfg, doc);
  return dispatch_field<ModP>(f, cfg, doc);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw ParseError("cannot write " + cfg.out);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact mutations of morphism spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("input", cfg.input, "input JSON file")->required();
    sub->add_option_function<std::string>(
        "--field", [&](const std::string& s) { cfg.field = s, cfg.field_given = true; }, "rationals | gf:p");
    sub->add_option("--seed", cfg.seed, "64-bit seed");
    sub->add_option("--budget-subspaces", cfg.budgets.subspaces, "max subspaces per scan");
    sub->add_option("--budget-orbit", cfg.budgets.orbit, "max unipotent orbit size");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--verify", cfg.verify, "run witness checks");
    sub->add_option("--prime", cfg.prime, "prime used to reduce rational input for stability scans");
  };

  common(app.add_subcommand("validate", "check a morphism space or hom data"), true);
  auto* mut = app.add_subcommand("mutate", "mutate a point of W0");
  mut->add_option("input", cfg.input, "input JSON file");
  mut->add_flag("--random", cfg.random, "use a seeded random instance instead of an input file");
  common(mut, false);
  common(app.add_subcommand("dual", "build the dual morphism space"), true);
  common(app.add_subcommand("stability", "exhaustive (semi)stability over a finite field"), true);
  common(app.add_subcommand("polarization", "map a polarization through the mutation"), true);
  common(app.add_subcommand("constants", "search for the constant c(tau, m)"), true);
  common(app.add_subcommand("thresholds", "evaluate threshold conditions"), true);
  common(app.add_subcommand("sweep", "threshold sweep over a t-grid"), true);
  auto* gen = app.add_subcommand("generate", "emit hom data for line bundles on P^n");
  common(gen, false);
  gen->add_option("--n", cfg.n, "dimension of the projective space");
  gen->add_option("--e", cfg.e, "source degrees")->delimiter(',')->allow_extra_args(false);
  gen->add_option("--f", cfg.f, "target degrees")->delimiter(',')->allow_extra_args(false);
  gen->add_option("--mult-m", cfg.mult_m, "source multiplicities")->delimiter(',')->allow_extra_args(false);
  gen->add_option("--mult-n", cfg.mult_n, "target multiplicities")->delimiter(',')->allow_extra_args(false);
  gen->add_option("--p", cfg.p, "split index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "mutate" && !cfg.random && cfg.input.empty()) {
    std::cerr << "error: mutate needs an input file or --random\n";
    return 2;
  }

  FieldTag f = FieldTag::rationals();
  try {
    Outcome o = run(cfg, f);
    Json config = config_json(cfg, f);
    if (cfg.format == "csv") {
      if (cfg.command != "sweep") throw ParseError("csv output is only available for sweep");
      emit(cfg, csv_config_line(config) + o.csv);
    } else {
      Json doc{{"config", config}, {"ok", o.ok}, {"result", o.result}};
      emit(cfg, doc.dump(2) + "\n");
    }
    if (!o.ok) std::cerr << "check failed" << (o.failure.empty() ? "" : ": " + o.failure) << "\n";
    return o.ok ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
