#include "mforge/io.hpp"

namespace mforge {

namespace {

Json rational_list(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x, where));
  return out;
}

std::vector<size_t> sizes_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<size_t> out;
  for (const auto& x : j) out.push_back(size_from_json(x, where));
  return out;
}

// Subspaces are written as the rows of their reduced echelon basis.
Json subspace_json(const MatP& basis) { return to_json(column_space(basis).transpose()); }

Json opt_rational(const std::optional<Rational>& x) { return x ? Json(x->str()) : Json(nullptr); }

}  // namespace

const Json& require_key(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing key \"" + key + "\"");
  return j[key];
}

size_t size_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a non-negative integer");
  return j.get<size_t>();
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return Rational::parse(FieldTag::rationals(), j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(where + ": expected a \"num/den\" string or an integer");
}

Json to_json(const ThetaDims& d) {
  return Json{{"n1", d.n1}, {"n2", d.n2}, {"m1", d.m1}, {"m2", d.m2}, {"a0", d.a0}, {"b0", d.b0}, {"m", d.m}, {"n", d.n}};
}

ThetaDims dims_from_json(const Json& j) {
  ThetaDims d;
  d.n1 = size_from_json(require_key(j, "n1", "dims"), "dims.n1");
  d.n2 = size_from_json(require_key(j, "n2", "dims"), "dims.n2");
  d.m1 = size_from_json(require_key(j, "m1", "dims"), "dims.m1");
  d.m2 = size_from_json(require_key(j, "m2", "dims"), "dims.m2");
  d.a0 = size_from_json(require_key(j, "a0", "dims"), "dims.a0");
  d.b0 = size_from_json(require_key(j, "b0", "dims"), "dims.b0");
  d.m = size_from_json(require_key(j, "m", "dims"), "dims.m");
  if (j.contains("n")) {
    d.n = size_from_json(j["n"], "dims.n");
  } else {
    if (d.m > d.n2) throw ShapeError("dims: m exceeds n2");
    d.n = d.n2 - d.m;
  }
  return d;
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return Json{{"ok", r.ok()}, {"checks", checks}};
}

Json to_json(const Multiplicities& m) { return Json{{"m", m.m}, {"n", m.n}}; }

Multiplicities multiplicities_from_json(const Json& j) {
  return {sizes_from_json(require_key(j, "m", "multiplicities"), "multiplicities.m"),
          sizes_from_json(require_key(j, "n", "multiplicities"), "multiplicities.n")};
}

Json to_json(const Polarization& p) { return Json{{"lambda", rational_list(p.lambda)}, {"mu", rational_list(p.mu)}}; }

Polarization polarization_from_json(const Json& j) {
  return {rationals_from_json(require_key(j, "lambda", "polarization"), "polarization.lambda"),
          rationals_from_json(require_key(j, "mu", "polarization"), "polarization.mu")};
}

Json to_json(const MappedPolarization& m) {
  return Json{{"polarization", to_json(m.pol)}, {"c", m.c.str()}, {"positive", m.positive}, {"issues", m.issues}};
}

Json to_json(const Witness& w) {
  Json src = Json::array(), tgt = Json::array();
  for (const auto& s : w.sources) src.push_back(subspace_json(s));
  for (const auto& t : w.targets) tgt.push_back(subspace_json(t));
  Json out{{"sources", src}, {"targets", tgt}, {"lhs", w.lhs.str()}, {"rhs", w.rhs.str()}};
  if (w.orbit_index) {
    out["orbit_index"] = *w.orbit_index;
    out["orbit_point"] = vector_json(w.point);
  }
  return out;
}

Json to_json(const Verdict& v) {
  Json out{{"semistable", v.semistable}, {"stable", v.stable}, {"families", v.families}};
  out["unstable_witness"] = v.unstable_witness ? to_json(*v.unstable_witness) : Json(nullptr);
  out["nonstable_witness"] = v.nonstable_witness ? to_json(*v.nonstable_witness) : Json(nullptr);
  return out;
}

Json to_json(const Comparison& c) {
  Json out{{"in_w0", c.in_w0}, {"first_hypothesis", c.first_hypothesis}, {"second_hypothesis", c.second_hypothesis},
           {"first_strict", c.first_strict}, {"second_strict", c.second_strict}, {"mapped", to_json(c.mapped)}, {"original", to_json(c.original)}};
  if (c.in_w0) {
    out["mutated"] = to_json(c.mutated);
    out["mutated_point"] = vector_json(c.mutated_point);
  } else {
    out["outside_bound"] = c.outside_bound;
  }
  out["first_ok"] = c.first_ok;
  out["second_ok"] = c.second_ok;
  out["outside_ok"] = c.outside_ok;
  out["ok"] = c.ok();
  return out;
}

Json to_json(const SearchReport& r) {
  return Json{{"h", r.h},
              {"m", r.m},
              {"witness", opt_rational(r.witness)},
              {"max_found", opt_rational(r.max_found)},
              {"mode", r.mode},
              {"scanned", r.scanned},
              {"generic", r.generic},
              {"seed", r.seed},
              {"reference", opt_rational(r.reference)},
              {"exceeds_reference", r.exceeds_reference},
              {"empty", r.empty},
              {"notes", r.notes}};
}

Json to_json(const ThresholdReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json x{{"name", c.name}, {"lhs", c.lhs.str()}, {"rel", c.rel}};
    x["rhs"] = c.vacuous ? Json("infinity") : Json(c.rhs.str());
    x["ok"] = c.ok;
    conds.push_back(std::move(x));
  }
  return Json{{"ok", r.ok()}, {"first_failure", r.first_failure()}, {"conditions", conds}, {"notes", r.notes}};
}

ProjectiveData projective_from_json(const Json& j) {
  ProjectiveData pd;
  const size_t n = size_from_json(require_key(j, "n", "projective"), "projective.n");
  if (n < 1) throw DomainError("projective: need n >= 1");
  pd.n = static_cast<unsigned>(n);
  for (const char* key : {"e", "f"}) {
    const auto& a = require_key(j, key, "projective");
    if (!a.is_array()) throw ParseError(std::string("projective.") + key + ": expected an array");
    for (const auto& x : a) {
      if (!x.is_number_integer()) throw ParseError(std::string("projective.") + key + ": expected integers");
      (key[0] == 'e' ? pd.e : pd.f).push_back(x.get<long>());
    }
  }
  return pd;
}

Json to_json(const Kronecker& k) { return Json{{"q", k.q}, {"m", k.m}, {"n", k.n}, {"f", to_json(k.f)}}; }

Kronecker kronecker_from_json(FieldTag f, const Json& j) {
  Kronecker k;
  k.q = size_from_json(require_key(j, "q", "kronecker"), "kronecker.q");
  k.m = size_from_json(require_key(j, "m", "kronecker"), "kronecker.m");
  k.n = size_from_json(require_key(j, "n", "kronecker"), "kronecker.n");
  k.f = matrix_from_json<ModP>(f, require_key(j, "f", "kronecker"), k.n, k.q * k.m, "kronecker.f");
  return k;
}

}  // namespace mforge
