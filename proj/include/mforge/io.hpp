#pragma once

#include <string>

#include <json.hpp>

#include "mforge/constants.hpp"
#include "mforge/homdata.hpp"
#include "mforge/stability.hpp"
#include "mforge/thresholds.hpp"
#include "mforge/typers.hpp"

namespace mforge {

using Json = nlohmann::ordered_json;

// Exact scalars travel as "num/den" strings; plain integers are accepted on input.
inline std::string scalar_text(const Rational& x) { return x.str(); }
inline std::string scalar_text(const ModP& x) { return x.str(); }

template <ExactField F>
F scalar_from_json(FieldTag f, const Json& j, const std::string& where) {
  if (j.is_string()) return F::parse(f, j.get<std::string>());
  if (j.is_number_integer()) return F::from_int(f, j.get<long>());
  throw ParseError(where + ": expected a \"num/den\" string or an integer");
}

template <ExactField F>
Json to_json(const Matrix<F>& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_text(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Matrices are arrays of rows. An empty array stands for any matrix with a zero dimension.
template <ExactField F>
Matrix<F> matrix_from_json(FieldTag f, const Json& j, size_t rows, size_t cols, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  Matrix<F> m(f, rows, cols);
  if (j.empty()) {
    if (rows != 0 && cols != 0) throw ShapeError(where + ": expected " + m.shape());
    return m;
  }
  if (j.size() != rows) throw ShapeError(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw ParseError(where + ": row " + std::to_string(i) + " is not an array");
    if (j[i].size() != cols)
      throw ShapeError(where + ": row " + std::to_string(i) + " has " + std::to_string(j[i].size()) + " entries, expected " + std::to_string(cols));
    for (size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json<F>(f, j[i][k], where);
  }
  return m;
}

// Column vectors are flat arrays.
template <ExactField F>
Json vector_json(const Matrix<F>& v) {
  Json a = Json::array();
  for (size_t i = 0; i < v.size(); ++i) a.push_back(scalar_text(v[i]));
  return a;
}

template <ExactField F>
Matrix<F> vector_from_json(FieldTag f, const Json& j, size_t n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a flat array");
  if (j.size() != n) throw ShapeError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Matrix<F> v(f, n, 1);
  for (size_t i = 0; i < n; ++i) v[i] = scalar_from_json<F>(f, j[i], where);
  return v;
}

const Json& require_key(const Json& j, const char* key, const std::string& where);
size_t size_from_json(const Json& j, const std::string& where);
Rational rational_from_json(const Json& j, const std::string& where);
Json to_json(const ThetaDims& d);
ThetaDims dims_from_json(const Json& j);
Json to_json(const Report& r);
Json to_json(const Multiplicities& m);
Multiplicities multiplicities_from_json(const Json& j);
Json to_json(const Polarization& p);
Polarization polarization_from_json(const Json& j);
Json to_json(const MappedPolarization& m);
Json to_json(const Witness& w);
Json to_json(const Verdict& v);
Json to_json(const Comparison& c);
Json to_json(const SearchReport& r);
Json to_json(const ThresholdReport& r);
ProjectiveData projective_from_json(const Json& j);

template <ExactField F>
Json to_json(const Theta<F>& t) {
  return Json{{"field", t.field.name()}, {"dims", to_json(t.d)}, {"rho1", to_json(t.rho1)},
              {"rho2", to_json(t.rho2)}, {"mu", to_json(t.mu)}, {"nu", to_json(t.nu)}};
}

template <ExactField F>
Theta<F> theta_from_json(FieldTag f, const Json& j) {
  if (!j.is_object()) throw ParseError("theta: expected an object");
  Theta<F> t;
  t.field = f;
  t.d = dims_from_json(require_key(j, "dims", "theta"));
  const auto& d = t.d;
  t.rho1 = matrix_from_json<F>(f, require_key(j, "rho1", "theta"), d.m1, d.b0 * d.n1, "rho1");
  t.rho2 = matrix_from_json<F>(f, require_key(j, "rho2", "theta"), d.m2, d.b0 * d.n2, "rho2");
  t.mu = matrix_from_json<F>(f, require_key(j, "mu", "theta"), d.m1, d.m2 * d.a0, "mu");
  t.nu = matrix_from_json<F>(f, require_key(j, "nu", "theta"), d.n1, d.n2 * d.a0, "nu");
  return t;
}

template <ExactField F>
Json to_json(const Point<F>& w) {
  return Json{{"psi1", to_json(w.psi1)}, {"psi2", to_json(w.psi2)}, {"phi1", vector_json(w.phi1)}, {"phi2", vector_json(w.phi2)}};
}

template <ExactField F>
Point<F> point_from_json(const Theta<F>& t, const Json& j) {
  if (!j.is_object()) throw ParseError("point: expected an object");
  const auto& d = t.d;
  const FieldTag f = t.field;
  return {matrix_from_json<F>(f, require_key(j, "psi1", "point"), d.n1, d.m, "psi1"),
          matrix_from_json<F>(f, require_key(j, "psi2", "point"), d.n2, d.m, "psi2"),
          vector_from_json<F>(f, require_key(j, "phi1", "point"), d.m1, "phi1"),
          vector_from_json<F>(f, require_key(j, "phi2", "point"), d.m2, "phi2")};
}

// Hom data: {"projective": {"n", "e", "f"}} or explicit {"r", "s", "dim", "comp"}
// with comp entries {"a", "b", "c", "matrix"}.
template <ExactField F>
HomData<F> hom_data_from_json(FieldTag f, const Json& j, std::vector<std::string>* warnings = nullptr) {
  if (!j.is_object()) throw ParseError("hom_data: expected an object");
  if (j.contains("projective")) {
    auto pd = projective_from_json(j["projective"]);
    auto h = projective_space_hom_data<F>(f, pd);
    if (warnings) *warnings = pd.warnings;
    return h;
  }
  size_t r = size_from_json(require_key(j, "r", "hom_data"), "hom_data.r");
  size_t s = size_from_json(require_key(j, "s", "hom_data"), "hom_data.s");
  auto h = empty_hom_data<F>(f, r, s);
  const auto& dim = require_key(j, "dim", "hom_data");
  const size_t N = r + s;
  if (!dim.is_array() || dim.size() != N) throw ShapeError("hom_data.dim: expected " + std::to_string(N) + " rows");
  for (size_t a = 0; a < N; ++a) {
    if (!dim[a].is_array() || dim[a].size() != N) throw ShapeError("hom_data.dim: row " + std::to_string(a) + " has the wrong length");
    for (size_t b = a + 1; b < N; ++b) h.dim[a][b] = size_from_json(dim[a][b], "hom_data.dim");
  }
  if (j.contains("comp")) {
    for (const auto& c : j["comp"]) {
      size_t a = size_from_json(require_key(c, "a", "comp"), "comp.a"), b = size_from_json(require_key(c, "b", "comp"), "comp.b"),
             cc = size_from_json(require_key(c, "c", "comp"), "comp.c");
      if (!(a < b && b < cc && cc < N)) throw ShapeError("comp: need a < b < c < r+s");
      h.comp[{a, b, cc}] = matrix_from_json<F>(f, require_key(c, "matrix", "comp"), h.hom(a, cc), h.hom(b, cc) * h.hom(a, b), "comp");
    }
  }
  // Missing compositions into zero spaces are zero maps.
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c)
        if (!h.comp.count({a, b, c}) && (h.hom(a, c) == 0 || h.hom(a, b) == 0 || h.hom(b, c) == 0))
          h.comp[{a, b, c}] = Matrix<F>(f, h.hom(a, c), h.hom(b, c) * h.hom(a, b));
  return h;
}

template <ExactField F>
Json to_json(const HomData<F>& h) {
  Json dim = Json::array();
  for (const auto& row : h.dim) dim.push_back(row);
  Json comp = Json::array();
  for (const auto& [key, m] : h.comp)
    comp.push_back(Json{{"a", std::get<0>(key)}, {"b", std::get<1>(key)}, {"c", std::get<2>(key)}, {"matrix", to_json(m)}});
  return Json{{"field", h.field.name()}, {"r", h.r}, {"s", h.s}, {"names", h.names}, {"dim", dim}, {"comp", comp}};
}

Json to_json(const Kronecker& k);
Kronecker kronecker_from_json(FieldTag f, const Json& j);

}  // namespace mforge
