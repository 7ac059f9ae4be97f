#include "erp/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace erp {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

double number_from(const Json& j, const char* what) {
  if (!j.is_number()) bad_input(std::string(what) + " must be a number");
  return j.get<double>();
}

int int_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad_input(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad_input("complex values are [re, im] pairs");
  return Complex(number_from(j[0], "re"), number_from(j[1], "im"));
}

Json to_json(const Multigraph& g) {
  Json j;
  j["vertices"] = g.vertex_count;
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  j["circles"] = g.circles;
  return j;
}

Multigraph graph_from_json(const Json& j) {
  if (!j.is_object()) bad_input("graph must be an object");
  Multigraph g;
  g.vertex_count = int_from(j.at("vertices"), "vertices");
  if (j.contains("circles")) g.circles = int_from(j.at("circles"), "circles");
  for (const Json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) bad_input("edges are [u, v] pairs");
    g.edges.emplace_back(int_from(e[0], "edge endpoint"), int_from(e[1], "edge endpoint"));
  }
  validate(g);
  return g;
}

Json to_json(const Fragment& f) {
  Json j = to_json(f.graph);
  j["open_ends"] = f.open_ends;
  return j;
}

Fragment fragment_from_json(const Json& j) {
  Fragment f;
  f.graph = graph_from_json(j);
  if (!j.contains("open_ends")) bad_input("fragment needs open_ends");
  for (const Json& o : j.at("open_ends")) f.open_ends.push_back(int_from(o, "open end"));
  validate(f);
  return f;
}

Json to_json(const VertexModel& m) {
  Json j;
  Json a = Json::array();
  for (int i = 0; i < m.colors(); ++i) a.push_back(to_json(m.a[i]));
  j["a"] = std::move(a);
  Json b = Json::array();
  for (int r = 0; r < m.colors(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.colors(); ++c) row.push_back(to_json(m.b(r, c)));
    b.push_back(std::move(row));
  }
  j["B"] = std::move(b);
  return j;
}

VertexModel vertex_model_from_json(const Json& j) {
  if (!j.is_object()) bad_input("vertex model must be an object");
  const Json& a = j.at("a");
  const Json& b = j.at("B");
  if (!a.is_array() || !b.is_array()) bad_input("a and B must be arrays");
  VertexModel m;
  const int n = static_cast<int>(a.size());
  m.a.resize(n);
  for (int i = 0; i < n; ++i) m.a[i] = complex_from_json(a[i]);
  if (static_cast<int>(b.size()) != n) bad_input("B must be n x n");
  m.b.resize(n, n);
  for (int r = 0; r < n; ++r) {
    if (!b[r].is_array() || static_cast<int>(b[r].size()) != n) bad_input("B must be n x n");
    for (int c = 0; c < n; ++c) m.b(r, c) = complex_from_json(b[r][c]);
  }
  validate(m);
  return m;
}

Json to_json(const EdgeModelEval& h) {
  Json j;
  j["k"] = h.k;
  Json terms = Json::array();
  for (const EdgeTerm& t : h.terms) {
    Json term;
    term["a"] = to_json(t.weight);
    Json u = Json::array();
    for (int c = 0; c < h.k; ++c) u.push_back(to_json(t.point[c]));
    term["u"] = std::move(u);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

EdgeModelEval edge_model_eval_from_json(const Json& j) {
  if (!j.is_object()) bad_input("edge model must be an object");
  EdgeModelEval h;
  h.k = int_from(j.at("k"), "k");
  for (const Json& t : j.at("terms")) {
    EdgeTerm term;
    term.weight = complex_from_json(t.at("a"));
    const Json& u = t.at("u");
    if (!u.is_array() || static_cast<int>(u.size()) != h.k) bad_input("term u must have k entries");
    term.point.resize(h.k);
    for (int c = 0; c < h.k; ++c) term.point[c] = complex_from_json(u[c]);
    h.terms.push_back(std::move(term));
  }
  validate(h);
  return h;
}

namespace {

std::string exponent_key(const std::vector<int>& alpha) {
  std::string s;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(alpha[i]);
  }
  return s;
}

std::vector<int> exponents_from_key(const std::string& key, int k) {
  std::vector<int> alpha;
  if (!key.empty()) {
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        alpha.push_back(std::stoi(part));
      } catch (const std::exception&) {
        bad_input("bad exponent key '" + key + "'");
      }
    }
  }
  if (static_cast<int>(alpha.size()) != k) bad_input("exponent key '" + key + "' length != k");
  return alpha;
}

}  // namespace

Json to_json(const EdgeModelTable& t) {
  Json j;
  j["k"] = t.k;
  j["d"] = t.d;
  Json coeffs = Json::object();
  // graded ordering: by total degree, then lexicographic; deterministic output
  std::vector<std::pair<std::vector<int>, Complex>> entries(t.coeffs.begin(), t.coeffs.end());
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (int e : x.first) dx += e;
    for (int e : y.first) dy += e;
    if (dx != dy) return dx < dy;
    return x.first < y.first;
  });
  for (const auto& [alpha, c] : entries) coeffs[exponent_key(alpha)] = to_json(c);
  j["coeffs"] = std::move(coeffs);
  return j;
}

EdgeModelTable edge_model_table_from_json(const Json& j) {
  if (!j.is_object()) bad_input("edge model table must be an object");
  EdgeModelTable t;
  t.k = int_from(j.at("k"), "k");
  t.d = int_from(j.at("d"), "d");
  for (const auto& [key, value] : j.at("coeffs").items())
    t.coeffs[exponents_from_key(key, t.k)] = complex_from_json(value);
  validate(t);
  return t;
}

Json to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd cmatrix_from_json(const Json& j) {
  if (!j.is_array()) bad_input("matrix must be an array of rows");
  const int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) bad_input("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const FailureWitness& w) {
  Json j;
  j["i"] = w.i;
  Json violations = Json::array();
  for (const PairViolation& v : w.violations) {
    Json vj;
    vj["j"] = v.j;
    if (v.weight_mismatch) {
      vj["kind"] = "weight";
      vj["a_i"] = to_json(v.a_i);
      vj["a_j"] = to_json(v.a_j);
    } else {
      vj["kind"] = "projector";
      vj["lambda"] = v.lambda;
      vj["sigma"] = v.sigma;
      vj["residual_norm"] = v.residual_norm;
      Json res = Json::array();
      for (int i = 0; i < v.residual.size(); ++i) res.push_back(v.residual[i]);
      vj["residual"] = std::move(res);
    }
    violations.push_back(std::move(vj));
  }
  j["violations"] = std::move(violations);
  return j;
}

Json to_json(const ErpVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["certificate"] = v.certificate ? to_json(*v.certificate) : Json(nullptr);
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  j["notes"] = v.notes;
  return j;
}

bool json_is_eval_form(const Json& j) {
  if (j.contains("terms")) return true;
  if (j.contains("coeffs")) return false;
  bad_input("edge model needs either terms (evaluation form) or coeffs (table form)");
}

}  // namespace erp
