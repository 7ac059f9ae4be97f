// Command-line surface: every subcommand reads JSON files, writes a single
// JSON document to standard output, and logs to standard error. Exit codes:
// 0 success (verdicts are data), 1 input/validation error, 2 numerical
// failure. Identical invocations with the same --seed produce byte-identical
// output.
#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "erp/connection.hpp"
#include "erp/erp.hpp"
#include "erp/graph.hpp"
#include "erp/json_io.hpp"
#include "erp/kempf_ness.hpp"
#include "erp/models.hpp"
#include "erp/selftest.hpp"
#include "erp/transform.hpp"

namespace {

using erp::Complex;
using erp::Json;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw erp::Error(erp::ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw erp::Error(erp::ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

Complex parse_complex_flag(const std::string& s) {
  try {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
    return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw erp::Error(erp::ErrorCode::InvalidInput, "bad complex literal: " + s);
  }
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

struct Flags {
  std::string model;
  std::string edge_model;
  std::string graph;
  std::string fragments;
  std::string backend = "optimized";
  std::vector<std::string> circle_values;
  int l = -1;
  int max_vertices = -1;
  int max_edges = -1;
  bool allow_bare_edges = false;
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0: default bundle
  int budget = 4000;
  int restarts = 8;
  double step = 0.1;
};

erp::Tolerance tolerance_of(const Flags& f) {
  return f.tol > 0.0 ? erp::Tolerance::scaled(f.tol) : erp::Tolerance{};
}

erp::EvalBackend backend_of(const Flags& f) {
  return f.backend == "reference" ? erp::EvalBackend::Reference : erp::EvalBackend::Optimized;
}

std::optional<Complex> circle_of(const Flags& f) {
  if (f.circle_values.empty()) return std::nullopt;
  return parse_complex_flag(f.circle_values.front());
}

erp::VertexModel load_vertex_model(const std::string& path, const erp::Tolerance& tol) {
  erp::VertexModel m = erp::vertex_model_from_json(load_json(path));
  erp::validate(m, tol);
  return m;
}

std::vector<erp::Fragment> load_fragments(const std::string& path) {
  const Json j = load_json(path);
  const Json& arr = j.is_array() ? j : j.at("fragments");
  std::vector<erp::Fragment> out;
  for (const auto& item : arr) out.push_back(erp::fragment_from_json(item));
  return out;
}

int run_eval(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  const erp::Multigraph g = erp::graph_from_json(load_json(f.graph));
  erp::validate(g);
  Complex value;
  if (!f.model.empty()) {
    const erp::VertexModel m = load_vertex_model(f.model, tol);
    value = erp::eval_vertex(m, g, circle_of(f), backend_of(f));
  } else {
    if (!f.circle_values.empty()) {
      throw erp::Error(erp::ErrorCode::InvalidInput,
                       "--circle-value applies to vertex models only; edge models fix it at k");
    }
    const Json j = load_json(f.edge_model);
    if (erp::json_is_eval_form(j)) {
      const erp::EdgeModelEval h = erp::edge_model_eval_from_json(j);
      erp::validate(h, tol);
      value = erp::eval_edge(h, g, backend_of(f));
    } else {
      const erp::EdgeModelTable h = erp::edge_model_table_from_json(j);
      erp::validate(h);
      value = erp::eval_edge(h, g, backend_of(f));
    }
  }
  emit(Json{{"value", erp::to_json(value)}});
  return 0;
}

int run_transform(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  if (!f.model.empty()) {
    const erp::VertexModel m = load_vertex_model(f.model, tol);
    const erp::TransformResult tr = erp::vertex_to_edge(m, std::nullopt, tol);
    std::cerr << "k=" << tr.edge_model.k << " u_u_star_real=" << (tr.uu_star_real ? "yes" : "no")
              << "\n";
    emit(erp::to_json(tr.edge_model));
  } else {
    const Json j = load_json(f.edge_model);
    if (!erp::json_is_eval_form(j)) {
      throw erp::Error(erp::ErrorCode::InvalidInput,
                       "transform needs an evaluation-form edge model");
    }
    const erp::EdgeModelEval h = erp::edge_model_eval_from_json(j);
    erp::validate(h, tol);
    emit(erp::to_json(erp::evaluation_to_vertex(h, tol)));
  }
  return 0;
}

int run_twin_reduce(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  const erp::VertexModel m = load_vertex_model(f.model, tol);
  emit(erp::to_json(erp::twin_reduce(m, tol)));
  return 0;
}

int run_erp_check(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  const erp::VertexModel m = load_vertex_model(f.model, tol);
  const erp::VertexModel reduced = erp::twin_reduce(m, tol);
  erp::ErpVerdict v = erp::erp_decide_complex(reduced, tol, f.budget, f.seed);
  if (reduced.colors() != m.colors()) {
    v.notes.insert(v.notes.begin(), "twin reduction: " + std::to_string(m.colors()) + " -> " +
                                        std::to_string(reduced.colors()) + " colors");
  }
  emit(erp::to_json(v));
  return 0;
}

int run_connection_matrix(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  const int l = f.l < 0 ? 1 : f.l;
  const int max_vertices = f.max_vertices < 0 ? 2 : f.max_vertices;
  const int max_edges = f.max_edges < 0 ? 3 : f.max_edges;

  erp::GraphEvaluator p;
  std::optional<Complex> circle;
  if (!f.model.empty()) {
    const erp::VertexModel m = load_vertex_model(f.model, tol);
    circle = circle_of(f);
    p = erp::make_vertex_evaluator(m, circle);
  } else {
    if (!f.circle_values.empty()) {
      throw erp::Error(erp::ErrorCode::InvalidInput,
                       "--circle-value applies to vertex models only; edge models fix it at k");
    }
    const Json j = load_json(f.edge_model);
    if (erp::json_is_eval_form(j)) {
      const erp::EdgeModelEval h = erp::edge_model_eval_from_json(j);
      erp::validate(h, tol);
      circle = Complex(static_cast<double>(h.k), 0.0);
      p = erp::make_edge_evaluator(h);
    } else {
      const erp::EdgeModelTable h = erp::edge_model_table_from_json(j);
      erp::validate(h);
      circle = Complex(static_cast<double>(h.k), 0.0);
      p = [h](const erp::Multigraph& g) { return erp::eval_edge(h, g); };
    }
  }

  const std::vector<erp::Fragment> frags =
      f.fragments.empty() ? erp::enumerate_fragments(l, max_vertices, max_edges, f.allow_bare_edges)
                          : load_fragments(f.fragments);
  const erp::ConnectionMatrix cm = erp::connection_matrix(p, l, frags, circle, tol);
  const erp::PsdReport rep = erp::psd_check(cm.m, tol);

  Json rows = Json::array();
  for (int i = 0; i < cm.m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < cm.m.cols(); ++j) row.push_back(cm.m(i, j));
    rows.push_back(row);
  }
  Json doc{{"l", cm.l},
           {"fragment_keys", cm.fragment_keys},
           {"m", rows},
           {"circle_value", cm.circle_value ? erp::to_json(*cm.circle_value) : Json(nullptr)},
           {"psd", rep.psd},
           {"min_eigenvalue", rep.min_eigenvalue}};
  emit(doc);
  return 0;
}

int run_witness(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  const erp::VertexModel m = load_vertex_model(f.model, tol);
  const int max_l = f.l < 0 ? 2 : f.l;
  erp::FragmentBounds bounds;
  if (f.max_vertices >= 0) bounds.max_internal_vertices = f.max_vertices;
  if (f.max_edges >= 0) bounds.max_edges = f.max_edges;
  std::vector<Complex> circles;
  for (const auto& s : f.circle_values) circles.push_back(parse_complex_flag(s));

  const auto w = erp::witness_search(m, max_l, bounds, circles, tol);
  Json doc;
  doc["found"] = w.has_value();
  if (w) {
    Json lambda = Json::array();
    for (int i = 0; i < w->lambda.size(); ++i) lambda.push_back(w->lambda(i));
    doc["witness"] = Json{{"l", w->l},
                          {"fragment_keys", w->fragment_keys},
                          {"lambda", lambda},
                          {"quadratic_form", w->quadratic_form},
                          {"min_eigenvalue", w->min_eigenvalue}};
  } else {
    doc["witness"] = Json(nullptr);
  }
  emit(doc);
  return 0;
}

int run_kempf_ness_search(const Flags& f) {
  const erp::Tolerance tol = tolerance_of(f);
  const Json j = load_json(f.edge_model);
  if (!erp::json_is_eval_form(j)) {
    throw erp::Error(erp::ErrorCode::InvalidInput,
                     "kempf-ness-search needs an evaluation-form edge model");
  }
  const erp::EdgeModelEval h = erp::edge_model_eval_from_json(j);
  erp::validate(h, tol);
  const int l = f.l < 0 ? h.k : f.l;

  erp::ConjugationSearchOptions opt;
  opt.budget = f.budget;
  opt.restarts = f.restarts;
  opt.step = f.step;
  opt.seed = f.seed;
  if (f.tol > 0.0) opt.closure_tol = 10.0 * f.tol;
  const erp::ConjugationSearchResult res = erp::find_conjugating_g(h, l, opt, tol);

  Json doc;
  doc["found"] = res.g.has_value();
  doc["restart_index"] = res.restart_index;
  doc["g"] = res.g ? erp::to_json(res.g->g) : Json(nullptr);
  doc["orthogonality_defect"] = res.g ? Json(res.g->orthogonality_defect) : Json(nullptr);
  Json hist = Json::array();
  for (double v : res.f_history) hist.push_back(v);
  doc["f_history"] = hist;
  emit(doc);
  return 0;
}

int run_selftest(const Flags& f) {
  const auto results = erp::run_acceptance(f.seed);
  erp::report_acceptance(std::cerr, results);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  emit(Json{{"criteria", arr}, {"pass", all}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex and edge coloring models: evaluation, transforms, reflection positivity"};
  app.require_subcommand(1);
  Flags f;

  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", f.tol, "equality tolerance; PSD and partition gates scale with it");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a partition function on a graph");
  eval->add_option("--model,--vertex-model", f.model, "vertex model JSON");
  eval->add_option("--edge-model", f.edge_model, "edge model JSON (evaluation or table form)");
  eval->add_option("--graph", f.graph, "multigraph JSON")->required();
  eval->add_option("--circle-value", f.circle_values,
                   "value of one circle for vertex models, 're' or 're,im'");
  eval->add_option("--backend", f.backend, "evaluation backend")
      ->check(CLI::IsMember({"reference", "optimized"}));
  add_tol(eval);

  CLI::App* transform =
      app.add_subcommand("transform", "vertex model to edge model, or the reverse");
  transform->add_option("--model,--vertex-model", f.model, "vertex model JSON");
  transform->add_option("--edge-model", f.edge_model, "evaluation-form edge model JSON");
  add_tol(transform);

  CLI::App* twin = app.add_subcommand("twin-reduce", "merge or drop twin colors");
  twin->add_option("--model,--vertex-model", f.model, "vertex model JSON")->required();
  add_tol(twin);

  CLI::App* check = app.add_subcommand("erp-check", "decide edge reflection positivity");
  check->add_option("--model,--vertex-model", f.model, "vertex model JSON")->required();
  check->add_option("--budget", f.budget, "total descent iterations for the complex search");
  check->add_option("--seed", f.seed, "seed for the randomized complex search");
  add_tol(check);

  CLI::App* conn = app.add_subcommand("connection-matrix", "gluing matrix over a fragment corpus");
  conn->add_option("--model,--vertex-model", f.model, "vertex model JSON");
  conn->add_option("--edge-model", f.edge_model, "edge model JSON");
  conn->add_option("--l", f.l, "number of open ends (default 1)");
  conn->add_option("--fragments", f.fragments, "fragment corpus JSON (array)");
  conn->add_option("--max-vertices", f.max_vertices, "internal vertex bound when enumerating");
  conn->add_option("--max-edges", f.max_edges, "edge bound when enumerating");
  conn->add_flag("--allow-bare-edges", f.allow_bare_edges, "admit edges joining two open ends");
  conn->add_option("--circle-value", f.circle_values, "circle value for vertex models");
  add_tol(conn);

  CLI::App* wit = app.add_subcommand("witness", "search for a non-PSD connection matrix");
  wit->add_option("--model,--vertex-model", f.model, "vertex model JSON")->required();
  wit->add_option("--l", f.l, "largest number of open ends to scan (default 2)");
  wit->add_option("--max-vertices", f.max_vertices, "internal vertex bound (default 1)");
  wit->add_option("--max-edges", f.max_edges, "edge bound (default 3)");
  wit->add_option("--circle-value", f.circle_values,
                  "also scan bare-edge corpora at this circle value (repeatable)");
  add_tol(wit);

  CLI::App* kn = app.add_subcommand("kempf-ness-search",
                                    "search the complex orthogonal group for conjugation closure");
  kn->add_option("--edge-model", f.edge_model, "evaluation-form edge model JSON")->required();
  kn->add_option("--l", f.l, "group dimension, at least the model's k (default k)");
  kn->add_option("--budget", f.budget, "total descent iterations across restarts");
  kn->add_option("--restarts", f.restarts, "number of restarts (first starts at identity)");
  kn->add_option("--step", f.step, "initial step size");
  kn->add_option("--seed", f.seed, "seed for restart points");
  add_tol(kn);

  CLI::App* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--seed", f.seed, "seed for the randomized criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(eval)) {
      if (f.model.empty() == f.edge_model.empty()) {
        throw erp::Error(erp::ErrorCode::InvalidInput,
                         "pass exactly one of --model / --edge-model");
      }
      return run_eval(f);
    }
    if (app.got_subcommand(transform)) {
      if (f.model.empty() == f.edge_model.empty()) {
        throw erp::Error(erp::ErrorCode::InvalidInput,
                         "pass exactly one of --model / --edge-model");
      }
      return run_transform(f);
    }
    if (app.got_subcommand(twin)) return run_twin_reduce(f);
    if (app.got_subcommand(check)) return run_erp_check(f);
    if (app.got_subcommand(conn)) {
      if (f.model.empty() == f.edge_model.empty()) {
        throw erp::Error(erp::ErrorCode::InvalidInput,
                         "pass exactly one of --model / --edge-model");
      }
      return run_connection_matrix(f);
    }
    if (app.got_subcommand(wit)) return run_witness(f);
    if (app.got_subcommand(kn)) return run_kempf_ness_search(f);
    if (app.got_subcommand(self)) return run_selftest(f);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const erp::NumericalError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const erp::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
