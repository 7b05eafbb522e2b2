#include "lcs/cli/scene.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lcs/cli/expr.hpp"
#include "lcs/moser.hpp"

namespace lcs::cli {

using nlohmann::json;

const std::map<std::string, double>& default_settings() {
  static const std::map<std::string, double> d = {
      // tolerances
      {"lagrangian_tol", 1e-9},
      {"primitive_tol", 1e-8},
      {"classify_tol", 1e-8},
      {"mvt_margin", 0.0},
      {"closedness_tol", 1e-9},
      {"nondegeneracy_tol", 1e-9},
      {"nilpotence_tol", 1e-9},
      {"flow_step", 1e-3},
      {"richardson_tol", 1e-9},
      {"drift_tol", 1e-8},
      {"pullback_tol", 1e-4},
      {"straighten_closed_tol", 1e-8},
      {"holonomy_tol", 1e-6},
      {"identity_tol", 1e-12},
      {"contact_tol", 1e-10},
      {"closed_form_tol", 1e-8},
      {"margin", 0.5},
      {"collar_log_width", 0.15},
      {"zero_radius", 0.05},
      {"blend_width", 1.0},
      {"kernel_steps", 2.0},
      // grids
      {"samples", 256},
      {"parameter_grid", 32},
      {"chord_grid", 32},
      {"primitive_nodes", 0},
      {"primitive_steps", 2048},
      {"radial_base", 64},
      {"radial_directions", 32},
      {"radial_radii", 128},
      {"r_min", 1e-3},
      {"r_max", 16.0},
      {"flow_seeds", 256},
      {"pullback_samples", 64},
      {"moser_grid", 16},
      {"straighten_nodes", 16},
      {"straighten_steps", 128},
      {"straighten_flow_step", 1e-2},
      {"reeb_samples", 100},
  };
  return d;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& need(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object() || !obj.contains(key)) throw SceneError(at, "missing required field \"" + key + "\"");
  return obj.at(key);
}

std::string need_string(const json& v, const std::string& at) {
  if (!v.is_string()) throw SceneError(at, "expected a string");
  return v.get<std::string>();
}

double need_number(const json& v, const std::string& at) {
  if (!v.is_number()) throw SceneError(at, "expected a number");
  return v.get<double>();
}

int need_count(const json& v, const std::string& at, int lo = 0) {
  if (!v.is_number_integer() || v.get<long>() < lo) throw SceneError(at, "expected an integer >= " + std::to_string(lo));
  return v.get<int>();
}

ScalarField expression(const json& v, const std::string& at, const ModelManifold& m,
                       const std::vector<std::string>& names) {
  if (v.is_number()) return ScalarField::constant(m, v.get<double>());
  const std::string text = need_string(v, at);
  try {
    return parse_expression(text, m, names);
  } catch (const ExprError& e) {
    throw SceneError(at, e.what());
  }
}

const std::vector<std::string> kTopLevel = {"schema", "name",      "pipeline",    "manifold", "beta",
                                            "embeddings", "h",     "g",           "g_radius", "legendrians",
                                            "tolerances", "grids", "description", "eta_prime"};

}  // namespace

Scene parse_scene(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw SceneError("", "scene must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(kTopLevel.begin(), kTopLevel.end(), it.key()) == kTopLevel.end()) {
      throw SceneError("/" + it.key(), "unknown field");
    }
  }
  if (need_string(need(doc, "schema", ""), "/schema") != "scene-v1") {
    throw SceneError("/schema", "unsupported schema (expected \"scene-v1\")");
  }
  Scene s;
  s.doc = doc;
  s.path = path;
  s.name = need_string(need(doc, "name", ""), "/name");
  s.pipeline = doc.contains("pipeline") ? need_string(doc["pipeline"], "/pipeline") : "";
  s.digest = fnv1a_hex(doc.dump());
  s.settings = default_settings();
  for (const char* group : {"tolerances", "grids"}) {
    if (!doc.contains(group)) continue;
    const json& g = doc[group];
    const std::string at = std::string("/") + group;
    if (!g.is_object()) throw SceneError(at, "expected an object");
    for (auto it = g.begin(); it != g.end(); ++it) {
      if (!s.settings.count(it.key())) throw SceneError(ptr(at, it.key()), "unknown setting");
      s.settings[it.key()] = need_number(it.value(), ptr(at, it.key()));
    }
  }
  if (!doc.contains("embeddings") && !doc.contains("manifold")) {
    throw SceneError("", "a scene needs \"manifold\" or \"embeddings\"");
  }
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("", "cannot open scene file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SceneError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_scene(doc, path);
}

void apply_overrides(Scene& scene, const std::map<std::string, double>& overrides) {
  for (const auto& [k, v] : overrides) {
    if (!scene.settings.count(k)) throw SceneError("/tolerances/" + k, "unknown setting in override");
    scene.settings[k] = v;
  }
}

namespace {

ParametricEmbedding library_embedding(const std::string& name, const std::string& at) {
  if (name == "example-torus-1") return example_torus_1();
  if (name == "example-torus-2") return example_torus_2();
  if (name == "planted-tangency") return example_planted_tangency();
  throw SceneError(at, "unknown library embedding \"" + name + "\"");
}

std::vector<std::string> labels_of(const json& spec, const std::string& at, int count, const std::string& stem) {
  std::vector<std::string> names;
  if (spec.is_object() && spec.contains("labels")) {
    const json& l = spec["labels"];
    if (!l.is_array() || static_cast<int>(l.size()) != count) {
      throw SceneError(ptr(at, "labels"), "expected " + std::to_string(count) + " labels");
    }
    for (std::size_t i = 0; i < l.size(); ++i) names.push_back(need_string(l[i], ptr(ptr(at, "labels"), i)));
  } else {
    for (int i = 0; i < count; ++i) names.push_back(stem + std::to_string(i + 1));
  }
  return names;
}

ModelManifold manifold_of(const json& spec, const std::string& at, std::vector<std::string>& names,
                          const std::string& stem) {
  if (!spec.is_object()) throw SceneError(at, "expected an object");
  const int circles = spec.contains("circles") ? need_count(spec["circles"], ptr(at, "circles")) : 0;
  const int lines = spec.contains("lines") ? need_count(spec["lines"], ptr(at, "lines")) : 0;
  if (circles + lines == 0) throw SceneError(at, "manifold has dimension 0");
  names = labels_of(spec, at, circles + lines, stem);
  try {
    return ModelManifold::make(circles, lines).with_labels(names);
  } catch (const Error& e) {
    throw SceneError(at, e.what());
  }
}

}  // namespace

Materialized materialize(const Scene& scene) {
  const json& doc = scene.doc;
  Materialized m;
  std::vector<std::string> qnames;
  std::optional<ParametricEmbedding> first_library;

  const json empty = json::array();
  const json& embs = doc.contains("embeddings") ? doc["embeddings"] : empty;
  if (!embs.is_array()) throw SceneError("/embeddings", "expected an array");
  for (std::size_t i = 0; i < embs.size() && !first_library; ++i) {
    if (embs[i].is_object() && embs[i].contains("library")) {
      first_library = library_embedding(need_string(embs[i]["library"], ptr(ptr("/embeddings", i), "library")),
                                        ptr(ptr("/embeddings", i), "library"));
    }
  }

  if (doc.contains("manifold")) {
    m.base = manifold_of(doc["manifold"], "/manifold", qnames, "q");
    if (first_library && first_library->target.base.dim() != m.base.dim()) {
      throw SceneError("/manifold", "dimension differs from the library embedding's base");
    }
    if (doc.contains("beta")) {
      const json& b = doc["beta"];
      if (!b.is_array() || static_cast<int>(b.size()) != m.base.dim()) {
        throw SceneError("/beta", "expected one coefficient per base coordinate");
      }
      m.base_beta = Form::zero(m.base, 1);
      for (int i = 0; i < m.base.dim(); ++i) {
        m.base_beta = m.base_beta + expression(b[i], ptr("/beta", i), m.base, qnames) * Form::dx(m.base, i);
      }
      m.structure = make_cotangent_structure(m.base, m.base_beta);
    } else if (first_library) {
      m.structure = first_library->target;
      m.base_beta = m.structure.base_beta;
    } else {
      m.structure = make_cotangent_structure(m.base);
      m.base_beta = m.structure.base_beta;
    }
  } else {
    if (!first_library) throw SceneError("/manifold", "required unless a library embedding is given");
    if (doc.contains("beta")) throw SceneError("/beta", "needs \"manifold\"");
    m.structure = first_library->target;
    m.base = m.structure.base;
    m.base_beta = m.structure.base_beta;
    for (int i = 0; i < m.base.dim(); ++i) qnames.push_back("q" + std::to_string(i + 1));
  }
  const int n = m.base.dim();
  std::vector<std::string> tnames = qnames;
  for (int i = 0; i < n; ++i) tnames.push_back("p" + std::to_string(i + 1));

  for (std::size_t i = 0; i < embs.size(); ++i) {
    const std::string at = ptr("/embeddings", i);
    const json& spec = embs[i];
    if (!spec.is_object()) throw SceneError(at, "expected an object");
    SceneEmbedding se;
    if (spec.contains("library")) {
      se.e = library_embedding(need_string(spec["library"], ptr(at, "library")), ptr(at, "library"));
      se.name = se.e.name;
    } else if (spec.contains("beta_graph")) {
      se.e = beta_graph(expression(spec["beta_graph"], ptr(at, "beta_graph"), m.base, qnames), m.structure);
      se.name = "beta-graph";
    } else if (spec.contains("zero_section")) {
      se.e = zero_section(m.structure);
      se.name = "zero-section";
    } else if (spec.contains("parameters")) {
      std::vector<std::string> unames;
      const ModelManifold src = manifold_of(spec["parameters"], ptr(at, "parameters"), unames, "u");
      const json& mp = need(spec, "map", at);
      if (!mp.is_array() || static_cast<int>(mp.size()) != 2 * n) {
        throw SceneError(ptr(at, "map"), "expected " + std::to_string(2 * n) + " component expressions");
      }
      std::vector<ScalarField> comps;
      for (std::size_t c = 0; c < mp.size(); ++c) comps.push_back(expression(mp[c], ptr(ptr(at, "map"), c), src, unames));
      std::optional<ScalarField> prim;
      if (spec.contains("primitive")) prim = expression(spec["primitive"], ptr(at, "primitive"), src, unames);
      try {
        se.e = make_embedding("explicit", m.structure, SmoothMap::from_fields(src, m.structure.total, comps), prim);
      } catch (const DimensionError& e) {
        throw SceneError(at, e.what());
      }
      se.name = "explicit";
    } else {
      throw SceneError(at, "expected one of library, beta_graph, zero_section, parameters");
    }
    if (se.e.target.base.dim() != n) throw SceneError(at, "base dimension differs from the scene's");
    if (spec.contains("name")) se.name = need_string(spec["name"], ptr(at, "name"));
    if (spec.contains("translate")) {
      const double c = need_number(spec["translate"], ptr(at, "translate"));
      se.e = translate_by_form(se.e, se.e.target.base_beta, c);
    }
    if (spec.contains("expected_degree")) {
      if (!spec["expected_degree"].is_number_integer()) throw SceneError(ptr(at, "expected_degree"), "expected an integer");
      se.expected_degree = spec["expected_degree"].get<int>();
    }
    m.embeddings.push_back(std::move(se));
  }

  if (doc.contains("h")) m.h = expression(doc["h"], "/h", m.structure.total, tnames);
  if (doc.contains("g")) {
    const json& g = doc["g"];
    if (g.is_object()) {
      const json& cb = need(g, "constant_ball", "/g");
      const double c = need_number(need(cb, "c", "/g/constant_ball"), "/g/constant_ball/c");
      const double r1 = need_number(need(cb, "r1", "/g/constant_ball"), "/g/constant_ball/r1");
      const double r2 = need_number(need(cb, "r2", "/g/constant_ball"), "/g/constant_ball/r2");
      if (!(c > 0 && r1 > 0 && r2 > r1)) throw SceneError("/g/constant_ball", "need c > 0 and 0 < r1 < r2");
      m.g = constant_ball_factor(m.structure.total, c, r1, r2);
      m.g_radius = r2;
    } else {
      m.g = expression(g, "/g", m.structure.total, tnames);
    }
  }
  if (doc.contains("eta_prime")) {
    const json& b = doc["eta_prime"];
    if (!b.is_array() || static_cast<int>(b.size()) != n) {
      throw SceneError("/eta_prime", "expected one coefficient per base coordinate");
    }
    Form eta = Form::zero(m.base, 1);
    for (int i = 0; i < n; ++i) eta = eta + expression(b[i], ptr("/eta_prime", i), m.base, qnames) * Form::dx(m.base, i);
    validate_closed(eta);
    m.eta_prime = eta;
  }
  if (doc.contains("g_radius")) m.g_radius = need_number(doc["g_radius"], "/g_radius");
  if (doc.contains("legendrians")) {
    const json& l = doc["legendrians"];
    if (!l.is_array()) throw SceneError("/legendrians", "expected an array of expressions");
    for (std::size_t i = 0; i < l.size(); ++i) m.legendrians.push_back(expression(l[i], ptr("/legendrians", i), m.base, qnames));
  }
  return m;
}

}  // namespace lcs::cli
