#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcs/error.hpp"
#include "lcs/lagrangian.hpp"

namespace lcs::cli {

/// Schema violation; `pointer` is a JSON pointer into the scene file.
class SceneError : public Error {
 public:
  SceneError(const std::string& pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Tunable numbers with their defaults. Scene "tolerances" and "grids" and
/// --tol-override all write into this table; unknown keys are rejected.
const std::map<std::string, double>& default_settings();

/// A parsed but not yet evaluated scene.
struct Scene {
  nlohmann::json doc;
  std::string path;
  std::string name;
  std::string pipeline;
  std::string digest;
  std::map<std::string, double> settings;
};

Scene parse_scene(const nlohmann::json& doc, const std::string& path = "");
Scene load_scene(const std::string& path);
/// Applies KEY=VAL overrides; throws SceneError for unknown keys.
void apply_overrides(Scene& scene, const std::map<std::string, double>& overrides);

struct SceneEmbedding {
  std::string name;
  ParametricEmbedding e;
  std::optional<int> expected_degree;
};

/// Everything the numeric pipelines need. Expression problems surface as
/// SceneError; failed numeric validation (a Lee form that is not closed, ...)
/// as the library's own errors.
struct Materialized {
  ModelManifold base;
  Form base_beta;
  CotangentLcsStructure structure;
  std::vector<SceneEmbedding> embeddings;
  std::optional<ScalarField> h;
  std::optional<ScalarField> g;
  double g_radius = 4.0;
  std::vector<ScalarField> legendrians;
  std::optional<Form> eta_prime;
};
Materialized materialize(const Scene& scene);

/// 64-bit FNV-1a, hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace lcs::cli
