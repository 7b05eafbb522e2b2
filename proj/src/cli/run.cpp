#include "lcs/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "lcs/chords.hpp"
#include "lcs/cli/scene.hpp"
#include "lcs/error.hpp"
#include "lcs/extension.hpp"
#include "lcs/moser.hpp"
#include "lcs/parallel.hpp"
#include "lcs/sampling.hpp"

namespace lcs::cli {

using nlohmann::json;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"validate-structure", "verify-lagrangian", "scan-chords",
                                             "mvt-report",         "build-extension",   "moser-deform",
                                             "lift-legendrian",    "projection-degree", "full-pipeline"};
  return s;
}

std::string default_out_dir() {
  const char* env = std::getenv("LCSLAB_OUT");
  return env && *env ? env : "lcslab-out";
}

std::pair<std::string, double> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected KEY=VAL, got \"" + text + "\"");
  const std::string val = text.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(val, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != val.size()) throw std::invalid_argument("value of " + text.substr(0, eq) + " is not a number");
  return {text.substr(0, eq), v};
}

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Non-finite numbers become strings so reports stay valid JSON.
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

struct Ctx {
  const Scene& scene;
  Materialized& m;
  std::uint64_t seed;
  json results = json::object();
  json verdicts = json::array();
  std::vector<Artifact> artifacts;

  Ctx(const Scene& s, Materialized& mm, std::uint64_t sd) : scene(s), m(mm), seed(sd) {}

  double set(const std::string& k) const { return scene.settings.at(k); }
  int iset(const std::string& k) const { return static_cast<int>(std::lround(scene.settings.at(k))); }

  void verdict(const std::string& name, bool pass, double value, double threshold, const std::string& relation,
               const std::string& detail = "") {
    json v = {{"name", name}, {"pass", pass}, {"value", num(value)}, {"threshold", num(threshold)},
              {"relation", relation}};
    if (!detail.empty()) v["detail"] = detail;
    verdicts.push_back(v);
  }
  void artifact(const std::string& stem, const std::string& content) {
    artifacts.push_back({scene.name + "." + stem, content});
  }
  const SceneEmbedding& embedding(std::size_t i, const std::string& who) const {
    if (m.embeddings.size() <= i) {
      throw SceneError("/embeddings", who + " needs at least " + std::to_string(i + 1) + " embedding(s)");
    }
    return m.embeddings[i];
  }
  ChordOptions chord_options() const {
    ChordOptions o;
    o.grid = iset("chord_grid");
    o.classify_tol = set("classify_tol");
    return o;
  }
  PrimitiveOptions primitive_options() const {
    PrimitiveOptions o;
    o.steps_per_loop = iset("primitive_steps");
    o.nodes_per_axis = iset("primitive_nodes");
    o.tol = set("primitive_tol");
    return o;
  }
  ExactnessCertificate certificate(const ParametricEmbedding& e) const {
    return solve_primitive(e, Point::Zero(e.source.dim()), primitive_options());
  }
  std::vector<Point> samples(const ModelManifold& mf, int count) const {
    SampleOptions so;
    so.count = count;
    so.seed = seed;
    return halton_points(mf, so);
  }
};

json certificate_json(const ExactnessCertificate& c) {
  json j = {{"residual_sup", num(c.residual_sup)},
            {"path_discrepancy", num(c.path_discrepancy)},
            {"unique_primitive", c.unique_primitive},
            {"valid", c.valid},
            {"beta_periods", c.beta_periods},
            {"multiplicative_holonomy", c.multiplicative_holonomy},
            {"holonomy_defects", c.holonomy_defects}};
  if (c.has_declared) j["declared_residual"] = num(c.declared_residual);
  return j;
}

void validate_structure(Ctx& c) {
  const auto& s = c.m.structure;
  const auto base_pts = c.samples(s.base, c.iset("samples"));
  double closed = 0.0;
  const Form dbeta = d(s.base_beta);
  for (const auto& q : base_pts) closed = std::max(closed, dbeta.eval(q).max_abs());
  c.results["beta_closedness"] = num(closed);
  c.verdict("beta_closed", closed <= c.set("closedness_tol"), closed, c.set("closedness_tol"), "<=");

  const auto pts = c.samples(s.total, c.iset("samples"));
  const auto nd = check_nondegenerate(s.omega, pts, c.set("nondegeneracy_tol"));
  c.results["omega_min_abs_det"] = num(nd.min_abs_det);
  c.verdict("omega_nondegenerate", nd.nondegenerate, nd.min_abs_det, nd.tol, ">");

  const Form dd = lichnerowicz_d(lichnerowicz_d(s.lambda, s.beta), s.beta);
  double nil = 0.0;
  for (const auto& x : pts) nil = std::max(nil, dd.eval(x).max_abs());
  c.results["d_beta_squared_lambda"] = num(nil);
  c.verdict("d_beta_nilpotent", nil <= c.set("nilpotence_tol"), nil, c.set("nilpotence_tol"), "<=");
}

void verify_lagrangian_cmd(Ctx& c) {
  if (c.m.embeddings.empty()) throw SceneError("/embeddings", "verify-lagrangian needs at least 1 embedding(s)");
  json out = json::array();
  for (const auto& se : c.m.embeddings) {
    const auto grid = parameter_grid(se.e.source, c.iset("parameter_grid"));
    const auto lag = verify_lagrangian(se.e, grid, c.set("lagrangian_tol"));
    const auto cert = c.certificate(se.e);
    out.push_back({{"name", se.name},
                   {"residual_sup", num(lag.residual_sup)},
                   {"min_singular", num(lag.min_singular)},
                   {"certificate", certificate_json(cert)}});
    c.verdict(se.name + ".lagrangian", lag.residual_sup <= c.set("lagrangian_tol"), lag.residual_sup,
              c.set("lagrangian_tol"), "<=");
    c.verdict(se.name + ".immersion", lag.immersion_ok, lag.min_singular, 1e-8, ">");
    c.verdict(se.name + ".exact", cert.valid, cert.residual_sup, cert.tol, "<=");
  }
  c.results["embeddings"] = out;
}

json scan_json(const ChordScan& s) {
  json reps = json::array();
  for (int r : s.representatives) {
    const auto& ch = s.chords[r];
    json j = {{"base", vec_json(ch.base)}, {"t", num(ch.t)}, {"defect", num(ch.defect)},
              {"essential", ch.essential}, {"family", ch.family}};
    if (ch.mvt_ratio) j["mvt_ratio"] = num(*ch.mvt_ratio);
    reps.push_back(j);
  }
  return {{"chords", s.chords.size()},     {"families", s.family_count},
          {"representatives", reps},      {"seeds", s.seeds},
          {"unresolved", s.unresolved.size()}, {"link_radius", num(s.link_radius)}};
}

void mvt_cmd(Ctx& c, bool csv_all) {
  const auto& se = c.embedding(0, "mvt");
  const auto cert = c.certificate(se.e);
  MvtOptions mo;
  mo.margin = c.set("mvt_margin");
  mo.chords = c.chord_options();
  if (c.m.embeddings.size() >= 2 && csv_all) {
    const auto& s2 = c.m.embeddings[1];
    const auto cert2 = c.certificate(s2.e);
    const ChordScan scan = scan_chords(se.e, cert, s2.e, cert2, mo.chords);
    double worst = -INFINITY;
    for (const auto& ch : scan.chords)
      if (ch.mvt_ratio) worst = std::max(worst, *ch.mvt_ratio);
    c.results["scan"] = scan_json(scan);
    c.results["max_ratio"] = num(worst);
    c.artifact("chords.csv", chords_csv(scan));
    c.verdict("mvt_unobstructed", !(worst >= 1.0 - mo.margin - mo.chords.classify_tol), worst,
              1.0 - mo.margin - mo.chords.classify_tol, "<");
    return;
  }
  const MvtReport rep = mvt_obstruction_report(se.e, cert, mo);
  c.results["scan"] = scan_json(rep.scan);
  c.results["max_ratio"] = rep.max_ratio ? num(*rep.max_ratio) : json(nullptr);
  c.results["min_primitive"] = num(rep.min_primitive);
  c.artifact("chords.csv", chords_csv(rep.scan));
  std::string detail;
  if (rep.obstructed && rep.worst >= 0) {
    const auto& ch = rep.scan.chords[rep.worst];
    detail = "ratio-" + std::to_string(*ch.mvt_ratio) + " chord, t = " + std::to_string(ch.t);
  }
  c.verdict("mvt_unobstructed", !rep.obstructed, rep.max_ratio.value_or(-INFINITY),
            1.0 - mo.margin - mo.chords.classify_tol, "<", detail);
}

ExtensionOptions extension_options(const Ctx& c) {
  ExtensionOptions o;
  o.grid.base_per_axis = c.iset("radial_base");
  o.grid.directions = c.iset("radial_directions");
  o.grid.radii = c.iset("radial_radii");
  o.grid.r_min = c.set("r_min");
  o.grid.r_max = c.set("r_max");
  o.collar_log_width = c.set("collar_log_width");
  o.zero_radius = c.set("zero_radius");
  o.blend_width = c.set("blend_width");
  o.kernel_steps = c.set("kernel_steps");
  o.margin = c.set("margin");
  o.param_per_axis = c.iset("parameter_grid");
  o.chords = c.chord_options();
  return o;
}

ExtensionResult extension_cmd(Ctx& c, const ExactnessCertificate* known = nullptr) {
  const auto& se = c.embedding(0, "build-extension");
  if (!c.m.h) throw SceneError("/h", "build-extension needs h");
  const ExactnessCertificate cert = known ? *known : c.certificate(se.e);
  ExtensionResult r = build_extension(se.e, cert, *c.m.h, extension_options(c));
  const auto& rep = r.report;
  c.results["extension"] = {{"interpolated_max_slope", num(r.interpolated_max)},
                            {"mollified_max_slope", num(r.mollified_max)},
                            {"max_slope", num(rep.max_slope)},
                            {"worst_node", vec_json(rep.worst)},
                            {"r_inner", num(r.r_inner)},
                            {"r_outer", num(r.r_outer)},
                            {"outer_max_deviation", num(rep.outer_max_deviation)},
                            {"collar_max_error", num(rep.collar_max_error)},
                            {"zero_patch_max_h", num(r.zero.max_h)},
                            {"zero_patch_c1_jump", num(r.zero.c1_jump)},
                            {"segments", r.segments.size()}};
  c.verdict("radial_bound", rep.bound_ok, rep.max_slope, 1.0, "<");
  c.verdict("outer_shell", rep.outer_ok, rep.outer_max_deviation, 0.0, "==");
  c.verdict("collar_match", rep.collar_ok, rep.collar_max_error, 1e-6, "<=");
  c.artifact("radial.csv", r.g.to_csv());
  return r;
}

void moser_cmd(Ctx& c) {
  if (!c.m.g) throw SceneError("/g", "moser-deform needs g");
  const MoserProblem P{c.m.structure, *c.m.g, c.m.g_radius};
  const auto inv = moser_invariants(P, moser_grid(P, c.iset("moser_grid")));
  c.results["invariants"] = {{"max_dlng_z", num(inv.max_dlng_z)},
                             {"max_dlninvg_z", num(inv.max_dlninvg_z)},
                             {"min_denominator", num(inv.min_denominator)},
                             {"min_abs_pfaffian", inv.min_abs_pfaffian},
                             {"pfaffian_sign_constant", inv.pfaffian_sign_constant}};
  c.verdict("denominator_positive", inv.denominator_ok, inv.min_denominator, 0.0, ">");
  c.verdict("inverse_log_bound", inv.inverse_bound_ok, inv.max_dlninvg_z, 1.0, "<");
  c.verdict("lambda_t_nondegenerate", inv.pfaffian_sign_constant, inv.min_abs_pfaffian.empty() ? 0.0 : *std::min_element(inv.min_abs_pfaffian.begin(), inv.min_abs_pfaffian.end()), 0.0, ">");
  if (!inv.denominator_ok) return;

  const int n = P.structure.base.dim();
  Vec lo(2 * n), hi(2 * n);
  for (int i = 0; i < n; ++i) {
    const bool circle = P.structure.base.kind(i) == CoordKind::Circle;
    lo(i) = circle ? 0.0 : -4.0;
    hi(i) = circle ? 2.0 * std::numbers::pi : 4.0;
    lo(n + i) = -1.25 * P.radius;
    hi(n + i) = 1.25 * P.radius;
  }
  const auto seeds = halton_box(lo, hi, c.iset("flow_seeds"), c.seed);
  FlowOptions fo;
  fo.step = c.set("flow_step");
  fo.richardson_tol = c.set("richardson_tol");
  const FlowResult fr = integrate_flow(P, seeds, fo);
  const int ns = std::min<int>(c.iset("pullback_samples"), static_cast<int>(seeds.size()));
  const auto pb = verify_conformal_pullback(P, fr, std::vector<Point>(seeds.begin(), seeds.begin() + ns));
  c.results["flow"] = {{"seeds", seeds.size()},
                       {"max_fiber_drift", num(fr.max_fiber_drift)},
                       {"max_displacement", num(fr.max_displacement)},
                       {"richardson_error", num(fr.richardson_error)},
                       {"step", num(fr.step)},
                       {"pullback_residual", num(pb.residual)},
                       {"pullback_samples", pb.samples}};
  c.verdict("fiber_drift", fr.max_fiber_drift <= c.set("drift_tol"), fr.max_fiber_drift, c.set("drift_tol"), "<=");
  c.verdict("conformal_pullback", pb.residual <= c.set("pullback_tol"), pb.residual, c.set("pullback_tol"), "<=");
  c.artifact("flow.csv", flow_csv(fr));
}

void lift_cmd(Ctx& c) {
  if (c.m.legendrians.empty()) throw SceneError("/legendrians", "lift-legendrian needs legendrians");
  std::vector<LegendrianEmbedding> comps;
  for (const auto& F : c.m.legendrians) comps.push_back(jet_graph(F));
  const ModelManifold J = c.m.base.jet1();
  const auto cl = contact_lift_check(J, c.m.base_beta, c.samples(J, c.iset("reeb_samples")), c.set("contact_tol"));
  c.results["contact_lift_difference"] = num(cl.max_difference);
  c.verdict("contact_lift_identity", cl.max_difference <= c.set("contact_tol"), cl.max_difference,
            c.set("contact_tol"), "<=");
  ReebOptions ro;
  ro.identity_samples = c.iset("reeb_samples");
  ro.chords = c.chord_options();
  const ReebReport r = reeb_correspondence(comps, ro);
  const double id = std::max(r.identities.evaluation_defect, r.identities.contraction_defect);
  json ts = json::array();
  for (const auto& ch : r.liouville) ts.push_back(num(ch.t));
  c.results["reeb"] = {{"identity_defect", num(id)},         {"reeb_chords", r.reeb.size()},
                       {"reeb_families", r.reeb_families},    {"liouville_chords", r.liouville.size()},
                       {"liouville_families", r.liouville_families},
                       {"closed_form_defect", num(r.closed_form_defect)}};
  c.verdict("reeb_identities", id <= c.set("identity_tol"), id, c.set("identity_tol"), "<=");
  c.verdict("one_to_one", r.one_to_one, r.reeb_families, r.liouville_families, "==");
  c.verdict("all_essential", r.all_essential, r.liouville.size(), 0, ">=");
  c.verdict("closed_form", r.closed_form_defect <= c.set("closed_form_tol"), r.closed_form_defect,
            c.set("closed_form_tol"), "<=");
  ChordScan as_scan;
  as_scan.chords = r.liouville;
  c.artifact("lift-chords.csv", chords_csv(as_scan));
}

void degree_cmd(Ctx& c) {
  if (c.m.embeddings.empty()) throw SceneError("/embeddings", "projection-degree needs at least 1 embedding(s)");
  json out = json::array();
  for (const auto& se : c.m.embeddings) {
    const DegreeReport d = projection_degree(se.e);
    json j = {{"name", se.name}, {"degree", d.degree}, {"regular_value", vec_json(d.regular_value)},
              {"preimages", d.preimages.size()}, {"attempts", d.attempts}};
    out.push_back(j);
    if (se.expected_degree) {
      c.verdict(se.name + ".degree", d.degree == *se.expected_degree, d.degree, *se.expected_degree, "==");
    }
  }
  c.results["degrees"] = out;
}

void full_cmd(Ctx& c) {
  const auto& se = c.embedding(0, "full-pipeline");
  if (!c.m.h) throw SceneError("/h", "full-pipeline needs h");
  const auto lag = verify_lagrangian(se.e, parameter_grid(se.e.source, c.iset("parameter_grid")), c.set("lagrangian_tol"));
  const auto cert = c.certificate(se.e);
  c.results["certificate"] = certificate_json(cert);
  c.verdict("lagrangian", lag.pass, lag.residual_sup, c.set("lagrangian_tol"), "<=");
  c.verdict("exact", cert.valid, cert.residual_sup, cert.tol, "<=");
  const ExtensionResult ext = extension_cmd(c, &cert);
  if (!ext.report.pass) return;
  StraightenOptions so;
  so.radius = c.set("r_max");
  so.flow.step = c.set("straighten_flow_step");
  so.primitive.nodes_per_axis = c.iset("straighten_nodes");
  so.primitive.steps_per_loop = c.iset("straighten_steps");
  so.closed_tol = c.set("straighten_closed_tol");
  so.holonomy_tol = c.set("holonomy_tol");
  so.mvt.chords = c.chord_options();
  so.mvt.margin = c.set("mvt_margin");
  so.auto_eta = !c.m.eta_prime;
  const StraightenResult st = straighten_lagrangian(se.e, cert, radial_field_function(ext.g), c.m.eta_prime, so);
  c.results["straighten"] = {{"closedness_residual", num(st.closedness_residual)},
                             {"holonomy", num(st.holonomy)},
                             {"radial_bound", num(st.radial_bound)},
                             {"loop_periods_before_eta", vec_json(st.loop_periods)}};
  if (st.eta_coefficients) c.results["straighten"]["eta_coefficients"] = vec_json(*st.eta_coefficients);
  c.verdict("straightened_closed", st.closedness_residual <= so.closed_tol, st.closedness_residual, so.closed_tol, "<=");
  c.verdict("straightened_holonomy", st.holonomy <= so.holonomy_tol, st.holonomy, so.holonomy_tol, "<=");
}

json base_report(const std::string& sub, const std::string& path, std::uint64_t seed) {
  return {{"schema", "report-v1"}, {"tool", "lcslab"}, {"subcommand", sub}, {"scene", {{"path", path}}},
          {"seed", seed}};
}

}  // namespace

Outcome execute(const std::string& subcommand, const std::string& scene_path, std::uint64_t seed,
                const std::map<std::string, double>& overrides) {
  Outcome out;
  std::string sub = subcommand;
  json report = base_report(sub, scene_path, seed);
  std::optional<Scene> scene;
  std::optional<Materialized> mat;
  try {
    scene = load_scene(scene_path);
    apply_overrides(*scene, overrides);
    if (sub.empty()) sub = scene->pipeline;
    report["subcommand"] = sub;
    report["scene"] = {{"path", scene_path}, {"name", scene->name}, {"digest", "fnv1a64:" + scene->digest}};
    report["settings"] = scene->settings;
    if (std::find(subcommands().begin(), subcommands().end(), sub) == subcommands().end()) {
      throw SceneError("/pipeline", "unknown subcommand \"" + sub + "\"");
    }
    mat = materialize(*scene);
  } catch (const SceneError& e) {
    report["error"] = {{"kind", "schema"}, {"pointer", e.pointer()}, {"message", e.what()}};
    report["pass"] = false;
    out.exit_code = kExitSchema;
    out.report = report;
    return out;
  } catch (const Error& e) {
    // Numeric validation while building the scene (e.g. a Lee form that is not closed).
    json v = {{"name", "scene"}, {"pass", false}, {"detail", e.what()}};
    if (auto* ve = dynamic_cast<const ValidationError*>(&e)) v["value"] = num(ve->residual());
    report["verdicts"] = json::array({v});
    report["pass"] = false;
    out.exit_code = kExitNumeric;
    out.report = report;
    return out;
  }

  Ctx c{*scene, *mat, seed};
  try {
    if (sub == "validate-structure") validate_structure(c);
    else if (sub == "verify-lagrangian") verify_lagrangian_cmd(c);
    else if (sub == "scan-chords") mvt_cmd(c, true);
    else if (sub == "mvt-report") mvt_cmd(c, false);
    else if (sub == "build-extension") extension_cmd(c);
    else if (sub == "moser-deform") moser_cmd(c);
    else if (sub == "lift-legendrian") lift_cmd(c);
    else if (sub == "projection-degree") degree_cmd(c);
    else full_cmd(c);
  } catch (const SceneError& e) {
    report["error"] = {{"kind", "schema"}, {"pointer", e.pointer()}, {"message", e.what()}};
    report["pass"] = false;
    out.exit_code = kExitSchema;
    out.report = report;
    return out;
  } catch (const Error& e) {
    json v = {{"name", sub}, {"pass", false}, {"detail", e.what()}};
    if (auto* pe = dynamic_cast<const PreconditionError*>(&e)) {
      v["value"] = num(pe->worst_value());
      v["refused"] = true;
    } else if (auto* ve = dynamic_cast<const ValidationError*>(&e)) {
      v["value"] = num(ve->residual());
    }
    c.verdicts.push_back(v);
  }
  bool pass = true;
  for (const auto& v : c.verdicts) pass = pass && v["pass"].get<bool>();
  report["results"] = c.results;
  report["verdicts"] = c.verdicts;
  json arts = json::array();
  for (const auto& a : c.artifacts) arts.push_back(a.file);
  report["artifacts"] = arts;
  report["pass"] = pass;
  out.report = report;
  out.artifacts = std::move(c.artifacts);
  out.exit_code = pass ? kExitPass : kExitNumeric;
  return out;
}

int run(const RunOptions& opt) {
  if (opt.threads > 0) set_thread_cap(opt.threads);
  Outcome o;
  try {
    o = execute(opt.subcommand, opt.scene_path, opt.seed, opt.overrides);
  } catch (const std::exception& e) {
    std::cerr << "lcslab: " << e.what() << "\n";
    return kExitError;
  }
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  o.report["timestamp"] = stamp;

  namespace fs = std::filesystem;
  const std::string out_dir = opt.out_dir.empty() ? default_out_dir() : opt.out_dir;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "lcslab: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kExitError;
  }
  const std::string name = o.report["scene"].value("name", fs::path(opt.scene_path).stem().string());
  const std::string sub = o.report["subcommand"].get<std::string>().empty() ? "run" : o.report["subcommand"].get<std::string>();
  const fs::path report_path = fs::path(out_dir) / (name + "." + sub + ".report.json");
  {
    std::ofstream f(report_path);
    f << o.report.dump(2) << "\n";
    if (!f) {
      std::cerr << "lcslab: cannot write " << report_path << "\n";
      return kExitError;
    }
  }
  for (const auto& a : o.artifacts) {
    std::ofstream f(fs::path(out_dir) / a.file);
    f << a.content;
  }
  if (!opt.quiet) {
    if (o.report.contains("error")) std::cerr << "lcslab: " << o.report["error"]["message"].get<std::string>() << "\n";
    for (const auto& v : o.report.value("verdicts", json::array())) {
      std::cout << (v["pass"].get<bool>() ? "PASS " : "FAIL ") << v["name"].get<std::string>();
      if (v.contains("value")) std::cout << "  value=" << v["value"].dump();
      if (v.contains("threshold")) std::cout << " " << v["relation"].get<std::string>() << " " << v["threshold"].dump();
      if (v.contains("detail")) std::cout << "  (" << v["detail"].get<std::string>() << ")";
      std::cout << "\n";
    }
    std::cout << "report: " << report_path.string() << "\n";
  }
  return o.exit_code;
}

}  // namespace lcs::cli
