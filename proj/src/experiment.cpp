#include "blackwell/experiment.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

namespace blackwell {
namespace {

using nlohmann::json;

Vector to_vector(const json& j) {
  if (!j.is_array()) throw InputError("spec: expected a numeric array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError("spec: expected a numeric array");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

AdversaryKind parse_adversary_kind(const std::string& s) {
  if (s == "FIXED_SEQUENCE") return AdversaryKind::FIXED_SEQUENCE;
  if (s == "RANDOM_VERTEX") return AdversaryKind::RANDOM_VERTEX;
  if (s == "BEST_RESPONSE") return AdversaryKind::BEST_RESPONSE;
  throw InputError("spec: unknown adversary kind '" + s + "'");
}

Scenario parse_scenario(const std::string& s) {
  if (s == "X_ONLY") return Scenario::X_ONLY;
  if (s == "Y_ONLY") return Scenario::Y_ONLY;
  if (s == "BOTH") return Scenario::BOTH;
  throw InputError("spec: unknown scenario mode '" + s + "'");
}

ApproxOracle synthesize_min_oracle(std::shared_ptr<const ConvexSetHandle> set, double alpha) {
  if (alpha == 1.0) return exact_oracle(std::move(set), OracleMode::Minimizing);
  return sloppy_vertex_oracle(std::move(set), alpha);
}

ApproxOracle synthesize_max_oracle(std::shared_ptr<const ConvexSetHandle> set, double alpha) {
  if (alpha == 1.0) return exact_oracle(std::move(set), OracleMode::Maximizing);
  return scaled_midpoint_oracle(std::move(set), alpha);
}

}  // namespace

AdversaryFn make_adversary(const AdversarySpec& spec, const BlackwellInstance& inst) {
  const auto y_set = inst.y_set;
  switch (spec.kind) {
    case AdversaryKind::FIXED_SEQUENCE: {
      if (spec.sequence.empty()) throw InputError("adversary: empty fixed sequence");
      for (const auto& y : spec.sequence)
        if (y.size() != y_set->dim() || !y_set->contains(y, 1e-9))
          throw InputError("adversary: fixed-sequence point leaves Y");
      auto seq = spec.sequence;
      return [seq, y_set](long long t, const Vector&) {
        return seq[static_cast<size_t>((t - 1) % static_cast<long long>(seq.size()))];
      };
    }
    case AdversaryKind::RANDOM_VERTEX: {
      const auto& verts = y_set->vertices();  // throws for ball realizations
      auto rng = std::make_shared<std::mt19937_64>(spec.seed);
      const size_t count = verts.size();
      auto verts_copy = verts;
      return [rng, verts_copy, count](long long, const Vector&) {
        std::uniform_int_distribution<size_t> pick(0, count - 1);
        return verts_copy[pick(*rng)];
      };
    }
    case AdversaryKind::BEST_RESPONSE: {
      Vector theta = spec.theta ? *spec.theta
                                : Vector(Vector::Ones(inst.loss.d()) /
                                         std::sqrt(static_cast<double>(inst.loss.d())));
      if (theta.size() != inst.loss.d())
        throw InputError("adversary: theta dimension mismatch");
      const Matrix a_theta = weighted_matrix(inst.loss, theta);
      return [a_theta, y_set](long long, const Vector& s_t) {
        return y_set->support(Vector(a_theta.transpose() * s_t)).point;
      };
    }
  }
  throw InternalError("adversary: unhandled kind");
}

std::shared_ptr<const ConvexSetHandle> parse_set(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("spec: set needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box")
    return std::make_shared<const ConvexSetHandle>(
        ConvexSetHandle::box(to_vector(j.at("lo")), to_vector(j.at("hi"))));
  if (kind == "simplex")
    return std::make_shared<const ConvexSetHandle>(
        ConvexSetHandle::simplex(j.at("dim").get<int>()));
  if (kind == "vpolytope") {
    std::vector<Vector> verts;
    for (const auto& row : j.at("vertices")) verts.push_back(to_vector(row));
    return std::make_shared<const ConvexSetHandle>(ConvexSetHandle::vpolytope(std::move(verts)));
  }
  if (kind == "ball_pos")
    return std::make_shared<const ConvexSetHandle>(
        ConvexSetHandle::ball_pos(j.at("dim").get<int>(), j.at("radius").get<double>()));
  if (kind == "singleton")
    return std::make_shared<const ConvexSetHandle>(
        ConvexSetHandle::singleton(to_vector(j.at("point"))));
  throw InputError("spec: unknown set kind '" + kind + "'");
}

BuiltInstance build_from_spec(const json& desc, const ScenarioConfig& cfg) {
  if (!desc.is_object() || !desc.contains("kind"))
    throw InputError("spec: instance needs a kind");
  const std::string kind = desc.at("kind").get<std::string>();
  const json params = desc.value("parameters", json::object());

  BuiltInstance built;
  if (kind == "vertex_cover") {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : params.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    int num_vertices = 0;
    for (const auto& [u, v] : edges) num_vertices = std::max({num_vertices, u + 1, v + 1});
    num_vertices = params.value("num_vertices", num_vertices);
    const Graph g = make_graph(num_vertices, std::move(edges));
    std::vector<int> side_one = params.at("side_one").get<std::vector<int>>();
    std::vector<int> side_two = params.at("side_two").get<std::vector<int>>();
    const double weight_bound = params.value("weight_bound", 1.0);
    std::shared_ptr<const ConvexSetHandle> target;
    if (params.contains("target")) target = parse_set(params.at("target"));
    const std::string repr = params.value("representation", std::string("hull"));
    VertexCoverGame game;
    if (repr == "hull")
      game = build_vertex_cover_game(g, side_one, side_two, weight_bound, target);
    else if (repr == "mixture")
      game = build_vertex_cover_game_mixture(g, side_one, side_two, weight_bound, target);
    else
      throw InputError("spec: unknown vertex cover representation '" + repr + "'");

    built.instance = game.instance;
    if (cfg.scenario != Scenario::Y_ONLY) {
      if (!game.mixture && cfg.alpha_x == 2.0)
        built.oracle_x = make_cover_oracle(game);
      else
        built.oracle_x = synthesize_min_oracle(game.instance.x_set, cfg.alpha_x);
    }
    if (cfg.scenario != Scenario::X_ONLY)
      built.oracle_y = synthesize_max_oracle(game.instance.y_set, cfg.alpha_y);
    return built;
  }
  if (kind == "negative") {
    if (cfg.scenario != Scenario::X_ONLY)
      throw InputError("spec: the negative instance is an X_ONLY construction");
    const double alpha = params.value("alpha_x", cfg.alpha_x);
    if (alpha != cfg.alpha_x)
      throw InputError("spec: negative instance alpha_x disagrees with the scenario");
    NegativeInstance ni = build_negative_instance(alpha);
    built.oracle_x = make_negative_oracle(ni);
    built.instance = std::move(ni.instance);
    return built;
  }
  if (kind == "custom") {
    auto x_set = parse_set(params.at("x"));
    auto y_set = parse_set(params.at("y"));
    auto s_set = parse_set(params.at("s"));
    std::vector<Matrix> mats;
    for (const auto& m : params.at("loss")) {
      if (!m.is_array() || m.empty()) throw InputError("spec: bad loss matrix");
      Matrix mat(m.size(), m.at(0).size());
      for (size_t r = 0; r < m.size(); ++r) {
        const Vector row = to_vector(m.at(r));
        if (row.size() != mat.cols()) throw InputError("spec: ragged loss matrix");
        mat.row(static_cast<int>(r)) = row.transpose();
      }
      mats.push_back(std::move(mat));
    }
    built.instance = make_instance(x_set, y_set, s_set, make_bilinear_loss(std::move(mats)));
    if (cfg.scenario != Scenario::Y_ONLY)
      built.oracle_x = synthesize_min_oracle(x_set, cfg.alpha_x);
    if (cfg.scenario != Scenario::X_ONLY)
      built.oracle_y = synthesize_max_oracle(y_set, cfg.alpha_y);
    return built;
  }
  throw InputError("spec: unknown instance kind '" + kind + "'");
}

ExperimentSpec parse_experiment_spec(const json& j) {
  if (!j.is_object()) throw InputError("spec: top level must be an object");
  ExperimentSpec spec;
  spec.run_id = j.value("run_id", std::string("run"));
  if (spec.run_id.empty() ||
      spec.run_id.find_first_not_of(
          "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
          std::string::npos)
    throw InputError("spec: run_id must be a nonempty [A-Za-z0-9_-] token");
  if (!j.contains("instance")) throw InputError("spec: missing instance");
  spec.instance = j.at("instance");

  const json sc = j.value("scenario", json::object());
  spec.scenario.scenario = parse_scenario(sc.value("mode", std::string("X_ONLY")));
  spec.scenario.alpha_x = sc.value("alpha_x", 1.0);
  spec.scenario.alpha_y = sc.value("alpha_y", 1.0);

  const json adv = j.value("adversary", json::object());
  spec.adversary.kind =
      parse_adversary_kind(adv.value("kind", std::string("BEST_RESPONSE")));
  const json ap = adv.value("parameters", json::object());
  if (ap.contains("sequence"))
    for (const auto& row : ap.at("sequence")) spec.adversary.sequence.push_back(to_vector(row));
  if (ap.contains("theta")) spec.adversary.theta = to_vector(ap.at("theta"));
  spec.adversary.seed = ap.value("seed", 0u);

  if (!j.contains("horizons") || !j.at("horizons").is_array())
    throw InputError("spec: missing horizons array");
  for (const auto& h : j.at("horizons")) {
    const long long t = h.get<long long>();
    if (t < 1) throw InputError("spec: horizons must be positive");
    spec.horizons.push_back(t);
  }
  spec.seed = j.value("seed", 0u);
  spec.stride = j.value("stride", 1ll);
  if (spec.stride < 1) throw InputError("spec: stride must be positive");
  spec.out_dir = j.value("out_dir", std::string("out"));
  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("spec: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("spec: invalid JSON: ") + e.what());
  }
  return parse_experiment_spec(j);
}

bool budget_satisfied(const ScenarioConfig& cfg, const Transcript& tr) {
  // The transcript knows the horizon it was produced with; the caller's config
  // may carry a default there (e.g. a spec whose horizons live in a list).
  const long long expected = tr.horizon * tr.constants.n_inner;
  switch (cfg.scenario) {
    case Scenario::X_ONLY:
      return tr.calls_x == expected && tr.calls_y == 0;
    case Scenario::Y_ONLY:
      return tr.calls_y == expected && tr.calls_x == 0;
    case Scenario::BOTH: {
      const long long per_call =
          fw_iteration_bound(cfg.alpha_x, tr.constants.r_x, tr.constants.xi);
      return tr.calls_y == expected && tr.calls_x <= expected * per_call;
    }
  }
  return false;
}

nlohmann::json summary_json(const std::string& run_id, const RunSummary& run) {
  const Transcript& tr = run.transcript;
  const GameConstants& c = tr.constants;
  json constants{{"loss_norm", c.loss_norm},
                 {"r_x", c.r_x},
                 {"r_y", c.r_y},
                 {"d_x", c.d_x},
                 {"d_y", c.d_y},
                 {"r_s", c.r_s},
                 {"r_tilde", c.r_tilde},
                 {"g_inner_x", c.g_inner_x},
                 {"g_inner_y", c.g_inner_y},
                 {"g_meta", c.g_meta},
                 {"n_inner", c.n_inner},
                 {"eta_ball", c.eta_ball},
                 {"eta_inner", c.eta_inner},
                 {"mu", c.mu},
                 {"xi", c.xi},
                 {"eps", c.eps},
                 {"r_sp", c.r_sp},
                 {"target_scale", c.target_scale},
                 {"target_shift", c.target_shift}};
  return json{{"run_id", run_id},
              {"T", run.horizon},
              {"final_distances",
               {{"d_infeasible", tr.final_d_infeasible},
                {"d_feasible_downward", tr.final_d_feasible_down}}},
              {"certified_bounds",
               {{"value", c.rate_bound},
                {"satisfied", run.bounds_ok}}},
              {"oracle_calls", {{"x", tr.calls_x}, {"y", tr.calls_y}}},
              {"constants", constants}};
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  ExperimentResult result;
  if (spec.horizons.empty()) return result;  // nothing to do, success
  fs::create_directories(spec.out_dir);

  json index{{"run_id", spec.run_id}, {"runs", json::array()}};
  for (const long long horizon : spec.horizons) {
    ScenarioConfig cfg = spec.scenario;
    cfg.horizon = horizon;
    BuiltInstance built = build_from_spec(spec.instance, cfg);

    AdversarySpec adv = spec.adversary;
    if (adv.kind == AdversaryKind::RANDOM_VERTEX && spec.seed != 0) adv.seed = spec.seed;
    const AdversaryFn adversary = make_adversary(adv, built.instance);

    RunSummary run;
    run.horizon = horizon;
    run.transcript = run_approachability(
        built.instance, cfg, adversary,
        built.oracle_x ? &*built.oracle_x : nullptr,
        built.oracle_y ? &*built.oracle_y : nullptr, spec.stride);
    run.budget_ok = budget_satisfied(cfg, run.transcript);
    run.bounds_ok = run.budget_ok && run.transcript.domination_ok &&
                    run.transcript.rate_bound_ok && run.transcript.infeasible_bound_ok;

    const std::string base = spec.run_id + "_T" + std::to_string(horizon);
    run.csv_path = (fs::path(spec.out_dir) / (base + ".csv")).string();
    run.summary_path = (fs::path(spec.out_dir) / (base + ".json")).string();

    std::ofstream csv(run.csv_path);
    if (!csv) throw InputError("cannot write '" + run.csv_path + "'");
    csv << "run_id,T,t,d_infeasible,d_feasible_downward,calls_x,calls_y,wall_ms\n";
    for (const auto& row : run.transcript.rows)
      csv << spec.run_id << ',' << horizon << ',' << row.t << ','
          << fmt_double(row.d_infeasible) << ',' << fmt_double(row.d_feasible_down) << ','
          << row.calls_x << ',' << row.calls_y << ',' << fmt_double(row.wall_ms) << '\n';
    csv.close();

    std::ofstream js(run.summary_path);
    if (!js) throw InputError("cannot write '" + run.summary_path + "'");
    js << summary_json(spec.run_id, run).dump(2) << '\n';
    js.close();

    index["runs"].push_back(json{{"T", horizon},
                                 {"csv", run.csv_path},
                                 {"summary", run.summary_path},
                                 {"bounds_ok", run.bounds_ok}});
    if (!run.bounds_ok) result.exit_code = 2;
    result.runs.push_back(std::move(run));
  }

  result.index_path =
      (fs::path(spec.out_dir) / (spec.run_id + "_index.json")).string();
  std::ofstream idx(result.index_path);
  if (!idx) throw InputError("cannot write '" + result.index_path + "'");
  idx << index.dump(2) << '\n';
  return result;
}

}  // namespace blackwell
