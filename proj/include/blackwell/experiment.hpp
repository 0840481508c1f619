#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "blackwell/instances.hpp"

namespace blackwell {

enum class AdversaryKind { FIXED_SEQUENCE, RANDOM_VERTEX, BEST_RESPONSE };

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::BEST_RESPONSE;
  std::vector<Vector> sequence;   // FIXED_SEQUENCE: cycled in order
  unsigned seed = 0;              // RANDOM_VERTEX
  std::optional<Vector> theta;    // BEST_RESPONSE weighting; default: normalized all-ones
};

/// Builds the per-round responder. BEST_RESPONSE plays the y maximizing
/// <theta, loss(s_t, y)>; RANDOM_VERTEX draws uniformly from Y's vertices;
/// FIXED_SEQUENCE cycles through validated points of Y.
AdversaryFn make_adversary(const AdversarySpec& spec, const BlackwellInstance& inst);

/// A parsed experiment description: one instance + scenario + adversary,
/// executed once per horizon.
struct ExperimentSpec {
  std::string run_id = "run";
  nlohmann::json instance;  // instance description, kept verbatim
  ScenarioConfig scenario;  // horizon filled per run
  AdversarySpec adversary;
  std::vector<long long> horizons;
  unsigned seed = 0;
  long long stride = 1;
  std::string out_dir = "out";
};

ExperimentSpec parse_experiment_spec(const nlohmann::json& j);
ExperimentSpec load_experiment_spec(const std::string& path);

/// Instance plus the oracles the scenario's reachable sides need.
struct BuiltInstance {
  BlackwellInstance instance;
  std::optional<ApproxOracle> oracle_x;
  std::optional<ApproxOracle> oracle_y;
};

/// Set descriptions: {"kind": "box"|"simplex"|"vpolytope"|"ball_pos"|"singleton", ...}.
std::shared_ptr<const ConvexSetHandle> parse_set(const nlohmann::json& j);

/// Instance kinds: "vertex_cover", "negative", "custom". Synthesizes oracles
/// matching the scenario (cover oracle at alpha_x = 2, exact at ratio 1,
/// sloppy vertex oracle otherwise; scaled maximizing oracle for alpha_y < 1).
BuiltInstance build_from_spec(const nlohmann::json& instance_desc, const ScenarioConfig& cfg);

struct RunSummary {
  long long horizon = 0;
  Transcript transcript;
  bool budget_ok = true;
  bool bounds_ok = true;
  std::string csv_path, summary_path;
};

struct ExperimentResult {
  int exit_code = 0;  // 0 when every run's certified bounds and budgets hold, else 2
  std::vector<RunSummary> runs;
  std::string index_path;
};

/// Executes each horizon with fresh oracles and adversary state, writes one
/// CSV and one JSON summary per run plus an index file, and reports whether
/// all certified bounds held. All columns except wall_ms are reproducible
/// byte-for-byte for a fixed spec and seed.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Oracle-budget identities for a finished run: exact T*N on the oracle-only
/// side(s); in the BOTH scenario the x side is capped by the per-call
/// projection bound at slack xi.
bool budget_satisfied(const ScenarioConfig& cfg, const Transcript& tr);

nlohmann::json summary_json(const std::string& run_id, const RunSummary& run);

}  // namespace blackwell
