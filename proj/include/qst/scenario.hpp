#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qst/bases.hpp"
#include "qst/density_matrix.hpp"

#include <json.hpp>

namespace qst {

enum class Pipeline { linear_only, linear_mle };

// One end-to-end tomography run: prepare the state, measure, reconstruct,
// score. shots == 0 means "use exact Born probabilities, skip sampling" and
// is only meaningful for the linear pipeline.
struct ScenarioSpec {
  Eigen::Index dim;
  PhaseSchedule schedule;
  DensityMatrix state;
  std::string state_name;  // preset name, or "custom"
  std::int64_t shots;
  std::uint64_t seed;
  Pipeline pipeline;
};

// The three d = 6 presets: "uniform6" is the flat superposition of all six
// levels, "edge6" the superposition of levels 0 and 5, "mixed6" the
// maximally mixed state.
DensityMatrix preset_state(const std::string& name);

struct ScenarioReport {
  ScenarioSpec spec;
  double fidelity;
  double trace_distance;
  int iterations;
  bool converged;
  double asymmetry_norm;
};

// Module errors rethrown with the pipeline stage attached.
class ScenarioStageError : public Error {
 public:
  ScenarioStageError(std::string stage, ErrorCategory category,
                     const std::string& message)
      : Error(category, "stage " + stage + ": " + message),
        stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

ScenarioReport run_scenario(const ScenarioSpec& spec);

// Scenario JSON:
//   {"state": "uniform6" | {...density...}, "shots": int, "seed": int,
//    "pipeline": "linear-only" | "linear+mle",
//    "d": int (optional with presets), "schedule": {...} (optional)}
ScenarioSpec scenario_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const ScenarioSpec& spec);

// Report JSON: {"spec": ..., "fidelity": float, "trace_distance": float,
// "iterations": int, "converged": bool, "asymmetry_norm": float}.
void to_json(nlohmann::json& j, const ScenarioReport& report);

// --- paper-scale reproduction table ------------------------------------

struct ReproduceOptions {
  std::vector<std::int64_t> budgets = {10000, 100000, 1000000};
  int seeds_per_cell = 20;
  int bootstrap_resamples = 20;
  std::uint64_t master_seed = 7;
};

struct ReproduceCell {
  std::string state;
  std::int64_t shots;
  double median_fidelity;
  double bootstrap_std;  // spread from resampling the first trial's counts
  int trials;
  int converged_trials;
};

struct ReproduceReport {
  ReproduceOptions options;
  std::vector<ReproduceCell> cells;  // state-major, then budget
  std::string caveat;
};

// Runs the three presets through sample -> linear init -> MLE at every shot
// budget, seeds_per_cell independent trials each. All trial seeds derive
// deterministically from master_seed, so the rendered report is byte-stable.
ReproduceReport reproduce_paper(const ReproduceOptions& options = {});

void to_json(nlohmann::json& j, const ReproduceReport& report);
std::string render_text(const ReproduceReport& report);

}  // namespace qst
