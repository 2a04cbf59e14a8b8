#include "qst/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qst/bootstrap.hpp"
#include "qst/born.hpp"
#include "qst/metrics.hpp"
#include "qst/mle.hpp"
#include "qst/transfer.hpp"

namespace qst {

namespace {

// Runs one stage and tags any library error with the stage name.
template <typename Fn>
auto staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const ScenarioStageError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioStageError(stage, e.category(), e.what());
  }
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

DensityMatrix preset_state(const std::string& name) {
  const Eigen::Index d = 6;
  if (name == "mixed6")
    return validate_density(Eigen::MatrixXcd::Identity(d, d) / double(d));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  if (name == "uniform6") {
    v.setConstant(1.0 / std::sqrt(double(d)));
  } else if (name == "edge6") {
    v(0) = v(5) = 1.0 / std::sqrt(2.0);
  } else {
    throw SchemaError("unknown preset state: " + name);
  }
  return validate_density(v * v.adjoint());
}

ScenarioReport run_scenario(const ScenarioSpec& spec) {
  if (spec.shots < 0)
    throw ScenarioStageError("prepare", ErrorCategory::validation,
                             "shots must be >= 0");
  if (spec.shots == 0 && spec.pipeline == Pipeline::linear_mle)
    throw ScenarioStageError("prepare", ErrorCategory::validation,
                             "the MLE pipeline needs sampled counts; "
                             "use shots >= 1 or linear-only");
  if (spec.state.dim() != spec.dim || spec.schedule.dim != spec.dim)
    throw ScenarioStageError("prepare", ErrorCategory::validation,
                             "spec dimensions disagree");

  const BasisFamily family =
      staged("prepare", [&] { return build_basis_family(spec.schedule); });
  const ProbabilityTable exact =
      staged("born", [&] { return born_probabilities(spec.state, family); });

  std::optional<CountTable> counts;
  if (spec.shots > 0)
    counts = staged("sample",
                    [&] { return sample_counts(exact, spec.shots, spec.seed); });
  const ProbabilityTable observed =
      counts ? staged("sample", [&] { return frequencies(*counts); }) : exact;

  const TransferSystem transfer =
      staged("transfer", [&] { return build_transfer(spec.schedule); });
  const LinearEstimate linear = staged(
      "transfer", [&] { return linear_reconstruct(observed, transfer); });
  const DensityMatrix projected =
      staged("project", [&] { return project_to_physical(linear.matrix); });

  ScenarioReport report{spec, 0.0, 0.0, 0, true, linear.asymmetry_norm};
  DensityMatrix estimate = projected;
  if (spec.pipeline == Pipeline::linear_mle) {
    const MleResult fit = staged("mle", [&] {
      MleOptions options;
      options.init = projected;
      return mle_reconstruct(*counts, family, options);
    });
    estimate = fit.estimate;
    report.iterations = fit.iterations;
    report.converged = fit.converged;
  }

  report.fidelity =
      staged("score", [&] { return fidelity(estimate, spec.state); });
  report.trace_distance =
      staged("score", [&] { return trace_distance(estimate, spec.state); });
  return report;
}

ScenarioSpec scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("state") || !j.contains("shots"))
    throw SchemaError("scenario JSON needs fields state, shots");

  std::string state_name = "custom";
  std::optional<DensityMatrix> state;
  const auto& state_field = j.at("state");
  if (state_field.is_string()) {
    state_name = state_field.get<std::string>();
    state = preset_state(state_name);
  } else if (state_field.is_object()) {
    state = density_from_json(state_field);
  } else {
    throw SchemaError("scenario JSON: state must be a preset name or object");
  }

  Eigen::Index dim = state->dim();
  if (j.contains("d")) {
    Eigen::Index d = 0;
    try {
      d = j.at("d").get<Eigen::Index>();
    } catch (const nlohmann::json::exception&) {
      throw SchemaError("scenario JSON: d must be an integer");
    }
    if (d != dim)
      throw SchemaError("scenario JSON: d does not match the state dimension");
  }

  PhaseSchedule schedule = j.contains("schedule")
                               ? schedule_from_json(j.at("schedule"))
                               : default_schedule(dim);
  if (schedule.dim != dim)
    throw SchemaError("scenario JSON: schedule dimension does not match");

  std::int64_t shots = 0;
  try {
    shots = j.at("shots").get<std::int64_t>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("scenario JSON: shots must be an integer");
  }
  if (shots < 0) throw SchemaError("scenario JSON: shots must be >= 0");

  std::uint64_t seed = 0;
  if (j.contains("seed")) {
    try {
      seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception&) {
      throw SchemaError("scenario JSON: seed must be an integer");
    }
  }

  Pipeline pipeline = Pipeline::linear_mle;
  if (j.contains("pipeline")) {
    const auto name = j.at("pipeline").get<std::string>();
    if (name == "linear-only")
      pipeline = Pipeline::linear_only;
    else if (name == "linear+mle")
      pipeline = Pipeline::linear_mle;
    else
      throw SchemaError("scenario JSON: pipeline must be linear-only or "
                        "linear+mle");
  }

  return ScenarioSpec{dim,  std::move(schedule), std::move(*state),
                      state_name, shots, seed, pipeline};
}

void to_json(nlohmann::json& j, const ScenarioSpec& spec) {
  j = nlohmann::json{
      {"d", spec.dim},
      {"schedule", spec.schedule},
      {"shots", spec.shots},
      {"seed", spec.seed},
      {"pipeline",
       spec.pipeline == Pipeline::linear_only ? "linear-only" : "linear+mle"}};
  if (spec.state_name == "custom")
    to_json(j["state"], spec.state);
  else
    j["state"] = spec.state_name;
}

void to_json(nlohmann::json& j, const ScenarioReport& report) {
  j = nlohmann::json{{"spec", report.spec},
                     {"fidelity", report.fidelity},
                     {"trace_distance", report.trace_distance},
                     {"iterations", report.iterations},
                     {"converged", report.converged},
                     {"asymmetry_norm", report.asymmetry_norm}};
}

ReproduceReport reproduce_paper(const ReproduceOptions& options) {
  if (options.seeds_per_cell < 1 || options.budgets.empty())
    throw Error(ErrorCategory::validation, "reproduce: empty trial grid");

  const std::vector<std::string> states = {"uniform6", "edge6", "mixed6"};
  const PhaseSchedule schedule = default_schedule(6);
  const BasisFamily family = build_basis_family(schedule);
  const TransferSystem transfer = build_transfer(schedule);

  ReproduceReport report;
  report.options = options;
  report.caveat =
      "note: the reference hardware fidelities 0.9654/0.9698/0.9761 include "
      "device imperfections that are not modeled here; simulated medians at "
      "large shot budgets should exceed them";

  for (std::size_t si = 0; si < states.size(); ++si) {
    const DensityMatrix truth = preset_state(states[si]);
    const ProbabilityTable exact = born_probabilities(truth, family);
    for (std::size_t bi = 0; bi < options.budgets.size(); ++bi) {
      const std::int64_t shots = options.budgets[bi];
      ReproduceCell cell{states[si], shots, 0.0, 0.0,
                         options.seeds_per_cell, 0};

      std::vector<double> fidelities;
      std::optional<CountTable> first_counts;
      for (int trial = 0; trial < options.seeds_per_cell; ++trial) {
        // Fixed seed derivation; trial grids never share a stream.
        const std::uint64_t seed = options.master_seed * 1000003ULL +
                                   10007ULL * si + 101ULL * bi +
                                   static_cast<std::uint64_t>(trial);
        const CountTable counts = sample_counts(exact, shots, seed);
        if (!first_counts) first_counts = counts;

        MleOptions mle_options;
        mle_options.init = project_to_physical(
            linear_reconstruct(frequencies(counts), transfer).matrix);
        const MleResult fit = mle_reconstruct(counts, family, mle_options);
        if (fit.converged) ++cell.converged_trials;
        fidelities.push_back(fidelity(fit.estimate, truth));
      }
      cell.median_fidelity = median(std::move(fidelities));

      if (options.bootstrap_resamples >= 2) {
        const BootstrapReport boot = bootstrap_fidelity(
            *first_counts, family, truth, options.bootstrap_resamples,
            options.master_seed * 2000003ULL + 10007ULL * si + 101ULL * bi);
        cell.bootstrap_std = boot.std_dev;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void to_json(nlohmann::json& j, const ReproduceReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"state", c.state},
                     {"shots", c.shots},
                     {"median_fidelity", c.median_fidelity},
                     {"bootstrap_std", c.bootstrap_std},
                     {"trials", c.trials},
                     {"converged_trials", c.converged_trials}});
  }
  j = nlohmann::json{
      {"master_seed", report.options.master_seed},
      {"seeds_per_cell", report.options.seeds_per_cell},
      {"bootstrap_resamples", report.options.bootstrap_resamples},
      {"budgets", report.options.budgets},
      {"cells", cells},
      {"caveat", report.caveat}};
}

std::string render_text(const ReproduceReport& report) {
  std::ostringstream os;
  os << "state      shots      median_fidelity  bootstrap_std  converged\n";
  for (const auto& c : report.cells) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s %-10lld %.6f         %.6f       %d/%d\n",
                  c.state.c_str(), static_cast<long long>(c.shots),
                  c.median_fidelity, c.bootstrap_std, c.converged_trials,
                  c.trials);
    os << line;
  }
  os << report.caveat << "\n";
  return os.str();
}

}  // namespace qst
