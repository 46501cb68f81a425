#pragma once

#include <string>

#include <json.hpp>

#include "rmtlab/approxev.hpp"
#include "rmtlab/estimator.hpp"
#include "rmtlab/mc.hpp"
#include "rmtlab/nets.hpp"

namespace rmtlab {

// Round to 12 significant digits; all emitted numerics go through this so
// golden-file output stays stable.
double round12(double x);

nlohmann::ordered_json net_to_json(const EpsilonNet& net);
nlohmann::ordered_json approx_ev_to_json(const ApproxEvReport& report);
nlohmann::ordered_json spike_estimate_to_json(const SpikeEstimate& estimate);
nlohmann::ordered_json tail_report_to_json(const TailReport& report);
std::string tail_report_to_csv(const TailReport& report);
nlohmann::ordered_json sweep_report_to_json(const SweepReport& report);
std::string sweep_report_to_csv(const SweepReport& report);

nlohmann::ordered_json ensemble_spec_to_json(const EnsembleSpec& spec);
EnsembleSpec ensemble_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const nlohmann::json& j);

}  // namespace rmtlab
