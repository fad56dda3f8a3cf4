#pragma once

#include <functional>
#include <optional>

#include "copjm/data.hpp"
#include "copjm/fit.hpp"

namespace copjm {

// pi_hat(u | t) for a subject, from its history truncated at t. Metrics take
// this as a functional so leave-one-out evaluation can swap in per-subject
// refits.
using SurvivalPredictor =
    std::function<double(const SubjectData& subject, double t, double u)>;

SurvivalPredictor model_predictor(const FittedModel& fitted);

struct MetricResult {
  std::optional<double> value;
  int n_at_risk = 0;
  int n_events = 0; // events in (t, u]
};

// Discrimination: P{pi_{i2} > pi_{i1} | i1 case, i2 control} over subjects at
// risk at t. Subjects censored inside (t,u] enter both roles weighted by the
// model-based probability 1 - pi(u|c) / pi(u|c); ties count one half.
MetricResult auc(const Dataset& dataset, const SurvivalPredictor& predict, double t,
                 double dt);

// Calibration (Brier): mean over the risk set of the squared distance between
// the survival indicator and pi_hat, with censored-in-window subjects replaced
// by their model-weighted mixture.
MetricResult prediction_error(const Dataset& dataset, const SurvivalPredictor& predict,
                              double t, double dt);

} // namespace copjm
