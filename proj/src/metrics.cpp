#include "copjm/metrics.hpp"

#include <cmath>
#include <vector>

#include "copjm/predict.hpp"

namespace copjm {

SurvivalPredictor model_predictor(const FittedModel& fitted) {
  return [&fitted](const SubjectData& subject, double t, double u) {
    PredictionRequest req;
    req.history = history_at(subject, t);
    req.landmark = t;
    req.horizon = u;
    return predict_survival(req, fitted);
  };
}

namespace {

struct RiskEntry {
  double score = 0.0;       // pi_hat(u | t)
  double case_weight = 0.0; // probability the subject is a (t,u] case
  double ctrl_weight = 0.0; // probability the subject survives past u
  bool event_in_window = false;
};

std::vector<RiskEntry> build_risk_set(const Dataset& dataset,
                                      const SurvivalPredictor& predict, double t,
                                      double u) {
  std::vector<RiskEntry> entries;
  for (const auto& subject : dataset.subjects) {
    if (!(subject.event_time > t)) continue;
    RiskEntry e;
    e.score = predict(subject, t, u);
    if (subject.event_time > u) {
      e.ctrl_weight = 1.0; // known alive at u
    } else if (subject.event) {
      e.case_weight = 1.0;
      e.event_in_window = true;
    } else {
      // Censored inside (t,u]: split by the model's own survival forecast
      // from the censoring time.
      double pi_cu = predict(subject, subject.event_time, u);
      e.case_weight = 1.0 - pi_cu;
      e.ctrl_weight = pi_cu;
    }
    entries.push_back(e);
  }
  return entries;
}

} // namespace

MetricResult auc(const Dataset& dataset, const SurvivalPredictor& predict, double t,
                 double dt) {
  const double u = t + dt;
  auto entries = build_risk_set(dataset, predict, t, u);
  MetricResult result;
  result.n_at_risk = static_cast<int>(entries.size());
  for (const auto& e : entries) result.n_events += e.event_in_window ? 1 : 0;
  double num = 0.0, den = 0.0;
  const int n = static_cast<int>(entries.size());
  for (int i = 0; i < n; ++i) {
    if (entries[i].case_weight == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || entries[j].ctrl_weight == 0.0) continue;
      double w = entries[i].case_weight * entries[j].ctrl_weight;
      den += w;
      if (entries[i].score < entries[j].score) num += w;
      else if (entries[i].score == entries[j].score) num += 0.5 * w;
    }
  }
  if (den > 0.0) result.value = num / den;
  return result;
}

MetricResult prediction_error(const Dataset& dataset, const SurvivalPredictor& predict,
                              double t, double dt) {
  const double u = t + dt;
  auto entries = build_risk_set(dataset, predict, t, u);
  MetricResult result;
  result.n_at_risk = static_cast<int>(entries.size());
  if (entries.empty()) return result;
  double total = 0.0;
  for (const auto& e : entries) {
    result.n_events += e.event_in_window ? 1 : 0;
    double sq_alive = (1.0 - e.score) * (1.0 - e.score);
    double sq_dead = e.score * e.score;
    total += e.ctrl_weight * sq_alive + e.case_weight * sq_dead;
  }
  result.value = total / entries.size();
  return result;
}

} // namespace copjm
