#include "copjm/study.hpp"

#include <cmath>
#include <thread>

#include "copjm/pack.hpp"
#include "copjm/simulate.hpp"

namespace copjm {

namespace {

struct RepFit {
  bool ok = false;
  Eigen::VectorXd nat;   // natural-scale estimates
  Eigen::VectorXd se;    // natural-scale SEs (size 0 when unavailable)
  std::vector<BandPoint> band;
  bool has_band = false;
};

ModelSpec candidate_spec(const Scenario& scenario, const StudyModel& model,
                         double t_max, int baseline_pieces) {
  ModelSpec spec = scenario.generating_spec();
  spec.baseline_knots = equally_spaced_knots(t_max, baseline_pieces);
  spec.copula = model.copula;
  spec.nu = model.nu;
  return spec;
}

double truth_for(const Scenario& scenario, const std::string& name) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (name.rfind("beta1_", 0) == 0) {
    int i = std::stoi(name.substr(6));
    return i < scenario.beta1.size() ? scenario.beta1[i] : nan;
  }
  if (name.rfind("beta2_", 0) == 0) {
    int i = std::stoi(name.substr(6)) - 1;
    return i < scenario.beta2.size() ? scenario.beta2[i] : nan;
  }
  if (name == "alpha") return scenario.alpha;
  if (name.rfind("D", 0) == 0 && name.size() == 3) {
    int i = name[1] - '1', j = name[2] - '1';
    return scenario.D(i, j);
  }
  if (name == "sigma") return scenario.sigma;
  if (name.rfind("lambda_", 0) == 0) return scenario.lambda0;
  if (name.rfind("eta_", 0) == 0) {
    int i = std::stoi(name.substr(4)) - 1;
    return i < scenario.eta.size() ? scenario.eta[i] : nan;
  }
  return nan;
}

} // namespace

std::vector<StudySummary> run_study(const Scenario& scenario, int replicates,
                                    const std::vector<StudyModel>& models,
                                    const StudyOptions& opts) {
  if (replicates < 1) throw std::invalid_argument("run_study: replicates must be >= 1");
  const int n_models = static_cast<int>(models.size());
  const int baseline_pieces = 7;

  std::vector<double> band_grid(opts.band_points);
  const double a = scenario.correlation_basis.domain_min();
  const double b_dom = scenario.correlation_basis.domain_max();
  for (int i = 0; i < opts.band_points; ++i)
    band_grid[i] =
        a + (b_dom - a) * static_cast<double>(i) / std::max(1, opts.band_points - 1);

  std::vector<std::vector<RepFit>> results(n_models, std::vector<RepFit>(replicates));

  auto run_replicate = [&](int rep) {
    auto sim = simulate_dataset(scenario, static_cast<std::uint64_t>(rep));
    const double t_max = sim.dataset.max_event_time();
    std::optional<ParameterSet> rjm_theta;
    for (int m = 0; m < n_models; ++m) {
      ModelSpec spec = candidate_spec(scenario, models[m], t_max, baseline_pieces);
      FitOptions fo = opts.fit;
      fo.quad_nodes = opts.quad_nodes;
      fo.compute_vcov = models[m].compute_se;
      fo.init.reset();
      if (spec.uses_copula() && rjm_theta.has_value()) {
        ParameterSet warm = *rjm_theta;
        warm.eta = Eigen::VectorXd::Zero(spec.correlation_dim());
        warm.nu = spec.nu;
        fo.init = warm;
      }
      try {
        FittedModel fitted = fit(sim.dataset, spec, fo);
        RepFit& slot = results[m][rep];
        slot.ok = true;
        slot.nat = natural_vector(fitted.theta_hat, spec);
        if (fitted.se.size() > 0) slot.se = fitted.se;
        if (spec.uses_copula() && fitted.has_vcov()) {
          slot.band = correlation_band(fitted, band_grid);
          slot.has_band = true;
        }
        if (!spec.uses_copula()) rjm_theta = fitted.theta_hat;
      } catch (const std::exception&) {
        results[m][rep].ok = false;
      }
    }
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    for (int rep = 0; rep < replicates; ++rep) run_replicate(rep);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (int rep = next.fetch_add(1); rep < replicates; rep = next.fetch_add(1))
          run_replicate(rep);
      });
    for (auto& t : pool) t.join();
  }

  CorrelationCurve true_curve{scenario.correlation_basis, scenario.eta, std::nullopt};
  std::vector<StudySummary> summaries;
  for (int m = 0; m < n_models; ++m) {
    StudySummary summary;
    summary.model = models[m].name;
    ModelSpec spec = candidate_spec(scenario, models[m], 1.0, baseline_pieces);
    auto names = parameter_names(spec);
    const int dim = static_cast<int>(names.size());

    std::vector<int> ok_reps;
    for (int rep = 0; rep < replicates; ++rep)
      if (results[m][rep].ok) ok_reps.push_back(rep);
    summary.replicates_ok = static_cast<int>(ok_reps.size());
    summary.replicates_failed = replicates - summary.replicates_ok;

    for (int k = 0; k < dim; ++k) {
      ParamSummary ps;
      ps.name = names[k];
      ps.truth = truth_for(scenario, names[k]);
      const int n_ok = static_cast<int>(ok_reps.size());
      if (n_ok == 0) {
        summary.params.push_back(ps);
        continue;
      }
      double mean = 0.0;
      for (int rep : ok_reps) mean += results[m][rep].nat[k];
      mean /= n_ok;
      ps.est = mean;
      double var = 0.0;
      for (int rep : ok_reps) var += std::pow(results[m][rep].nat[k] - mean, 2);
      ps.sd = n_ok > 1 ? std::sqrt(var / (n_ok - 1))
                       : std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(ps.truth)) {
        double mse = 0.0;
        for (int rep : ok_reps) mse += std::pow(results[m][rep].nat[k] - ps.truth, 2);
        ps.rmse = std::sqrt(mse / n_ok);
      } else {
        ps.rmse = std::numeric_limits<double>::quiet_NaN();
      }
      int n_se = 0, n_cp = 0, n_ecp = 0;
      double se_sum = 0.0;
      for (int rep : ok_reps) {
        const RepFit& rf = results[m][rep];
        if (rf.se.size() > 0) {
          se_sum += rf.se[k];
          ++n_se;
          if (std::isfinite(ps.truth) &&
              std::fabs(rf.nat[k] - ps.truth) <= 1.96 * rf.se[k])
            ++n_cp;
        }
        if (std::isfinite(ps.truth) && std::isfinite(ps.sd) &&
            std::fabs(rf.nat[k] - ps.truth) <= 1.96 * ps.sd)
          ++n_ecp;
      }
      ps.se = n_se > 0 ? se_sum / n_se : std::numeric_limits<double>::quiet_NaN();
      ps.cp = n_se > 0 && std::isfinite(ps.truth)
                  ? static_cast<double>(n_cp) / n_se
                  : std::numeric_limits<double>::quiet_NaN();
      ps.ecp = std::isfinite(ps.truth) && n_ok > 1
                   ? static_cast<double>(n_ecp) / n_ok
                   : std::numeric_limits<double>::quiet_NaN();
      summary.params.push_back(ps);
    }

    if (models[m].copula != CopulaFamily::independence) {
      summary.band_grid = band_grid;
      summary.band_coverage.assign(band_grid.size(), 0.0);
      int n_band = 0;
      for (int rep : ok_reps) {
        const RepFit& rf = results[m][rep];
        if (!rf.has_band) continue;
        ++n_band;
        for (std::size_t g = 0; g < band_grid.size(); ++g) {
          double rho_true = eval_rho(true_curve, band_grid[g]);
          if (rf.band[g].lower <= rho_true && rho_true <= rf.band[g].upper)
            summary.band_coverage[g] += 1.0;
        }
      }
      for (auto& c : summary.band_coverage)
        c = n_band > 0 ? c / n_band : std::numeric_limits<double>::quiet_NaN();
    }
    summaries.push_back(std::move(summary));
  }
  return summaries;
}

} // namespace copjm
