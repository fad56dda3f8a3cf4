#include "copjm/data.hpp"

#include <algorithm>
#include <stdexcept>

namespace copjm {

void SubjectData::validate() const {
  auto fail = [this](const std::string& what) {
    throw std::invalid_argument("subject '" + id + "': " + what);
  };
  const int n = n_obs();
  if (n < 1) fail("needs at least one longitudinal observation");
  if (y.size() != n || X.rows() != n || Z.rows() != n)
    fail("misaligned longitudinal arrays");
  if (times[0] < 0.0) fail("negative observation time");
  for (int j = 1; j < n; ++j)
    if (!(times[j] > times[j - 1])) fail("observation times must be strictly increasing");
  if (!(times[n - 1] < event_time))
    fail("last measurement must strictly precede the terminal time; "
         "jitter coincident records before ingestion");
}

double Dataset::max_event_time() const {
  double t_max = 0.0;
  for (const auto& s : subjects) t_max = std::max(t_max, s.event_time);
  return t_max;
}

void Dataset::validate() const {
  for (const auto& s : subjects) s.validate();
}

SubjectData build_subject(const ModelSpec& spec, std::string id,
                          const Eigen::VectorXd& times, const Eigen::VectorXd& y,
                          const Eigen::MatrixXd& long_covariates,
                          const Eigen::VectorXd& surv_covariates,
                          double event_time, bool event) {
  SubjectData subject;
  subject.id = std::move(id);
  subject.times = times;
  subject.y = y;
  subject.covariates = long_covariates;
  subject.w = surv_covariates;
  subject.event_time = event_time;
  subject.event = event;
  const int n = static_cast<int>(times.size());
  if (long_covariates.rows() != n && !(long_covariates.rows() == 0 && spec.long_covariates == 0))
    throw std::invalid_argument("build_subject: covariate rows misaligned for '" +
                                subject.id + "'");
  subject.X.resize(n, spec.fixed_dim());
  subject.Z.resize(n, spec.re_dim());
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd covs = spec.long_covariates > 0
                               ? Eigen::VectorXd(long_covariates.row(j))
                               : Eigen::VectorXd(0);
    subject.X.row(j) = spec.design_row_x(times[j], covs);
    subject.Z.row(j) = spec.design_row_z(times[j]);
  }
  subject.validate();
  return subject;
}

} // namespace copjm
