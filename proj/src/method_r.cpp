#include "qsmooth/method_r.hpp"

#include <stdexcept>

#include "qsmooth/lowess.hpp"
#include "qsmooth/running_interval.hpp"

namespace qsmooth {

QuantileFit method_r_fit(const PairedSample& sample, double q, double f,
                         double xi) {
  validate_sample(sample);
  if (!(xi > 0.0 && xi <= 1.0)) {
    throw std::domain_error("method_r_fit: xi must lie in (0, 1]");
  }

  QuantileFit fit;
  fit.q = q;
  fit.span_f = f;
  fit.span_xi = xi;
  fit.theta_hat = running_interval_fit(sample, q, f);
  fit.theta_tilde = lowess_resmooth(sample.x, fit.theta_hat, xi);
  return fit;
}

}  // namespace qsmooth
