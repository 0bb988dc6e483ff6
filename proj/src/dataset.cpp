#include "qsmooth/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "qsmooth/rng.hpp"

namespace qsmooth {

void validate_sample(const PairedSample& sample) {
  if (sample.x.size() != sample.y.size()) {
    throw std::invalid_argument("sample: x and y lengths differ");
  }
  if (sample.x.size() < 2) {
    throw std::invalid_argument("sample: need at least two observations");
  }
  if (!sample.x.allFinite() || !sample.y.allFinite()) {
    throw std::invalid_argument("sample: values must be finite");
  }
}

SyntheticDataset generate_dataset(Eigen::Index n, const GhParams& gh,
                                  VariancePattern vp, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("generate_dataset: n must be at least 2");
  }

  SyntheticDataset ds;
  ds.gh = gh;
  ds.vp = vp;
  ds.seed = seed;
  ds.sample.x.resize(n);
  ds.sample.y.resize(n);
  ds.z.resize(n);

  CounterRng rng(seed);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = rng.normal();
    const double z = rng.normal();
    ds.sample.x[i] = x;
    ds.z[i] = z;
    ds.sample.y[i] = x + lambda_at(vp, x) * gh_transform(z, gh);
  }
  return ds;
}

double true_conditional_quantile(double x, double q, const GhParams& gh,
                                 VariancePattern vp) {
  return x + lambda_at(vp, x) * gh_quantile(q, gh);
}

}  // namespace qsmooth
