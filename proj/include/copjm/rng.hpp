#pragma once

#include <cstdint>
#include <random>

#include "copjm/distributions.hpp"

namespace copjm {

// Deterministic per-subject stream keyed on (seed, replicate, subject) so
// parallel generation is order-independent. All draws go through the inverse
// CDF, keeping output identical across platforms and standard libraries.
class SubjectRng {
public:
  SubjectRng(std::uint64_t seed, std::uint64_t replicate, std::uint64_t subject) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate),
                      static_cast<std::uint32_t>(replicate >> 32),
                      static_cast<std::uint32_t>(subject),
                      static_cast<std::uint32_t>(subject >> 32)};
    engine_.seed(seq);
  }

  // Strictly inside (0,1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return normal_quantile(uniform()); }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Value k in [0, probs.size()) with the given probabilities.
  int categorical(const std::vector<double>& probs) {
    double u = uniform(), acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      acc += probs[k];
      if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(probs.size()) - 1;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace copjm
