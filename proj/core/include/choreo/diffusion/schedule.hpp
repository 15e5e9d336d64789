#pragma once

#include <vector>

namespace choreo {

inline constexpr int kDefaultDiffusionSteps = 100;

/// Per-step variance schedule. Vectors are indexed by step t in [0, T];
/// entry 0 is the clean state (beta 0, alpha_bar 1).
struct NoiseSchedule {
  int steps = 0;
  std::vector<double> beta;
  std::vector<double> alpha;
  std::vector<double> alphaBar;

  void validate() const;
};

/// Cosine schedule: alpha_bar(t) = f(t)/f(0), f(t) = cos^2(((t/T)+s)/(1+s) * pi/2)
/// with s = 0.008. Betas are clipped to [1e-4, 0.999] and alpha_bar is the
/// running product of the clipped alphas.
NoiseSchedule cosineSchedule(int steps = kDefaultDiffusionSteps);

} // namespace choreo
