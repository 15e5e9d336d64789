#include "choreo/diffusion/schedule.hpp"

#include "choreo/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace choreo {

void NoiseSchedule::validate() const {
  if (steps < 2 || beta.size() != static_cast<size_t>(steps + 1) ||
      alpha.size() != beta.size() || alphaBar.size() != beta.size()) {
    fail(ErrorCode::InvalidArgument, "malformed noise schedule");
  }
  for (int t = 1; t <= steps; ++t) {
    if (!(beta[t] > 0.0 && beta[t] < 1.0)) {
      fail(ErrorCode::InvalidArgument, "beta outside (0, 1)");
    }
    if (!(alphaBar[t] < alphaBar[t - 1])) {
      fail(ErrorCode::InvalidArgument, "alpha_bar must be strictly decreasing");
    }
  }
}

NoiseSchedule cosineSchedule(int steps) {
  if (steps < 2) {
    fail(ErrorCode::InvalidArgument, "diffusion needs at least 2 steps");
  }
  constexpr double s = 0.008;
  const auto f = [&](int t) {
    const double c =
        std::cos((static_cast<double>(t) / steps + s) / (1.0 + s) * std::numbers::pi / 2.0);
    return c * c;
  };

  NoiseSchedule sched;
  sched.steps = steps;
  sched.beta.assign(steps + 1, 0.0);
  sched.alpha.assign(steps + 1, 1.0);
  sched.alphaBar.assign(steps + 1, 1.0);
  const double f0 = f(0);
  for (int t = 1; t <= steps; ++t) {
    const double ratio = (f(t) / f0) / (f(t - 1) / f0);
    sched.beta[t] = std::clamp(1.0 - ratio, 1e-4, 0.999);
    sched.alpha[t] = 1.0 - sched.beta[t];
    sched.alphaBar[t] = sched.alphaBar[t - 1] * sched.alpha[t];
  }
  sched.validate();
  return sched;
}

} // namespace choreo
