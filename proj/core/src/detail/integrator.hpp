#pragma once

// Adaptive Dormand-Prince 5(4) stepping between fixed output times.
// Each call to advance() lands exactly on its end time, so output samples
// and envelope discontinuities double as hard step boundaries.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "scrap/errors.hpp"

namespace scrap::detail {

struct StepOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // 0: unlimited
  double initial_step = 1e-3;
};

template <std::size_t N>
class SegmentIntegrator {
public:
  using State = std::array<double, N>;

  explicit SegmentIntegrator(const StepOptions& opts)
      : stepper_(boost::numeric::odeint::make_controlled(
            opts.abs_tol, opts.rel_tol, opts.max_step,
            boost::numeric::odeint::runge_kutta_dopri5<State>())),
        dt_(opts.max_step > 0.0 ? std::min(opts.initial_step, opts.max_step) : opts.initial_step) {}

  /// Restart the first-same-as-last cache, e.g. after a discontinuity.
  void reset() { stepper_.reset(); }

  std::size_t steps() const noexcept { return steps_; }

  template <class System>
  void advance(System&& sys, State& x, double t0, double t1) {
    namespace ode = boost::numeric::odeint;
    double t = t0;
    while (t < t1) {
      const double remaining = t1 - t;
      const bool clamped = dt_ >= remaining;
      double h = clamped ? remaining : dt_;
      const ode::controlled_step_result res = stepper_.try_step(sys, x, t, h);
      if (res == ode::success) {
        ++steps_;
        for (double v : x) {
          if (!std::isfinite(v))
            throw NumericalError("non-finite state at T = " + std::to_string(t), t);
        }
        if (clamped) {
          t = t1;
          dt_ = std::max(dt_, h);
        } else {
          dt_ = h;
        }
      } else {
        dt_ = h;
        if (!(dt_ > 1e-13 * (1.0 + std::abs(t))))
          throw NumericalError("step size underflow at T = " + std::to_string(t), t);
      }
    }
  }

private:
  using Controlled = decltype(boost::numeric::odeint::make_controlled(
      0.0, 0.0, 0.0, boost::numeric::odeint::runge_kutta_dopri5<State>()));
  Controlled stepper_;
  double dt_;
  std::size_t steps_ = 0;
};

}  // namespace scrap::detail
