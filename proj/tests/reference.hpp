#pragma once
// Independent reference solutions used by the tests. Nothing here calls
// into the solvers under test.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace ref {

using cplx = std::complex<double>;

struct Sample {
  cplx rabi;
  double shift;
};

struct State {
  double rn = 0.0;
  cplx rgn{};
};

// Classical fixed-step RK4 for the reduced two-level equations from the
// ground state; returns the state at every multiple of `stride` steps.
inline std::vector<State> rk4_reduced(const std::function<Sample(double)>& drive, double detuning, double t0,
                                      double t1, int steps, int stride = 1) {
  const cplx I{0.0, 1.0};
  auto f = [&](double t, const State& s) {
    const Sample d = drive(t);
    State k;
    k.rn = std::imag(std::conj(d.rabi) * s.rgn);
    k.rgn = -I * (d.shift - detuning) * s.rgn - I * d.rabi * (s.rn - 0.5);
    return k;
  };
  auto add = [](const State& s, const State& k, double h) { return State{s.rn + h * k.rn, s.rgn + h * k.rgn}; };
  const double h = (t1 - t0) / steps;
  State s;
  std::vector<State> out{s};
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const State k1 = f(t, s);
    const State k2 = f(t + h / 2, add(s, k1, h / 2));
    const State k3 = f(t + h / 2, add(s, k2, h / 2));
    const State k4 = f(t + h, add(s, k3, h));
    s.rn += h / 6 * (k1.rn + 2 * k2.rn + 2 * k3.rn + k4.rn);
    s.rgn += h / 6 * (k1.rgn + 2.0 * k2.rgn + 2.0 * k3.rgn + k4.rgn);
    if ((i + 1) % stride == 0) out.push_back(s);
  }
  return out;
}

inline double gauss1(double amp, double w, double d, double t) { return amp * std::exp(-(t - d) * (t - d) / (2 * w * w)); }
inline double gauss2(double amp, double w, double d, double t) { return amp * std::exp(-(t - d) * (t - d) / (w * w)); }

// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ref
