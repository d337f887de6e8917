#pragma once

#include <cmath>
#include <utility>

namespace berezin {

struct LineMaximum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

// Golden-section search for a maximum of f on [lo, hi]. The endpoints are
// evaluated too, so a maximizer sitting on the boundary is never lost.
template <typename F>
LineMaximum golden_section_maximize(F&& f, double lo, double hi, double tolerance,
                                    int max_iterations = 200) {
  constexpr double inv_phi = 0.6180339887498949;
  LineMaximum best{lo, f(lo), 0};
  if (const double v = f(hi); v > best.value) best = {hi, v, 0};
  if (!(hi > lo)) return best;

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > tolerance && it < max_iterations) {
    ++it;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc > best.value) best = {c, fc, it};
  if (fd > best.value) best = {d, fd, it};
  best.iterations = it;
  return best;
}

template <typename F>
LineMaximum golden_section_minimize(F&& f, double lo, double hi, double tolerance,
                                    int max_iterations = 200) {
  auto neg = [&f](double x) { return -f(x); };
  LineMaximum m = golden_section_maximize(neg, lo, hi, tolerance, max_iterations);
  m.value = -m.value;
  return m;
}

}  // namespace berezin
