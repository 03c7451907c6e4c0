#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace sdisc {

// Gauss-Legendre nodes/weights on [0, 1], by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess on [-1, 1]
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      const double dp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
    }
    const double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = 0.5 * (1.0 + t);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return {std::move(x), std::move(w)};
}

}  // namespace sdisc
