#pragma once

#include <bit>

#include "sdisc/rng.hpp"
#include "sdisc/supermatrix.hpp"

namespace sdisc::testing {

// entry with the parity demanded by the slot pair, all admissible masks populated
inline Grassmann random_entry(Rng& rng, int n, bool odd, double body_scale,
                              double soul_scale) {
  Grassmann g(n);
  for (uint32_t m = 0; m < g.mask_count(); ++m) {
    const bool m_odd = std::popcount(m) & 1;
    if (m_odd != odd) continue;
    g.set_coeff(m, m == 0 ? rng.box(body_scale) : rng.box(soul_scale));
  }
  return g;
}

// full-space matrix of the given declared type
inline SuperMatrix random_typed_matrix(Rng& rng, const Space& s, int n, MatType t,
                                       double body_scale = 1.0, double soul_scale = 0.3) {
  SuperMatrix m(s, s, n, t);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      const bool cross = s.odd_slot(i) != s.odd_slot(j);
      const bool odd_entry = (t == MatType::Odd) ? !cross : cross;
      m.at(i, j) = random_entry(rng, n, odd_entry, body_scale, soul_scale);
    }
  return m;
}

// even matrix with body near the identity; always invertible
inline SuperMatrix random_invertible(Rng& rng, const Space& s, int n, double eps = 0.3) {
  SuperMatrix m = random_typed_matrix(rng, s, n, MatType::Even, eps, eps);
  return SuperMatrix::identity(s, n) + m;
}

}  // namespace sdisc::testing
