#pragma once

#include <algorithm>
#include <utility>

#include "sdisc/grassmann.hpp"

namespace sdisc {

// First-order jet over a scalar ring: value + tangent along one even
// nilpotent direction (eps^2 = 0, eps central).  Nests for higher
// derivatives: Jet<Jet<Grassmann>> etc.
template <class R>
struct Jet {
  R v;  // value
  R d;  // tangent
};

using Jet1 = Jet<Grassmann>;
using Jet2 = Jet<Jet1>;
using Jet3 = Jet<Jet2>;

template <class R>
struct RingOps;  // primary template intentionally undefined

template <>
struct RingOps<Grassmann> {
  static constexpr int depth = 0;
  static Grassmann zero(int n) { return Grassmann(n); }
  static Grassmann scalar(int n, Complex v) { return Grassmann(n, v); }
  static Grassmann lift(const Grassmann& g) { return g; }
  static Grassmann inverse(const Grassmann& g) { return sdisc::inverse(g); }
  static double max_abs(const Grassmann& g) { return max_abs_coeff(g); }
  static int n_pairs(const Grassmann& g) { return g.n_pairs(); }
  static void madd(Grassmann& acc, const Grassmann& x, const Grassmann& y) {
    acc.add_product(x, y);
  }
};

template <class R>
Jet<R> operator+(const Jet<R>& a, const Jet<R>& b) {
  return {a.v + b.v, a.d + b.d};
}

template <class R>
Jet<R> operator-(const Jet<R>& a, const Jet<R>& b) {
  return {a.v - b.v, a.d - b.d};
}

template <class R>
Jet<R> operator-(const Jet<R>& a) {
  return {-a.v, -a.d};
}

template <class R>
Jet<R> operator*(const Jet<R>& a, const Jet<R>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}

template <class R>
Jet<R> operator*(const Jet<R>& a, Complex s) {
  return {a.v * s, a.d * s};
}

template <class R>
Jet<R> operator*(Complex s, const Jet<R>& a) {
  return a * s;
}

template <class R>
Jet<R>& operator+=(Jet<R>& a, const Jet<R>& b) {
  a.v += b.v;
  a.d += b.d;
  return a;
}

template <class R>
Jet<R>& operator-=(Jet<R>& a, const Jet<R>& b) {
  a.v -= b.v;
  a.d -= b.d;
  return a;
}

template <class R>
struct RingOps<Jet<R>> {
  using Base = RingOps<R>;
  static constexpr int depth = Base::depth + 1;
  static Jet<R> zero(int n) { return {Base::zero(n), Base::zero(n)}; }
  static Jet<R> scalar(int n, Complex v) { return {Base::scalar(n, v), Base::zero(n)}; }
  static Jet<R> lift(const Grassmann& g) {
    return {Base::lift(g), Base::zero(g.n_pairs())};
  }
  static Jet<R> inverse(const Jet<R>& x) {
    R iv = Base::inverse(x.v);
    return {iv, -(iv * x.d * iv)};
  }
  static double max_abs(const Jet<R>& x) {
    return std::max(Base::max_abs(x.v), Base::max_abs(x.d));
  }
  static int n_pairs(const Jet<R>& x) { return Base::n_pairs(x.v); }
  static void madd(Jet<R>& acc, const Jet<R>& x, const Jet<R>& y) {
    Base::madd(acc.v, x.v, y.v);
    Base::madd(acc.d, x.d, y.v);
    Base::madd(acc.d, x.v, y.d);
  }
};

template <class R>
R ring_inverse(const R& x) {
  return RingOps<R>::inverse(x);
}

}  // namespace sdisc
