#pragma once

#include <memory>
#include <vector>

#include "sdisc/disc.hpp"

namespace sdisc {

// Disc point with entries in a (possibly jet-extended) scalar ring.
template <class R>
struct PointT {
  MatrixT<R> w;
  MatrixT<R> theta;
  MatrixT<R> z() const { return join_cols_plus_odd(w, theta); }
};

template <class R>
PointT<R> lift_point(const DiscPoint& p) {
  return {matrix_lift<R>(p.w), matrix_lift<R>(p.theta)};
}

// point extended along a tangent: entries become jets (value, tangent)
template <class R>
PointT<Jet<R>> extend_point(const PointT<R>& p, const MatrixT<R>& dz) {
  auto [dw, dtheta] = split_cols_plus_odd(dz);
  return {jet_join(p.w, dw), jet_join(p.theta, dtheta)};
}

// Superholomorphic section: an evaluation procedure on disc points, generic
// over the scalar ring so transforms compose by nesting jet extensions.
// Depth 3 nesting is compiled in; deeper compositions throw DepthError.
class Section {
 public:
  virtual ~Section() = default;
  virtual int degree() const = 0;  // polynomial degree, -1 when unknown
  virtual Grassmann eval(const PointT<Grassmann>& p) const = 0;
  virtual Jet1 eval(const PointT<Jet1>& p) const = 0;
  virtual Jet2 eval(const PointT<Jet2>& p) const = 0;
  virtual Jet3 eval(const PointT<Jet3>& p) const = 0;
};

using SectionPtr = std::shared_ptr<const Section>;

template <class Derived>
class SectionBase : public Section {
 public:
  Grassmann eval(const PointT<Grassmann>& p) const override { return impl(p); }
  Jet1 eval(const PointT<Jet1>& p) const override { return impl(p); }
  Jet2 eval(const PointT<Jet2>& p) const override { return impl(p); }
  Jet3 eval(const PointT<Jet3>& p) const override { return impl(p); }

 private:
  template <class R>
  R impl(const PointT<R>& p) const {
    return static_cast<const Derived*>(this)->template eval_at<R>(p);
  }
};

// Reference to one factor of a monomial: an entry of w or theta.
struct VarRef {
  bool theta = false;  // block selector
  int row = 0;
  int col = 0;
  int power = 1;  // forced to 1 for theta entries
};

struct Monomial {
  Complex coeff;
  std::vector<VarRef> vars;  // multiplied left to right
};

// Polynomial in the entries of w and theta (never in their conjugates).
class MonomialSection : public SectionBase<MonomialSection> {
 public:
  explicit MonomialSection(std::vector<Monomial> terms);

  int degree() const override { return degree_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  template <class R>
  R eval_at(const PointT<R>& p) const {
    const int n = p.w.n_pairs();
    R acc = RingOps<R>::zero(n);
    for (const Monomial& t : terms_) {
      R m = RingOps<R>::scalar(n, t.coeff);
      for (const VarRef& v : t.vars) {
        const MatrixT<R>& src = v.theta ? p.theta : p.w;
        if (v.row >= src.rows().dim() || v.col >= src.cols().dim())
          throw ShapeError("section: variable refers outside the point's blocks");
        for (int k = 0; k < v.power; ++k) m = m * src.at(v.row, v.col);
      }
      acc += m;
    }
    return acc;
  }

 private:
  std::vector<Monomial> terms_;
  int degree_;
};

SectionPtr constant_section(Complex value);
SectionPtr monomial_section(std::vector<Monomial> terms);

}  // namespace sdisc
