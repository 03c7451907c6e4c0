#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sdisc/errors.hpp"

namespace sdisc {

using Complex = std::complex<double>;

// Dense storage is 2^(2n) coefficients; desk scale is n <= 3.
inline constexpr int kMaxGeneratorPairs = 10;

// Sign of concatenating two canonical (ascending) monomials a then b.
// Masks must be disjoint.
int merge_sign(uint32_t a, uint32_t b);

// Sign of the permutation sorting `word` ascending; 0 if a symbol repeats.
int word_sort_sign(std::span<const int> word);

// Element of the complex exterior algebra on n generator pairs
// xi^1..xi^n, xi*^1..xi*^n with the global symbol order
// xi^1 < ... < xi^n < xi*^1 < ... < xi*^n.  Bit a of a monomial mask is
// xi^{a+1}; bit n+a is xi*^{a+1}.  Monomials are kept canonical (ascending
// symbol order); coefficients are complex doubles, stored densely.
class Grassmann {
 public:
  Grassmann() : n_(0), c_(1, Complex(0)) {}
  explicit Grassmann(int n_pairs, Complex body = Complex(0));

  static Grassmann monomial(int n_pairs, uint32_t mask, Complex coeff);
  static Grassmann generator(int n_pairs, int a);       // xi^{a+1}, a in [0,n)
  static Grassmann conj_generator(int n_pairs, int a);  // xi*^{a+1}
  // Product of symbols in the given (possibly unsorted) order.
  static Grassmann from_word(int n_pairs, std::span<const int> word, Complex coeff);

  int n_pairs() const { return n_; }
  int n_symbols() const { return 2 * n_; }
  uint32_t mask_count() const { return uint32_t(1) << (2 * n_); }
  uint32_t full_mask() const { return mask_count() - 1; }

  Complex coeff(uint32_t mask) const { return c_[mask]; }
  void set_coeff(uint32_t mask, Complex v) { c_[mask] = v; }
  std::span<const Complex> coeffs() const { return c_; }
  std::span<Complex> coeffs() { return c_; }

  Complex body() const { return c_[0]; }
  Grassmann soul() const;

  Grassmann& operator+=(const Grassmann& o);
  Grassmann& operator-=(const Grassmann& o);
  Grassmann& operator*=(Complex s);

  // *this += x * y, accumulated in place (no temporaries)
  void add_product(const Grassmann& x, const Grassmann& y);
  void add_scaled(const Grassmann& x, Complex s);

 private:
  int n_;
  std::vector<Complex> c_;
};

Grassmann operator+(const Grassmann& a, const Grassmann& b);
Grassmann operator-(const Grassmann& a, const Grassmann& b);
Grassmann operator-(const Grassmann& a);
Grassmann operator*(const Grassmann& a, const Grassmann& b);
Grassmann operator*(const Grassmann& a, Complex s);
Grassmann operator*(Complex s, const Grassmann& a);
Grassmann operator/(const Grassmann& a, Complex s);

enum class Parity { Zero, Even, Odd, Mixed };

// Parity of the monomial support; coefficients with |c| <= tol are ignored.
Parity parity_of(const Grassmann& x, double tol = 0.0);

// Antilinear involution xi^a <-> xi*^a with product reversal: (ab)* = b* a*.
Grassmann star(const Grassmann& x);

// Exact inverse via the terminating Neumann series in soul/body.
Grassmann inverse(const Grassmann& x);

// Principal power for even x with real-positive body.
Grassmann pow(const Grassmann& x, double alpha);

// exp(body) times the terminating series in the soul.
Grassmann exp(const Grassmann& x);

double l2_norm(const Grassmann& x);
double max_abs_coeff(const Grassmann& x);
double max_coeff_dist(const Grassmann& a, const Grassmann& b);
bool approx_equal(const Grassmann& a, const Grassmann& b, double tol = 1e-9);
bool exactly_equal(const Grassmann& a, const Grassmann& b);

namespace kernels {
Grassmann gmul_serial(const Grassmann& x, const Grassmann& y);
Grassmann gmul_parallel(const Grassmann& x, const Grassmann& y);
}  // namespace kernels

// Serial reference kernels, kept as independent oracles for the tests and
// as the baseline for the benchmarks.
namespace ref {
inline Grassmann mul(const Grassmann& x, const Grassmann& y) {
  return kernels::gmul_serial(x, y);
}
}  // namespace ref

}  // namespace sdisc
