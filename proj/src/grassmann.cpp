#include "sdisc/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace sdisc {

namespace {

void check_same_algebra(const Grassmann& a, const Grassmann& b) {
  if (a.n_pairs() != b.n_pairs())
    throw ShapeError("grassmann: operands live in different algebras (n_pairs " +
                     std::to_string(a.n_pairs()) + " vs " + std::to_string(b.n_pairs()) + ")");
}

// Falling-factorial binomial: alpha (alpha-1) ... (alpha-k+1) / k!
double generalized_binomial(double alpha, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= (alpha - j) / (j + 1);
  return r;
}

constexpr uint32_t kParallelMaskCount = uint32_t(1) << 12;

}  // namespace

int merge_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  uint32_t t = a;
  while (t) {
    uint32_t low = t & (~t + 1);
    swaps += std::popcount(b & (low - 1));
    t ^= low;
  }
  return (swaps & 1) ? -1 : 1;
}

int word_sort_sign(std::span<const int> word) {
  int swaps = 0;
  for (size_t i = 0; i < word.size(); ++i)
    for (size_t j = i + 1; j < word.size(); ++j) {
      if (word[i] == word[j]) return 0;
      if (word[i] > word[j]) ++swaps;
    }
  return (swaps & 1) ? -1 : 1;
}

Grassmann::Grassmann(int n_pairs, Complex body) : n_(n_pairs) {
  if (n_pairs < 0 || n_pairs > kMaxGeneratorPairs)
    throw ShapeError("grassmann: n_pairs out of range [0, " +
                     std::to_string(kMaxGeneratorPairs) + "]");
  c_.assign(size_t(1) << (2 * n_pairs), Complex(0));
  c_[0] = body;
}

Grassmann Grassmann::monomial(int n_pairs, uint32_t mask, Complex coeff) {
  Grassmann g(n_pairs);
  if (mask >= g.mask_count()) throw ShapeError("grassmann: monomial mask out of range");
  g.c_[mask] = coeff;
  return g;
}

Grassmann Grassmann::generator(int n_pairs, int a) {
  if (a < 0 || a >= n_pairs) throw ShapeError("grassmann: generator index out of range");
  return monomial(n_pairs, uint32_t(1) << a, Complex(1));
}

Grassmann Grassmann::conj_generator(int n_pairs, int a) {
  if (a < 0 || a >= n_pairs) throw ShapeError("grassmann: generator index out of range");
  return monomial(n_pairs, uint32_t(1) << (n_pairs + a), Complex(1));
}

Grassmann Grassmann::from_word(int n_pairs, std::span<const int> word, Complex coeff) {
  int sign = word_sort_sign(word);
  if (sign == 0) return Grassmann(n_pairs);
  uint32_t mask = 0;
  for (int s : word) {
    if (s < 0 || s >= 2 * n_pairs) throw ShapeError("grassmann: symbol out of range");
    mask |= uint32_t(1) << s;
  }
  return monomial(n_pairs, mask, double(sign) * coeff);
}

Grassmann Grassmann::soul() const {
  Grassmann s = *this;
  s.c_[0] = Complex(0);
  return s;
}

Grassmann& Grassmann::operator+=(const Grassmann& o) {
  check_same_algebra(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Grassmann& Grassmann::operator-=(const Grassmann& o) {
  check_same_algebra(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Grassmann& Grassmann::operator*=(Complex s) {
  for (auto& c : c_) c *= s;
  return *this;
}

void Grassmann::add_product(const Grassmann& x, const Grassmann& y) {
  check_same_algebra(*this, x);
  check_same_algebra(*this, y);
  const uint32_t m = x.mask_count();
  for (uint32_t a = 0; a < m; ++a) {
    const Complex xa = x.c_[a];
    if (xa == Complex(0)) continue;
    for (uint32_t b = 0; b < m; ++b) {
      if (a & b) continue;
      const Complex yb = y.c_[b];
      if (yb == Complex(0)) continue;
      c_[a | b] += double(merge_sign(a, b)) * xa * yb;
    }
  }
}

void Grassmann::add_scaled(const Grassmann& x, Complex s) {
  check_same_algebra(*this, x);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += s * x.c_[i];
}

Grassmann operator+(const Grassmann& a, const Grassmann& b) {
  Grassmann r = a;
  r += b;
  return r;
}

Grassmann operator-(const Grassmann& a, const Grassmann& b) {
  Grassmann r = a;
  r -= b;
  return r;
}

Grassmann operator-(const Grassmann& a) {
  Grassmann r = a;
  r *= Complex(-1);
  return r;
}

Grassmann operator*(const Grassmann& a, const Grassmann& b) {
  check_same_algebra(a, b);
  if (a.mask_count() >= kParallelMaskCount) return kernels::gmul_parallel(a, b);
  return kernels::gmul_serial(a, b);
}

Grassmann operator*(const Grassmann& a, Complex s) {
  Grassmann r = a;
  r *= s;
  return r;
}

Grassmann operator*(Complex s, const Grassmann& a) { return a * s; }

Grassmann operator/(const Grassmann& a, Complex s) { return a * (Complex(1) / s); }

namespace kernels {

Grassmann gmul_serial(const Grassmann& x, const Grassmann& y) {
  Grassmann z(x.n_pairs());
  z.add_product(x, y);
  return z;
}

Grassmann gmul_parallel(const Grassmann& x, const Grassmann& y) {
  if (x.n_pairs() != y.n_pairs())
    throw ShapeError("grassmann: operands live in different algebras");
  Grassmann z(x.n_pairs());
  const int64_t m = x.mask_count();
  auto xs = x.coeffs();
  auto ys = y.coeffs();
  auto zs = z.coeffs();
#pragma omp parallel for schedule(dynamic, 64)
  for (int64_t s = 0; s < m; ++s) {
    const uint32_t mask = uint32_t(s);
    Complex acc(0);
    uint32_t a = mask;
    while (true) {  // all submasks of `mask`, including 0 and mask itself
      const uint32_t b = mask ^ a;
      acc += double(merge_sign(a, b)) * xs[a] * ys[b];
      if (a == 0) break;
      a = (a - 1) & mask;
    }
    zs[s] = acc;
  }
  return z;
}

}  // namespace kernels

Parity parity_of(const Grassmann& x, double tol) {
  bool has_even = false, has_odd = false;
  for (uint32_t m = 0; m < x.mask_count(); ++m) {
    if (std::abs(x.coeff(m)) <= tol) continue;
    (std::popcount(m) & 1 ? has_odd : has_even) = true;
  }
  if (!has_even && !has_odd) return Parity::Zero;
  if (has_even && has_odd) return Parity::Mixed;
  return has_even ? Parity::Even : Parity::Odd;
}

Grassmann star(const Grassmann& x) {
  const int n = x.n_pairs();
  const uint32_t half = (uint32_t(1) << n) - 1;
  Grassmann r(n);
  std::vector<int> word;
  for (uint32_t m = 0; m < x.mask_count(); ++m) {
    const Complex c = x.coeff(m);
    if (c == Complex(0)) continue;
    // star maps symbol s to (s + n) mod 2n and reverses the product order
    word.clear();
    for (int s = 2 * n - 1; s >= 0; --s)
      if (m & (uint32_t(1) << s)) word.push_back(s < n ? s + n : s - n);
    const int sign = word_sort_sign(word);
    const uint32_t mapped = ((m & half) << n) | (m >> n);
    r.set_coeff(mapped, r.coeff(mapped) + double(sign) * std::conj(c));
  }
  return r;
}

Grassmann inverse(const Grassmann& x) {
  const Complex b = x.body();
  if (std::abs(b) < 1e-12 * (1.0 + max_abs_coeff(x)))
    throw SingularError("grassmann inverse: body is zero");
  // x = b (1 + s), s nilpotent: x^-1 = (1/b) sum (-s)^k
  const Grassmann s = x.soul() / b;
  Grassmann acc(x.n_pairs(), Complex(1));
  Grassmann pw(x.n_pairs(), Complex(1));
  for (int k = 1; k <= 2 * x.n_pairs(); ++k) {
    pw = pw * (-s);
    if (max_abs_coeff(pw) == 0.0) break;
    acc += pw;
  }
  return acc / b;
}

Grassmann pow(const Grassmann& x, double alpha) {
  const Parity p = parity_of(x, 1e-14 * (1.0 + max_abs_coeff(x)));
  if (p == Parity::Odd || p == Parity::Mixed)
    throw ParityError("grassmann pow: element must be even");
  const Complex b = x.body();
  if (b.real() <= 0.0 || std::abs(b.imag()) > 1e-12 * (1.0 + std::abs(b)))
    throw BranchError("grassmann pow: body must be real and positive");
  // even elements commute, so the binomial series in soul/body applies
  const Grassmann s = x.soul() / b;
  Grassmann acc(x.n_pairs(), Complex(1));
  Grassmann pw(x.n_pairs(), Complex(1));
  for (int k = 1; k <= x.n_pairs(); ++k) {
    pw = pw * s;
    if (max_abs_coeff(pw) == 0.0) break;
    acc.add_scaled(pw, generalized_binomial(alpha, k));
  }
  return acc * std::pow(b.real(), alpha);
}

Grassmann exp(const Grassmann& x) {
  const Grassmann s = x.soul();
  Grassmann acc(x.n_pairs(), Complex(1));
  Grassmann pw(x.n_pairs(), Complex(1));
  double fact = 1.0;
  for (int k = 1; k <= 2 * x.n_pairs(); ++k) {
    pw = pw * s;
    if (max_abs_coeff(pw) == 0.0) break;
    fact *= k;
    acc.add_scaled(pw, 1.0 / fact);
  }
  return acc * std::exp(x.body());
}

double l2_norm(const Grassmann& x) {
  double s = 0.0;
  for (const Complex& c : x.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

double max_abs_coeff(const Grassmann& x) {
  double m = 0.0;
  for (const Complex& c : x.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double max_coeff_dist(const Grassmann& a, const Grassmann& b) {
  check_same_algebra(a, b);
  double m = 0.0;
  for (uint32_t i = 0; i < a.mask_count(); ++i)
    m = std::max(m, std::abs(a.coeff(i) - b.coeff(i)));
  return m;
}

bool approx_equal(const Grassmann& a, const Grassmann& b, double tol) {
  return max_coeff_dist(a, b) <= tol;
}

bool exactly_equal(const Grassmann& a, const Grassmann& b) {
  if (a.n_pairs() != b.n_pairs()) return false;
  for (uint32_t i = 0; i < a.mask_count(); ++i)
    if (a.coeff(i) != b.coeff(i)) return false;
  return true;
}

}  // namespace sdisc
