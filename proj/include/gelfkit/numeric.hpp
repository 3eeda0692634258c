#pragma once

// Exact scalar layer: arbitrary-precision integers and rationals, Gaussian
// rationals, and certified rational enclosures of square roots.  Everything
// downstream that makes a lattice decision goes through these types; floating
// point never enters.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gelfkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// error taxonomy: structural = malformed input, domain = precondition on a
// value, mode = wrong arithmetic mode for the data, resource = cap exceeded.
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct value_domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct mode_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& x) { return numerator(x); }
inline Int rat_den(const Rat& x) { return denominator(x); }

inline int sign_of(const Rat& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

inline std::string rat_str(const Rat& x) { return x.str(); }

// strict "p" or "p/q" with optional leading sign, q > 0 after normalization
inline Rat parse_rat(std::string_view s) {
  if (s.empty()) throw structural_error("empty rational literal");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](std::string& out) {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') out += s[pos++];
    if (pos == start) throw structural_error("bad rational literal: " + std::string(s));
  };
  std::string num, den;
  read_digits(num);
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    read_digits(den);
  }
  if (pos != s.size()) throw structural_error("trailing junk in rational literal: " + std::string(s));
  Int n(num);
  Int d = den.empty() ? Int(1) : Int(den);
  if (d == 0) throw structural_error("zero denominator: " + std::string(s));
  Rat r(n, d);
  return neg ? Rat(-r) : r;
}

struct GQ {
  Rat re{};
  Rat im{};

  GQ() = default;
  GQ(int n) : re(n) {}  // NOLINT: implicit on purpose, scalar literals
  GQ(Rat r) : re(std::move(r)) {}
  GQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GQ i() { return GQ{Rat(0), Rat(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GQ conj() const { return GQ{re, -im}; }
  Rat norm2() const { return re * re + im * im; }

  GQ operator-() const { return GQ{-re, -im}; }
  GQ& operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GQ& operator-=(const GQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GQ& operator*=(const GQ& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GQ inv() const {
    if (is_zero()) throw value_domain_error("division by zero Gaussian rational");
    Rat n = norm2();
    return GQ{re / n, -im / n};
  }
  GQ& operator/=(const GQ& o) { return *this *= o.inv(); }

  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }
};

// canonical "p/q+r/si" form; zero parts omitted, sole zero printed "0",
// imaginary coefficient always carries explicit digits ("1i", "-3/4i").
inline std::string gq_str(const GQ& z) {
  if (z.is_zero()) return "0";
  std::string out;
  if (z.re != 0) out += rat_str(z.re);
  if (z.im != 0) {
    if (z.im > 0 && !out.empty()) out += "+";
    out += rat_str(z.im) + "i";
  }
  return out;
}

inline GQ parse_gq(std::string_view s) {
  if (s.empty()) throw structural_error("empty Gaussian rational literal");
  // split into at most two sign-delimited terms; a term ending in 'i' is
  // imaginary, otherwise real.
  struct Term {
    std::string body;
    bool imag = false;
  };
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::string body;
    if (s[pos] == '+' || s[pos] == '-') body += s[pos++];
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
    body.append(s.substr(start, pos - start));
    if (body.empty() || body == "+" || body == "-")
      throw structural_error("bad Gaussian rational literal: " + std::string(s));
    Term t;
    t.imag = body.back() == 'i';
    if (t.imag) body.pop_back();
    t.body = std::move(body);
    terms.push_back(std::move(t));
  }
  if (terms.empty() || terms.size() > 2)
    throw structural_error("bad Gaussian rational literal: " + std::string(s));
  GQ z;
  bool seen_re = false, seen_im = false;
  for (auto& t : terms) {
    if (t.imag) {
      if (seen_im) throw structural_error("two imaginary parts in: " + std::string(s));
      seen_im = true;
      if (t.body.empty() || t.body == "+")
        z.im = 1;
      else if (t.body == "-")
        z.im = -1;
      else
        z.im = parse_rat(t.body);
    } else {
      if (seen_re) throw structural_error("two real parts in: " + std::string(s));
      seen_re = true;
      z.re = parse_rat(t.body);
    }
  }
  return z;
}

inline Int int_sqrt_floor(const Int& n) {
  if (n < 0) throw value_domain_error("sqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

// exact square root when x is the square of a rational
inline std::optional<Rat> rat_sqrt_exact(const Rat& x) {
  if (x < 0) throw value_domain_error("sqrt of negative rational");
  Int n = rat_num(x), d = rat_den(x);
  Int rn = int_sqrt_floor(n), rd = int_sqrt_floor(d);
  if (rn * rn == n && rd * rd == d) return Rat(rn, rd);
  return std::nullopt;
}

// rational enclosure [lo, hi] of sqrt(x) with hi - lo <= tol; exact squares
// collapse to a point interval.
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& x, const Rat& tol) {
  if (x < 0) throw value_domain_error("sqrt of negative rational");
  if (tol <= 0) throw value_domain_error("nonpositive tolerance");
  if (auto ex = rat_sqrt_exact(x)) return {*ex, *ex};
  Int n = rat_num(x), d = rat_den(x);
  // sqrt(n/d) = sqrt(n*d)/d; scale so the floor sqrt lands within tol.
  Rat inv_scale = Rat(1) / (tol * d);
  Int scale = rat_num(inv_scale) / rat_den(inv_scale) + 1;
  Int lo_int = int_sqrt_floor(n * d * scale * scale);
  Rat lo(lo_int, d * scale);
  Rat hi(lo_int + 1, d * scale);
  return {lo, hi};
}

// interval arithmetic on rational endpoints, used by certified spectral code
struct RatInterval {
  Rat lo, hi;
  RatInterval() = default;
  RatInterval(Rat point) : lo(point), hi(std::move(point)) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw value_domain_error("inverted interval");
  }
  Rat width() const { return hi - lo; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rat lo = c[0], hi = c[0];
    for (int k = 1; k < 4; ++k) {
      if (c[k] < lo) lo = c[k];
      if (c[k] > hi) hi = c[k];
    }
    return {lo, hi};
  }
};

inline long env_cap(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (end == nullptr || *end != '\0' || parsed <= 0)
    throw structural_error(std::string(name) + " must be a positive integer");
  return parsed;
}

}  // namespace gelfkit
