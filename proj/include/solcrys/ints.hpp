#pragma once

// Exact 2x2 integer linear algebra on arbitrary-precision integers.
// Everything in this library is exact; no floating point anywhere.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace solcrys {

using Int = mpz_class;

enum class Errc {
  InvalidHyperbolic,
  MissingRoot,
  MissingReverser,
  ParamOutOfSpace,
  InconsistentAux,
  RelationViolated,
  NotBijective,
  InconsistentParity,
  InvalidDatum,
  CaseMismatch,
  CounterexampleFound,
  CertificateRejected,
  SearchExhausted,
  BadInput,
};

class Error : public std::runtime_error {
public:
  Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
  Errc code;
};

struct Vec2 {
  Int x{0}, y{0};

  Vec2() = default;
  Vec2(Int a, Int b) : x(std::move(a)), y(std::move(b)) {}
  Vec2(long a, long b) : x(a), y(b) {}

  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool is_zero() const { return x == 0 && y == 0; }
};

// Row-major 2x2 integer matrix [[a,b],[c,d]].
struct Mat2 {
  Int a{0}, b{0}, c{0}, d{0};

  Mat2() = default;
  Mat2(Int a_, Int b_, Int c_, Int d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 zero() { return {0, 0, 0, 0}; }
  static Mat2 scalar(const Int& s) { return {s, 0, 0, s}; }
  static Mat2 from_columns(const Vec2& c1, const Vec2& c2) {
    return {c1.x, c2.x, c1.y, c2.y};
  }

  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  bool is_unimodular() const {
    Int dt = det();
    return dt == 1 || dt == -1;
  }

  // Inverse for unimodular matrices only.
  Mat2 inverse() const {
    Int dt = det();
    if (dt != 1 && dt != -1)
      throw Error(Errc::BadInput, "inverse of non-unimodular matrix");
    Mat2 ad = adjugate();
    if (dt == 1) return ad;
    return -ad;
  }

  // Integer power; negative exponents require unimodularity.
  Mat2 pow(const Int& e) const {
    Mat2 base = *this;
    Int n = e;
    if (n < 0) {
      base = inverse();
      n = -n;
    }
    Mat2 acc = identity();
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  Vec2 column(int i) const { return i == 0 ? Vec2{a, c} : Vec2{b, d}; }
  Int max_abs_entry() const {
    Int m = abs(a);
    for (const Int* e : {&b, &c, &d})
      if (abs(*e) > m) m = abs(*e);
    return m;
  }
};

inline Mat2 operator*(const Int& s, const Mat2& m) {
  return {s * m.a, s * m.b, s * m.c, s * m.d};
}
inline Vec2 operator*(const Int& s, const Vec2& v) { return {s * v.x, s * v.y}; }

inline bool even(const Int& n) { return mpz_even_p(n.get_mpz_t()) != 0; }
inline bool odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }
inline bool even(const Vec2& v) { return even(v.x) && even(v.y); }

// Total orders used to make outputs canonical.
inline int cmp(const Int& a, const Int& b) { return ::cmp(a, b); }
inline int cmp(const Vec2& a, const Vec2& b) {
  if (int c = cmp(a.x, b.x)) return c;
  return cmp(a.y, b.y);
}
inline int cmp(const Mat2& m, const Mat2& n) {
  if (int c = cmp(m.a, n.a)) return c;
  if (int c = cmp(m.b, n.b)) return c;
  if (int c = cmp(m.c, n.c)) return c;
  return cmp(m.d, n.d);
}
inline bool lex_less(const Vec2& a, const Vec2& b) { return cmp(a, b) < 0; }
inline bool lex_less(const Mat2& a, const Mat2& b) { return cmp(a, b) < 0; }

std::string to_string(const Vec2& v);
std::string to_string(const Mat2& m);
std::ostream& operator<<(std::ostream& os, const Vec2& v);
std::ostream& operator<<(std::ostream& os, const Mat2& m);

}  // namespace solcrys
