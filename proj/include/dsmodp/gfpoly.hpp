#pragma once
// F_p and dense polynomials over it.
//
// Coefficients are stored lowest degree first with no trailing zeros, so the
// zero polynomial is the empty vector (degree kNegInf). factor() runs
// squarefree -> distinct-degree -> Cantor-Zassenhaus with a fixed seed.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsmodp/error.hpp"

namespace dsmodp {

using Coeff = std::uint32_t;

/// Degree of the zero polynomial.
inline constexpr int kNegInf = std::numeric_limits<int>::min();

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The characteristic. Restricted to p < 2^32 so products fit in 64 bits.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p) : p_(static_cast<Coeff>(p)) {
    if (p >= (1ull << 32) || !is_prime_u64(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a supported prime");
  }
  Coeff value() const noexcept { return p_; }
  operator Coeff() const noexcept { return p_; }
  bool operator==(const PrimeModulus&) const = default;

 private:
  Coeff p_;
};

/// Scalar arithmetic in F_p; inputs must already be reduced.
struct Fp {
  static Coeff add(Coeff a, Coeff b, Coeff p) {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Coeff>(s >= p ? s - p : s);
  }
  static Coeff sub(Coeff a, Coeff b, Coeff p) { return a >= b ? a - b : static_cast<Coeff>(std::uint64_t(a) + p - b); }
  static Coeff neg(Coeff a, Coeff p) { return a == 0 ? 0 : p - a; }
  static Coeff mul(Coeff a, Coeff b, Coeff p) { return static_cast<Coeff>(std::uint64_t(a) * b % p); }
  static Coeff pow(Coeff a, std::uint64_t e, Coeff p) { return static_cast<Coeff>(detail::powmod64(a, e, p)); }
  static Coeff inv(Coeff a, Coeff p) {
    if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_p");
    // extended Euclid
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1) {
      std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    std::int64_t r = s0 % static_cast<std::int64_t>(p);
    return static_cast<Coeff>(r < 0 ? r + p : r);
  }
  static Coeff from_int(std::int64_t v, Coeff p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<Coeff>(r < 0 ? r + p : r);
  }
  static bool is_square(Coeff a, Coeff p) {
    if (a == 0 || p == 2) return true;
    return pow(a, (p - 1) / 2, p) == 1;
  }
  /// Tonelli-Shanks. Returns the root in the lower half {0..(p-1)/2}.
  static std::optional<Coeff> sqrt(Coeff a, Coeff p) {
    if (a == 0) return Coeff{0};
    if (p == 2) return a;
    if (!is_square(a, p)) return std::nullopt;
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    Coeff z = 2;
    while (is_square(z, p)) ++z;
    Coeff m = static_cast<Coeff>(s);
    Coeff c = pow(z, q, p);
    Coeff t = pow(a, q, p);
    Coeff r = pow(a, (q + 1) / 2, p);
    while (t != 1) {
      Coeff i = 0;
      Coeff tt = t;
      while (tt != 1) {
        tt = mul(tt, tt, p);
        ++i;
      }
      Coeff b = c;
      for (Coeff j = 0; j + 1 < m - i; ++j) b = mul(b, b, p);
      m = i;
      c = mul(b, b, p);
      t = mul(t, c, p);
      r = mul(r, b, p);
    }
    return std::min(r, neg(r, p));
  }
};

/// Dense polynomial over F_p in canonical form.
class FpPoly {
 public:
  /// Zero polynomial with no modulus attached; only useful as a placeholder.
  FpPoly() = default;

  FpPoly(Coeff p, std::vector<Coeff> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
  }
  FpPoly(const PrimeModulus& p, std::vector<Coeff> coeffs) : FpPoly(p.value(), std::move(coeffs)) {}

  static FpPoly zero(Coeff p) { return FpPoly(p, {}); }
  static FpPoly constant(Coeff p, std::int64_t c) { return FpPoly(p, {Fp::from_int(c, p)}); }
  static FpPoly one(Coeff p) { return constant(p, 1); }
  static FpPoly t(Coeff p) { return FpPoly(p, {0, 1}); }
  static FpPoly monomial(Coeff p, std::int64_t c, std::size_t e) {
    std::vector<Coeff> v(e + 1, 0);
    v[e] = Fp::from_int(c, p);
    return FpPoly(p, std::move(v));
  }
  /// t - c
  static FpPoly linear(Coeff p, Coeff root) { return FpPoly(p, {Fp::neg(root % p, p), 1}); }
  /// Convenience for literal coefficient lists (lowest degree first, signed).
  static FpPoly from_ints(Coeff p, std::initializer_list<std::int64_t> cs) {
    std::vector<Coeff> v;
    v.reserve(cs.size());
    for (auto x : cs) v.push_back(Fp::from_int(x, p));
    return FpPoly(p, std::move(v));
  }

  Coeff p() const noexcept { return p_; }
  int degree() const noexcept { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  Coeff lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  Coeff operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  std::span<const Coeff> coeffs() const noexcept { return c_; }

  FpPoly monic() const {
    if (is_zero()) return *this;
    return scaled(Fp::inv(lead(), p_));
  }
  FpPoly scaled(Coeff s) const {
    s %= p_;
    std::vector<Coeff> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = Fp::mul(c_[i], s, p_);
    return FpPoly(p_, std::move(v));
  }
  /// Multiply by t^k.
  FpPoly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Coeff> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return FpPoly(p_, std::move(v));
  }
  /// Largest k with t^k | this (this nonzero).
  int low_order() const {
    if (is_zero()) throw Error(ErrorCode::ZeroInput, "low_order of zero polynomial");
    int k = 0;
    while (c_[k] == 0) ++k;
    return k;
  }
  Coeff eval(Coeff x) const {
    std::uint64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = (r * x + c_[i]) % p_;
    return static_cast<Coeff>(r);
  }

  FpPoly operator-() const {
    std::vector<Coeff> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = Fp::neg(c_[i], p_);
    return FpPoly(p_, std::move(v));
  }
  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    Coeff p = common(a, b);
    std::vector<Coeff> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Fp::add(a[i], b[i], p);
    return FpPoly(p, std::move(v));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    Coeff p = common(a, b);
    std::vector<Coeff> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Fp::sub(a[i], b[i], p);
    return FpPoly(p, std::move(v));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    Coeff p = common(a, b);
    if (a.is_zero() || b.is_zero()) return zero(p);
    const std::size_t n = a.c_.size(), m = b.c_.size();
    std::vector<Coeff> v(n + m - 1);
    if (p < (1u << 21)) {
      // products < 2^42, so up to 2^22 of them accumulate without overflow
      std::vector<std::uint64_t> acc(n + m - 1, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t ai = a.c_[i];
        if (!ai) continue;
        std::uint64_t* row = acc.data() + i;
        for (std::size_t j = 0; j < m; ++j) row[j] += ai * b.c_[j];
      }
      for (std::size_t k = 0; k < acc.size(); ++k) v[k] = static_cast<Coeff>(acc[k] % p);
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) v[i + j] = Fp::add(v[i + j], Fp::mul(a.c_[i], b.c_[j], p), p);
    }
    return FpPoly(p, std::move(v));
  }
  FpPoly& operator+=(const FpPoly& o) { return *this = *this + o; }
  FpPoly& operator-=(const FpPoly& o) { return *this = *this - o; }
  FpPoly& operator*=(const FpPoly& o) { return *this = *this * o; }

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  /// Degree first, then coefficients from the top down.
  std::strong_ordering operator<=>(const FpPoly& o) const {
    if (auto c = p_ <=> o.p_; c != 0) return c;
    if (auto c = c_.size() <=> o.c_.size(); c != 0) return c;
    for (std::size_t i = c_.size(); i-- > 0;)
      if (auto c = c_[i] <=> o.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  static Coeff common(const FpPoly& a, const FpPoly& b) {
    if (a.p_ != b.p_) throw Error(ErrorCode::ModulusMismatch, "operands over F_" + std::to_string(a.p_) + " and F_" + std::to_string(b.p_));
    return a.p_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Coeff p_ = 0;
  std::vector<Coeff> c_;
};

inline FpPoly operator*(Coeff s, const FpPoly& a) { return a.scaled(s); }

// ---------------------------------------------------------------------------
// Division, gcd, composition

struct DivRem {
  FpPoly quotient;
  FpPoly remainder;
};

inline DivRem poly_divrem(const FpPoly& a, const FpPoly& b) {
  const Coeff p = FpPoly::common(a, b);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  if (a.degree() < b.degree()) return {FpPoly::zero(p), a};
  std::vector<Coeff> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const Coeff inv_lead = Fp::inv(b.lead(), p);
  std::vector<Coeff> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  auto bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    Coeff c = r[i];
    if (!c) continue;
    c = Fp::mul(c, inv_lead, p);
    q[i - db] = c;
    const Coeff nc = Fp::neg(c, p);
    for (int j = 0; j <= db; ++j) r[i - db + j] = Fp::add(r[i - db + j], Fp::mul(nc, bc[j], p), p);
  }
  r.resize(static_cast<std::size_t>(db));
  return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}

inline FpPoly operator%(const FpPoly& a, const FpPoly& b) { return poly_divrem(a, b).remainder; }
inline FpPoly operator/(const FpPoly& a, const FpPoly& b) { return poly_divrem(a, b).quotient; }

/// Monic gcd.
inline FpPoly poly_gcd(FpPoly a, FpPoly b) {
  FpPoly::common(a, b);
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::ZeroInput, "gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

struct ExtGcd {
  FpPoly gcd, s, t;  // s*a + t*b = gcd
};

inline ExtGcd poly_ext_gcd(const FpPoly& a, const FpPoly& b) {
  const Coeff p = FpPoly::common(a, b);
  FpPoly r0 = a, r1 = b, s0 = FpPoly::one(p), s1 = FpPoly::zero(p), t0 = FpPoly::zero(p), t1 = FpPoly::one(p);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divrem(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Coeff li = Fp::inv(r0.lead(), p);
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

inline FpPoly derivative(const FpPoly& a) {
  const Coeff p = a.p();
  if (a.degree() <= 0) return FpPoly::zero(p);
  std::vector<Coeff> v(static_cast<std::size_t>(a.degree()));
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) v[i - 1] = Fp::mul(a[i], static_cast<Coeff>(i % p), p);
  return FpPoly(p, std::move(v));
}

inline FpPoly poly_pow(FpPoly base, std::uint64_t e) {
  FpPoly r = FpPoly::one(base.p());
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

inline FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m) { return (a * b) % m; }

inline FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& m) {
  FpPoly r = FpPoly::one(base.p()) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return r;
}

/// f(g(t)) by Horner's rule.
inline FpPoly poly_compose(const FpPoly& f, const FpPoly& g) {
  const Coeff p = FpPoly::common(f, g);
  FpPoly r = FpPoly::zero(p);
  for (int i = f.degree(); i >= 0; --i) r = r * g + FpPoly::constant(p, f[static_cast<std::size_t>(i)]);
  return r;
}

/// f(t^k), by spreading exponents.
inline FpPoly stretch(const FpPoly& f, std::size_t k) {
  if (f.is_zero() || k == 1) return f;
  std::vector<Coeff> v(static_cast<std::size_t>(f.degree()) * k + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) v[i * k] = f[i];
  return FpPoly(f.p(), std::move(v));
}

/// f(a*t + b) made into a new polynomial (affine substitution).
inline FpPoly affine_substitute(const FpPoly& f, Coeff a, Coeff b) {
  const Coeff p = f.p();
  return poly_compose(f, FpPoly(p, {b % p, a % p}));
}

/// Exact quotient; throws if b does not divide a.
inline FpPoly exact_div(const FpPoly& a, const FpPoly& b) {
  auto [q, r] = poly_divrem(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  return q;
}

// ---------------------------------------------------------------------------
// Text form

/// Sparse "c*t^e" terms, descending exponents, coefficients in 0..p-1.
/// A unit coefficient is omitted and t^1 is written as t.
inline std::string to_string(const FpPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.degree(); i >= 0; --i) {
    Coeff c = a[static_cast<std::size_t>(i)];
    if (!c) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + "*";
    s += "t";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Places and factorizations

/// A closed point of P^1 over F_p: infinity or a monic irreducible.
class Place {
 public:
  static Place infinity() { return Place(); }
  /// No irreducibility test; use make_finite for checked construction.
  static Place finite_unchecked(FpPoly monic_irreducible) {
    Place pl;
    pl.poly_ = std::move(monic_irreducible);
    return pl;
  }
  static Place make_finite(FpPoly pi);  // checks monic + irreducible

  bool is_infinity() const noexcept { return !poly_.has_value(); }
  const FpPoly& poly() const {
    if (!poly_) throw Error(ErrorCode::InvalidArgument, "the place at infinity has no polynomial");
    return *poly_;
  }
  int degree() const { return poly_ ? poly_->degree() : 1; }
  /// For degree-one finite places, the root.
  std::optional<Coeff> rational_point() const {
    if (!poly_ || poly_->degree() != 1) return std::nullopt;
    return Fp::neg((*poly_)[0], poly_->p());
  }
  std::string to_string() const { return poly_ ? dsmodp::to_string(*poly_) : "inf"; }

  bool operator==(const Place& o) const = default;
  std::strong_ordering operator<=>(const Place& o) const {
    // infinity sorts last
    if (is_infinity() || o.is_infinity()) return is_infinity() <=> o.is_infinity();
    return *poly_ <=> *o.poly_;
  }

 private:
  std::optional<FpPoly> poly_;
};

struct Factorization {
  Coeff unit = 1;
  std::vector<std::pair<FpPoly, int>> factors;

  FpPoly expand(Coeff p) const {
    FpPoly r = FpPoly::constant(p, unit);
    for (const auto& [f, m] : factors) r *= poly_pow(f, static_cast<std::uint64_t>(m));
    return r;
  }
  int multiplicity_of(const FpPoly& pi) const {
    for (const auto& [f, m] : factors)
      if (f == pi) return m;
    return 0;
  }
  bool operator==(const Factorization&) const = default;
};

namespace detail {

/// Inverse of the Frobenius on a polynomial whose exponents are all multiples of p.
inline FpPoly pth_root(const FpPoly& a) {
  const Coeff p = a.p();
  if (a.is_zero()) return a;
  std::vector<Coeff> v(static_cast<std::size_t>(a.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i] == 0) continue;
    if (i % p != 0) throw Error(ErrorCode::InvalidArgument, "not a p-th power");
    v[i / p] = a[i];
  }
  return FpPoly(p, std::move(v));
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime squarefree
/// parts with their multiplicities.
inline void squarefree_parts(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  const Coeff p = f.p();
  if (f.degree() <= 0) return;
  FpPoly c = poly_gcd(f, derivative(f));
  FpPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = poly_gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), mult * static_cast<int>(p), out);
}

/// Distinct-degree factorization of a squarefree monic polynomial.
inline std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) {
  const Coeff p = f.p();
  std::vector<std::pair<FpPoly, int>> out;
  const FpPoly x = FpPoly::t(p);
  FpPoly h = x % f;
  int d = 1;
  while (f.degree() >= 2 * d) {
    h = powmod(h, p, f);
    FpPoly g = poly_gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
    ++d;
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

inline FpPoly random_poly(Coeff p, int deg_below, std::mt19937_64& rng) {
  std::uniform_int_distribution<Coeff> dist(0, p - 1);
  std::vector<Coeff> v(static_cast<std::size_t>(deg_below));
  for (auto& c : v) c = dist(rng);
  return FpPoly(p, std::move(v));
}

/// Cantor-Zassenhaus: f squarefree monic, product of irreducibles of degree d.
inline void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  const Coeff p = f.p();
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  for (;;) {
    FpPoly r = random_poly(p, f.degree(), rng);
    if (r.degree() <= 0) continue;
    FpPoly s;
    if (p == 2) {
      // trace map r + r^2 + ... + r^(2^(d-1))
      FpPoly acc = r % f, cur = r % f;
      for (int i = 1; i < d; ++i) {
        cur = mulmod(cur, cur, f);
        acc += cur;
      }
      s = acc;
    } else {
      // r^((p^d - 1)/2) = prod_i Frob^i(r^((p-1)/2))
      FpPoly u = powmod(r, (p - 1) / 2, f);
      FpPoly acc = u, cur = u;
      for (int i = 1; i < d; ++i) {
        cur = powmod(cur, p, f);
        acc = mulmod(acc, cur, f);
      }
      s = acc - FpPoly::one(p);
    }
    if (s.is_zero()) continue;
    FpPoly g = poly_gcd(f, s);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization into monic irreducibles, sorted by (degree, coefficients).
inline Factorization factor(const FpPoly& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "cannot factor the zero polynomial");
  const Coeff p = a.p();
  Factorization fz;
  fz.unit = a.lead();
  FpPoly m = a.monic();
  // Strip the power of t first; it is by far the most common factor here.
  int k = m.low_order();
  if (k > 0) {
    fz.factors.emplace_back(FpPoly::t(p), k);
    std::vector<Coeff> rest(m.coeffs().begin() + k, m.coeffs().end());
    m = FpPoly(p, std::move(rest));
  }
  std::vector<std::pair<FpPoly, int>> sqf;
  detail::squarefree_parts(m, 1, sqf);
  std::mt19937_64 rng(0x5eed5eedULL);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : detail::distinct_degree(part)) {
      std::vector<FpPoly> irr;
      detail::equal_degree(block, d, rng, irr);
      for (auto& q : irr) fz.factors.emplace_back(std::move(q), mult);
    }
  }
  std::sort(fz.factors.begin(), fz.factors.end());
  // merge equal factors (the squarefree parts are coprime, but be safe)
  std::vector<std::pair<FpPoly, int>> merged;
  for (auto& fm : fz.factors) {
    if (!merged.empty() && merged.back().first == fm.first)
      merged.back().second += fm.second;
    else
      merged.push_back(std::move(fm));
  }
  fz.factors = std::move(merged);
  return fz;
}

inline bool is_irreducible(const FpPoly& a) {
  if (a.degree() < 1) return false;
  auto fz = factor(a);
  return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

inline bool is_squarefree(const FpPoly& a) {
  if (a.is_zero()) return false;
  if (a.degree() <= 0) return true;
  FpPoly d = derivative(a);
  if (d.is_zero()) return false;
  return poly_gcd(a, d).degree() == 0;
}

inline Place Place::make_finite(FpPoly pi) {
  if (!pi.is_monic() || !is_irreducible(pi)) throw Error(ErrorCode::InvalidArgument, dsmodp::to_string(pi) + " is not monic irreducible");
  return finite_unchecked(std::move(pi));
}

/// Largest k with pi^k | a.
inline int valuation(const FpPoly& a, const FpPoly& pi) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "valuation of the zero polynomial");
  if (pi.degree() < 1) throw Error(ErrorCode::InvalidArgument, "valuation at a constant");
  if (pi.degree() == 1 && pi[0] == 0) return a.low_order();
  int k = 0;
  FpPoly cur = a;
  for (;;) {
    auto [q, r] = poly_divrem(cur, pi);
    if (!r.is_zero()) return k;
    cur = std::move(q);
    ++k;
  }
}

inline int valuation(const FpPoly& a, const Place& place) {
  if (place.is_infinity()) throw Error(ErrorCode::InvalidArgument, "valuation at infinity needs a weight; use the surface API");
  return valuation(a, place.poly());
}

/// s with s^2 = a and lead(s) in {1..(p-1)/2}, or nullopt if a is not a square.
inline std::optional<FpPoly> poly_sqrt(const FpPoly& a) {
  const Coeff p = a.p();
  if (a.is_zero()) return a;
  if (a.degree() % 2) return std::nullopt;
  if (p == 2) {
    std::vector<Coeff> v(static_cast<std::size_t>(a.degree() / 2) + 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
      if (a[i] && i % 2) return std::nullopt;
      if (i % 2 == 0) v[i / 2] = a[i];
    }
    return FpPoly(p, std::move(v));
  }
  auto lead_root = Fp::sqrt(a.lead(), p);
  if (!lead_root) return std::nullopt;
  const int n = a.degree() / 2;
  std::vector<Coeff> s(static_cast<std::size_t>(n) + 1, 0);
  s[n] = *lead_root;
  const Coeff inv2s = Fp::inv(Fp::mul(2, s[n], p), p);
  // coefficient of t^(2n-k) determines s_(n-k)
  for (int k = 1; k <= n; ++k) {
    std::uint64_t known = 0;
    for (int i = n - k + 1; i < n; ++i) {
      int j = 2 * n - k - i;
      if (j < n - k + 1 || j > n - 1) continue;
      known = (known + std::uint64_t(s[i]) * s[j]) % p;
    }
    Coeff target = Fp::sub(a[static_cast<std::size_t>(2 * n - k)], static_cast<Coeff>(known), p);
    s[n - k] = Fp::mul(target, inv2s, p);
  }
  FpPoly r(p, std::move(s));
  if (r * r != a) return std::nullopt;
  if (r.lead() > (p - 1) / 2) r = -r;
  return r;
}

}  // namespace dsmodp
