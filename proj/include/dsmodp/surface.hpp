#pragma once
// Weierstrass models y^2 = x^3 + A(t) x + B(t) over F_p(t), p > 3.
//
// The place at infinity is read off the degrees: with the least weight k such
// that deg A <= 4k and deg B <= 6k, the model s^{4k}A(1/s), s^{6k}B(1/s) is
// integral and automatically minimal at s = 0.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsmodp/gfpoly.hpp"
#include "dsmodp/kodaira.hpp"

namespace dsmodp {

/// -16 (4A^3 + 27B^2)
inline FpPoly discriminant(const FpPoly& A, const FpPoly& B) {
  const Coeff p = FpPoly::common(A, B);
  FpPoly s = (A * A * A).scaled(4 % p) + (B * B).scaled(27 % p);
  return s.scaled(Fp::from_int(-16, p));
}

inline int valuation_or_inf(const FpPoly& a, const FpPoly& pi) { return a.is_zero() ? kInfiniteValuation : valuation(a, pi); }

namespace detail {
inline int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }
}  // namespace detail

/// Least k with deg A <= 4k and deg B <= 6k.
inline int weight(const FpPoly& A, const FpPoly& B) {
  int k = 0;
  if (!A.is_zero()) k = std::max(k, detail::ceil_div(A.degree(), 4));
  if (!B.is_zero()) k = std::max(k, detail::ceil_div(B.degree(), 6));
  return k;
}

struct Minimalized {
  FpPoly A, B;
  Factorization removed;  // pi^k for each place where pi^{4k}, pi^{6k} came out
};

inline Minimalized minimalize(const FpPoly& A, const FpPoly& B) {
  const Coeff p = FpPoly::common(A, B);
  if (discriminant(A, B).is_zero()) throw Error(ErrorCode::IsotrivialOrSingular, "discriminant vanishes identically");
  Minimalized out{A, B, Factorization{1, {}}};
  FpPoly g = A.is_zero() ? B.monic() : (B.is_zero() ? A.monic() : poly_gcd(A, B));
  if (g.degree() < 1) return out;
  for (const auto& [pi, m] : factor(g).factors) {
    int vA = valuation_or_inf(out.A, pi);
    int vB = valuation_or_inf(out.B, pi);
    int k = std::min(vA / 4, vB / 6);
    if (k <= 0) continue;
    if (!out.A.is_zero()) out.A = exact_div(out.A, poly_pow(pi, 4u * k));
    if (!out.B.is_zero()) out.B = exact_div(out.B, poly_pow(pi, 6u * k));
    out.removed.factors.emplace_back(pi, k);
  }
  (void)p;
  return out;
}

class WeierstrassSurface {
 public:
  /// Checks p > 3 and Delta != 0, then minimalizes.
  static WeierstrassSurface make(const FpPoly& A, const FpPoly& B) {
    const Coeff p = FpPoly::common(A, B);
    if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "characteristic " + std::to_string(p) + " is not supported");
    auto m = minimalize(A, B);
    return WeierstrassSurface(std::move(m.A), std::move(m.B));
  }
  /// From y^2 = x^3 - 3f x + 2g.
  static WeierstrassSurface from_fg(const FpPoly& f, const FpPoly& g) {
    const Coeff p = FpPoly::common(f, g);
    return make(f.scaled(Fp::from_int(-3, p)), g.scaled(2));
  }

  Coeff p() const { return A_.p(); }
  const FpPoly& A() const { return A_; }
  const FpPoly& B() const { return B_; }
  FpPoly discriminant() const { return dsmodp::discriminant(A_, B_); }
  int weight() const { return dsmodp::weight(A_, B_); }
  /// f = -A/3
  FpPoly f() const { return A_.scaled(Fp::inv(Fp::from_int(-3, p()), p())); }
  /// g = B/2
  FpPoly g() const { return B_.scaled(Fp::inv(2, p())); }

  bool operator==(const WeierstrassSurface&) const = default;

 private:
  WeierstrassSurface(FpPoly A, FpPoly B) : A_(std::move(A)), B_(std::move(B)) {}
  FpPoly A_, B_;
};

struct DSPair {
  FpPoly f, g;
  int M = 0;
  bool operator==(const DSPair&) const = default;
};

/// Validates the degree shape (2M, 3M) and f^3 != g^2.
inline DSPair make_ds_pair(const FpPoly& f, const FpPoly& g) {
  const Coeff p = FpPoly::common(f, g);
  if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "characteristic " + std::to_string(p) + " is not supported");
  int df = f.degree(), dg = g.degree();
  if (df < 2 || df % 2 || dg != 3 * (df / 2))
    throw Error(ErrorCode::BadDegrees, "need deg f = 2M, deg g = 3M with M >= 1; got " + std::to_string(df < 0 ? -1 : df) + ", " + std::to_string(dg < 0 ? -1 : dg));
  if (f * f * f == g * g) throw Error(ErrorCode::IsotrivialOrSingular, "f^3 = g^2");
  return DSPair{f, g, df / 2};
}

inline std::pair<WeierstrassSurface, DSPair> from_ds_pair(const FpPoly& f, const FpPoly& g) {
  DSPair pair = make_ds_pair(f, g);
  return {WeierstrassSurface::from_fg(f, g), std::move(pair)};
}

struct FibreAssignment {
  Place place;
  FibreType type;
  int vdelta = 0;
  bool operator==(const FibreAssignment&) const = default;
};

struct Configuration {
  Coeff p = 0;
  std::vector<FibreAssignment> fibres;  // sorted by place, infinity last
  int euler = 0;
  int conductor_degree = 0;

  const FibreAssignment* at_infinity() const {
    for (const auto& f : fibres)
      if (f.place.is_infinity()) return &f;
    return nullptr;
  }
  const FibreAssignment* at(const Place& pl) const {
    for (const auto& f : fibres)
      if (f.place == pl) return &f;
    return nullptr;
  }
  /// Geometric fibre counts: each place contributes deg(place) copies.
  std::map<FibreType, int> type_counts() const {
    std::map<FibreType, int> out;
    for (const auto& f : fibres) out[f.type] += f.place.degree();
    return out;
  }

  /// Recomputes euler and conductor degree and sorts.
  void finish() {
    std::sort(fibres.begin(), fibres.end(), [](const auto& a, const auto& b) { return a.place < b.place; });
    euler = 0;
    conductor_degree = 0;
    for (const auto& f : fibres) {
      auto li = local_invariants(f.type);
      euler += f.place.degree() * li.euler;
      conductor_degree += f.place.degree() * li.conductor_exponent;
    }
  }

  /// Synthetic configuration from a list of types: the first goes to infinity,
  /// the rest to the rational places t, t-1, t-2, ...
  static Configuration from_types(Coeff p, const std::vector<FibreType>& types) {
    Configuration c;
    c.p = p;
    Coeff next = 0;
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (types[i].is_smooth()) continue;
      Place pl = Place::infinity();
      if (i > 0) {
        if (next >= p) throw Error(ErrorCode::InvalidArgument, "too many fibres for F_" + std::to_string(p));
        pl = Place::finite_unchecked(FpPoly::linear(p, next++));
      }
      c.fibres.push_back({pl, types[i], euler_number(types[i])});
    }
    c.finish();
    return c;
  }

  bool operator==(const Configuration&) const = default;
};

/// "[I42, 3 II]": geometric multiset, larger Euler numbers first.
inline std::string format_types(const std::map<FibreType, int>& counts) {
  std::vector<std::pair<FibreType, int>> v(counts.begin(), counts.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    int ea = euler_number(a.first), eb = euler_number(b.first);
    if (ea != eb) return ea > eb;
    return a.first < b.first;
  });
  std::string s = "[";
  for (const auto& [t, n] : v) {
    if (t.is_smooth()) continue;
    if (s.size() > 1) s += ", ";
    if (n > 1) s += std::to_string(n) + " ";
    s += to_string(t);
  }
  return s + "]";
}

inline std::string format_types(const Configuration& c) { return format_types(c.type_counts()); }

/// Inverse of format_types, e.g. "[I6, 3 II*]".
inline std::map<FibreType, int> parse_types(std::string_view s) {
  auto trim = [](std::string_view x) {
    while (!x.empty() && x.front() == ' ') x.remove_prefix(1);
    while (!x.empty() && x.back() == ' ') x.remove_suffix(1);
    return x;
  };
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error(ErrorCode::InvalidArgument, "expected [..]");
  s = s.substr(1, s.size() - 2);
  std::map<FibreType, int> out;
  while (!trim(s).empty()) {
    auto comma = s.find(',');
    std::string_view item = trim(s.substr(0, comma));
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
    int n = 1;
    if (auto sp = item.find(' '); sp != std::string_view::npos) {
      n = std::stoi(std::string(item.substr(0, sp)));
      item = trim(item.substr(sp + 1));
    }
    out[parse_fibre_type(item)] += n;
  }
  return out;
}

/// Valuations of (A, B, Delta) at infinity.
struct InfinityValuations {
  int vA, vB, vD;
};

inline InfinityValuations valuations_at_infinity(const FpPoly& A, const FpPoly& B) {
  int k = weight(A, B);
  FpPoly D = discriminant(A, B);
  return {A.is_zero() ? kInfiniteValuation : 4 * k - A.degree(), B.is_zero() ? kInfiniteValuation : 6 * k - B.degree(), 12 * k - D.degree()};
}

inline Configuration configuration(const WeierstrassSurface& s) {
  Configuration c;
  c.p = s.p();
  const FpPoly D = s.discriminant();
  for (const auto& [pi, m] : factor(D).factors) {
    FibreType t = classify_local(valuation_or_inf(s.A(), pi), valuation_or_inf(s.B(), pi), m);
    c.fibres.push_back({Place::finite_unchecked(pi), t, m});
  }
  auto inf = valuations_at_infinity(s.A(), s.B());
  if (inf.vD > 0) c.fibres.push_back({Place::infinity(), classify_local(inf.vA, inf.vB, inf.vD), inf.vD});
  c.finish();
  return c;
}

enum class BoundVerdict { Ok, Warn, Violates };

inline std::string to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Ok: return "OK";
    case BoundVerdict::Warn: return "WARN";
    case BoundVerdict::Violates: return "VIOLATES";
  }
  return "?";
}

/// Characteristic-zero ceilings on I_n and I_m^* indices.
inline BoundVerdict c_bound_verdict(FibreType t, int euler) {
  if (t.kind == FibreKind::I && t.index > 0) return 6 * t.index >= 5 * euler ? BoundVerdict::Violates : BoundVerdict::Ok;
  if (t.kind == FibreKind::IStar && t.index > 0) {
    if (6 * t.index >= 5 * euler - 30) return BoundVerdict::Violates;
    if (6 * t.index == 5 * euler - 36) return BoundVerdict::Warn;
  }
  return BoundVerdict::Ok;
}

inline std::vector<std::pair<FibreAssignment, BoundVerdict>> c_bounds_check(const Configuration& c) {
  std::vector<std::pair<FibreAssignment, BoundVerdict>> out;
  for (const auto& f : c.fibres) out.emplace_back(f, c_bound_verdict(f.type, c.euler));
  return out;
}

inline bool c_bounds_violated(const Configuration& c) {
  for (const auto& [f, v] : c_bounds_check(c))
    if (v == BoundVerdict::Violates) return true;
  return false;
}

inline bool is_power_of(std::uint64_t q, std::uint64_t p) {
  if (q == 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

/// e <= 6 p^d (deg N - 2).
inline bool ps_bound_check(const Configuration& c, std::uint64_t insep_degree = 1) {
  if (c.p != 0 && !is_power_of(insep_degree, c.p)) throw Error(ErrorCode::NotPrimePower, std::to_string(insep_degree) + " is not a power of " + std::to_string(c.p));
  return static_cast<long long>(c.euler) <= 6LL * static_cast<long long>(insep_degree) * (c.conductor_degree - 2);
}

}  // namespace dsmodp
