#pragma once
// Integral points of Y^2 = X^3 + (t^2-1)^2 over F_p[t].

#include <set>
#include <string>
#include <vector>

#include "dsmodp/gfpoly.hpp"

namespace dsmodp {

struct CurvePoint {
  FpPoly X, Y;
  bool operator==(const CurvePoint&) const = default;
  auto operator<=>(const CurvePoint& o) const {
    if (auto c = X <=> o.X; c != 0) return c;
    return Y <=> o.Y;
  }
};

inline std::string to_string(const CurvePoint& P) { return "(" + to_string(P.X) + ", " + to_string(P.Y) + ")"; }

namespace detail {
inline FpPoly curve_constant(Coeff p) {
  FpPoly u = FpPoly::from_ints(p, {-1, 0, 1});
  return u * u;
}
}  // namespace detail

inline bool on_curve(const CurvePoint& P) {
  const Coeff p = FpPoly::common(P.X, P.Y);
  return P.Y * P.Y == P.X * P.X * P.X + detail::curve_constant(p);
}

/// -(t^2+3)^3 + 27(t^2-1)^2 == -t^2(t^2-9)^2, the point S with denominators cleared.
inline bool s_certificate(Coeff p) {
  PrimeModulus check(p);
  FpPoly t2 = FpPoly::from_ints(p, {0, 0, 1});
  FpPoly a = t2 + FpPoly::constant(p, 3), u = t2 - FpPoly::one(p), v = t2 - FpPoly::constant(p, 9);
  return -(a * a * a) + (u * u).scaled(Fp::from_int(27, p)) == -(t2 * v * v);
}

/// A primitive cube root of unity in F_p, the smaller of the two.
inline std::optional<Coeff> cube_root_of_unity(Coeff p) {
  if (p % 3 != 1) return std::nullopt;
  for (Coeff x = 2; x < p; ++x)
    if (Fp::mul(Fp::mul(x, x, p), x, p) == 1) return x;
  return std::nullopt;
}

struct NamedPoint {
  std::string name;
  CurvePoint point;
};

/// P, Q, R; S when sqrt(-3) is in F_p; Frob_q P for q = p^r = 1 mod 6 with deg X <= max_deg.
inline std::vector<NamedPoint> named_points(Coeff p, int max_deg = 18) {
  PrimeModulus check(p);
  if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "p must exceed 3");
  const FpPoly t = FpPoly::t(p), one = FpPoly::one(p), u = t * t - one;
  std::vector<NamedPoint> out{
      {"P", {u, t * u}},
      {"Q", {(t + one).scaled(2), (t + one) * (t + FpPoly::constant(p, 3))}},
      {"R", {FpPoly::zero(p), u}},
  };
  if (auto r = Fp::sqrt(Fp::from_int(-3, p), p)) {
    const Coeff i3 = Fp::inv(3, p);
    FpPoly X = -(t * t + FpPoly::constant(p, 3)).scaled(i3);
    FpPoly Y = (t * (t * t - FpPoly::constant(p, 9))).scaled(Fp::inv(Fp::mul(3, *r, p), p));
    out.push_back({"S", {X, Y}});
  }
  for (std::uint64_t q = p; 2 * (q + 2) / 3 <= static_cast<std::uint64_t>(std::max(max_deg, 0)); q *= p) {
    if (q % 6 != 1) continue;
    out.push_back({"Frob_" + std::to_string(q) + " P", {poly_pow(u, (q + 2) / 3), FpPoly::monomial(p, 1, q) * u}});
  }
  return out;
}

/// phi^i o tau^j, where phi(X, Y) = (rho X, -Y) and tau(t) = -t.
struct SymmetryEl {
  int i = 0;
  int j = 0;

  CurvePoint apply(const CurvePoint& P) const {
    const Coeff p = FpPoly::common(P.X, P.Y);
    CurvePoint out = P;
    if (j % 2) {
      out.X = affine_substitute(out.X, p - 1, 0);
      out.Y = affine_substitute(out.Y, p - 1, 0);
    }
    const int k = ((i % 6) + 6) % 6;
    if (k % 3) {
      auto rho = cube_root_of_unity(p);
      if (!rho) throw Error(ErrorCode::InvalidArgument, "no cube root of unity in F_" + std::to_string(p));
      out.X = out.X.scaled(Fp::pow(*rho, static_cast<std::uint64_t>(k % 3), p));
    }
    if (k % 2) out.Y = -out.Y;
    if (!on_curve(out)) throw Error(ErrorCode::Inconsistent, "image left the curve");
    return out;
  }
};

/// Elements of G defined over F_p: all 12 when p = 1 mod 3, else phi^0, phi^3 with tau.
inline std::vector<SymmetryEl> symmetries(Coeff p) {
  std::vector<SymmetryEl> out;
  const bool full = cube_root_of_unity(p).has_value();
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 6; ++i)
      if (full || i % 3 == 0) out.push_back({i, j});
  return out;
}

inline std::set<CurvePoint> g_orbit(const CurvePoint& P) {
  if (!on_curve(P)) throw Error(ErrorCode::InvalidArgument, to_string(P) + " is not on the curve");
  std::set<CurvePoint> out;
  for (const auto& g : symmetries(P.X.p())) out.insert(g.apply(P));
  return out;
}

inline std::set<CurvePoint> g_saturation(const std::vector<NamedPoint>& pts) {
  std::set<CurvePoint> out;
  for (const auto& n : pts) out.merge(g_orbit(n.point));
  return out;
}

/// Every (X, Y) with deg X <= max_deg. Only deg X <= 1 or even deg X can
/// occur, and then lead(X) is a square.
inline std::set<CurvePoint> enumerate_integral_points(Coeff p, int max_deg) {
  PrimeModulus check(p);
  if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "p must exceed 3");
  if (p > 13 || max_deg > 6) throw Error(ErrorCode::BudgetExceeded, "enumeration is limited to p <= 13 and deg X <= 6");
  std::set<CurvePoint> out;
  if (max_deg < 0) return out;
  const FpPoly c = detail::curve_constant(p);
  std::vector<char> square(p, 0);
  for (Coeff x = 0; x < p; ++x) square[Fp::mul(x, x, p)] = 1;
  std::vector<Coeff> cx(p);
  for (Coeff x = 0; x < p; ++x) cx[x] = c.eval(x);

  auto consider = [&](const std::vector<Coeff>& coeffs) {
    // value check at every point of F_p before the exact square root
    for (Coeff x = 0; x < p; ++x) {
      Coeff v = 0;
      for (std::size_t k = coeffs.size(); k-- > 0;) v = Fp::add(Fp::mul(v, x, p), coeffs[k], p);
      if (!square[Fp::add(Fp::mul(Fp::mul(v, v, p), v, p), cx[x], p)]) return;
    }
    FpPoly X(p, coeffs);
    auto Y = poly_sqrt(X * X * X + c);
    if (!Y) return;
    out.insert({X, *Y});
    out.insert({X, -*Y});
  };
  auto scan = [&](int d, bool square_lead) {
    std::vector<Coeff> coeffs(static_cast<std::size_t>(d + 1), 0);
    for (Coeff lead = 1; lead < p; ++lead) {
      if (square_lead && !square[lead]) continue;
      coeffs[static_cast<std::size_t>(d)] = lead;
      std::fill(coeffs.begin(), coeffs.end() - 1, 0);
      while (true) {
        consider(coeffs);
        std::size_t k = 0;
        while (k < static_cast<std::size_t>(d) && ++coeffs[k] == p) coeffs[k++] = 0;
        if (k == static_cast<std::size_t>(d)) break;
      }
    }
  };
  consider({});
  scan(0, false);
  if (max_deg >= 1) scan(1, false);
  for (int d = 2; d <= max_deg; d += 2) scan(d, true);
  return out;
}

}  // namespace dsmodp
