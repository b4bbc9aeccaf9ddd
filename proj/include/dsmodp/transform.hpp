#pragma once
// Pulling surfaces back along maps of the line, quadratic twists, and the
// branching data of a map N/D : P^1 -> P^1.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsmodp/gfpoly.hpp"
#include "dsmodp/kodaira.hpp"
#include "dsmodp/surface.hpp"

namespace dsmodp {

/// Sum_i P_i N^i D^(w-i), i.e. D^w P(N/D), for w >= deg P.
inline FpPoly homogeneous_compose(const FpPoly& P, const FpPoly& N, const FpPoly& D, int w) {
  const Coeff p = FpPoly::common(N, D);
  if (P.is_zero()) return FpPoly::zero(p);
  if (D.is_one()) return poly_compose(P, N);
  // Horner in two variables: ((P_d N + P_{d-1} D) N + P_{d-2} D^2) ...
  const int d = P.degree();
  std::vector<FpPoly> dpow{FpPoly::one(p)};
  for (int i = 1; i <= d; ++i) dpow.push_back(dpow.back() * D);
  FpPoly acc = FpPoly::constant(p, P[static_cast<std::size_t>(d)]);
  for (int i = d - 1; i >= 0; --i) acc = acc * N + dpow[static_cast<std::size_t>(d - i)].scaled(P[static_cast<std::size_t>(i)]);
  return acc * poly_pow(D, static_cast<std::uint64_t>(w - d));
}

/// t -> N(t)/D(t) with gcd(N, D) = 1 and D monic.
class RationalMap {
 public:
  static RationalMap make(FpPoly N, FpPoly D) {
    FpPoly::common(N, D);
    if (D.is_zero()) throw Error(ErrorCode::DegenerateMap, "denominator is zero");
    if (poly_gcd(N, D).degree() > 0) throw Error(ErrorCode::DegenerateMap, "numerator and denominator share a factor");
    Coeff li = Fp::inv(D.lead(), D.p());
    N = N.scaled(li);
    D = D.scaled(li);
    if (std::max(N.degree(), D.degree()) < 1) throw Error(ErrorCode::DegenerateMap, "constant map");
    return RationalMap(std::move(N), std::move(D));
  }
  static RationalMap polynomial(FpPoly N) {
    Coeff p = N.p();
    return make(std::move(N), FpPoly::one(p));
  }
  static RationalMap identity(Coeff p) { return polynomial(FpPoly::t(p)); }
  /// t -> t^d
  static RationalMap power(Coeff p, std::size_t d) { return polynomial(FpPoly::monomial(p, 1, d)); }

  const FpPoly& num() const { return N_; }
  const FpPoly& den() const { return D_; }
  Coeff p() const { return N_.p(); }
  int degree() const { return std::max(N_.degree(), D_.degree()); }
  bool is_polynomial() const { return D_.is_one(); }

  /// this o inner
  RationalMap after(const RationalMap& inner) const {
    const int k = degree();
    return make(homogeneous_compose(N_, inner.N_, inner.D_, k), homogeneous_compose(D_, inner.N_, inner.D_, k));
  }

  bool operator==(const RationalMap&) const = default;
  auto operator<=>(const RationalMap& o) const {
    if (auto c = N_ <=> o.N_; c != 0) return c;
    return D_ <=> o.D_;
  }

 private:
  RationalMap(FpPoly N, FpPoly D) : N_(std::move(N)), D_(std::move(D)) {}
  FpPoly N_, D_;
};

inline std::string to_string(const RationalMap& m) {
  if (m.is_polynomial()) return to_string(m.num());
  return "(" + to_string(m.num()) + ")/(" + to_string(m.den()) + ")";
}

// ---------------------------------------------------------------------------
// Surfaces

inline WeierstrassSurface base_change(const WeierstrassSurface& s, const RationalMap& pi) {
  if (s.p() != pi.p()) throw Error(ErrorCode::ModulusMismatch, "surface and map over different fields");
  const int m = s.weight();
  FpPoly A = homogeneous_compose(s.A(), pi.num(), pi.den(), 4 * m);
  FpPoly B = homogeneous_compose(s.B(), pi.num(), pi.den(), 6 * m);
  return WeierstrassSurface::make(A, B);
}

inline WeierstrassSurface quadratic_twist(const WeierstrassSurface& s, const FpPoly& d) {
  if (d.is_zero() || !is_squarefree(d)) throw Error(ErrorCode::NonSquarefree, to_string(d) + " is not squarefree");
  FpPoly d2 = d * d;
  return WeierstrassSurface::make(d2 * s.A(), d2 * d * s.B());
}

/// t -> t^q. Over F_p, A(t^q) = A(t)^q, so the minimal model is assembled
/// from the factorizations of A and B instead of expanding A^q.
inline WeierstrassSurface frobenius_pullback(const WeierstrassSurface& s, std::uint64_t q) {
  const Coeff p = s.p();
  if (q < p || !is_power_of(q, p)) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a positive power of " + std::to_string(p));
  const FpPoly& A = s.A();
  const FpPoly& B = s.B();
  Factorization fa = A.is_zero() ? Factorization{} : factor(A);
  Factorization fb = B.is_zero() ? Factorization{} : factor(B);
  FpPoly Aq = A.is_zero() ? FpPoly::zero(p) : FpPoly::constant(p, fa.unit);
  FpPoly Bq = B.is_zero() ? FpPoly::zero(p) : FpPoly::constant(p, fb.unit);
  auto big = [](std::uint64_t v) { return v >= static_cast<std::uint64_t>(kInfiniteValuation); };
  for (const auto& [pi, a] : fa.factors) {
    std::uint64_t vB = B.is_zero() ? kInfiniteValuation : static_cast<std::uint64_t>(fb.multiplicity_of(pi));
    std::uint64_t qa = q * static_cast<std::uint64_t>(a);
    std::uint64_t k = std::min(qa / 4, big(vB) ? qa : q * vB / 6);
    Aq *= poly_pow(pi, qa - 4 * k);
  }
  for (const auto& [pi, b] : fb.factors) {
    std::uint64_t vA = A.is_zero() ? kInfiniteValuation : static_cast<std::uint64_t>(fa.multiplicity_of(pi));
    std::uint64_t qb = q * static_cast<std::uint64_t>(b);
    std::uint64_t k = std::min(qb / 6, big(vA) ? qb : q * vA / 4);
    Bq *= poly_pow(pi, qb - 6 * k);
  }
  return WeierstrassSurface::make(Aq, Bq);
}

// ---------------------------------------------------------------------------
// Ramification

/// A point of P^1(F_p).
struct CritValue {
  bool inf = false;
  Coeff c = 0;

  static CritValue infinity() { return {true, 0}; }
  static CritValue finite(Coeff v) { return {false, v}; }

  bool operator==(const CritValue&) const = default;
  /// infinity first, then 0, 1, 2, ...
  auto operator<=>(const CritValue& o) const {
    if (inf != o.inf) return o.inf <=> inf;
    return c <=> o.c;
  }
};

inline std::string to_string(CritValue v) { return v.inf ? "inf" : std::to_string(v.c); }

struct RamificationProfile {
  int separable_degree = 1;
  std::uint64_t insep = 1;
  std::map<CritValue, std::vector<int>> branches;  // only values with some index > 1; indices descending

  bool operator==(const RamificationProfile&) const = default;
};

inline std::string to_string(const RamificationProfile& r) {
  std::string s = "{";
  for (const auto& [v, idx] : r.branches) {
    if (s.size() > 1) s += ", ";
    s += to_string(v) + ":(";
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    s += ")";
  }
  return s + ", insep " + std::to_string(r.insep) + "}";
}

/// Writes pi = sep(t^q) with sep separable; returns (sep, q).
inline std::pair<RationalMap, std::uint64_t> separable_part(const RationalMap& pi) {
  const Coeff p = pi.p();
  FpPoly N = pi.num(), D = pi.den();
  std::uint64_t q = 1;
  while ((derivative(N) * D - N * derivative(D)).is_zero()) {
    N = detail::pth_root(N);
    D = detail::pth_root(D);
    q *= p;
  }
  return {RationalMap::make(N, D), q};
}

namespace detail {

/// Index multiset over a point, from the factorization of H (the homogenized
/// fibre polynomial) plus the source point at infinity.
inline std::vector<int> indices_from(const FpPoly& H, int inf_index) {
  std::vector<int> out;
  for (const auto& [w, m] : factor(H).factors)
    for (int i = 0; i < w.degree(); ++i) out.push_back(m);
  if (inf_index > 0) out.push_back(inf_index);
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline FpPoly fibre_poly(const RationalMap& pi, CritValue v) {
  if (v.inf) return pi.den();
  return pi.num() - pi.den().scaled(v.c);
}

}  // namespace detail

inline std::vector<int> fibre_indices(const RationalMap& pi, CritValue v) {
  FpPoly H = detail::fibre_poly(pi, v);
  return detail::indices_from(H, pi.degree() - std::max(H.degree(), 0));
}

inline RamificationProfile ramification_profile(const RationalMap& pi) {
  auto [sep, q] = separable_part(pi);
  const Coeff p = pi.p();
  const FpPoly& N = sep.num();
  const FpPoly& D = sep.den();
  const int n = sep.degree();
  std::vector<CritValue> candidates;
  // source infinity
  if (N.degree() > D.degree())
    candidates.push_back(CritValue::infinity());
  else if (N.degree() < D.degree())
    candidates.push_back(CritValue::finite(0));
  else
    candidates.push_back(CritValue::finite(Fp::mul(N.lead(), Fp::inv(D.lead(), p), p)));
  FpPoly W = derivative(N) * D - N * derivative(D);
  if (W.degree() > 0) {
    for (const auto& [w, m] : factor(W).factors) {
      FpPoly Dw = D % w;
      if (Dw.is_zero()) {
        candidates.push_back(CritValue::infinity());
        continue;
      }
      ExtGcd eg = poly_ext_gcd(Dw, w);
      FpPoly val = (N * eg.s) % w;
      if (val.degree() > 0)
        throw Error(ErrorCode::IrrationalBranching, "critical value at the zero of " + to_string(w) + " is not in F_" + std::to_string(p));
      candidates.push_back(CritValue::finite(val[0]));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  RamificationProfile r;
  r.separable_degree = n;
  r.insep = q;
  for (CritValue v : candidates) {
    auto idx = fibre_indices(sep, v);
    if (!idx.empty() && idx.front() > 1) r.branches[v] = std::move(idx);
  }
  return r;
}

/// Places over `place` with their ramification indices (inseparable part included).
inline std::vector<std::pair<Place, int>> pullback_place(const RationalMap& pi, const Place& place) {
  const int n = pi.degree();
  std::vector<std::pair<Place, int>> out;
  FpPoly H;
  int k = 1;
  if (place.is_infinity()) {
    H = pi.den();
  } else {
    k = place.degree();
    H = homogeneous_compose(place.poly(), pi.num(), pi.den(), k);
  }
  if (H.degree() > 0)
    for (auto& [w, m] : factor(H).factors) out.emplace_back(Place::finite_unchecked(std::move(w)), m);
  int rest = k * n - std::max(H.degree(), 0);
  if (rest > 0) out.emplace_back(Place::infinity(), rest / k);
  return out;
}

/// Fibres of the pullback, computed from the fibre types and the local
/// ramification of pi alone.
inline Configuration predict_configuration(const Configuration& c, const RationalMap& pi) {
  const Coeff p = pi.p();
  const std::uint64_t q = separable_part(pi).second;
  Configuration out;
  out.p = c.p;
  for (const auto& fa : c.fibres) {
    for (const auto& [w, e] : pullback_place(pi, fa.place)) {
      if ((static_cast<std::uint64_t>(e) / q) % p == 0)
        throw Error(ErrorCode::Wild, "index " + std::to_string(e) + " over " + fa.place.to_string() + " is wild");
      FibreType t = base_change_type(fa.type, e);
      if (!t.is_smooth()) out.fibres.push_back({w, t, euler_number(t)});
    }
  }
  out.finish();
  return out;
}

/// Geometric fibre counts after base change, from the profile only. Cusps must
/// be rational or at infinity; `alignment` sends a cusp to the critical value
/// it sits on, and cusps missing from it are taken as unramified.
struct PredictedTypes {
  std::map<FibreType, int> counts;
  int euler = 0;
  int conductor_degree = 0;
  bool operator==(const PredictedTypes&) const = default;
};

inline PredictedTypes predict_configuration(const Configuration& c, const RamificationProfile& prof,
                                            const std::map<Place, CritValue>& alignment) {
  PredictedTypes out;
  auto add = [&](FibreType t, int count) {
    if (t.is_smooth() || count == 0) return;
    out.counts[t] += count;
    auto li = local_invariants(t);
    out.euler += count * li.euler;
    out.conductor_degree += count * li.conductor_exponent;
  };
  for (const auto& fa : c.fibres) {
    auto it = alignment.find(fa.place);
    const std::vector<int>* idx = nullptr;
    if (it != alignment.end()) {
      if (fa.place.degree() != 1) throw Error(ErrorCode::InvalidArgument, "only rational cusps can be aligned");
      if (auto b = prof.branches.find(it->second); b != prof.branches.end()) idx = &b->second;
    }
    if (!idx) {
      add(base_change_type(fa.type, static_cast<long long>(prof.insep)), fa.place.degree() * prof.separable_degree);
      continue;
    }
    int listed = 0;
    for (int e : *idx) {
      if (e % static_cast<int>(c.p) == 0) throw Error(ErrorCode::Wild, "index " + std::to_string(e) + " is wild");
      add(base_change_type(fa.type, static_cast<long long>(e) * static_cast<long long>(prof.insep)), 1);
      listed += e;
    }
    (void)listed;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search for maps with prescribed branching

namespace detail {

/// Calls fn on every monic polynomial of degree d, in increasing order.
inline void for_each_monic(Coeff p, int d, const std::function<bool(const FpPoly&)>& fn) {
  std::vector<Coeff> c(static_cast<std::size_t>(d) + 1, 0);
  c[static_cast<std::size_t>(d)] = 1;
  for (;;) {
    if (!fn(FpPoly(p, c))) return;
    int i = 0;
    while (i < d && ++c[static_cast<std::size_t>(i)] == p) c[static_cast<std::size_t>(i++)] = 0;
    if (i == d) return;
  }
}

/// Index multiset -> (index, count) in decreasing index order.
inline std::vector<std::pair<int, int>> shape(const std::vector<int>& idx) {
  std::map<int, int, std::greater<>> m;
  for (int e : idx) ++m[e];
  return {m.begin(), m.end()};
}

/// Enumerates prod_k H_k^k with H_k monic squarefree of degree count_k and
/// pairwise coprime; the first H is t when `pin_first` is set.
inline void for_each_shape(Coeff p, const std::vector<std::pair<int, int>>& sh, bool pin_first, const FpPoly& avoid,
                           const std::function<bool(const FpPoly&)>& fn) {
  std::function<bool(std::size_t, const FpPoly&, const FpPoly&)> rec = [&](std::size_t i, const FpPoly& acc, const FpPoly& used) -> bool {
    if (i == sh.size()) return fn(acc);
    auto [e, cnt] = sh[i];
    auto step = [&](const FpPoly& h) -> bool {
      if (!is_squarefree(h)) return true;
      if (poly_gcd(h, used).degree() > 0) return true;
      return rec(i + 1, acc * poly_pow(h, static_cast<std::uint64_t>(e)), used * h);
    };
    if (i == 0 && pin_first) return step(FpPoly::t(p));
    bool go = true;
    for_each_monic(p, cnt, [&](const FpPoly& h) { return go = step(h); });
    return go;
  };
  rec(0, FpPoly::one(p), avoid.is_zero() ? FpPoly::one(p) : avoid);
}

}  // namespace detail

/// Least map of degree d with the given branching over infinity, 0 and 1.
/// Infinity maps to infinity with the largest listed index; when the largest
/// index over 0 is attained once, that point is t = 0, and then the unique
/// largest-index point over 1 (if any) is t = 1.
inline std::optional<RationalMap> find_base_change(Coeff p, int d, const RamificationProfile& target) {
  if (d < 1) return std::nullopt;
  auto get = [&](CritValue v) {
    auto it = target.branches.find(v);
    return it == target.branches.end() ? std::vector<int>(static_cast<std::size_t>(d), 1) : it->second;
  };
  for (const auto& [v, idx] : target.branches) {
    int s = 0;
    for (int e : idx) s += e;
    if (s != d) return std::nullopt;
    if (!v.inf && v.c >= p) return std::nullopt;
  }
  std::vector<int> inf_idx = get(CritValue::infinity());
  std::vector<int> zero_idx = get(CritValue::finite(0));
  std::sort(inf_idx.rbegin(), inf_idx.rend());
  std::vector<int> poles(inf_idx.begin() + 1, inf_idx.end());
  auto zero_shape = detail::shape(zero_idx);
  auto pole_shape = detail::shape(poles);
  const bool pin0 = zero_shape.front().second == 1;
  const bool has1 = target.branches.count(CritValue::finite(1)) > 0;
  std::vector<int> one_idx = get(CritValue::finite(1));
  auto one_shape = detail::shape(one_idx);
  const bool pin1 = pin0 && has1 && one_shape.front().second == 1;
  int expected_gcd_deg = 0;
  bool tame1 = true;
  for (auto [e, cnt] : one_shape) {
    expected_gcd_deg += (e - 1) * cnt;
    if (e % static_cast<int>(p) == 0) tame1 = false;
  }

  std::optional<RationalMap> best;
  RamificationProfile want = target;
  want.separable_degree = d;
  want.insep = 1;
  for (auto& [v, idx] : want.branches) std::sort(idx.rbegin(), idx.rend());
  detail::for_each_shape(p, pole_shape, false, FpPoly::zero(p), [&](const FpPoly& D) {
    detail::for_each_shape(p, zero_shape, pin0, D, [&](const FpPoly& H) {
      for (Coeff c = 1; c < p; ++c) {
        FpPoly N = H.scaled(c);
        if (best && N > best->num()) continue;
        FpPoly P1 = N - D;
        if (P1.is_zero()) continue;
        if (pin1 && valuation(P1, FpPoly::linear(p, 1)) != one_shape.front().first) continue;
        if (has1 && tame1) {
          FpPoly dP = derivative(P1);
          int g = dP.is_zero() ? P1.degree() : poly_gcd(P1, dP).degree();
          if (g != expected_gcd_deg - (d - P1.degree() > 0 ? d - P1.degree() - 1 : 0)) continue;
        }
        RationalMap m = RationalMap::make(N, D);
        RamificationProfile got;
        try {
          got = ramification_profile(m);
        } catch (const Error&) {
          continue;
        }
        if (got != want) continue;
        if (!best || m < *best) best = m;
      }
      return true;
    });
    return true;
  });
  return best;
}

}  // namespace dsmodp
