#pragma once
// Davenport-Stothers pairs mod p: defects, the bounds, the Criterion, and a
// deterministic search for counterexamples built from three rational
// surfaces by base change, Frobenius pullback and quadratic twist.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsmodp/gfpoly.hpp"
#include "dsmodp/kodaira.hpp"
#include "dsmodp/surface.hpp"
#include "dsmodp/transform.hpp"

namespace dsmodp {

// ---------------------------------------------------------------------------
// Bounds

inline int min_defect_bound(int M, Coeff p) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be positive");
  if (M == 1) return 2;
  if (M == 2) return 3;
  if (M % 2) return 4;
  return (p % 12 == 7 || M == 4) ? 5 : 6;
}

/// The n with 5M <= np <= 6M - c, if any.
inline std::optional<int> criterion_witness(int M, Coeff p) {
  const long long c = M % 2 ? 4 : (p % 12 == 7 ? 5 : 6);
  long long n = (5LL * M + p - 1) / p;
  if (n < 1) n = 1;
  if (n * p <= 6LL * M - c) return static_cast<int>(n);
  return std::nullopt;
}

/// True when the Criterion proves DS(M) mod p.
inline bool criterion_holds(int M, Coeff p) { return !criterion_witness(M, p).has_value(); }

// ---------------------------------------------------------------------------
// Reports

struct DSReport {
  Coeff p = 0;
  int M = 0;
  int defect = 0;
  int ds_bound = 0;
  int min_bound = 0;
  bool ds_holds_for_pair = false;
  bool is_counterexample = false;
  bool is_maximal = false;
  FpPoly difference;                                   // f^3 - g^2
  std::vector<FpPoly> common_factors;                  // irreducible factors of gcd(f, g)
  std::vector<std::pair<Place, int>> multiplicative;   // I_m fibres off infinity
  FibreType infinity_type;
  Configuration configuration;
};

inline DSReport ds_report(const FpPoly& f, const FpPoly& g) {
  auto [surface, pair] = from_ds_pair(f, g);
  const Coeff p = f.p();
  DSReport r;
  r.p = p;
  r.M = pair.M;
  r.difference = f * f * f - g * g;
  r.defect = r.difference.degree();
  r.ds_bound = r.M + 1;
  r.min_bound = min_defect_bound(r.M, p);
  r.ds_holds_for_pair = r.defect >= r.ds_bound;
  r.is_counterexample = r.defect <= r.M;
  r.is_maximal = r.is_counterexample && r.defect == r.min_bound;
  FpPoly gc = poly_gcd(f, g);
  if (gc.degree() > 0)
    for (const auto& [w, m] : factor(gc).factors) r.common_factors.push_back(w);
  r.configuration = configuration(surface);
  for (const auto& fa : r.configuration.fibres) {
    if (fa.place.is_infinity())
      r.infinity_type = fa.type;
    else if (fa.type.is_multiplicative())
      r.multiplicative.emplace_back(fa.place, fa.type.index);
  }
  return r;
}

/// Violations of the structure every counterexample must have; empty if none.
inline std::vector<std::string> counterexample_structure_violations(const FpPoly& f, const FpPoly& g) {
  std::vector<std::string> out;
  DSReport r = ds_report(f, g);
  const Coeff p = f.p();
  if (!r.is_counterexample) out.push_back("not a counterexample");
  if (r.defect < r.min_bound) out.push_back("defect below the minimum bound");
  int common_zeros = 0;
  for (const auto& w : r.common_factors) common_zeros += w.degree();
  if (common_zeros < 2) out.push_back("fewer than two distinct common zeros");
  for (const auto& [w, m] : factor(r.difference).factors) {
    if (m == 1) out.push_back("simple factor " + to_string(w) + " of f^3-g^2");
    bool common = std::find(r.common_factors.begin(), r.common_factors.end(), w) != r.common_factors.end();
    if (!common && m % static_cast<int>(p) != 0) out.push_back("multiplicity of " + to_string(w) + " not divisible by p");
  }
  const bool star = r.infinity_type.kind == FibreKind::IStar;
  const bool mult = r.infinity_type.kind == FibreKind::I && r.infinity_type.index > 0;
  if (r.M % 2 == 0 ? !mult : !star) out.push_back("type at infinity has the wrong parity");
  return out;
}

/// (alpha^2 f, alpha^3 g) for a linear alpha off the cusps.
inline DSPair pad_counterexample(const DSPair& pair, const FpPoly& alpha) {
  if (alpha.degree() != 1) throw Error(ErrorCode::InvalidArgument, "alpha must be linear");
  DSReport r = ds_report(pair.f, pair.g);
  const int n = 6 * r.M - r.defect;
  if (n < 5 * (r.M + 1)) throw Error(ErrorCode::PadInsufficient, "index " + std::to_string(n) + " at infinity is below " + std::to_string(5 * (r.M + 1)));
  Coeff root = Fp::mul(Fp::neg(alpha[0], alpha.p()), Fp::inv(alpha.lead(), alpha.p()), alpha.p());
  if (r.difference.eval(root) == 0) throw Error(ErrorCode::InvalidArgument, "alpha vanishes at a cusp");
  FpPoly a2 = alpha * alpha;
  DSPair out{a2 * pair.f, a2 * alpha * pair.g, pair.M + 1};
  if (!ds_report(out.f, out.g).is_counterexample) throw Error(ErrorCode::PadInsufficient, "padded pair failed verification");
  return out;
}

/// Monic f and g, then the least (f, g) over all t -> at + b.
inline DSPair normalize_pair(const FpPoly& f, const FpPoly& g) {
  const Coeff p = FpPoly::common(f, g);
  std::optional<std::pair<FpPoly, FpPoly>> best;
  for (Coeff a = 1; a < p; ++a) {
    for (Coeff b = 0; b < p; ++b) {
      FpPoly f1 = affine_substitute(f, a, b), g1 = affine_substitute(g, a, b);
      Coeff u = Fp::mul(f1.lead(), Fp::inv(g1.lead(), p), p);
      Coeff u2 = Fp::mul(u, u, p);
      f1 = f1.scaled(u2);
      g1 = g1.scaled(Fp::mul(u2, u, p));
      if (!f1.is_monic() || !g1.is_monic()) {
        f1 = f1.monic();
        g1 = g1.monic();
      }
      auto cand = std::make_pair(std::move(f1), std::move(g1));
      if (!best || cand < *best) best = std::move(cand);
    }
  }
  return DSPair{best->first, best->second, f.degree() / 2};
}

// ---------------------------------------------------------------------------
// Catalogue

enum class CatalogueName { Y, YTilde, YHat };

inline std::string to_string(CatalogueName n) {
  switch (n) {
    case CatalogueName::Y: return "Y";
    case CatalogueName::YTilde: return "Ytilde";
    case CatalogueName::YHat: return "Yhat";
  }
  return "?";
}

inline CatalogueName parse_catalogue_name(std::string_view s) {
  if (s == "Y") return CatalogueName::Y;
  if (s == "Ytilde") return CatalogueName::YTilde;
  if (s == "Yhat") return CatalogueName::YHat;
  throw Error(ErrorCode::InvalidArgument, "unknown surface '" + std::string(s) + "'");
}

inline WeierstrassSurface catalogue_surface(CatalogueName n, Coeff p) {
  PrimeModulus mod(p);
  if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "p must exceed 3");
  const FpPoly t = FpPoly::t(p), one = FpPoly::one(p);
  switch (n) {
    case CatalogueName::Y: {
      FpPoly f = poly_pow(t, 3) * (t - one), g = poly_pow(t, 5) * (t - one);
      return WeierstrassSurface::from_fg(f, g);
    }
    case CatalogueName::YTilde: {
      FpPoly f = t * t - one;
      return WeierstrassSurface::from_fg(f, t * f);
    }
    case CatalogueName::YHat: {
      FpPoly c = poly_pow(t, 3) - one;
      return WeierstrassSurface::make((t * c).scaled(Fp::from_int(-3, p)), c * (poly_pow(t, 3).scaled(2) - one));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown surface");
}

struct CatalogueMap {
  std::string name;
  RationalMap map;
  RamificationProfile profile;
};

inline RamificationProfile make_profile(int d, std::initializer_list<std::pair<CritValue, std::vector<int>>> br) {
  RamificationProfile r;
  r.separable_degree = d;
  for (auto [v, idx] : br) {
    std::sort(idx.rbegin(), idx.rend());
    r.branches[v] = idx;
  }
  return r;
}

namespace detail {

inline bool profile_tame(const RamificationProfile& r, Coeff p) {
  for (const auto& [v, idx] : r.branches)
    for (int e : idx)
      if (e % static_cast<int>(p) == 0) return false;
  return true;
}

/// Post-composes m with the affine map carrying the critical values whose
/// fibres match want's fibres over 0 and 1 onto 0 and 1. Other critical values
/// are allowed as long as they are rational.
inline std::optional<std::pair<RationalMap, RamificationProfile>> validated(const RationalMap& m, const RamificationProfile& want,
                                                                            Coeff p) {
  RamificationProfile got;
  try {
    got = ramification_profile(m);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (got.insep != 1 || got.separable_degree != want.separable_degree || !profile_tame(got, p)) return std::nullopt;
  auto list_at = [](const RamificationProfile& r, CritValue v) {
    auto it = r.branches.find(v);
    return it == r.branches.end() ? std::vector<int>{} : it->second;
  };
  if (list_at(got, CritValue::infinity()) != list_at(want, CritValue::infinity())) return std::nullopt;
  auto locate = [&](const std::vector<int>& idx, std::optional<Coeff> avoid) -> std::optional<Coeff> {
    if (idx.empty()) return std::nullopt;
    for (const auto& [v, l] : got.branches)
      if (!v.inf && l == idx && v.c != avoid) return v.c;
    return std::nullopt;
  };
  const auto w0 = list_at(want, CritValue::finite(0)), w1 = list_at(want, CritValue::finite(1));
  auto c0 = locate(w0, std::nullopt);
  if (!w0.empty() && !c0) return std::nullopt;
  auto c1 = locate(w1, c0);
  if (!w1.empty() && !c1) return std::nullopt;
  Coeff base = c0.value_or(0);
  Coeff scale = c1 ? Fp::inv(Fp::sub(*c1, base, p), p) : 1;
  if (!c0 && c1) {
    base = Fp::sub(*c1, 1, p);
    scale = 1;
  }
  RationalMap moved = RationalMap::make((m.num() - m.den().scaled(base)).scaled(scale), m.den());
  RamificationProfile fin = ramification_profile(moved);
  for (CritValue v : {CritValue::infinity(), CritValue::finite(0), CritValue::finite(1)})
    if (list_at(fin, v) != list_at(want, v)) return std::nullopt;
  return std::make_pair(moved, fin);
}

inline std::optional<RamificationProfile> ramification_or_none(const RationalMap& m) {
  try {
    return ramification_profile(m);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline FpPoly ints(Coeff p, std::initializer_list<std::int64_t> c) { return FpPoly::from_ints(p, c); }

}  // namespace detail

/// Explicit maps that are valid (tame, expected branching) over F_p, moved so
/// that their listed fibres lie over infinity, 0 and 1. pi3 is kept as given.
inline std::vector<CatalogueMap> explicit_maps(Coeff p) {
  std::vector<CatalogueMap> out;
  const auto inf = CritValue::infinity();
  const auto z = CritValue::finite(0), o = CritValue::finite(1);
  auto add = [&](std::string name, const FpPoly& N, const RamificationProfile& want) {
    if (N.degree() < 1) return;
    if (auto got = detail::validated(RationalMap::polynomial(N), want, p)) out.push_back({std::move(name), got->first, got->second});
  };
  FpPoly t = FpPoly::t(p), one = FpPoly::one(p);
  {
    FpPoly c = poly_pow(t, 3).scaled(2) - one;
    if (auto got = detail::ramification_or_none(RationalMap::polynomial(c)); got && detail::profile_tame(*got, p))
      out.push_back({"pi3", RationalMap::polynomial(c), *got});
    add("pi6", c * c, make_profile(6, {{inf, {6}}, {z, {2, 2, 2}}, {o, {3, 1, 1, 1}}}));
  }
  add("pi5~", poly_pow(t, 3) * detail::ints(p, {10, -15, 6}), make_profile(5, {{inf, {5}}, {z, {3, 1, 1}}, {o, {3, 1, 1}}}));
  if (p == 7) {
    FpPoly a = detail::ints(p, {4, 6, 5, 1});
    add("pi9", a * a * detail::ints(p, {4, 1}) * detail::ints(p, {4, 1}) * t,
        make_profile(9, {{inf, {9}}, {z, {2, 2, 2, 2, 1}}, {o, {3, 3, 1, 1, 1}}}));
    FpPoly b = detail::ints(p, {4, 0, 5, 6, 1});
    add("pi11", -(t * b * b * detail::ints(p, {6, 1}) * detail::ints(p, {6, 1})),
        make_profile(11, {{inf, {11}}, {z, {2, 2, 2, 2, 2, 1}}, {o, {3, 3, 1, 1, 1, 1, 1}}}));
  }
  if (p % 2 && p > 3) {
    // lambda = -3/16
    const Coeff i2 = Fp::inv(2, p), i8 = Fp::inv(8, p), i16 = Fp::inv(16, p);
    FpPoly h(p, std::vector<Coeff>{1, i2, Fp::mul(3, i8, p), Fp::mul(3, i16, p)});
    add("pi_lambda", h * h * (one - t), make_profile(7, {{inf, {7}}, {z, {2, 2, 2, 1}}, {o, {3, 1, 1, 1, 1}}}));
  }
  return out;
}

/// Profiles reconstructed by find_base_change.
inline std::vector<std::pair<std::string, RamificationProfile>> searched_profiles(Coeff p) {
  const auto inf = CritValue::infinity();
  const auto z = CritValue::finite(0), o = CritValue::finite(1);
  std::vector<std::pair<std::string, RamificationProfile>> out{
      {"pi4", make_profile(4, {{inf, {4}}, {z, {3, 1}}, {o, {2, 1, 1}}})},
      {"piH", make_profile(5, {{inf, {5}}, {z, {3, 1, 1}}, {o, {2, 2, 1}}})},
      {"pi8", make_profile(8, {{inf, {8}}, {z, {2, 2, 2, 2}}, {o, {3, 2, 1, 1, 1}}})},
  };
  if (p != 7) out.push_back({"pi7~", make_profile(7, {{inf, {7}}, {z, {2, 2, 2, 1}}, {o, {3, 2, 1, 1}}})});
  return out;
}

// ---------------------------------------------------------------------------
// Counterexample search

struct ChainStage {
  std::string label;
  RationalMap map;
};

struct Witness {
  DSPair pair;
  CatalogueName root = CatalogueName::Y;
  std::vector<ChainStage> stages;
  std::uint64_t q = 1;
  int padding = 0;
  std::string strategy;  // "closed_form", "frobenius", "composition"
  Configuration configuration;
};

namespace detail {

struct SearchState {
  CatalogueName root;
  std::vector<ChainStage> stages;
  Configuration config;
  int n_inf = 0;
  int sep_degree = 1;
};

struct Candidate {
  std::size_t state;
  std::uint64_t q;
  int m_base, m_hi;
};

inline int infinity_index(const Configuration& c) {
  const auto* f = c.at_infinity();
  if (!f) return 0;
  return (f->type.kind == FibreKind::I || f->type.kind == FibreKind::IStar) ? f->type.index : 0;
}

/// Class of a configuration under t -> at + b, with types taken up to twist.
inline std::string canonical_key(const Configuration& c) {
  const Coeff p = c.p;
  std::string best;
  bool first = true;
  std::string inf;
  if (const auto* f = c.at_infinity()) inf = to_string(untwisted(f->type));
  for (Coeff a = 1; a < p; ++a) {
    for (Coeff b = 0; b < p; ++b) {
      std::vector<std::pair<std::vector<Coeff>, FibreType>> items;
      for (const auto& fa : c.fibres) {
        if (fa.place.is_infinity()) continue;
        FpPoly w = affine_substitute(fa.place.poly(), a, b).monic();
        items.emplace_back(std::vector<Coeff>(w.coeffs().begin(), w.coeffs().end()), untwisted(fa.type));
      }
      std::sort(items.begin(), items.end());
      std::string key = inf + "|";
      for (const auto& [w, t] : items) {
        for (Coeff x : w) key += std::to_string(x) + ",";
        key += to_string(t) + ";";
      }
      if (first || key < best) best = std::move(key);
      first = false;
    }
  }
  return best;
}

inline std::vector<Coeff> rational_cusps(const Configuration& c) {
  std::vector<Coeff> out;
  for (const auto& fa : c.fibres)
    if (auto r = fa.place.rational_point()) out.push_back(*r);
  std::sort(out.begin(), out.end());
  return out;
}

/// Least representatives of F_p^* / (F_p^*)^d.
inline std::vector<Coeff> power_class_reps(Coeff p, int d) {
  std::vector<Coeff> out;
  std::set<Coeff> covered;
  for (Coeff a = 1; a < p; ++a) {
    if (covered.count(a)) continue;
    out.push_back(a);
    for (Coeff c = 1; c < p; ++c) covered.insert(Fp::mul(a, Fp::pow(c, static_cast<std::uint64_t>(d), p), p));
  }
  return out;
}

/// Configuration after t -> t^q and the cheapest twist: (index at infinity, E).
inline std::pair<long long, long long> frobenius_twist_numbers(const SearchState& s, std::uint64_t q) {
  long long e = 0;
  for (const auto& fa : s.config.fibres) {
    if (fa.place.is_infinity()) continue;
    FibreType t = base_change_type(fa.type, static_cast<long long>(q));
    e += static_cast<long long>(fa.place.degree()) * std::min(euler_number(t), euler_number(twist_type(t)));
  }
  return {static_cast<long long>(s.n_inf) * static_cast<long long>(q), e};
}

}  // namespace detail

struct SearchOptions {
  int max_depth = 3;
};

/// All candidates for one p, enumerated in a fixed order; answers for a given M
/// do not depend on how far the enumeration has been taken.
class CounterexampleSearch {
 public:
  CounterexampleSearch(Coeff p, SearchOptions opt = {}) : p_(p), opt_(opt) {
    PrimeModulus check(p);
    if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "p must exceed 3");
  }

  Coeff p() const { return p_; }

  std::optional<Witness> construct(int M) {
    if (M < 1) return std::nullopt;
    if (auto w = closed_form(M)) return w;
    ensure(M);
    for (const auto& c : candidates_)
      if (c.m_base == M)
        if (auto w = realize(c, M)) return w;
    for (const auto& c : candidates_)
      if (c.m_base < M && M <= c.m_hi)
        if (auto w = realize(c, M)) return w;
    return std::nullopt;
  }

  std::size_t state_count() const { return states_.size(); }

 private:
  struct MapOption {
    std::string name;
    int degree;
    bool cyclic;
    RationalMap map;  // for cyclic maps, t^d
  };

  std::optional<Witness> closed_form(int M) const {
    const long long q = 3LL * M - 2;
    if (q < 13 || q % 6 != 1 || !is_power_of(static_cast<std::uint64_t>(q), p_)) return std::nullopt;
    const int lambda = static_cast<int>((q - 1) / 6);
    FpPoly t = FpPoly::t(p_), u = t * t - FpPoly::one(p_);
    FpPoly f = poly_pow(u, static_cast<std::uint64_t>(2 * lambda + 1));
    FpPoly g = poly_pow(t, static_cast<std::uint64_t>(q)) * u;
    DSReport r = ds_report(f, g);
    if (!r.is_counterexample || r.M != M) return std::nullopt;
    Witness w{normalize_pair(f, g), CatalogueName::Y, {}, static_cast<std::uint64_t>(q), 0, "closed_form", {}};
    w.configuration = ds_report(w.pair.f, w.pair.g).configuration;
    return w;
  }

  long long n_cap(int M) const { return 6LL * M / p_; }

  void ensure(int M) {
    if (built_for_ >= M) return;
    built_for_ = std::max(M, 2 * built_for_);
    build(built_for_);
  }

  std::vector<MapOption> map_options(long long cap) {
    std::vector<MapOption> out;
    for (long long d = 2; d <= cap; ++d)
      if (d % p_) out.push_back({"phi" + std::to_string(d), static_cast<int>(d), true, RationalMap::power(p_, static_cast<std::size_t>(d))});
    for (auto& m : explicit_maps(p_)) {
      if (m.name == "pi3" || m.map.degree() > cap) continue;
      out.push_back({m.name, m.map.degree(), false, m.map});
    }
    for (auto& [name, prof] : searched_profiles(p_)) {
      if (prof.separable_degree > cap || !detail::profile_tame(prof, p_)) continue;
      auto it = searched_.find(name);
      if (it == searched_.end()) it = searched_.emplace(name, find_base_change(p_, prof.separable_degree, prof)).first;
      if (it->second) out.push_back({name, prof.separable_degree, false, *it->second});
    }
    std::stable_sort(out.begin(), out.end(), [](const MapOption& a, const MapOption& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      return a.cyclic && !b.cyclic;
    });
    return out;
  }

  void build(int Mcap) {
    states_.clear();
    candidates_.clear();
    const long long cap = n_cap(Mcap);
    auto options = map_options(cap);
    std::set<std::string> seen;
    std::vector<std::size_t> level;
    for (CatalogueName root : {CatalogueName::Y, CatalogueName::YTilde, CatalogueName::YHat}) {
      detail::SearchState s{root, {}, configuration(catalogue_surface(root, p_)), 0, 1};
      s.n_inf = detail::infinity_index(s.config);
      if (s.n_inf > cap) continue;
      if (!seen.insert(detail::canonical_key(s.config)).second) continue;
      level.push_back(states_.size());
      states_.push_back(std::move(s));
    }
    for (int depth = 0; depth < opt_.max_depth; ++depth) {
      std::vector<std::size_t> next;
      for (std::size_t idx : level) {
        for (const auto& opt : options) {
          if (static_cast<long long>(states_[idx].n_inf) * opt.degree > cap) continue;
          expand(idx, opt, seen, next);
        }
      }
      level = std::move(next);
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const auto& s = states_[i];
      for (std::uint64_t q = p_; static_cast<long long>(s.n_inf) * static_cast<long long>(q) <= 6LL * Mcap; q *= p_) {
        auto [n, e] = detail::frobenius_twist_numbers(s, q);
        if ((n + e) % 6) continue;
        int m_base = static_cast<int>((n + e) / 6);
        int m_hi = static_cast<int>(n / 5);
        if (m_base <= m_hi) candidates_.push_back({i, q, m_base, m_hi});
      }
    }
  }

  void expand(std::size_t idx, const MapOption& opt, std::set<std::string>& seen, std::vector<std::size_t>& next) {
    const Configuration c = states_[idx].config;
    std::vector<Coeff> cusps = detail::rational_cusps(c);
    auto try_map = [&](const RationalMap& m, std::string label) {
      Configuration pred;
      try {
        pred = predict_configuration(c, m);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Wild) return;
        throw;
      }
      if (!seen.insert(detail::canonical_key(pred)).second) return;
      detail::SearchState s = states_[idx];
      s.stages.push_back({std::move(label), m});
      s.config = std::move(pred);
      s.n_inf = detail::infinity_index(s.config);
      s.sep_degree *= opt.degree;
      next.push_back(states_.size());
      states_.push_back(std::move(s));
    };
    if (opt.cyclic) {
      for (Coeff b : cusps)
        for (Coeff a : detail::power_class_reps(p_, opt.degree)) {
          FpPoly N = FpPoly::monomial(p_, a, static_cast<std::size_t>(opt.degree)) + FpPoly::constant(p_, b);
          try_map(RationalMap::polynomial(N), opt.name + "(b=" + std::to_string(b) + ",a=" + std::to_string(a) + ")");
        }
      return;
    }
    std::vector<Coeff> pts = cusps;
    for (Coeff x = 0; x < p_; ++x)
      if (!std::binary_search(cusps.begin(), cusps.end(), x)) {
        pts.push_back(x);
        break;
      }
    std::sort(pts.begin(), pts.end());
    for (Coeff c0 : pts)
      for (Coeff c1 : pts) {
        if (c0 == c1) continue;
        // t -> c0 + (c1 - c0) psi(t)
        FpPoly N = opt.map.num().scaled(Fp::sub(c1, c0, p_)) + FpPoly::constant(p_, c0);
        try_map(RationalMap::polynomial(N), opt.name + "(0->" + std::to_string(c0) + ",1->" + std::to_string(c1) + ")");
      }
  }

  std::optional<Witness> realize(const detail::Candidate& c, int M) const {
    const auto& st = states_[c.state];
    try {
      WeierstrassSurface s = catalogue_surface(st.root, p_);
      for (const auto& stage : st.stages) s = base_change(s, stage.map);
      s = frobenius_pullback(s, c.q);
      FpPoly d = FpPoly::one(p_);
      for (const auto& fa : configuration(s).fibres) {
        if (fa.place.is_infinity()) continue;
        if (euler_number(twist_type(fa.type)) < euler_number(fa.type)) d *= fa.place.poly();
      }
      if (d.degree() > 0) s = quadratic_twist(s, d);
      FpPoly f = s.f(), g = s.g();
      if (f.degree() != 2 * c.m_base || g.degree() != 3 * c.m_base) return std::nullopt;
      const int pads = M - c.m_base;
      if (pads > 0) {
        FpPoly disc = f * f * f - g * g;
        std::optional<Coeff> root;
        for (Coeff x = 0; x < p_ && !root; ++x)
          if (disc.eval(x) != 0) root = x;
        if (!root) return std::nullopt;
        FpPoly alpha = poly_pow(FpPoly::linear(p_, *root), static_cast<std::uint64_t>(pads));
        FpPoly a2 = alpha * alpha;
        f = a2 * f;
        g = a2 * alpha * g;
      }
      DSPair pair = normalize_pair(f, g);
      DSReport r = ds_report(pair.f, pair.g);
      if (!r.is_counterexample || r.M != M) return std::nullopt;
      return Witness{pair, st.root, st.stages, c.q, pads, st.stages.empty() ? "frobenius" : "composition", r.configuration};
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  Coeff p_;
  SearchOptions opt_;
  int built_for_ = 0;
  std::vector<detail::SearchState> states_;
  std::vector<detail::Candidate> candidates_;
  std::map<std::string, std::optional<RationalMap>> searched_;
};

namespace detail {

inline CounterexampleSearch& shared_search(Coeff p) {
  static std::mutex mu;
  static std::map<Coeff, std::unique_ptr<CounterexampleSearch>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<CounterexampleSearch>(p);
  return *slot;
}

inline std::mutex& search_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

inline std::optional<Witness> construct_witness(Coeff p, int M) {
  auto& s = detail::shared_search(p);
  std::lock_guard<std::mutex> lock(detail::search_mutex());
  return s.construct(M);
}

inline std::optional<DSPair> construct_counterexample(Coeff p, int M) {
  if (auto w = construct_witness(p, M)) return w->pair;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Status tables and M_0

enum class Status { Holds, Fails, Unknown };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct StatusEntry {
  int M = 0;
  Status status = Status::Unknown;
  std::string reason;  // weak_bound | criterion | theorem for HOLDS
  std::optional<Witness> witness;
};

struct StatusTable {
  Coeff p = 0;
  int from = 0, to = 0;
  std::vector<StatusEntry> entries;

  const StatusEntry& at(int M) const { return entries.at(static_cast<std::size_t>(M - from)); }
};

/// Largest M for which DS(M) mod p is known to hold for large p.
inline std::optional<int> theorem_value(Coeff p) {
  if (p % 6 == 1) return static_cast<int>((5 * p + 1) / 6);
  if (p % 6 == 5) return static_cast<int>(p + 1);
  return std::nullopt;
}

inline StatusEntry status_of(Coeff p, int M) {
  StatusEntry e;
  e.M = M;
  if (M <= 2) {
    e.status = Status::Holds;
    e.reason = "weak_bound";
  } else if (criterion_holds(M, p)) {
    e.status = Status::Holds;
    e.reason = "criterion";
  } else if (theorem_value(p) == M) {
    e.status = Status::Holds;
    e.reason = "theorem";
  } else if (auto w = construct_witness(p, M)) {
    e.status = Status::Fails;
    e.witness = std::move(w);
  } else {
    e.status = Status::Unknown;
  }
  return e;
}

inline StatusTable status_table(Coeff p, int from, int to) {
  if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "p must exceed 3");
  if (from < 1 || to < from) throw Error(ErrorCode::InvalidArgument, "bad range");
  StatusTable t{p, from, to, {}};
  for (int M = from; M <= to; ++M) t.entries.push_back(status_of(p, M));
  return t;
}

struct MZero {
  int value = 0;
  std::string provenance;  // FORMULA | SEARCHED
  int searched_to = 0;
};

/// Upper end of the searched range for small p: the formula value at the least
/// q = p^r above 29 (q = 25 for p = 5).
inline int m_zero_window(Coeff p) {
  std::uint64_t q = p;
  while (q <= 29 && !(p == 5 && q == 25)) q *= p;
  return q % 6 == 1 ? static_cast<int>((5 * q + 7) / 6) : static_cast<int>(q + 2);
}

inline MZero m_zero(Coeff p) {
  PrimeModulus check(p);
  if (p <= 3) throw Error(ErrorCode::BadCharacteristic, "p must exceed 3");
  if (p > 29) return {p % 6 == 1 ? static_cast<int>((5 * p + 7) / 6) : static_cast<int>(p + 2), "FORMULA", 0};
  const int U = m_zero_window(p);
  int last_not_failing = 0;
  for (int M = U; M >= 1; --M) {
    if (status_of(p, M).status != Status::Fails) {
      last_not_failing = M;
      break;
    }
  }
  return {last_not_failing + 1, "SEARCHED", U};
}

/// Whether a purely inseparable base change of large degree gives a counterexample.
inline bool multfibre_condition(const Configuration& c) {
  const auto* f = c.at_infinity();
  if (!f || !(f->type.kind == FibreKind::I || f->type.kind == FibreKind::IStar) || f->type.index == 0)
    throw Error(ErrorCode::NoInfinityFibre, "no I_n or I_n* fibre at infinity");
  long long sum = 0;
  for (const auto& fa : c.fibres) {
    if (fa.place.is_infinity()) continue;
    if ((fa.type.kind == FibreKind::I || fa.type.kind == FibreKind::IStar) && fa.type.index > 0) sum += static_cast<long long>(fa.place.degree()) * fa.type.index;
  }
  return f->type.index > 5 * sum;
}

}  // namespace dsmodp
