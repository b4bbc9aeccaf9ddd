#pragma once
// Kodaira symbols, their local invariants, and how they move under tame base
// change and quadratic twist (residue characteristic > 3 only).

#include <compare>
#include <string>
#include <string_view>

#include "dsmodp/error.hpp"

namespace dsmodp {

/// Stand-in for the valuation of the zero polynomial.
inline constexpr int kInfiniteValuation = 1 << 28;

enum class FibreKind { I, IStar, II, III, IV, IVStar, IIIStar, IIStar };

/// I and I* carry an index n >= 0; I0 and I0* are the n = 0 members.
struct FibreType {
  FibreKind kind = FibreKind::I;
  int index = 0;

  static constexpr FibreType i(int n) { return {FibreKind::I, n}; }
  static constexpr FibreType i_star(int n) { return {FibreKind::IStar, n}; }
  static constexpr FibreType ii() { return {FibreKind::II, 0}; }
  static constexpr FibreType iii() { return {FibreKind::III, 0}; }
  static constexpr FibreType iv() { return {FibreKind::IV, 0}; }
  static constexpr FibreType iv_star() { return {FibreKind::IVStar, 0}; }
  static constexpr FibreType iii_star() { return {FibreKind::IIIStar, 0}; }
  static constexpr FibreType ii_star() { return {FibreKind::IIStar, 0}; }

  constexpr bool is_smooth() const { return kind == FibreKind::I && index == 0; }
  constexpr bool is_multiplicative() const { return kind == FibreKind::I && index > 0; }
  constexpr bool is_additive() const { return kind != FibreKind::I; }
  constexpr bool is_starred() const {
    return kind == FibreKind::IStar || kind == FibreKind::IVStar || kind == FibreKind::IIIStar || kind == FibreKind::IIStar;
  }

  constexpr auto operator<=>(const FibreType&) const = default;
};

inline std::string to_string(FibreType t) {
  switch (t.kind) {
    case FibreKind::I: return "I" + std::to_string(t.index);
    case FibreKind::IStar: return "I" + std::to_string(t.index) + "*";
    case FibreKind::II: return "II";
    case FibreKind::III: return "III";
    case FibreKind::IV: return "IV";
    case FibreKind::IVStar: return "IV*";
    case FibreKind::IIIStar: return "III*";
    case FibreKind::IIStar: return "II*";
  }
  return "?";
}

/// Inverse of to_string. Accepts exactly the printed spellings.
inline FibreType parse_fibre_type(std::string_view s) {
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "unknown fibre type '" + std::string(s) + "'"); };
  if (s == "II") return FibreType::ii();
  if (s == "III") return FibreType::iii();
  if (s == "IV") return FibreType::iv();
  if (s == "IV*") return FibreType::iv_star();
  if (s == "III*") return FibreType::iii_star();
  if (s == "II*") return FibreType::ii_star();
  if (s.size() < 2 || s[0] != 'I') throw bad();
  bool star = s.back() == '*';
  std::string_view digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
  if (digits.empty() || digits.size() > 9) throw bad();
  int n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw bad();
    n = n * 10 + (c - '0');
  }
  return star ? FibreType::i_star(n) : FibreType::i(n);
}

struct LocalInvariants {
  int euler = 0;
  int components = 1;
  int conductor_exponent = 0;
  bool operator==(const LocalInvariants&) const = default;
};

/// Table lookup from (v(A), v(B), v(Delta)) of y^2 = x^3 + Ax + B.
/// Pass kInfiniteValuation (or anything larger) for a vanishing coefficient.
inline FibreType classify_local(int vA, int vB, int vD) {
  if (vA < 0 || vB < 0 || vD < 0) throw Error(ErrorCode::InvalidArgument, "negative valuation");
  if (vA >= 4 && vB >= 6) throw Error(ErrorCode::NonMinimal, "model is not minimal (vA=" + std::to_string(vA) + ", vB=" + std::to_string(vB) + ")");
  auto fail = [&] {
    return Error(ErrorCode::Inconsistent,
                 "no Kodaira type for (" + std::to_string(vA) + "," + std::to_string(vB) + "," + std::to_string(vD) + ")");
  };
  if (vD == 0) return FibreType::i(0);
  if (vA == 0) return FibreType::i(vD);
  if (vB == 1 && vD == 2) return FibreType::ii();
  if (vA == 1 && vB >= 2 && vD == 3) return FibreType::iii();
  if (vA >= 2 && vB == 2 && vD == 4) return FibreType::iv();
  if (vA >= 2 && vB >= 3 && vD == 6) return FibreType::i_star(0);
  if (vA == 2 && vB == 3 && vD > 6) return FibreType::i_star(vD - 6);
  if (vA >= 3 && vB == 4 && vD == 8) return FibreType::iv_star();
  if (vA == 3 && vB >= 5 && vD == 9) return FibreType::iii_star();
  if (vA >= 4 && vB == 5 && vD == 10) return FibreType::ii_star();
  throw fail();
}

inline LocalInvariants local_invariants(FibreType t) {
  switch (t.kind) {
    case FibreKind::I: return t.index == 0 ? LocalInvariants{0, 1, 0} : LocalInvariants{t.index, t.index, 1};
    case FibreKind::IStar: return {t.index + 6, t.index + 5, 2};
    case FibreKind::II: return {2, 1, 2};
    case FibreKind::III: return {3, 2, 2};
    case FibreKind::IV: return {4, 3, 2};
    case FibreKind::IVStar: return {8, 7, 2};
    case FibreKind::IIIStar: return {9, 8, 2};
    case FibreKind::IIStar: return {10, 9, 2};
  }
  return {};
}

inline int euler_number(FibreType t) { return local_invariants(t).euler; }

inline FibreType twist_type(FibreType t) {
  switch (t.kind) {
    case FibreKind::I: return FibreType::i_star(t.index);
    case FibreKind::IStar: return FibreType::i(t.index);
    case FibreKind::II: return FibreType::iv_star();
    case FibreKind::IVStar: return FibreType::ii();
    case FibreKind::III: return FibreType::iii_star();
    case FibreKind::IIIStar: return FibreType::iii();
    case FibreKind::IV: return FibreType::ii_star();
    case FibreKind::IIStar: return FibreType::iv();
  }
  return t;
}

/// The representative of {t, twist_type(t)} with the smaller Euler number.
inline FibreType untwisted(FibreType t) {
  FibreType u = twist_type(t);
  return euler_number(u) < euler_number(t) ? u : t;
}

namespace detail {

// Potentially good additive types live on two cycles:
// Z/6: I0, II, IV, I0*, IV*, II*   and   Z/4: I0, III, I0*, III*.
inline int z6_index(FibreType t) {
  switch (t.kind) {
    case FibreKind::II: return 1;
    case FibreKind::IV: return 2;
    case FibreKind::IStar: return 3;  // I0* only
    case FibreKind::IVStar: return 4;
    case FibreKind::IIStar: return 5;
    default: return 0;
  }
}

inline FibreType from_z6(int k) {
  constexpr FibreType table[6] = {FibreType::i(0), FibreType::ii(), FibreType::iv(), FibreType::i_star(0), FibreType::iv_star(), FibreType::ii_star()};
  return table[k % 6];
}

inline FibreType from_z4(int k) {
  constexpr FibreType table[4] = {FibreType::i(0), FibreType::iii(), FibreType::i_star(0), FibreType::iii_star()};
  return table[k % 4];
}

}  // namespace detail

/// Fibre over a point with ramification index r.
inline FibreType base_change_type(FibreType t, long long r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "ramification index must be positive");
  switch (t.kind) {
    case FibreKind::I: return FibreType::i(static_cast<int>(t.index * r));
    case FibreKind::IStar:
      if (t.index == 0) return detail::from_z6(static_cast<int>(3 * (r % 2)));
      return r % 2 ? FibreType::i_star(static_cast<int>(t.index * r)) : FibreType::i(static_cast<int>(t.index * r));
    case FibreKind::III: return detail::from_z4(static_cast<int>(r % 4));
    case FibreKind::IIIStar: return detail::from_z4(static_cast<int>(3 * (r % 4)));
    default: return detail::from_z6(static_cast<int>(detail::z6_index(t) * (r % 6)));
  }
}

}  // namespace dsmodp
