#pragma once
// Polynomial expressions: integers, t, + - * ^ and parentheses.
//
//   sum     := product (('+' | '-') product)*
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' exponent)?      exponent := integer, right-assoc via atom '^' ...
//   atom    := integer | 't' | '(' sum ')'

#include <cctype>
#include <string>
#include <string_view>

#include "dsmodp/gfpoly.hpp"
#include "dsmodp/transform.hpp"

namespace dsmodp {

inline constexpr std::uint64_t kDefaultExponentCap = 1000000;

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view src, Coeff p, std::uint64_t cap) : s_(src), p_(p), cap_(cap) {}

  FpPoly parse() {
    FpPoly r = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(ErrorCode::Syntax, i_, what); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  FpPoly sum() {
    FpPoly acc = product();
    while (true) {
      if (eat('+'))
        acc += product();
      else if (eat('-'))
        acc -= product();
      else
        return acc;
    }
  }

  FpPoly product() {
    FpPoly acc = unary();
    while (eat('*')) acc *= unary();
    return acc;
  }

  FpPoly unary() {
    if (eat('-')) return -unary();
    return power();
  }

  FpPoly power() {
    FpPoly base = atom();
    if (!eat('^')) return base;
    // a^b^c = a^(b^c)
    std::uint64_t e = exponent();
    return poly_pow(base, e);
  }

  std::uint64_t exponent() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("exponent must be a non-negative integer");
    const std::size_t at = i_;
    std::uint64_t e = integer(at);
    if (eat('^')) {
      std::uint64_t f = exponent();
      std::uint64_t r = 1;
      for (std::uint64_t k = 0; k < f; ++k) {
        r *= e;
        if (r > cap_) throw ParseError(ErrorCode::ExponentOverflow, at, "exponent exceeds " + std::to_string(cap_));
        if (e <= 1) break;
      }
      e = f == 0 ? 1 : r;
    }
    return e;
  }

  std::uint64_t integer(std::size_t at) {
    std::uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[i_++] - '0');
      if (v > cap_) throw ParseError(ErrorCode::ExponentOverflow, at, "exponent exceeds " + std::to_string(cap_));
    }
    return v;
  }

  FpPoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (c == 't') {
      ++i_;
      return FpPoly::t(p_);
    }
    if (c == '(') {
      ++i_;
      FpPoly r = sum();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Coeff v = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        v = Fp::add(Fp::mul(v, 10 % p_, p_), static_cast<Coeff>(s_[i_++] - '0') % p_, p_);
      return FpPoly::constant(p_, v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  Coeff p_;
  std::uint64_t cap_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline FpPoly parse_poly_expr(std::string_view src, Coeff p, std::uint64_t exponent_cap = kDefaultExponentCap) {
  PrimeModulus check(p);
  return detail::ExprParser(src, p, exponent_cap).parse();
}

/// "num" or "num/den", split at the '/' outside parentheses.
inline RationalMap parse_rational_map(std::string_view src, Coeff p) {
  int depth = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '(') ++depth;
    else if (src[i] == ')') --depth;
    else if (src[i] == '/' && depth == 0) {
      FpPoly N = parse_poly_expr(src.substr(0, i), p);
      FpPoly D;
      try {
        D = parse_poly_expr(src.substr(i + 1), p);
      } catch (const ParseError& e) {
        throw ParseError(e.code(), e.offset() + i + 1, "in denominator");
      }
      return RationalMap::make(N, D);
    }
  }
  return RationalMap::polynomial(parse_poly_expr(src, p));
}

}  // namespace dsmodp
