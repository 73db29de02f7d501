// SPDX-License-Identifier: Apache-2.0
#include "rzk/bounds.h"

#include <cmath>

#include <boost/multiprecision/integer.hpp>

#include "rzk/errors.h"

namespace rzk {

namespace {

long double factorial(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt big_factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt pow2(int e) { return BigInt(1) << e; }

SoundnessBounds finish(long double ours_term, long double previous_term) {
  SoundnessBounds b;
  b.ours_raw = 0.5L + std::sqrt(ours_term);
  b.previous_raw = 0.5L + std::cbrt(previous_term);
  b.ours_vacuous = b.ours_raw > 1.0L;
  b.previous_vacuous = b.previous_raw > 1.0L;
  b.ours = b.ours_vacuous ? 1.0L : b.ours_raw;
  b.previous = b.previous_vacuous ? 1.0L : b.previous_raw;
  return b;
}

std::optional<BigInt> exact_integer_root(const BigInt& x, int degree) {
  if (x < 0) return std::nullopt;
  BigInt r = degree == 2 ? boost::multiprecision::sqrt(x) : BigInt(0);
  if (degree == 3) {
    BigInt lo = 0, hi = 1;
    while (hi * hi * hi < x) hi <<= 1;
    while (lo < hi) {
      BigInt mid = (lo + hi + 1) / 2;
      if (mid * mid * mid <= x) lo = mid; else hi = mid - 1;
    }
    r = lo;
  }
  BigInt p = 1;
  for (int i = 0; i < degree; ++i) p *= r;
  if (p != x) return std::nullopt;
  return r;
}

}  // namespace

std::string to_string(Problem p) { return p == Problem::hc ? "hc" : "subset"; }

Problem parse_problem(const std::string& text) {
  if (text == "hc") return Problem::hc;
  if (text == "subset") return Problem::subset;
  throw ConfigError("unknown problem '" + text + "' (expected hc or subset)");
}

SoundnessBounds hc_soundness(int n, long double q) {
  if (n < 3 || !(q >= 1)) throw DomainError("hc soundness needs n >= 3 and Q >= 1");
  if (n > 20) throw RangeError("n! overflows for n > 20");
  const long double f = factorial(n);
  return finish(f / (2 * q), 64 * f / q);
}

SoundnessBounds subset_soundness(int n, long double q) {
  if (n < 1 || !(q >= 1)) throw DomainError("subset-sum soundness needs n >= 1 and Q >= 1");
  if (n > 1000) throw RangeError("2^n overflows for n > 1000");
  return finish(std::ldexp(1.0L, n - 1) / q, 64 * std::ldexp(1.0L, n) / q);
}

SoundnessBounds soundness(Problem p, int n, long double q) {
  return p == Problem::hc ? hc_soundness(n, q) : subset_soundness(n, q);
}

FieldSizes q_for_target(Problem p, int n, int eta) {
  if (eta < 1 || n < 1 || (p == Problem::hc && n < 3)) throw DomainError("q_for_target needs n, eta >= 1 (n >= 3 for hc)");
  if (eta > 4096 || n > 4096) throw RangeError("eta and n are limited to 4096");
  if (p == Problem::hc) {
    if (n > 20) throw RangeError("n! overflows for n > 20");
    const BigInt f = big_factorial(n);
    return {pow2(2 * eta - 1) * f, pow2(3 * eta + 6) * f};
  }
  return {pow2(n + 2 * eta - 1), pow2(n + 3 * eta + 6)};
}

std::optional<BigRational> exact_root(const BigRational& x, int degree) {
  if (degree != 2 && degree != 3) throw DomainError("only square and cube roots are supported");
  if (x < 0) return std::nullopt;
  const auto num = exact_integer_root(boost::multiprecision::numerator(x), degree);
  const auto den = exact_integer_root(boost::multiprecision::denominator(x), degree);
  if (!num || !den) return std::nullopt;
  return BigRational(*num, *den);
}

bool TargetCheck::ratio_matches() const { return ratio_divides && ratio_numerator == pow2(eta + 7); }

TargetCheck check_target(Problem p, int n, int eta) {
  TargetCheck c;
  c.problem = p;
  c.n = n;
  c.eta = eta;
  c.sizes = q_for_target(p, n, eta);
  c.target = BigRational(1, 2) + BigRational(BigInt(1), pow2(eta));
  const BigInt space = p == Problem::hc ? big_factorial(n) : pow2(n);
  const BigRational ours_term(space, 2 * c.sizes.ours);
  const BigRational previous_term(64 * space, c.sizes.previous);
  if (auto r = exact_root(ours_term, 2)) c.ours = BigRational(1, 2) + *r;
  if (auto r = exact_root(previous_term, 3)) c.previous = BigRational(1, 2) + *r;
  c.ratio_divides = c.sizes.previous % c.sizes.ours == 0;
  if (c.ratio_divides) c.ratio_numerator = c.sizes.previous / c.sizes.ours;
  return c;
}

ThreeColErrors threecol_errors(int edges, std::optional<double> p_acc) {
  if (edges < 3) throw DomainError("the 3-coloring error bounds need |H| >= 3");
  if (edges > 5000) throw RangeError("|H| is limited to 5000");
  if (p_acc && !(*p_acc >= 0.0 && *p_acc <= 1.0)) throw DomainError("acceptance must lie in [0,1]");
  const std::int64_t h = edges;
  ThreeColErrors e;
  e.edges = edges;
  e.kappa_c = Rational(1) - Rational(1, 3 * h);
  const std::int64_t seven_h = 7 * h;
  e.kappa_q = Rational(1) - Rational(1, seven_h * seven_h * seven_h * seven_h);
  e.delta_tilde = e.kappa_q - e.kappa_c;
  e.delta_lower = Rational(16, 2401 * h * h * h * h);
  if (p_acc) e.delta_of_p = 16.0 * edges * std::sqrt(1.0 - *p_acc);
  return e;
}

double qpok_extraction_lower(double p_acc, double c, double delta_ss, double ra_max) {
  const double gap = p_acc - 1.0 / c;
  if (!(gap > 0.0) || delta_ss >= 1.0) return 0.0;
  return (1.0 - delta_ss) / (64.0 * ra_max) * gap * gap * gap;
}

double classical_3col_extraction_lower(int edges, double p_acc) {
  const double kappa = 1.0 - 1.0 / (3.0 * edges);
  return std::max(0.0, 3.0 * edges * (p_acc - kappa));
}

}  // namespace rzk
