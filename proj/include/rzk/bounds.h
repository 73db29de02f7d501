// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "rzk/rational.h"

namespace rzk {

enum class Problem { hc, subset };
std::string to_string(Problem p);
/// "hc" or "subset"; throws ConfigError otherwise.
Problem parse_problem(const std::string& text);

/// Soundness errors in extended precision. Values above 1 are clipped and
/// flagged vacuous; the raw values are kept.
struct SoundnessBounds {
  long double ours = 0;
  long double previous = 0;
  long double ours_raw = 0;
  long double previous_raw = 0;
  bool ours_vacuous = false;
  bool previous_vacuous = false;
};

/// ours = 1/2 + sqrt(n!/(2Q)), previous = 1/2 + (64 n!/Q)^{1/3}.
/// Throws DomainError unless n >= 3 and Q >= 1; RangeError for n > 20.
SoundnessBounds hc_soundness(int n, long double q);
/// ours = 1/2 + sqrt(2^{n-1}/Q), previous = 1/2 + (64 * 2^n/Q)^{1/3}.
/// Throws DomainError unless n >= 1 and Q >= 1; RangeError for n > 1000.
SoundnessBounds subset_soundness(int n, long double q);
SoundnessBounds soundness(Problem p, int n, long double q);

struct FieldSizes {
  BigInt ours;      // hc: 2^{2η-1} n!, subset: 2^{n+2η-1}
  BigInt previous;  // hc: 2^{3η+6} n!, subset: 2^{n+3η+6}
};

/// Field sizes reaching soundness 1/2 + 2^{-η}. Throws DomainError unless
/// n, η >= 1 (n >= 3 for hc) and RangeError for hc n > 20 or η > 4096.
FieldSizes q_for_target(Problem p, int n, int eta);

/// The square or cube root of a nonnegative rational when it is exact.
std::optional<BigRational> exact_root(const BigRational& x, int degree);

/// Both soundness formulas evaluated exactly at the sizes from q_for_target.
struct TargetCheck {
  Problem problem = Problem::hc;
  int n = 0;
  int eta = 0;
  FieldSizes sizes;
  BigRational target;                   // 1/2 + 2^{-η}
  std::optional<BigRational> ours;      // empty when the root is irrational
  std::optional<BigRational> previous;
  BigInt ratio_numerator;               // previous / ours, exact when it divides
  bool ratio_divides = false;

  bool ours_matches() const { return ours && *ours == target; }
  bool previous_matches() const { return previous && *previous == target; }
  bool ratio_matches() const;           // previous / ours == 2^{η+7}
};
TargetCheck check_target(Problem p, int n, int eta);

/// 3-coloring knowledge errors for |H| edges.
struct ThreeColErrors {
  int edges = 0;
  Rational kappa_c;      // 1 - 1/(3|H|)
  Rational kappa_q;      // 1 - (1/(7|H|))^4
  Rational delta_tilde;  // kappa_q - kappa_c
  Rational delta_lower;  // 16/(2401 |H|^4)
  std::optional<double> delta_of_p;  // 16|H| sqrt(1 - p)
};
/// Throws DomainError for |H| < 3 or p outside [0,1].
ThreeColErrors threecol_errors(int edges, std::optional<double> p_acc = std::nullopt);

/// (1 - delta_ss)/(64 ra_max) * (p - 1/c)^3 when p > 1/c, else 0.
double qpok_extraction_lower(double p_acc, double c, double delta_ss, double ra_max);

/// Classical 3-coloring extraction bound 3|H| (p - kappa_c), floored at 0.
double classical_3col_extraction_lower(int edges, double p_acc);

}  // namespace rzk
