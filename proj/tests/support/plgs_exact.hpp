#pragma once

// Exact-arithmetic mirror of the piecewise linear-geometric scaling for the
// quarter-step grid tests. The decay factor is rational (mu = a/b), so s(x)
// on the grid is rational as well; comparing integerized numerators proves
// strict monotonicity where double arithmetic saturates near the plateau.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "lobert/scaling.hpp"

namespace lobert::testsupport {

using boost::multiprecision::cpp_int;

struct ExactPlgsGrid {
  // Numerator of s(x_i) over denominator 4 * b^n(i); den_scale[i] = n(i).
  std::vector<cpp_int> numerators;
  std::vector<int> den_pow;
  cpp_int b;
};

// Grid x_i = i / 4 over [0, tau_clip]. Requires integer tau parameters.
inline ExactPlgsGrid exact_plgs_grid(const scaling::PlgsParams& p) {
  const int64_t start = int64_t(p.tau_start);
  const int64_t maxv = int64_t(p.tau_max);
  const int64_t clip = int64_t(p.tau_clip);
  const cpp_int b = maxv - start;      // mu = a / b
  const cpp_int a = b - 1;

  ExactPlgsGrid grid;
  grid.b = b;
  cpp_int b_pow = 1, a_pow = 1;  // b^n, a^n for the current n
  int current_n = 0;
  for (int64_t q = 0; q <= 4 * clip; ++q) {  // q = 4 * x
    if (q <= 4 * start) {
      grid.numerators.push_back(cpp_int(q));  // s = x exactly, denominator 4
      grid.den_pow.push_back(0);
      continue;
    }
    const int64_t over_q = q - 4 * start;
    const int n = int(over_q / 4);
    const int f4 = int(over_q % 4);
    while (current_n < n) {
      b_pow *= b;
      a_pow *= a;
      ++current_n;
    }
    // 4 b^n s = 4 b^n start + 4 (max-start)(b^n - a^n) + f4 a^n
    cpp_int num = 4 * b_pow * start + 4 * b * (b_pow - a_pow) + f4 * a_pow;
    grid.numerators.push_back(num);
    grid.den_pow.push_back(n);
  }
  return grid;
}

// Strict monotonicity of the exact values across the whole grid.
inline bool exact_grid_strictly_increasing(const ExactPlgsGrid& g) {
  for (size_t i = 1; i < g.numerators.size(); ++i) {
    const int dn = g.den_pow[i] - g.den_pow[i - 1];
    // compare N_{i-1} / b^{n_{i-1}} < N_i / b^{n_i}
    cpp_int lhs = g.numerators[i - 1];
    for (int k = 0; k < dn; ++k) lhs *= g.b;
    if (!(lhs < g.numerators[i])) return false;
  }
  return true;
}

}  // namespace lobert::testsupport
