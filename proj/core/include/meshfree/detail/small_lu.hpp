#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace meshfree::detail {

/// In-place partial-pivot LU for the (m+1)-sized moment systems, m <= 5.
/// Fixed capacity keeps the GMLS assembly path free of heap traffic.
struct SmallLU {
  static constexpr int kMaxN = 6;

  double a[kMaxN][kMaxN];
  int piv[kMaxN];
  int n = 0;
  double pivot_max = 0.0;
  double pivot_min = 0.0;

  void factor(int size) {
    n = size;
    pivot_max = 0.0;
    pivot_min = std::numeric_limits<double>::infinity();
    for (int col = 0; col < n; ++col) {
      int p = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[p][col])) p = r;
      }
      if (p != col) {
        for (int c = 0; c < n; ++c) std::swap(a[p][c], a[col][c]);
      }
      piv[col] = p;
      const double d = std::abs(a[col][col]);
      pivot_max = std::max(pivot_max, d);
      pivot_min = std::min(pivot_min, d);
      if (d == 0.0) continue;  // ratio becomes inf; caller rejects
      const double inv = 1.0 / a[col][col];
      for (int r = col + 1; r < n; ++r) {
        const double f = a[r][col] * inv;
        a[r][col] = f;
        for (int c = col + 1; c < n; ++c) a[r][c] -= f * a[col][c];
      }
    }
  }

  double pivot_ratio() const {
    if (pivot_min == 0.0) return std::numeric_limits<double>::infinity();
    return pivot_max / pivot_min;
  }

  void solve(double* x) const {
    for (int col = 0; col < n; ++col) {
      if (piv[col] != col) std::swap(x[col], x[piv[col]]);
    }
    for (int r = 1; r < n; ++r) {
      for (int c = 0; c < r; ++c) x[r] -= a[r][c] * x[c];
    }
    for (int r = n - 1; r >= 0; --r) {
      for (int c = r + 1; c < n; ++c) x[r] -= a[r][c] * x[c];
      x[r] /= a[r][r];
    }
  }
};

}  // namespace meshfree::detail
