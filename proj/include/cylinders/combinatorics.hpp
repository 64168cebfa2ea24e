#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cylinders/error.hpp"

namespace cylinders {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / i;
  return out;
}

inline std::uint64_t multinomial(std::initializer_list<int> parts) {
  std::uint64_t out = 1;
  int total = 0;
  for (int p : parts) {
    total += p;
    out *= binomial(total, p);
  }
  return out;
}

/// S(m, k) by the recurrence S(m,k) = k S(m-1,k) + S(m-1,k-1).
inline std::uint64_t stirling2(int m, int k) {
  if (m < 0 || k < 0 || k > m) {
    if (m >= 0 && k > m) return 0;
    throw Error(ErrorKind::invalid_argument, "stirling2 needs 0 <= k <= m");
  }
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= m; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

struct BezoutBounds {
  int n = 0;
  std::uint64_t e3_system = 0;  // reduced degree-3/degree-6 system in E^3, zero otherwise
  std::uint64_t general = 0;    // 2 * 3^(n+1)
  std::uint64_t stirling = 0;   // 6 * S(n+1, 3)
};

inline BezoutBounds bezout_bounds(int n) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "bezout_bounds needs n >= 2");
  BezoutBounds b;
  b.n = n;
  b.e3_system = n == 3 ? 3 * 6 * 2 : 0;
  std::uint64_t p = 2;
  for (int i = 0; i <= n; ++i) p *= 3;
  b.general = p;
  b.stirling = 6 * stirling2(n + 1, 3);
  return b;
}

}  // namespace cylinders
