#pragma once

// Helpers for eventually periodic sequences  pre, per, per, per, ...

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace qmk {

/// Shrinks (pre, period) to the minimal period and then the shortest
/// preperiod describing the same infinite sequence. period must be nonempty.
template <class T>
void minimize_period(std::vector<T>& pre, std::vector<T>& period) {
  const std::size_t n = period.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = period[i] == period[i - p];
    if (ok) {
      period.resize(p);
      break;
    }
  }
  while (!pre.empty() && pre.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    pre.pop_back();
  }
}

template <class T>
const T& periodic_at(const std::vector<T>& pre, const std::vector<T>& period, std::size_t i) {
  if (i < pre.size()) return pre[i];
  return period[(i - pre.size()) % period.size()];
}

struct PeriodGuess {
  std::size_t preperiod;
  std::size_t period;
};

/// Smallest (period, preperiod) such that the tail of the window after the
/// preperiod repeats at least `min_repeats` times. Evidence only, never proof.
template <class T>
std::optional<PeriodGuess> guess_period(const std::vector<T>& window, std::size_t min_repeats = 2) {
  const std::size_t n = window.size();
  for (std::size_t p = 1; p * min_repeats <= n; ++p) {
    // longest suffix that is p-periodic
    std::size_t start = n - p;
    while (start > 0 && window[start - 1] == window[start - 1 + p]) --start;
    if (n - start >= p * min_repeats) return PeriodGuess{start, p};
  }
  return std::nullopt;
}

}  // namespace qmk
