#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "protek/family.hpp"
#include "protek/rational.hpp"
#include "protek/series.hpp"

namespace protek {

/// Y(x) = x Phi(Y(x)) with Y(0) = 0, truncated at order N >= 1.
TruncatedSeries solve_Y(const WeightFamily& family, std::size_t order);

/// Same series by N fixed-point sweeps Y <- x Phi(Y) from Y = 0.
TruncatedSeries solve_Y_by_sweeps(const WeightFamily& family, std::size_t order);

/// Y_{h,0..h}: trees in which no vertex is more than h-protected and whose
/// root is at least k-protected. They satisfy
///   Y_{h,0} = Y_{h,1} + x,
///   Y_{h,k} = x (Phi(Y_{h,k-1}) - Phi(Y_{h,h}))   for 1 <= k <= h.
struct ProtectionSeriesSet {
  int h = 0;
  std::size_t order = 0;
  std::vector<TruncatedSeries> series;

  const TruncatedSeries& bounded() const { return series.front(); }
};

/// Solves the system for h >= 1 through order N, one coefficient index at a
/// time (all series are extended from x^{n-1} to x^n before moving on).
ProtectionSeriesSet solve_protection_system(const WeightFamily& family, int h, std::size_t order);

/// Reference route: all series start at 0 and receive N full sweeps, each
/// updating k = h, h-1, ..., 1 and then k = 0.
ProtectionSeriesSet solve_protection_system_by_sweeps(const WeightFamily& family, int h, std::size_t order);

/// Y_{h,0} alone, for any h >= 0 (Y_{0,0} = x: only the one-vertex tree has
/// maximum protection number 0).
TruncatedSeries bounded_protection_series(const WeightFamily& family, int h, std::size_t order);

struct CdfRow {
  int h = 0;
  Rational p_exact;
  double p_float = 0.0;
};

/// P(X_n <= h) for a uniformly (weighted) random n-vertex tree.
struct CdfTable {
  std::string family;
  std::size_t n = 0;
  std::vector<CdfRow> rows;
};

/// Rows h = 0..min(hmax, n-1). Throws Error(PeriodMismatch) when no tree of
/// size n exists (n != 1 mod the family period).
CdfTable cdf_exact(const WeightFamily& family, std::size_t n, int hmax);

/// Several sizes from one set of series solved at the largest size;
/// hmax[i] applies to sizes[i].
std::vector<CdfTable> cdf_exact_multi(const WeightFamily& family, std::span<const std::size_t> sizes,
                                      std::span<const int> hmax);

/// E[X_n] = sum_{h >= 0} (1 - P(X_n <= h)); the sum stops at h = n-2.
Rational expectation_exact(const WeightFamily& family, std::size_t n);

/// Throws Error(PeriodMismatch) unless n >= 1 and n = 1 mod the period.
void require_size_in_period(const WeightFamily& family, std::size_t n);

}  // namespace protek
