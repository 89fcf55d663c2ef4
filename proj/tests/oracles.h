/******************************************************************************
 * Copyright 2026 The uplinksim Authors                                       *
 *                                                                            *
 * Licensed under the Apache License, Version 2.0 (the "License");            *
 * you may not use this file except in compliance with the License.           *
 *                                                                            *
 * You may obtain a copy of the License at                                    *
 *                                                                            *
 *     http://www.apache.org/licenses/LICENSE-2.0                             *
 *                                                                            *
 * Unless required by applicable law or agreed to in writing, software        *
 * distributed under the License is distributed on an "AS IS" BASIS,          *
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.   *
 * See the License for the specific language governing permissions and        *
 * limitations under the License.                                             *
 ******************************************************************************/

/**
 * @file
 * Brute-force reference computations shared by unit and acceptance tests.
 * Deliberately structured nothing like the library implementations.
 */

#ifndef UPLINKSIM_TESTS_ORACLES_H_
#define UPLINKSIM_TESTS_ORACLES_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace uplinksim_test {

// Megabits inside the backward interval (total - (j+1)*tau, total - j*tau]
// of a frame log laid end to end, integrated by slicing every frame into
// many uniform-rate slivers and accumulating each sliver's exact overlap
// with the interval.
inline double SliceOracleInterval(const std::vector<double>& sizes,
                                  const std::vector<double>& durations,
                                  std::size_t j, double tau,
                                  int slices_per_frame = 10000) {
  double total = 0.0;
  for (const double t : durations) {
    total += t;
  }
  const double hi = total - static_cast<double>(j) * tau;
  const double lo = hi - tau;

  double value = 0.0;
  double frame_begin = 0.0;
  for (std::size_t m = 0; m < sizes.size(); ++m) {
    const double slice_len = durations[m] / slices_per_frame;
    const double slice_mb = sizes[m] / slices_per_frame;
    for (int s = 0; s < slices_per_frame; ++s) {
      const double a = frame_begin + s * slice_len;
      const double b = a + slice_len;
      const double ov_lo = a > lo ? a : lo;
      const double ov_hi = b < hi ? b : hi;
      if (ov_hi > ov_lo) {
        value += slice_mb * ((ov_hi - ov_lo) / slice_len);
      }
    }
    frame_begin += durations[m];
  }
  return value;
}

// Type-7 quantile written the other way round from the library (double
// order-statistic selection, complementary-weight blend).
inline double ReferenceQuantile(std::vector<double> values, double gamma) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double h = gamma * static_cast<double>(n - 1);
  std::size_t lower = static_cast<std::size_t>(h);
  if (lower >= n - 1) {
    return values[n - 1];
  }
  const double w = h - static_cast<double>(lower);
  return (1.0 - w) * values[lower] + w * values[lower + 1];
}

// Deterministic uniform draws for test data (independent of the library's
// generator plumbing).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : eng_(seed) {}
  double Uniform() { return (eng_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  std::uint64_t Integer(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace uplinksim_test

#endif  // UPLINKSIM_TESTS_ORACLES_H_
