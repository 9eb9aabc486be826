/*
 * Copyright 2026 The tbsig Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TBSIG_SECURITY_STATS_HPP_
#define TBSIG_SECURITY_STATS_HPP_

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "tbsig/error.hpp"

namespace tbsig::security {

struct ChiSquare {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

// Two-sample test that `a` and `b` are draws from the same categorical
// distribution. Categories empty in both samples are dropped.
inline ChiSquare chi_square_homogeneity(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw Error(Errc::kInvalidInput, "category count mismatch");
  double na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]);
  }
  if (na == 0 || nb == 0) throw Error(Errc::kInvalidInput, "empty sample");
  ChiSquare r;
  int used = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0) continue;
    ++used;
    const double ea = col * na / (na + nb), eb = col * nb / (na + nb);
    r.statistic += std::pow(a[i] - ea, 2) / ea + std::pow(b[i] - eb, 2) / eb;
  }
  r.dof = used - 1;
  if (r.dof < 1) return r;
  r.p_value = boost::math::cdf(boost::math::complement(
      boost::math::chi_squared_distribution<double>(r.dof), r.statistic));
  return r;
}

// Goodness of fit against the uniform distribution on the given categories.
inline ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  double n = 0;
  for (auto c : counts) n += static_cast<double>(c);
  if (counts.size() < 2 || n == 0) throw Error(Errc::kInvalidInput, "degenerate sample");
  const double e = n / counts.size();
  ChiSquare r;
  for (auto c : counts) r.statistic += std::pow(c - e, 2) / e;
  r.dof = counts.size() - 1;
  r.p_value = boost::math::cdf(boost::math::complement(
      boost::math::chi_squared_distribution<double>(r.dof), r.statistic));
  return r;
}

// Standard error of a proportion estimated from n trials.
inline double binomial_sigma(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(p * (1 - p) / static_cast<double>(n));
}

}  // namespace tbsig::security

#endif  // TBSIG_SECURITY_STATS_HPP_
