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

#ifndef TBSIG_GAME_DISTRIBUTION_HPP_
#define TBSIG_GAME_DISTRIBUTION_HPP_

#include <cmath>
#include <sstream>
#include <string>

#include "tbsig/error.hpp"

namespace tbsig::game {

// Distribution of the inclusion threshold I on [a, b]. Both families have a
// non-decreasing density: constant, or proportional to 1 + slope (x - a).
class InclusionDistribution {
 public:
  enum class Family { kUniform, kTruncatedLinear };

  static InclusionDistribution uniform(double a, double b) {
    return InclusionDistribution(Family::kUniform, a, b, 0.0);
  }
  static InclusionDistribution truncated_linear(double a, double b, double slope) {
    return InclusionDistribution(Family::kTruncatedLinear, a, b, slope);
  }

  Family family() const { return family_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  double slope() const { return slope_; }

  double cdf(double x) const {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    const double u = x - a_;
    return (u + 0.5 * slope_ * u * u) / norm_;
  }

  double pdf(double x) const {
    if (x < a_ || x > b_) return 0.0;
    return (1.0 + slope_ * (x - a_)) / norm_;
  }

  std::string name() const {
    std::ostringstream os;
    if (family_ == Family::kUniform) {
      os << "uniform(" << a_ << ";" << b_ << ")";
    } else {
      os << "linear(" << a_ << ";" << b_ << ";" << slope_ << ")";
    }
    return os.str();
  }

 private:
  InclusionDistribution(Family f, double a, double b, double slope)
      : family_(f), a_(a), b_(b), slope_(slope) {
    if (!(a >= 0) || !(b > a) || !std::isfinite(b)) {
      throw Error(Errc::kInvalidInput, "need 0 <= a < b < inf");
    }
    if (!(slope >= 0)) throw Error(Errc::kInvalidInput, "density must be non-decreasing");
    norm_ = (b - a) + 0.5 * slope * (b - a) * (b - a);
  }

  Family family_;
  double a_, b_, slope_;
  double norm_ = 1;
};

}  // namespace tbsig::game

#endif  // TBSIG_GAME_DISTRIBUTION_HPP_
