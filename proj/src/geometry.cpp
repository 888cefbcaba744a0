// Copyright 2026 The m2o Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "m2o/geometry.hpp"

#include <array>
#include <cmath>
#include <string>

#include "m2o/error.hpp"

namespace m2o {

double Distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void RadioConfig::Validate() const {
  auto bad = [](const std::string& what) {
    Fail(ErrorCode::kInvalidArgument, "radio config: " + what);
  };
  if (!(tx_range > 0.0)) bad("tx_range must be positive");
  if (!(cs_range >= tx_range)) bad("cs_range must be >= tx_range");
  if (!(delta >= 0.0)) bad("delta must be >= 0");
  if (!(sir_threshold > 1.0)) bad("sir_threshold must exceed 1");
  if (!(path_loss_exp >= 2.0 && path_loss_exp <= 6.0)) {
    bad("path_loss_exp must lie in [2, 6]");
  }
  if (!(capture_ratio >= 1.0)) bad("capture_ratio must be >= 1");
  if (!(tx_power > 0.0)) bad("tx_power must be positive");
}

double DeltaMargin(double sir_threshold, double path_loss_exp) {
  if (!(sir_threshold >= 1.0)) {
    Fail(ErrorCode::kDomain, "delta_margin: sir_threshold must be >= 1");
  }
  if (!(path_loss_exp > 0.0)) {
    Fail(ErrorCode::kDomain, "delta_margin: path_loss_exp must be positive");
  }
  return std::pow(sir_threshold, 1.0 / path_loss_exp) - 1.0;
}

double ReceivedPower(double tx_power, double d, double path_loss_exp) {
  if (!(d > 0.0)) {
    Fail(ErrorCode::kDomain, "received_power: distance must be positive");
  }
  return tx_power / std::pow(d, path_loss_exp);
}

int FirstViolatedInequality(const Point2D& t1, const Point2D& r1,
                            const Point2D& t2, const Point2D& r2,
                            double delta) {
  const double guard1 = (1.0 + delta) * Distance(t1, r1);
  const double guard2 = (1.0 + delta) * Distance(t2, r2);
  const std::array<double, 8> lhs = {
      Distance(t2, r1), Distance(r2, r1), Distance(t2, t1), Distance(r2, t1),
      Distance(t1, r2), Distance(r1, r2), Distance(t1, t2), Distance(r1, t2)};
  for (int i = 0; i < 8; ++i) {
    const double guard = i < 4 ? guard1 : guard2;
    if (!(lhs[i] > guard)) return i + 1;
  }
  return 0;
}

bool PairwiseCompatible(const Point2D& t1, const Point2D& r1,
                        const Point2D& t2, const Point2D& r2, double delta) {
  return FirstViolatedInequality(t1, r1, t2, r2, delta) == 0;
}

bool PairwiseCompatible(const DirectedLink& a, const DirectedLink& b,
                        std::span<const Point2D> positions, double delta) {
  return PairwiseCompatible(positions[a.tx], positions[a.rx], positions[b.tx],
                            positions[b.rx], delta);
}

}  // namespace m2o
