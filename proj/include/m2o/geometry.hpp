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

#ifndef M2O_GEOMETRY_HPP_
#define M2O_GEOMETRY_HPP_

#include <cstdint>
#include <span>

namespace m2o {

using NodeId = std::uint32_t;

struct Point2D {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double Distance(const Point2D& a, const Point2D& b);

// Radio parameters shared by every node (homogeneous network). Lengths are in
// meters; powers are in arbitrary linear units since only ratios matter.
struct RadioConfig {
  double tx_range = 250.0;
  double cs_range = 550.0;
  double path_loss_exp = 4.0;
  double sir_threshold = 10.0;  // linear, 10 dB
  double delta = 0.78;          // interference distance margin
  double capture_ratio = 10.0;  // linear, 10 dB
  bool rs_mode = true;          // receiver restart
  double tx_power = 1.0;
  double link_capacity = 1.0;   // bits/s (nominal L)

  // Throws Error(kInvalidArgument) when an invariant does not hold.
  void Validate() const;
};

// Returns sir_threshold^(1/path_loss_exp) - 1.
double DeltaMargin(double sir_threshold, double path_loss_exp);

// Power received at distance `d` with the proportionality constant fixed to 1.
double ReceivedPower(double tx_power, double d, double path_loss_exp);

struct DirectedLink {
  NodeId tx = 0;
  NodeId rx = 0;

  friend bool operator==(const DirectedLink&, const DirectedLink&) = default;
  friend auto operator<=>(const DirectedLink&, const DirectedLink&) = default;
};

// Which of the eight interference inequalities failed first, 1-based in the
// order (T2,R1) (R2,R1) (T2,T1) (R2,T1) (T1,R2) (R1,R2) (T1,T2) (R1,T2).
// Zero means all hold.
int FirstViolatedInequality(const Point2D& t1, const Point2D& r1,
                            const Point2D& t2, const Point2D& r2,
                            double delta);

// True iff the two links can be active together without DATA-DATA,
// DATA-ACK or ACK-ACK collisions. All inequalities are strict.
bool PairwiseCompatible(const Point2D& t1, const Point2D& r1,
                        const Point2D& t2, const Point2D& r2, double delta);

bool PairwiseCompatible(const DirectedLink& a, const DirectedLink& b,
                        std::span<const Point2D> positions, double delta);

inline bool WithinCs(const Point2D& t1, const Point2D& t2, double cs_range) {
  return Distance(t1, t2) <= cs_range;
}

}  // namespace m2o

#endif  // M2O_GEOMETRY_HPP_
