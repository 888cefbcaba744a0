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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "m2o/error.hpp"
#include "m2o/geometry.hpp"
#include "oracles.hpp"

using namespace m2o;

TEST_CASE("delta margin examples") {
  CHECK(DeltaMargin(10, 4) == doctest::Approx(0.7783).epsilon(1e-4));
  CHECK(DeltaMargin(1, 4) == doctest::Approx(0.0));
  CHECK(DeltaMargin(10, 2) == doctest::Approx(2.1623).epsilon(1e-4));
}

TEST_CASE("received power follows the fourth-power law") {
  CHECK(ReceivedPower(1.0, 2.0, 4) / ReceivedPower(1.0, 1.0, 4) ==
        doctest::Approx(1.0 / 16));
  CHECK(ReceivedPower(1.0, 1.9, 4) == doctest::Approx(0.07673).epsilon(1e-3));
  CHECK(ReceivedPower(1.0, 1.7321, 4) == doctest::Approx(0.1111).epsilon(1e-3));
}

TEST_CASE("pairwise compatibility examples") {
  const double d = 250, delta = 0.78;
  // Two symmetric chains through the sink on a line.
  const Point2D x1{-d, 0}, x0{0, 0}, x1p{d, 0}, x2p{2 * d, 0};
  CHECK_FALSE(PairwiseCompatible(x1, x0, x2p, x1p, delta));
  CHECK(FirstViolatedInequality(x1, x0, x2p, x1p, delta) != 0);

  const Point2D a{0, 0}, b{d, 0}, c{10 * d, 0}, e{11 * d, 0};
  CHECK(PairwiseCompatible(a, b, c, e, delta));
  CHECK(FirstViolatedInequality(a, b, c, e, delta) == 0);
  CHECK_FALSE(PairwiseCompatible(a, b, a, b, delta));
}

TEST_CASE("an interferer exactly at the margin is incompatible") {
  const double delta = 0.75;  // exact in binary
  const Point2D t1{0, 0}, r1{1, 0};
  // t2 sits exactly (1+delta) from r1.
  const Point2D t2{2.75, 0}, r2{3.75, 0};
  CHECK_FALSE(PairwiseCompatible(t1, r1, t2, r2, delta));
  CHECK(FirstViolatedInequality(t1, r1, t2, r2, delta) == 1);
}

TEST_CASE("within_cs examples") {
  const double d = 250;
  CHECK(WithinCs({0, 0}, {2.9 * d, 0}, 2.9 * d));
  CHECK(WithinCs({5, 5}, {5, 5}, 0.0));
  CHECK_FALSE(WithinCs({0, 0}, {3.5 * d, 0}, 3.417 * d));
}

TEST_CASE("compatibility agrees with the eight-inequality oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  int agree = 0, incompatible = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point2D t1{u(rng), u(rng)}, r1{u(rng), u(rng)}, t2{u(rng), u(rng)},
        r2{u(rng), u(rng)};
    const bool got = PairwiseCompatible(t1, r1, t2, r2, 0.78);
    const bool want = oracle::Compatible({t1.x, t1.y}, {r1.x, r1.y}, {t2.x, t2.y},
                                         {r2.x, r2.y}, 0.78);
    agree += got == want;
    incompatible += !want;
    // The first violated index is zero exactly when compatible.
    CHECK((FirstViolatedInequality(t1, r1, t2, r2, 0.78) == 0) == got);
  }
  CHECK(agree == 20000);
  CHECK(incompatible > 0);
}

TEST_CASE("compatibility is symmetric and scale invariant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const Point2D t1{u(rng), u(rng)}, r1{u(rng), u(rng)}, t2{u(rng), u(rng)},
        r2{u(rng), u(rng)};
    const bool base = PairwiseCompatible(t1, r1, t2, r2, 0.78);
    CHECK(base == PairwiseCompatible(t2, r2, t1, r1, 0.78));
    auto s = [](Point2D p) { return Point2D{p.x * 37.5, p.y * 37.5}; };
    CHECK(base == PairwiseCompatible(s(t1), s(r1), s(t2), s(r2), 0.78));
  }
}

TEST_CASE("radio config validation") {
  RadioConfig c;
  CHECK_NOTHROW(c.Validate());
  c.cs_range = 100;  // below tx_range
  CHECK_THROWS_AS(c.Validate(), Error);
  RadioConfig d;
  d.path_loss_exp = 0;
  CHECK_THROWS_AS(d.Validate(), Error);
}
