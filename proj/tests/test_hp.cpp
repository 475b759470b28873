// Copyright 2026 The gausdisk Authors
//
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

#include <doctest.h>

#include <random>

#include "gausdisk/hp.hpp"
#include "oracles.hpp"

using namespace gausdisk;

namespace {

Real eps(Precision p, long slack) { return ldexp(Real(1, p), -static_cast<long>(p.bits()) + slack); }

}  // namespace

TEST_SUITE("hp_arith") {

TEST_CASE("precision floor and policy") {
  CHECK_THROWS_AS(Precision(63), Error);
  CHECK(Precision(64).bits() == 64);
  CHECK(precision_policy(0, 0).bits() == 128);
  // 3*16*2 + ceil(25/ln2) + 64 = 96 + 37 + 64
  CHECK(precision_policy(4, 1).bits() == 197);
  CHECK(precision_policy(8, 1) > precision_policy(6, 1));
}

TEST_CASE("arithmetic rounds to the larger precision") {
  const Real x(1, Precision(64)), y(3, Precision(256));
  const Real q = x / y;
  CHECK(q.precision().bits() == 256);
  CHECK(abs(q * 3 - Real(1, Precision(256))) <= eps(Precision(256), 2));
}

TEST_CASE("non-finite results raise precision_unachievable") {
  const Precision p(128);
  try {
    (void)log(Real(-1, p));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precision_unachievable);
  }
  CHECK_THROWS_AS((void)(Real(1, p) / Real(0, p)), Error);
  CHECK_THROWS_AS((void)sqrt(Real(-4, p)), Error);
}

TEST_CASE("decimal parsing and printing") {
  const Precision p(128);
  CHECK(Real("0.5", p) == Real(1, p) / Real(2, p));
  CHECK(Real(1, p).to_decimal() == "1");
  CHECK(Real(0, p).to_decimal() == "0");
  CHECK(Real(-125, p).to_decimal(10) == "-125");
  CHECK(Real("0.015625", p).to_decimal(10) == "0.015625");
  CHECK(Real("1e-30", p).to_decimal(5) == "1e-30");
  CHECK((Real(1, p) / Real(3, p)).to_decimal(5) == "0.33333");
  CHECK_THROWS_AS(Real("abc", p), Error);
}

TEST_CASE("serialization round trips bit for bit") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30, 30);
  for (unsigned long bits : {64UL, 113UL, 512UL}) {
    const Precision p(bits);
    for (int i = 0; i < 50; ++i) {
      const Real x = exp(Real(u(rng), p)) / Real(7, p) * (i % 2 ? 1 : -1);
      const Real y = Real::deserialize(x.serialize());
      CHECK(y == x);
      CHECK(y.precision() == p);
    }
  }
  CHECK(Real::deserialize(Real(0, Precision(80)).serialize()).is_zero());
  CHECK_THROWS_AS(Real::deserialize("12e3"), Error);
}

TEST_CASE("exp matches its power series") {
  const Precision p(256);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int i = 0; i < 50; ++i) {
    const Complex z(u(rng), u(rng), p);
    const Complex want = oracle::series_exp(z, p.plus(32));
    CHECK(abs(exp_c(z, p) - want) <= abs(want) * eps(p, 4));
  }
}

TEST_CASE("exp_c(z) exp_c(-z) = 1 at 1000 random points") {
  const Precision p(192);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-40, 40);
  for (int i = 0; i < 1000; ++i) {
    const Complex z(u(rng), u(rng), p);
    const Complex prod = exp_c(z, p) * exp_c(-z, p);
    REQUIRE(abs(prod - Real(1, p)) <= eps(p, 8));
  }
  CHECK_THROWS_AS(exp_c(Complex(2e6, 0, p), p), Error);
}

TEST_CASE("raising precision refines a result without moving it") {
  // The value at p agrees with the value at 2p to about 2^-p.
  const Precision lo(128), hi(256);
  for (double x : {0.1, 1.7, 13.25}) {
    const Real a = exp(sin(Real(x, lo)) * log(Real(x + 2, lo)));
    const Real b = exp(sin(Real(x, hi)) * log(Real(x + 2, hi)));
    CHECK(abs(a - b) <= abs(b) * eps(lo, 4));
  }
}

TEST_CASE("complex helpers") {
  const Precision p(128);
  const Complex z(3, -4, p);
  CHECK(abs(z) == Real(5, p));
  CHECK(conj(z).im() == Real(4, p));
  CHECK(times_i(z).re() == Real(4, p));
  // |z| avoids overflow far beyond double range
  const Real big = ldexp(Real(1, p), 60000);
  CHECK(abs(Complex(big, big)) > big);
  const Complex w = polar(Real(2, p), pi(p) / 2);
  CHECK(abs(w - Complex(0, 2, p)) <= eps(p, 4));
  CHECK(abs(square(z) - z * z) == Real(0, p));
}

TEST_CASE("factorials") {
  const Precision p(128);
  CHECK(factorial(10, p) == Real(3628800, p));
  CHECK(double_factorial(7, p) == Real(105, p));
  CHECK(double_factorial(-1, p) == Real(1, p));
  CHECK(double_factorial(0, p) == Real(1, p));
}

}  // TEST_SUITE
