// Copyright 2026 The correq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "correq/rational.h"

#include <stdexcept>
#include <unordered_set>

#include "doctest.h"

namespace correq {
namespace {

TEST_CASE("rational normalizes on construction") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).ToString() == "0");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  Rational third(1, 3);
  Rational sixth(1, 6);
  CHECK(third + sixth == Rational(1, 2));
  CHECK(third - sixth == sixth);
  CHECK(third * sixth == Rational(1, 18));
  CHECK(third / sixth == Rational(2));
  CHECK(-third == Rational(-1, 3));
  Rational acc(0);
  for (int i = 0; i < 1680; ++i) acc += Rational(1, 1680);
  CHECK(acc == Rational(1));
}

TEST_CASE("rational comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 7) == Rational(1));
  CHECK(Rational(2, 3) > Rational(3, 5));
  CHECK(Rational(1, 2) <= Rational(1, 2));
  CHECK(Rational(5) >= Rational(4));
}

TEST_CASE("rational parse and print round trip") {
  CHECK(Rational::Parse("3/4") == Rational(3, 4));
  CHECK(Rational::Parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::Parse("12") == Rational(12));
  CHECK(Rational::Parse("-12") == Rational(-12));
  CHECK(Rational::Parse("4/8").ToString() == "1/2");
  CHECK(Rational(5).ToString() == "5");
  CHECK(Rational(-1, 3).ToString() == "-1/3");
  CHECK_THROWS_AS(Rational::Parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::Parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::Parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(Rational::Parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::Parse("1/2/3"), std::invalid_argument);
}

TEST_CASE("rational overflow detection") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rational(8), std::overflow_error);
  // Wide intermediates that cancel back down are fine.
  Rational a(1, 1000000007);
  Rational b(1000000007, 3);
  CHECK(a * b == Rational(1, 3));
}

TEST_CASE("rational converts to double") {
  CHECK(Rational(1, 2).ToDouble() == doctest::Approx(0.5));
  CHECK(Rational(-7, 4).ToDouble() == doctest::Approx(-1.75));
}

TEST_CASE("rational hashes consistently with equality") {
  std::unordered_set<Rational> set;
  set.insert(Rational(1, 2));
  set.insert(Rational(2, 4));
  set.insert(Rational(3, 6));
  CHECK(set.size() == 1);
  set.insert(Rational(1, 3));
  CHECK(set.size() == 2);
}

}  // namespace
}  // namespace correq
