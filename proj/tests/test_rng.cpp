#include "playpen/rng.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using namespace playpen;

TEST_CASE("same seed, same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.bits() == b.bits());
}

TEST_CASE("child streams are independent and reproducible") {
  Rng root(9);
  Rng c1 = root.child(1);
  Rng c2 = root.child(2);
  Rng c1b = Rng(9).child(1);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto v1 = c1.bits();
    if (v1 != c2.bits()) any_diff = true;
    CHECK(v1 == c1b.bits());
  }
  CHECK(any_diff);
}

TEST_CASE("serialize round trip preserves the stream") {
  Rng a(123);
  for (int i = 0; i < 57; ++i) a.uniform();
  Rng b = Rng::deserialize(a.serialize());
  CHECK(a == b);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
}

TEST_CASE("uniform bounds and moments") {
  Rng rng(5);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));

  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
}

TEST_CASE("uniform_int covers its range evenly") {
  Rng rng(17);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) counts[rng.uniform_int(7)]++;
  for (int c : counts) {
    CHECK(c > 9300);
    CHECK(c < 10700);
  }
  CHECK(rng.uniform_int(1) == 0);
}

TEST_CASE("normal moments") {
  Rng rng(2);
  double sum = 0.0, sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("bernoulli extremes") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}
