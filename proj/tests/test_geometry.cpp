#include "playpen/geometry.hpp"

#include "doctest.h"
#include "playpen/rng.hpp"

using namespace playpen;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));  // boundary folds to +pi
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(2.0 * kPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5));

  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.uniform(-50.0, 50.0);
    const double w = wrap_angle(a);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::sin(w) == doctest::Approx(std::sin(a)).epsilon(1e-9));
    CHECK(std::cos(w) == doctest::Approx(std::cos(a)).epsilon(1e-9));
  }
}

TEST_CASE("compose and inverse cancel") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Pose2 a{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-kPi, kPi)};
    Pose2 id = compose(a, inverse(a));
    CHECK(id.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(id.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(wrap_angle(id.theta)) < 1e-12);
    Pose2 id2 = compose(inverse(a), a);
    CHECK(id2.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(id2.y == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("to_body_frame worked examples") {
  // Robot at origin facing +y; a waypoint one meter ahead reads as +x forward.
  Pose2 body{0.0, 0.0, kPi / 2.0};
  Pose2 wp{0.0, 1.0, kPi / 2.0};
  Pose2 local = to_body_frame(wp, body);
  CHECK(local.x == doctest::Approx(1.0));
  CHECK(local.y == doctest::Approx(0.0));
  CHECK(local.theta == doctest::Approx(0.0));

  // Identity when waypoint equals body pose.
  Pose2 b2{1.3, -0.4, 0.7};
  Pose2 l2 = to_body_frame(b2, b2);
  CHECK(l2.x == doctest::Approx(0.0));
  CHECK(l2.y == doctest::Approx(0.0));
  CHECK(std::abs(l2.theta) < 1e-12);

  // Round trip: body frame back to world.
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Pose2 b{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-kPi, kPi)};
    Pose2 w{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-kPi, kPi)};
    Pose2 back = compose(b, to_body_frame(w, b));
    CHECK(back.x == doctest::Approx(w.x).epsilon(1e-10));
    CHECK(back.y == doctest::Approx(w.y).epsilon(1e-10));
    CHECK(std::abs(wrap_angle(back.theta - w.theta)) < 1e-10);
  }
}

TEST_CASE("transform_point matches compose on positions") {
  Pose2 p{2.0, 1.0, kPi};
  Vec2 v = transform_point(p, {1.0, 1.0});
  CHECK(v.x == doctest::Approx(1.0));
  CHECK(v.y == doctest::Approx(0.0));
}

TEST_CASE("distance_to_rect") {
  Rect r{0.0, 0.0, 2.0, 1.0};
  CHECK(distance_to_rect({1.0, 0.5}, r) == 0.0);
  CHECK(distance_to_rect({2.0, 1.0}, r) == 0.0);  // closed boundary
  CHECK(distance_to_rect({3.0, 2.0}, r) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance_to_rect({-1.0, 0.5}, r) == doctest::Approx(1.0));
  CHECK(distance_to_rect({1.0, -2.0}, r) == doctest::Approx(2.0));
}
