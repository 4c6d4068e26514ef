#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kzfront/drive_profile.hpp"

using namespace kzfront;

namespace {
FrontProfile make_profile(double alpha, double v = 1.0) {
  FrontProfile p;
  p.alpha = alpha;
  p.velocity = v;
  return p;
}
}  // namespace

TEST_CASE("field plateaus and ramp") {
  const auto p = make_profile(0.5);
  CHECK(field_at(p, 12, 2.0) == 3.0);                       // n - n_f = 10, leading plateau
  CHECK(field_at(p, 5, 5.0) == doctest::Approx(1.5));       // front center
  CHECK(field_at(p, 6, 5.0) == doctest::Approx(2.0));       // one site ahead
  CHECK(field_at(p, 1, 20.0) == 0.0);                       // trailing plateau
  const auto steep = make_profile(2.0);
  CHECK(field_at(steep, 4, 4.0) == doctest::Approx(1.5));   // center for any alpha
}

TEST_CASE("field is continuous and monotone in n - n_f") {
  // Ahead of the front (large n - n_f) the field is still g_i, behind it g_f:
  // monotone non-decreasing in n - n_f, with slope bounded by alpha.
  for (double alpha : {1.0 / 32, 0.25, 1.0, 2.82}) {
    const auto p = make_profile(alpha);
    const double hw = p.half_width();
    bool monotone = true, continuous = true;
    double prev = field_at(p, 0, hw + 2);  // x = -(hw + 2)
    double last_x = -hw - 2;
    for (double x = -hw - 2; x <= hw + 2; x += 1e-3) {
      const double g = field_at(p, 0, -x);  // n - n_f = x
      monotone = monotone && g >= prev - 1e-12;
      continuous = continuous && std::abs(g - prev) <= alpha * (x - last_x) + 1e-12;
      prev = g;
      last_x = x;
    }
    CHECK(monotone);
    CHECK(continuous);
  }
}

TEST_CASE("gradient is -alpha on the ramp and 0 outside") {
  const auto p = make_profile(1.0 / 32);
  const double hw = p.half_width();
  CHECK(field_gradient_at(p, 0, -2.0 * hw) == 0.0);
  CHECK(field_gradient_at(p, 5, 5.0) == doctest::Approx(-1.0 / 32));
  // sum over sites of the gradient ~ -(g_i - g_f) when the ramp is interior
  const int n_sites = 512;
  double sum = 0.0;
  for (int n = 1; n <= n_sites; ++n) sum += field_gradient_at(p, n, 200.25);
  CHECK(sum == doctest::Approx(-(p.g_init - p.g_final)).epsilon(0.02));
}

TEST_CASE("gradient matches finite differences of the field on the ramp interior") {
  const auto p = make_profile(0.125);
  const double h = 1e-6;
  for (double x : {-10.0, -3.3, 0.0, 4.7, 11.0}) {  // |x| < hw = 12
    const double fd = (field_at(p, 0, -x - h) - field_at(p, 0, -x + h)) / (2 * h);
    // d g / d n_f = -alpha; field_at is evaluated at fixed site, moving front.
    CHECK(std::abs(-fd - field_gradient_at(p, 0, -x)) < 1e-8);
  }
}

TEST_CASE("schedule timing") {
  const auto p = make_profile(1.0 / 32, 1.0);
  const auto s = schedule_for(512, p);
  CHECK(s.total_time() == doctest::Approx(608.0).epsilon(1e-12));  // 512 + 96
  // plateaus cover the chain at the endpoints
  CHECK(field_at(p, 1, s.front_position(s.t_start)) == 3.0);
  CHECK(field_at(p, 512, s.front_position(s.t_start)) == 3.0);
  CHECK(field_at(p, 1, s.front_position(s.t_end)) == 0.0);
  CHECK(field_at(p, 512, s.front_position(s.t_end)) == 0.0);
}

TEST_CASE("fast-front limit: T approaches (g_i - g_f)/(alpha v)") {
  const double alpha_v = 0.25;  // alpha * v fixed
  double prev = 1e300;
  for (double v : {10.0, 100.0, 1000.0}) {
    const auto s = schedule_for(2, make_profile(alpha_v / v, v));
    const double floor = (3.0 - 0.0) / alpha_v;
    CHECK(s.total_time() > floor);
    CHECK(s.total_time() < prev);
    prev = s.total_time();
  }
  CHECK(prev == doctest::Approx(12.0 + 2.0 / 1000.0));
}

TEST_CASE("velocity_for inverts schedule_for") {
  CHECK(velocity_for(128, 1.0 / 32, 3.0, 0.0, 1.0e4) == doctest::Approx(0.0224));
  for (double alpha : {1.0 / 64, 0.125, 1.0}) {
    for (double t : {30.0, 600.0, 1e4}) {
      const double v = velocity_for(128, alpha, 3.0, 0.0, t);
      const auto s = schedule_for(128, make_profile(alpha, v));
      CHECK(std::abs(s.total_time() - t) / t < 1e-12);
    }
  }
  CHECK_THROWS_AS(velocity_for(128, 0.5, 3.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(velocity_for(128, 0.5, 3.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("homogeneous schedule endpoints and midpoint") {
  const auto s = homogeneous_schedule(16, 3.0, 0.0, 100.0);
  CHECK(homogeneous_field_at(s.t_start, s) == 3.0);
  CHECK(homogeneous_field_at(0.5 * (s.t_start + s.t_end), s) == doctest::Approx(1.5));
  CHECK(homogeneous_field_at(s.t_end, s) == 0.0);
  // clamped outside the window
  CHECK(homogeneous_field_at(s.t_start - 5.0, s) == 3.0);
  CHECK(homogeneous_field_at(s.t_end + 5.0, s) == 0.0);
}

TEST_CASE("profile validation") {
  FrontProfile p;  // alpha = velocity = 0
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p.alpha = 0.5;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p.velocity = 1.0;
  CHECK_NOTHROW(validate(p));
  p.g_final = 4.0;  // g_i < g_f
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("kink smoothing: off by default, C1 when enabled") {
  auto p = make_profile(0.25);
  auto smooth = p;
  smooth.smoothing_sites = 2.0;
  const double hw = p.half_width();  // 6 sites
  // identical away from the kinks
  for (double x : {-hw - 3.0, -2.0, 0.0, 3.1, hw + 3.0}) {
    CHECK(field_at(smooth, 0, -x) == doctest::Approx(field_at(p, 0, -x)));
  }
  // continuous first derivative across the blend zones
  const double h = 1e-6;
  for (double x = -hw - 3.0; x <= hw + 3.0; x += 0.01) {
    const double fd = (field_at(smooth, 0, -(x + h)) - field_at(smooth, 0, -(x - h))) / (2 * h);
    CHECK(std::abs(fd - (-field_gradient_at(smooth, 0, -x))) < 1e-6);
  }
  // plateaus reached just outside half_width + smoothing
  CHECK(field_at(smooth, 0, -(hw + 2.0001)) == 3.0);
  CHECK(field_at(smooth, 0, hw + 2.0001) == 0.0);
  // still monotone
  double prev = 0.0;
  for (double x = -hw - 3.0; x <= hw + 3.0; x += 0.01) {
    const double g = field_at(smooth, 0, -x);
    CHECK(g >= prev - 1e-12);
    prev = g;
  }
  // smoothing wider than the ramp is rejected
  auto bad = p;
  bad.smoothing_sites = hw + 1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
