#include "kzfront/drive_profile.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace kzfront {

void validate(const FrontProfile& profile) {
  if (!(profile.g_init > profile.g_final))
    throw std::invalid_argument("FrontProfile: requires g_init > g_final");
  if (!(profile.alpha > 0.0)) throw std::invalid_argument("FrontProfile: requires alpha > 0");
  if (!(profile.velocity > 0.0)) throw std::invalid_argument("FrontProfile: requires velocity > 0");
  if (!std::isfinite(profile.half_width()))
    throw std::invalid_argument("FrontProfile: half_width not finite");
  if (profile.smoothing_sites < 0.0 || profile.smoothing_sites > profile.half_width())
    throw std::invalid_argument("FrontProfile: smoothing_sites must be in [0, half_width]");
}

namespace {

// C^1 saturation: y for |y| <= h - s, +-h outside h + s, quadratic blends in
// between. s = 0 reduces to a hard clamp at +-h.
double smooth_saturate(double y, double h, double s) {
  const double a = std::abs(y);
  if (a >= h + s) return y > 0 ? h : -h;
  if (a <= h - s) return y;
  const double q = h - (h + s - a) * (h + s - a) / (4.0 * s);
  return y > 0 ? q : -q;
}

double smooth_saturate_slope(double y, double h, double s) {
  const double a = std::abs(y);
  if (a >= h + s) return 0.0;
  if (a <= h - s) return 1.0;
  return (h + s - a) / (2.0 * s);
}

}  // namespace

double field_at(const FrontProfile& profile, int site, double front_position) {
  const double x = static_cast<double>(site) - front_position;
  const double hw = profile.half_width();
  const double mid = 0.5 * (profile.g_init + profile.g_final);
  const double half_range = 0.5 * (profile.g_init - profile.g_final);
  if (profile.smoothing_sites > 0.0) {
    return mid + smooth_saturate(profile.alpha * x, half_range,
                                 profile.alpha * profile.smoothing_sites);
  }
  if (x > hw) return profile.g_init;
  if (x < -hw) return profile.g_final;
  return mid + profile.alpha * x;
}

double field_gradient_at(const FrontProfile& profile, int site, double front_position) {
  const double x = static_cast<double>(site) - front_position;
  if (profile.smoothing_sites > 0.0) {
    const double half_range = 0.5 * (profile.g_init - profile.g_final);
    return -profile.alpha * smooth_saturate_slope(profile.alpha * x, half_range,
                                                  profile.alpha * profile.smoothing_sites);
  }
  return std::abs(x) <= profile.half_width() ? -profile.alpha : 0.0;
}

Schedule schedule_for(int n_sites, const FrontProfile& profile) {
  if (n_sites < 2) throw std::invalid_argument("schedule_for: n_sites must be >= 2");
  validate(profile);
  Schedule s;
  s.mode = DriveMode::Inhomogeneous;
  s.n_sites = n_sites;
  s.profile = profile;
  // Front travels from half a site before the chain to half a site past it,
  // plateaus included: distance N + 2*half_width, so T = N/v + (g_i-g_f)/(alpha v).
  // Kink smoothing widens the front by smoothing_sites on each flank.
  const double hw = profile.half_width() + profile.smoothing_sites;
  s.t_start = (0.5 - hw) / profile.velocity;
  s.t_end = (n_sites + 0.5 + hw) / profile.velocity;
  return s;
}

Schedule homogeneous_schedule(int n_sites, double g_init, double g_final, double total_time) {
  if (n_sites < 2) throw std::invalid_argument("homogeneous_schedule: n_sites must be >= 2");
  if (!(g_init > g_final))
    throw std::invalid_argument("homogeneous_schedule: requires g_init > g_final");
  if (!(total_time > 0.0))
    throw std::invalid_argument("homogeneous_schedule: requires total_time > 0");
  Schedule s;
  s.mode = DriveMode::Homogeneous;
  s.n_sites = n_sites;
  s.profile.g_init = g_init;
  s.profile.g_final = g_final;
  s.t_start = 0.0;
  s.t_end = total_time;
  return s;
}

double velocity_for(int n_sites, double alpha, double g_init, double g_final, double total_time) {
  if (total_time <= 0.0) throw std::invalid_argument("velocity_for: total_time must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("velocity_for: alpha must be > 0");
  return (static_cast<double>(n_sites) + (g_init - g_final) / alpha) / total_time;
}

double homogeneous_field_at(double t, const Schedule& schedule) {
  assert(schedule.mode == DriveMode::Homogeneous);
  const double T = schedule.total_time();
  double u = (t - schedule.t_start) / T;
  if (u < 0.0) u = 0.0;
  if (u > 1.0) u = 1.0;
  return schedule.profile.g_init + (schedule.profile.g_final - schedule.profile.g_init) * u;
}

void fields_at_time(const Schedule& schedule, double t, std::span<double> out) {
  assert(static_cast<int>(out.size()) == schedule.n_sites);
  if (schedule.mode == DriveMode::Homogeneous) {
    const double g = homogeneous_field_at(t, schedule);
    for (double& v : out) v = g;
    return;
  }
  const double n_f = schedule.front_position(t);
  for (int n = 1; n <= schedule.n_sites; ++n) {
    out[static_cast<std::size_t>(n - 1)] = field_at(schedule.profile, n, n_f);
  }
}

std::vector<double> fields_at_front(const FrontProfile& profile, int n_sites, double front_position) {
  std::vector<double> g(static_cast<std::size_t>(n_sites));
  for (int n = 1; n <= n_sites; ++n) {
    g[static_cast<std::size_t>(n - 1)] = field_at(profile, n, front_position);
  }
  return g;
}

}  // namespace kzfront
