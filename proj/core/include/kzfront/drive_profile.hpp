#pragma once

#include <span>
#include <vector>

namespace kzfront {

/// Moving-front control field. The transverse field at site n when the front
/// center sits at (real) position n_f is
///   g_i                              for n - n_f >  half_width,
///   (g_i+g_f)/2 + alpha (n - n_f)    for |n - n_f| <= half_width,
///   g_f                              for n - n_f < -half_width,
/// with half_width = (g_i - g_f) / (2 alpha). The front moves to larger n at
/// `velocity` sites per unit time, n_f(t) = velocity * t.
///
/// The kinks where the ramp meets the plateaus are non-analytic; setting
/// smoothing_sites > 0 rounds each kink with a C^1 quadratic blend over that
/// many sites on either side. Off by default (the plain piecewise form).
struct FrontProfile {
  double g_init = 3.0;
  double g_final = 0.0;
  double alpha = 0.0;           // field units per site, > 0
  double velocity = 0.0;        // sites per unit time, > 0
  double smoothing_sites = 0.0; // half-width of the kink rounding, >= 0

  double half_width() const { return (g_init - g_final) / (2.0 * alpha); }
};

/// Throws std::invalid_argument unless g_init > g_final, alpha > 0, velocity > 0.
void validate(const FrontProfile& profile);

double field_at(const FrontProfile& profile, int site, double front_position);

/// d g_n / d n_f: 0 on the plateaus, -alpha on the ramp (|n - n_f| <= half_width).
double field_gradient_at(const FrontProfile& profile, int site, double front_position);

enum class DriveMode { Inhomogeneous, Homogeneous };

/// Time window of one protocol. Inhomogeneous: n_f(t) = velocity * t, with
/// t_start/t_end the extreme times at which the g_i / g_f plateau covers the
/// whole chain, so total_time = N/v + (g_i - g_f)/(alpha v). Homogeneous: the
/// field is site-independent and linear in t from g_i down to g_f.
struct Schedule {
  DriveMode mode = DriveMode::Inhomogeneous;
  int n_sites = 0;
  FrontProfile profile;  // alpha/velocity are ignored in Homogeneous mode
  double t_start = 0.0;
  double t_end = 0.0;

  double total_time() const { return t_end - t_start; }
  double front_position(double t) const { return profile.velocity * t; }
};

Schedule schedule_for(int n_sites, const FrontProfile& profile);

Schedule homogeneous_schedule(int n_sites, double g_init, double g_final, double total_time);

/// Velocity giving total time T at fixed (N, alpha): v = (N + (g_i-g_f)/alpha)/T.
/// Inverse of schedule_for's total_time. Throws std::invalid_argument for T <= 0.
double velocity_for(int n_sites, double alpha, double g_init, double g_final, double total_time);

/// Site-independent field of a homogeneous schedule; clamps t to the window.
double homogeneous_field_at(double t, const Schedule& schedule);

/// All site fields at time t, for either mode. out.size() must be n_sites.
void fields_at_time(const Schedule& schedule, double t, std::span<double> out);

std::vector<double> fields_at_front(const FrontProfile& profile, int n_sites, double front_position);

}  // namespace kzfront
