#pragma once

#include <numbers>

namespace quasigeo {

inline constexpr double kPi = std::numbers::pi;

// Single tolerance knob: relative on lengths, absolute on radians.
// Default 1e-9, overridable once per process via the QUASIGEO_EPS
// environment variable (read on first use).
double default_epsilon();

// Angles within [pi - eps, pi + eps] count as equal to pi.
inline bool at_most_pi(double angle, double eps) { return angle <= kPi + eps; }
inline bool exceeds_pi(double angle, double eps) { return angle > kPi + eps; }
inline bool at_least_pi(double angle, double eps) { return angle >= kPi - eps; }
inline bool equals_pi(double angle, double eps) {
    return angle >= kPi - eps && angle <= kPi + eps;
}

}  // namespace quasigeo
