#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace risp {

using Cpx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Central tolerances. Everything that decides "is this on the unit circle"
// goes through kTorusEps so tests can tighten it in one place.
inline constexpr double kCoeffTrim = 1e-13;      // relative coefficient trim threshold
inline constexpr double kTorusEps = 1e-9;        // | |z|-1 | <= eps  <=>  z is on T
inline constexpr double kSingularEps = 1e-9;     // relative |p(z)| deciding "singular point"
inline constexpr double kDegenerateEps = 1e-9;   // relative |det| deciding Moebius degeneracy
inline constexpr double kClusterRadius = 1e-6;   // root cluster radius -> multiplicity

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeError : Error {
    explicit DegreeError(const std::string& what) : Error(what) {}
};

struct SolverError : Error {
    explicit SolverError(const std::string& what) : Error(what) {}
};

struct UnstableDenominator : Error {
    UnstableDenominator(const std::string& what, Cpx w1, Cpx w2)
        : Error(what), z1(w1), z2(w2) {}
    Cpx z1, z2;  // witness point with p(z1,z2) = 0 inside the bidisk
};

struct NonconvergentLimit : Error {
    explicit NonconvergentLimit(const std::string& what) : Error(what) {}
};

struct LambdaSharpPoint : Error {
    explicit LambdaSharpPoint(const std::string& what) : Error(what) {}
};

struct NonUnimodularTau : Error {
    explicit NonUnimodularTau(const std::string& what) : Error(what) {}
};

struct AmbiguousBoundary : Error {
    explicit AmbiguousBoundary(const std::string& what) : Error(what) {}
};

struct QIdenticallyZero : Error {
    explicit QIdenticallyZero(const std::string& what) : Error(what) {}
};

inline bool is_finite(Cpx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline Cpx unit(double t) { return Cpx(std::cos(t), std::sin(t)); }

// Angle convention is (-pi, pi] throughout; the seam maps to +pi.
inline double wrap_angle(double t) {
    t = std::remainder(t, 2.0 * kPi);
    if (t <= -kPi) t += 2.0 * kPi;
    return t;
}

inline double angle_of(Cpx z) { return wrap_angle(std::atan2(z.imag(), z.real())); }

inline bool on_torus(Cpx z, double eps = kTorusEps) { return std::abs(std::abs(z) - 1.0) <= eps; }

inline Cpx project_to_circle(Cpx z) {
    double m = std::abs(z);
    return m > 0.0 ? z / m : Cpx(1.0, 0.0);
}

inline double circle_dist(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

}  // namespace risp
