#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vpmcf {

using Scalar = double;

constexpr Scalar kPi = 3.14159265358979323846;

// Point / vector in the meridian half-plane (x = axial coordinate, r = distance to axis).
struct Vec2 {
    Scalar x = 0.0;
    Scalar r = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.r + b.r}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.r - b.r}; }
inline Vec2 operator*(Scalar s, Vec2 a) { return {s * a.x, s * a.r}; }
inline Scalar dot(Vec2 a, Vec2 b) { return a.x * b.x + a.r * b.r; }
inline Scalar cross(Vec2 a, Vec2 b) { return a.x * b.r - a.r * b.x; }
inline Scalar norm(Vec2 a) { return std::sqrt(a.x * a.x + a.r * a.r); }
inline Scalar dist(Vec2 a, Vec2 b) { return norm(a - b); }

// x^m for small non-negative integer exponents (quadrature weights run hot).
inline Scalar ipow(Scalar x, int m) {
    Scalar acc = 1.0;
    for (Scalar base = x; m > 0; m >>= 1, base *= base)
        if (m & 1) acc *= base;
    return acc;
}

// Volume of the unit n-ball.
inline Scalar unit_ball_volume(int n) {
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Area of the unit (n-1)-sphere, sigma_{n-1} = n * omega_n.
inline Scalar unit_sphere_area(int n) { return n * unit_ball_volume(n); }

inline Scalar infinity() { return std::numeric_limits<Scalar>::infinity(); }
inline Scalar quiet_nan() { return std::numeric_limits<Scalar>::quiet_NaN(); }

// Error hierarchy. Callers that can recover (the run loop) catch the derived
// types; everything else propagates to the CLI which maps them to exit codes.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidSpecError : public Error {
  public:
    InvalidSpecError(const std::string& field, const std::string& msg)
        : Error("invalid spec: field '" + field + "': " + msg), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

class DegenerateCurveError : public Error {
  public:
    explicit DegenerateCurveError(const std::string& msg) : Error("degenerate curve: " + msg) {}
};

class PinchError : public Error {
  public:
    PinchError(int node, Scalar r_min, Scalar t)
        : Error("pinch detected at node " + std::to_string(node) + " (r = " + std::to_string(r_min) +
                ", t = " + std::to_string(t) + ")"),
          node_(node), r_min_(r_min), t_(t) {}
    int node() const { return node_; }
    Scalar r_min() const { return r_min_; }
    Scalar t() const { return t_; }

  private:
    int node_;
    Scalar r_min_;
    Scalar t_;
};

class NotAGraphError : public Error {
  public:
    explicit NotAGraphError(const std::string& msg) : Error("not a graph: " + msg) {}
};

class ProjectionError : public Error {
  public:
    explicit ProjectionError(const std::string& msg) : Error("volume projection failed: " + msg) {}
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

}  // namespace vpmcf
