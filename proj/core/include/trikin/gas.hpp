#pragma once
#include <array>
#include <cmath>

namespace trikin {

using Vec4 = std::array<double, 4>;

inline constexpr Vec4 kZero = {0, 0, 0, 0};

inline Vec4 operator+(const Vec4& a, const Vec4& b) { return {a[0]+b[0], a[1]+b[1], a[2]+b[2], a[3]+b[3]}; }
inline Vec4 operator-(const Vec4& a, const Vec4& b) { return {a[0]-b[0], a[1]-b[1], a[2]-b[2], a[3]-b[3]}; }
inline Vec4 operator*(double s, const Vec4& a) { return {s*a[0], s*a[1], s*a[2], s*a[3]}; }
inline Vec4& operator+=(Vec4& a, const Vec4& b) { for (int i = 0; i < 4; i++) a[i] += b[i]; return a; }
inline Vec4& operator-=(Vec4& a, const Vec4& b) { for (int i = 0; i < 4; i++) a[i] -= b[i]; return a; }

// Internal degrees of freedom carried by xi; gamma=1.4 gives K=3 in 2D.
inline double internal_dof(double gamma) { return (5.0 - 3.0*gamma)/(gamma - 1.0) + 1.0; }

struct GasState {
  double rho, U, V, p;
  double lam;  // rho/(2p) = 1/(2RT)
};

inline GasState primitive(const Vec4& q, double gamma) {
  GasState s;
  s.rho = q[0];
  s.U = q[1]/q[0];
  s.V = q[2]/q[0];
  s.p = (gamma - 1.0)*(q[3] - 0.5*(q[1]*q[1] + q[2]*q[2])/q[0]);
  s.lam = 0.5*s.rho/s.p;
  return s;
}

inline Vec4 conservative(const GasState& s, double gamma) {
  double re = s.p/(gamma - 1.0) + 0.5*s.rho*(s.U*s.U + s.V*s.V);
  return {s.rho, s.rho*s.U, s.rho*s.V, re};
}

inline Vec4 conservative(double rho, double U, double V, double p, double gamma) {
  return {rho, rho*U, rho*V, p/(gamma - 1.0) + 0.5*rho*(U*U + V*V)};
}

inline bool valid_state(const Vec4& q, double gamma) {
  if (!(q[0] > 0.0) || !std::isfinite(q[0]) || !std::isfinite(q[3])) return false;
  double p = (gamma - 1.0)*(q[3] - 0.5*(q[1]*q[1] + q[2]*q[2])/q[0]);
  return p > 0.0 && std::isfinite(p);
}

inline double sound_speed(const GasState& s, double gamma) { return std::sqrt(gamma*s.p/s.rho); }

// x-direction Euler flux
inline Vec4 euler_flux_x(const GasState& s, double gamma) {
  double re = s.p/(gamma - 1.0) + 0.5*s.rho*(s.U*s.U + s.V*s.V);
  return {s.rho*s.U, s.rho*s.U*s.U + s.p, s.rho*s.U*s.V, s.U*(re + s.p)};
}

// Rotate a conservative state into a frame whose x-axis is (nx,ny).
inline Vec4 rotate_to(const Vec4& q, double nx, double ny) {
  return {q[0], nx*q[1] + ny*q[2], -ny*q[1] + nx*q[2], q[3]};
}
inline Vec4 rotate_from(const Vec4& q, double nx, double ny) {
  return {q[0], nx*q[1] - ny*q[2], ny*q[1] + nx*q[2], q[3]};
}

}  // namespace trikin
