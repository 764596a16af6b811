#include "trikin/bc.hpp"

#include <algorithm>
#include <cmath>

namespace trikin {

namespace {

// Wall reflections are affine in (T, un, ut, p), so values use c + D v and
// gradients just D, with the normal derivative flipping sign from the mirror.
struct ThermoVars {
  double v[4];   // T, un, ut, p
  double gx[4];  // normal-direction gradient
  double gy[4];  // tangential
};

ThermoVars to_thermo(const Vec4& q, const Vec4& gx, const Vec4& gy, double gam,
                     double R) {
  GasState s = primitive(q, gam);
  ThermoVars t;
  t.v[0] = s.p/(R*s.rho);
  t.v[1] = s.U;
  t.v[2] = s.V;
  t.v[3] = s.p;
  const Vec4* g[2] = {&gx, &gy};
  for (int d = 0; d < 2; d++) {
    const Vec4& dq = *g[d];
    double* out = d == 0 ? t.gx : t.gy;
    double drho = dq[0];
    double dU = (dq[1] - s.U*drho)/s.rho;
    double dV = (dq[2] - s.V*drho)/s.rho;
    double dp = (gam - 1.0)*(dq[3] - 0.5*(s.U*s.U + s.V*s.V)*drho -
                             s.rho*(s.U*dU + s.V*dV));
    out[0] = (dp - R*t.v[0]*drho)/(R*s.rho);
    out[1] = dU;
    out[2] = dV;
    out[3] = dp;
  }
  return t;
}

void from_thermo(const ThermoVars& t, double gam, double R, Vec4& q, Vec4& gx,
                 Vec4& gy) {
  double T = t.v[0], U = t.v[1], V = t.v[2], p = t.v[3];
  double rho = p/(R*T);
  q = conservative(rho, U, V, p, gam);
  const double* g[2] = {t.gx, t.gy};
  Vec4* out[2] = {&gx, &gy};
  for (int d = 0; d < 2; d++) {
    double dT = g[d][0], dU = g[d][1], dV = g[d][2], dp = g[d][3];
    double drho = (dp - R*rho*dT)/(R*T);
    (*out[d])[0] = drho;
    (*out[d])[1] = U*drho + rho*dU;
    (*out[d])[2] = V*drho + rho*dV;
    (*out[d])[3] = dp/(gam - 1.0) + 0.5*(U*U + V*V)*drho + rho*(U*dU + V*dV);
  }
}

}  // namespace

void ghost_point(const BcSpec& bc, const BcSet& set, const FluxParams& par,
                 double x, double y, double t, double nx, double ny,
                 const Vec4& q_in, const Vec4& gx_in, const Vec4& gy_in,
                 Vec4& q_g, Vec4& gx_g, Vec4& gy_g) {
  switch (bc.kind) {
    case BcKind::outflow:
      q_g = q_in;
      gx_g = gx_in;
      gy_g = gy_in;
      return;
    case BcKind::inflow:
    case BcKind::analytic: {
      Vec4 q, gx, gy;
      bc.field(x, y, t, q, gx, gy);
      q_g = rotate_to(q, nx, ny);
      gx_g = rotate_to(nx*gx + ny*gy, nx, ny);
      gy_g = rotate_to(-1.0*(ny*gx) + nx*gy, nx, ny);
      return;
    }
    default:
      break;
  }

  ThermoVars in = to_thermo(q_in, gx_in, gy_in, par.gamma, set.R);
  double D[4] = {1, -1, 1, 1};
  double c[4] = {0, 0, 0, 0};
  switch (bc.kind) {
    case BcKind::slip:
      break;
    case BcKind::noslip_adiabatic:
      D[2] = -1;
      break;
    case BcKind::noslip_isothermal:
      D[0] = -1;
      D[2] = -1;
      c[0] = 2.0*bc.Twall;
      break;
    case BcKind::moving_wall: {
      D[0] = -1;
      D[2] = -1;
      c[0] = 2.0*bc.Twall;
      c[2] = 2.0*(-ny*bc.Uwall + nx*bc.Vwall);  // tangential wall speed
      break;
    }
    default:
      break;
  }
  ThermoVars out;
  for (int i = 0; i < 4; i++) {
    out.v[i] = c[i] + D[i]*in.v[i];
    out.gx[i] = -D[i]*in.gx[i];  // mirrored normal direction
    out.gy[i] = D[i]*in.gy[i];
  }
  // keep the reflected temperature physical under strong transients
  out.v[0] = std::max(out.v[0], 0.05*in.v[0]);
  from_thermo(out, par.gamma, set.R, q_g, gx_g, gy_g);
}

}  // namespace trikin
