#pragma once
#include "trikin/gas.hpp"

namespace trikin {

struct FluxParams {
  double gamma = 1.4;
  double K = 3;         // internal_dof(gamma)
  double mu = 0;        // dynamic viscosity at T_ref, <= 0 means inviscid
  double visc_exp = 0;  // mu scales with (T/T_ref)^visc_exp
  double T_ref = 1;
  double R = 1;         // gas constant, only the temperature scale
  double prandtl = 1;
  double eps1 = 0.005;  // inviscid collision time as a fraction of dt
  double eps2 = 10;     // pressure-jump amplification
  double eps3 = 1;      // pressure-jump exponent
};

double viscosity(const FluxParams& par, const GasState& g);

struct CollisionTimes {
  double tau;    // physical (enters the Chapman-Enskog terms linearly)
  double tau_n;  // numerical (enters the exponentials)
};

CollisionTimes collision_time(const FluxParams& par, const GasState& eq,
                              double pl, double pr, double dt);

struct InterfaceFlux {
  Vec4 half, full;  // normal flux integrated over [0, dt/2] and [0, dt]
  bool degenerate;  // equilibrium state failed, fell back to pure upwinding
};

// Time-integrated kinetic interface flux in the local frame (x = normal,
// pointing left -> right). Gradients are conservative-variable derivatives
// along the normal (gx*) and tangent (gy*), rotated into the same frame.
InterfaceFlux interface_flux(const Vec4& ql, const Vec4& gxl, const Vec4& gyl,
                             const Vec4& qr, const Vec4& gxr, const Vec4& gyr,
                             double dt, const FluxParams& par);

struct PointFlux {
  Vec4 fx_half, fy_half;  // integrated over [0, dt/2]
  Vec4 fx_full, fy_full;  // integrated over [0, dt]
};

// Time-integrated smooth (Chapman-Enskog) flux at an interior point.
PointFlux smooth_flux(const Vec4& q, const Vec4& gx, const Vec4& gy, double dt,
                      const FluxParams& par);

}  // namespace trikin
