#pragma once
#include "trikin/gas.hpp"

namespace trikin {

// Maxwellian velocity moments for K internal degrees of freedom. u carries
// full and one-sided moments (the interface normal direction); v only needs
// full ones.
struct MomentTable {
  double u[7], up[7], um[7];  // full, u>0 half, u<0 half
  double v[7];
  double xi[3];               // xi^0, xi^2, xi^4 moments
};

MomentTable moments(const GasState& g, double K);

// <u^p v^q xi^(2r) psi>, psi = (1, u, v, (u^2+v^2+xi^2)/2).
// half: +1 restricts to u>0, -1 to u<0, 0 full.
Vec4 psi_mom(const MomentTable& t, int p, int q, int r, int half = 0);

// <u^p v^q (s.psi) psi> for a slope vector s in the psi basis
Vec4 slope_psi_mom(const MomentTable& t, const Vec4& s, int p, int q,
                   int half = 0);

// Slope coefficients c with dg/dx = (c.psi) g such that rho<(c.psi)psi> = b.
// b is the gradient of the conservative variables along that direction.
Vec4 micro_slopes(const GasState& g, const Vec4& b, double K);

// Time slope A from the compatibility condition rho<(A + u ax + v ay).psi g> = 0
Vec4 time_slope(const GasState& g, const MomentTable& t, const Vec4& ax,
                const Vec4& ay, double K);

}  // namespace trikin
