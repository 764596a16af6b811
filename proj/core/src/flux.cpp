#include "trikin/flux.hpp"

#include <cmath>

#include "trikin/moments.hpp"

namespace trikin {

double viscosity(const FluxParams& par, const GasState& g) {
  if (par.mu <= 0) return 0;
  if (par.visc_exp == 0) return par.mu;
  double T = 1.0/(2.0*par.R*g.lam);
  return par.mu*std::pow(T/par.T_ref, par.visc_exp);
}

CollisionTimes collision_time(const FluxParams& par, const GasState& eq,
                              double pl, double pr, double dt) {
  CollisionTimes c;
  c.tau = par.mu > 0 ? viscosity(par, eq)/eq.p : par.eps1*dt;
  double jump = std::fabs(pl - pr)/(pl + pr);
  if (!std::isfinite(jump)) jump = 1;
  c.tau_n = c.tau + par.eps2*std::pow(jump, par.eps3)*dt;
  return c;
}

namespace {

// Coefficients of the time integral of the interface distribution over
// [0, delta]: the equilibrium part carries cg*, the initial part cf*.
// *0 weights the plain distribution, *s the spatial-slope terms, *A the
// time-slope term. tau_n appears only through the exponential relaxation.
struct TimeCoefs {
  double g0, gs, gA, f0, fs, fA;
};

TimeCoefs time_coefs(double tau, double tau_n, double delta) {
  double eta = tau_n > 0 ? std::exp(-delta/tau_n) : 0.0;
  double r = tau_n*(1.0 - eta);
  double s = tau_n*tau_n - eta*tau_n*(delta + tau_n);
  TimeCoefs c;
  c.g0 = delta - r;
  c.gs = s + tau*r - tau*delta;
  c.gA = 0.5*delta*delta - tau*delta + tau*r;
  c.f0 = r;
  c.fs = -(tau*r + s);
  c.fA = -tau*r;
  return c;
}

struct SideExpansion {
  double rho;
  MomentTable t;
  Vec4 a, b, A;  // micro slopes: normal, tangential, time
};

// F(coefs) and W(coefs) assembled from one side's half moments or the
// equilibrium's full moments. ord = 1 gives the flux (one factor of u),
// ord = 0 the state moments used by the Prandtl correction.
Vec4 assemble(const SideExpansion& s, double c0, double cs, double cA, int ord,
              int half) {
  Vec4 f = c0*psi_mom(s.t, ord, 0, 0, half);
  f += cs*(slope_psi_mom(s.t, s.a, ord + 1, 0, half) +
           slope_psi_mom(s.t, s.b, ord, 1, half));
  f += cA*slope_psi_mom(s.t, s.A, ord, 0, half);
  return s.rho*f;
}

}  // namespace

InterfaceFlux interface_flux(const Vec4& ql, const Vec4& gxl, const Vec4& gyl,
                             const Vec4& qr, const Vec4& gxr, const Vec4& gyr,
                             double dt, const FluxParams& par) {
  const double K = par.K;
  InterfaceFlux out;
  out.degenerate = false;

  GasState pl = primitive(ql, par.gamma);
  GasState pr = primitive(qr, par.gamma);

  SideExpansion L, R;
  L.rho = pl.rho;
  L.t = moments(pl, K);
  L.a = micro_slopes(pl, gxl, K);
  L.b = micro_slopes(pl, gyl, K);
  L.A = time_slope(pl, L.t, L.a, L.b, K);
  R.rho = pr.rho;
  R.t = moments(pr, K);
  R.a = micro_slopes(pr, gxr, K);
  R.b = micro_slopes(pr, gyr, K);
  R.A = time_slope(pr, R.t, R.a, R.b, K);

  // Colliding equilibrium: half-moment union of the two sides
  Vec4 w0 = L.rho*psi_mom(L.t, 0, 0, 0, +1) + R.rho*psi_mom(R.t, 0, 0, 0, -1);
  if (!valid_state(w0, par.gamma)) {
    // pure kinetic upwinding, constant in time
    Vec4 f =
        L.rho*psi_mom(L.t, 1, 0, 0, +1) + R.rho*psi_mom(R.t, 1, 0, 0, -1);
    out.half = (0.5*dt)*f;
    out.full = dt*f;
    out.degenerate = true;
    return out;
  }
  GasState p0 = primitive(w0, par.gamma);

  SideExpansion E;
  E.rho = p0.rho;
  E.t = moments(p0, K);
  // Equilibrium slopes: kinetic union of the one-sided gradients
  Vec4 wx =
      L.rho*slope_psi_mom(L.t, L.a, 0, 0, +1) +
      R.rho*slope_psi_mom(R.t, R.a, 0, 0, -1);
  Vec4 wy =
      L.rho*slope_psi_mom(L.t, L.b, 0, 0, +1) +
      R.rho*slope_psi_mom(R.t, R.b, 0, 0, -1);
  E.a = micro_slopes(p0, wx, K);
  E.b = micro_slopes(p0, wy, K);
  E.A = time_slope(p0, E.t, E.a, E.b, K);

  CollisionTimes ct = collision_time(par, p0, pl.p, pr.p, dt);

  Vec4* flux[2] = {&out.half, &out.full};
  double deltas[2] = {0.5*dt, dt};
  for (int k = 0; k < 2; k++) {
    TimeCoefs c = time_coefs(ct.tau, ct.tau_n, deltas[k]);
    Vec4 f = assemble(E, c.g0, c.gs, c.gA, 1, 0);
    f += assemble(L, c.f0, c.fs, c.fA, 1, +1);
    f += assemble(R, c.f0, c.fs, c.fA, 1, -1);
    if (par.prandtl != 1.0) {
      Vec4 w = assemble(E, c.g0, c.gs, c.gA, 0, 0);
      w += assemble(L, c.f0, c.fs, c.fA, 0, +1);
      w += assemble(R, c.f0, c.fs, c.fA, 0, -1);
      double U0 = p0.U, V0 = p0.V, h = 0.5*(U0*U0 + V0*V0);
      double qf = f[3] - U0*f[1] - V0*f[2] + h*f[0];
      double qw = w[3] - U0*w[1] - V0*w[2] + h*w[0];
      double qheat = qf - U0*qw;
      f[3] += (1.0/par.prandtl - 1.0)*qheat;
    }
    *flux[k] = f;
  }

  bool finite = true;
  for (int i = 0; i < 4; i++)
    finite = finite && std::isfinite(out.half[i]) && std::isfinite(out.full[i]);
  if (!finite) {
    Vec4 f =
        L.rho*psi_mom(L.t, 1, 0, 0, +1) + R.rho*psi_mom(R.t, 1, 0, 0, -1);
    out.half = (0.5*dt)*f;
    out.full = dt*f;
    out.degenerate = true;
  }
  return out;
}

PointFlux smooth_flux(const Vec4& q, const Vec4& gx, const Vec4& gy, double dt,
                      const FluxParams& par) {
  const double K = par.K;
  GasState g = primitive(q, par.gamma);
  MomentTable t = moments(g, K);
  Vec4 a = micro_slopes(g, gx, K);
  Vec4 b = micro_slopes(g, gy, K);
  Vec4 A = time_slope(g, t, a, b, K);
  double tau = par.mu > 0 ? viscosity(par, g)/g.p : par.eps1*dt;

  Vec4 Ax = slope_psi_mom(t, A, 1, 0);
  Vec4 Ay = slope_psi_mom(t, A, 0, 1);
  Vec4 fx0 = psi_mom(t, 1, 0, 0) -
             tau*(slope_psi_mom(t, a, 2, 0) + slope_psi_mom(t, b, 1, 1) + Ax);
  Vec4 fy0 = psi_mom(t, 0, 1, 0) -
             tau*(slope_psi_mom(t, a, 1, 1) + slope_psi_mom(t, b, 0, 2) + Ay);

  PointFlux out;
  Vec4* fxs[2] = {&out.fx_half, &out.fx_full};
  Vec4* fys[2] = {&out.fy_half, &out.fy_full};
  Vec4 Wt = slope_psi_mom(t, A, 0, 0);
  Vec4 w0 = psi_mom(t, 0, 0, 0) -
            tau*(slope_psi_mom(t, a, 1, 0) + slope_psi_mom(t, b, 0, 1) + Wt);
  double deltas[2] = {0.5*dt, dt};
  for (int k = 0; k < 2; k++) {
    double d = deltas[k];
    Vec4 fx = (g.rho*d)*fx0 + (0.5*g.rho*d*d)*Ax;
    Vec4 fy = (g.rho*d)*fy0 + (0.5*g.rho*d*d)*Ay;
    if (par.prandtl != 1.0) {
      Vec4 w = (g.rho*d)*w0 + (0.5*g.rho*d*d)*Wt;
      double U = g.U, V = g.V, h = 0.5*(U*U + V*V);
      double pw = w[3] - U*w[1] - V*w[2] + h*w[0];
      double qx = (fx[3] - U*fx[1] - V*fx[2] + h*fx[0]) - U*pw;
      double qy = (fy[3] - U*fy[1] - V*fy[2] + h*fy[0]) - V*pw;
      fx[3] += (1.0/par.prandtl - 1.0)*qx;
      fy[3] += (1.0/par.prandtl - 1.0)*qy;
    }
    *fxs[k] = fx;
    *fys[k] = fy;
  }
  return out;
}

}  // namespace trikin
