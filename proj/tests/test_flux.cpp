#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trikin/flux.hpp"

using namespace trikin;

namespace {

// The half/full integrals are exact quadratics in the window length,
// so the two of them recover the instantaneous flux without error.
Vec4 instantaneous(const Vec4& half, const Vec4& full, double dt) {
  return (1.0/dt)*(4.0*half - full);
}

struct PrimGrad {
  double rho_x, U_x, V_x, p_x, T_x;
};

PrimGrad prim_grad(const GasState& g, const Vec4& gx, double gamma, double R) {
  PrimGrad d;
  d.rho_x = gx[0];
  d.U_x = (gx[1] - g.U*gx[0])/g.rho;
  d.V_x = (gx[2] - g.V*gx[0])/g.rho;
  d.p_x = (gamma - 1.0)*(gx[3] - 0.5*(g.U*g.U + g.V*g.V)*gx[0] -
                         g.rho*(g.U*d.U_x + g.V*d.V_x));
  d.p_x += 0.0;
  double T = g.p/(g.rho*R);
  d.T_x = (d.p_x - T*R*d.rho_x)/(g.rho*R);
  return d;
}

// Navier-Stokes fluxes for the kinetic gas model: K internal degrees of
// freedom give the normal stress a 2/(K+2) divergence part, and the
// conductivity is c_p mu / Pr with c_p = (K+4) R / 2.
void ns_flux(const Vec4& q, const Vec4& gx, const Vec4& gy,
             const FluxParams& par, double mu, Vec4& fx, Vec4& fy) {
  GasState g = primitive(q, par.gamma);
  PrimGrad dx = prim_grad(g, gx, par.gamma, par.R);
  PrimGrad dy = prim_grad(g, gy, par.gamma, par.R);
  double div = dx.U_x + dy.V_x;  // dy.* holds y-derivatives
  double sxx = mu*(2.0*dx.U_x - 2.0/(par.K + 2.0)*div);
  double syy = mu*(2.0*dy.V_x - 2.0/(par.K + 2.0)*div);
  double sxy = mu*(dy.U_x + dx.V_x);
  double cp = 0.5*(par.K + 4.0)*par.R;
  double qx = -cp*mu/par.prandtl*dx.T_x;
  double qy = -cp*mu/par.prandtl*dy.T_x;
  double E = q[3];
  fx = {g.rho*g.U, g.rho*g.U*g.U + g.p - sxx, g.rho*g.U*g.V - sxy,
        g.U*(E + g.p) - g.U*sxx - g.V*sxy + qx};
  fy = {g.rho*g.V, g.rho*g.U*g.V - sxy, g.rho*g.V*g.V + g.p - syy,
        g.V*(E + g.p) - g.U*sxy - g.V*syy + qy};
}

void check_close(const Vec4& got, const Vec4& want, double tol, double scale) {
  for (int i = 0; i < 4; i++)
    CHECK(got[i] - want[i] == doctest::Approx(0.0).scale(scale).epsilon(tol));
}

double norm(const Vec4& v) {
  return std::sqrt(v[0]*v[0] + v[1]*v[1] + v[2]*v[2] + v[3]*v[3]);
}

}  // namespace

TEST_CASE("smooth flux reproduces the Navier-Stokes flux") {
  FluxParams par;
  par.gamma = 1.4;
  par.K = internal_dof(par.gamma);
  par.R = 1.0/1.4;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);

  for (double pr : {1.0, 0.73}) {
    for (double ve : {0.0, 1.5}) {
      par.prandtl = pr;
      par.visc_exp = ve;
      par.mu = 2e-2;
      for (int trial = 0; trial < 4; trial++) {
        Vec4 q = conservative(1.0 + 0.4*d(rng), 0.5*d(rng), 0.5*d(rng),
                              1.0 + 0.4*d(rng), par.gamma);
        Vec4 gx = {0.3*d(rng), 0.3*d(rng), 0.3*d(rng), 0.3*d(rng)};
        Vec4 gy = {0.3*d(rng), 0.3*d(rng), 0.3*d(rng), 0.3*d(rng)};
        double dt = 1e-3;
        PointFlux got = smooth_flux(q, gx, gy, dt, par);
        GasState g = primitive(q, par.gamma);
        double T = 1.0/(2.0*par.R*g.lam);
        double mu = par.mu*std::pow(T/par.T_ref, par.visc_exp);
        Vec4 fx, fy;
        ns_flux(q, gx, gy, par, mu, fx, fy);
        double s = norm(fx) + norm(fy) + 1.0;
        check_close(instantaneous(got.fx_half, got.fx_full, dt), fx, 1e-11, s);
        check_close(instantaneous(got.fy_half, got.fy_full, dt), fy, 1e-11, s);
      }
    }
  }
}

TEST_CASE("inviscid smooth flux carries the eps1 dt collision time") {
  FluxParams par;
  par.gamma = 1.4;
  par.K = internal_dof(par.gamma);
  par.R = 1.0;
  par.mu = 0;
  par.eps1 = 0.02;
  Vec4 q = conservative(1.3, 0.4, -0.2, 0.9, par.gamma);
  Vec4 gx = {0.1, -0.2, 0.05, 0.3};
  Vec4 gy = {-0.07, 0.12, 0.2, -0.1};
  double dt = 2e-3;
  PointFlux got = smooth_flux(q, gx, gy, dt, par);
  GasState g = primitive(q, par.gamma);
  double mu_eff = par.eps1*dt*g.p;  // tau = eps1 dt acts as mu/p
  Vec4 fx, fy;
  ns_flux(q, gx, gy, par, mu_eff, fx, fy);
  double s = norm(fx) + norm(fy) + 1.0;
  check_close(instantaneous(got.fx_half, got.fx_full, dt), fx, 1e-11, s);
  check_close(instantaneous(got.fy_half, got.fy_full, dt), fy, 1e-11, s);
}

TEST_CASE("interface flux collapses to the smooth flux for identical sides") {
  FluxParams par;
  par.gamma = 1.4;
  par.K = internal_dof(par.gamma);
  par.R = 1.0/1.4;
  par.mu = 1e-2;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1, 1);
  for (double pr : {1.0, 0.73}) {
    par.prandtl = pr;
    for (int trial = 0; trial < 4; trial++) {
      Vec4 q = conservative(1.0 + 0.3*d(rng), 0.6*d(rng), 0.6*d(rng),
                            1.0 + 0.3*d(rng), par.gamma);
      Vec4 gx = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
      Vec4 gy = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
      double dt = 5e-3;
      InterfaceFlux iface = interface_flux(q, gx, gy, q, gx, gy, dt, par);
      PointFlux ref = smooth_flux(q, gx, gy, dt, par);
      REQUIRE(!iface.degenerate);
      double s = norm(ref.fx_full) + 1.0;
      check_close(iface.half, ref.fx_half, 1e-10, s);
      check_close(iface.full, ref.fx_full, 1e-10, s);
    }
  }
}

TEST_CASE("zero-gradient equilibrium flux is the Euler flux") {
  FluxParams par;
  par.gamma = 1.4;
  par.K = internal_dof(par.gamma);
  Vec4 q = conservative(1.2, 0.5, -0.3, 1.1, par.gamma);
  double dt = 1e-2;
  InterfaceFlux iface = interface_flux(q, kZero, kZero, q, kZero, kZero, dt, par);
  GasState g = primitive(q, par.gamma);
  Vec4 euler = euler_flux_x(g, par.gamma);
  // eps1 gives a nonzero tau but with zero slopes nothing multiplies it
  check_close(instantaneous(iface.half, iface.full, dt), euler, 1e-12,
              norm(euler) + 1.0);
}

TEST_CASE("interface flux is symmetric under mirror reflection") {
  FluxParams par;
  par.gamma = 1.4;
  par.K = internal_dof(par.gamma);
  par.mu = 5e-3;
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-1, 1);
  auto mx = [](const Vec4& v) { return Vec4{v[0], -v[1], v[2], v[3]}; };
  for (int trial = 0; trial < 4; trial++) {
    Vec4 ql = conservative(1.0 + 0.3*d(rng), 0.5*d(rng), 0.4*d(rng),
                           1.0 + 0.3*d(rng), par.gamma);
    Vec4 qr = conservative(1.0 + 0.3*d(rng), 0.5*d(rng), 0.4*d(rng),
                           1.0 + 0.3*d(rng), par.gamma);
    Vec4 gxl = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
    Vec4 gyl = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
    Vec4 gxr = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
    Vec4 gyr = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
    double dt = 4e-3;
    InterfaceFlux a = interface_flux(ql, gxl, gyl, qr, gxr, gyr, dt, par);
    // x -> -x swaps the sides, flips normal momentum, and flips the sign of
    // normal derivatives; the normal flux of (mass, my, E) changes sign.
    InterfaceFlux b = interface_flux(mx(qr), {-gxr[0], gxr[1], -gxr[2], -gxr[3]},
                                     mx(gyr), mx(ql),
                                     {-gxl[0], gxl[1], -gxl[2], -gxl[3]},
                                     mx(gyl), dt, par);
    Vec4 want = {-a.full[0], a.full[1], -a.full[2], -a.full[3]};
    check_close(b.full, want, 1e-11, norm(a.full) + 1.0);
  }
}

TEST_CASE("smooth flux rotates with the frame") {
  FluxParams par;
  par.gamma = 1.4;
  par.K = internal_dof(par.gamma);
  par.mu = 8e-3;
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> d(-1, 1);
  double th = 0.6234;
  double c = std::cos(th), s = std::sin(th);
  for (int trial = 0; trial < 3; trial++) {
    Vec4 q = conservative(1.0 + 0.3*d(rng), 0.5*d(rng), 0.5*d(rng),
                          1.0 + 0.3*d(rng), par.gamma);
    Vec4 gx = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
    Vec4 gy = {0.2*d(rng), 0.2*d(rng), 0.2*d(rng), 0.2*d(rng)};
    double dt = 3e-3;
    PointFlux base = smooth_flux(q, gx, gy, dt, par);

    // State and gradients seen in a frame rotated by th
    Vec4 qr = rotate_to(q, c, s);
    Vec4 gxr = rotate_to(c*gx + s*gy, c, s);
    Vec4 gyr = rotate_to(-1.0*(s*gx) + c*gy, c, s);
    PointFlux rot = smooth_flux(qr, gxr, gyr, dt, par);

    Vec4 want_fx = rotate_to(c*base.fx_full + s*base.fy_full, c, s);
    Vec4 want_fy = rotate_to(-1.0*(s*base.fx_full) + c*base.fy_full, c, s);
    double sc = norm(base.fx_full) + norm(base.fy_full) + 1.0;
    check_close(rot.fx_full, want_fx, 1e-11, sc);
    check_close(rot.fy_full, want_fy, 1e-11, sc);
  }
}
