#include "trikin/moments.hpp"

#include <cmath>

namespace trikin {

MomentTable moments(const GasState& g, double K) {
  MomentTable t;
  double U = g.U, V = g.V, lam = g.lam;
  double beta = std::exp(-lam*U*U)/(2.0*std::sqrt(M_PI*lam));

  t.u[0] = 1.0;
  t.u[1] = U;
  t.up[0] = 0.5*std::erfc(-std::sqrt(lam)*U);
  t.um[0] = 0.5*std::erfc(std::sqrt(lam)*U);
  t.up[1] = U*t.up[0] + beta;
  t.um[1] = U*t.um[0] - beta;
  t.v[0] = 1.0;
  t.v[1] = V;
  for (int n = 0; n + 2 < 7; n++) {
    double c = (n + 1)/(2.0*lam);
    t.u[n + 2] = U*t.u[n + 1] + c*t.u[n];
    t.up[n + 2] = U*t.up[n + 1] + c*t.up[n];
    t.um[n + 2] = U*t.um[n + 1] + c*t.um[n];
    t.v[n + 2] = V*t.v[n + 1] + c*t.v[n];
  }
  t.xi[0] = 1.0;
  t.xi[1] = K/(2.0*lam);
  t.xi[2] = (K*K + 2.0*K)/(4.0*lam*lam);
  return t;
}

static inline double mom(const MomentTable& t, int p, int q, int r, int half) {
  const double* u = half > 0 ? t.up : (half < 0 ? t.um : t.u);
  return u[p]*t.v[q]*t.xi[r];
}

Vec4 psi_mom(const MomentTable& t, int p, int q, int r, int half) {
  return {mom(t, p, q, r, half), mom(t, p + 1, q, r, half),
          mom(t, p, q + 1, r, half),
          0.5*(mom(t, p + 2, q, r, half) + mom(t, p, q + 2, r, half) +
               mom(t, p, q, r + 1, half))};
}

Vec4 slope_psi_mom(const MomentTable& t, const Vec4& s, int p, int q,
                   int half) {
  Vec4 m = s[0]*psi_mom(t, p, q, 0, half);
  m += s[1]*psi_mom(t, p + 1, q, 0, half);
  m += s[2]*psi_mom(t, p, q + 1, 0, half);
  Vec4 e = psi_mom(t, p + 2, q, 0, half) + psi_mom(t, p, q + 2, 0, half) +
           psi_mom(t, p, q, 1, half);
  m += (0.5*s[3])*e;
  return m;
}

Vec4 micro_slopes(const GasState& g, const Vec4& b, double K) {
  double U = g.U, V = g.V, lam = g.lam;
  double e0 = U*U + V*V + (K + 2)/(2.0*lam);
  double b0 = b[0]/g.rho, b1 = b[1]/g.rho, b2 = b[2]/g.rho, b3 = b[3]/g.rho;
  double B1 = b1 - U*b0;
  double B2 = b2 - V*b0;
  double B3 = 2.0*b3 - e0*b0;
  double cE = 4.0*lam*lam/(K + 2)*(B3 - 2.0*U*B1 - 2.0*V*B2);
  double cu = 2.0*lam*B1 - U*cE;
  double cv = 2.0*lam*B2 - V*cE;
  double c0 = b0 - U*cu - V*cv - 0.5*cE*e0;
  return {c0, cu, cv, cE};
}

Vec4 time_slope(const GasState& g, const MomentTable& t, const Vec4& ax,
                const Vec4& ay, double K) {
  Vec4 rhs = slope_psi_mom(t, ax, 1, 0) + slope_psi_mom(t, ay, 0, 1);
  rhs = -g.rho*rhs;
  return micro_slopes(g, rhs, K);
}

}  // namespace trikin
