#pragma once
#include <functional>
#include <string>
#include <vector>

#include "trikin/integrator.hpp"

namespace trikin {

// Conservative state and its gradients as a function of space and time.
using FieldFn = std::function<Vec4(double x, double y, double t)>;

struct CaseDef {
  std::string name;
  SolverConfig cfg;
  BcSet bcs;
  int nx = 0, ny = 0;  // default resolution
  double t_end = 0;
  double steady_tol = 0;  // stop once max |dq|/dt drops below; 0 = run to t_end
  std::function<TriMesh(int nx, int ny)> mesh;
  FieldFn init;
  FieldFn exact;  // empty if no closed form
};

CaseDef make_case(const std::string& name);
std::vector<std::string> case_names();

// Steady flow between a fixed adiabatic wall at y = 0 and a moving isothermal
// wall at y = 2H, with viscosity linear in temperature and Pr = 1. Pressure is
// uniform and c_p T + U^2/2 is linear in U, which makes the coordinate map
// y(U) an explicit cubic; velocity comes back out by Newton iteration.
struct CouetteFlow {
  double H = 0.5;
  double U1 = 0.5;
  double T1 = 1.0;
  double p = 1.0/1.4;
  double R = 1.0/1.4;
  double gamma = 1.4;

  double cp() const { return gamma*R/(gamma - 1.0); }
  double temperature(double U) const { return T1 + (U1*U1 - U*U)/(2.0*cp()); }
  double ymap(double U) const;      // y as a function of U
  double velocity(double y) const;  // inverse of ymap
  void field(double y, Vec4& q, Vec4& gx, Vec4& gy) const;
};

// RMS over every solution point of one conservative component against a
// reference field evaluated at time t.
double l2_error(const Solver& s, const FieldFn& ref, int comp, double t);

// Aitken extrapolation of three equally spaced snapshots toward their limit,
// per point and component. Falls back to the last snapshot where the
// increments no longer shrink.
std::vector<CellPoly> aitken_steady(const std::vector<CellPoly>& q1,
                                    const std::vector<CellPoly>& q2,
                                    const std::vector<CellPoly>& q3);

struct LineSample {
  std::vector<double> s;  // distance along the segment
  std::vector<Vec4> q;    // cells sharing a sample point are averaged
};
LineSample sample_line(const Solver& s, double x0, double y0, double x1,
                       double y1, int n);

// One-dimensional reference solution for the shock tube style cases: MUSCL
// reconstruction with minmod slopes, exact Riemann fluxes, midpoint predictor.
// bc: 0 transmissive, 1 reflecting.
struct Ref1D {
  std::vector<double> x;
  std::vector<double> rho, u, p;
  double interp_rho(double xq) const;
};
Ref1D reference_1d(const std::function<void(double, double&, double&, double&)>& init,
                   double x0, double x1, int n, double t_end, double gamma,
                   int bc_left, int bc_right);

}  // namespace trikin
