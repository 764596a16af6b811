#pragma once
#include <functional>

#include "trikin/flux.hpp"
#include "trikin/gas.hpp"

namespace trikin {

enum class BcKind {
  slip,               // mirror the normal velocity
  noslip_adiabatic,   // reverse the velocity, copy T and p
  noslip_isothermal,  // reverse the velocity, reflect T about the wall value
  moving_wall,        // isothermal wall translating in its own plane
  inflow,             // prescribed state (supersonic)
  outflow,            // copy the interior
  analytic,           // prescribed field, possibly time dependent
};

// Prescribed boundary field: conservative state and its x/y gradients.
using BoundaryField =
    std::function<void(double x, double y, double t, Vec4& q, Vec4& gx, Vec4& gy)>;

struct BcSpec {
  BcKind kind = BcKind::slip;
  double Twall = 1;
  double Uwall = 0, Vwall = 0;  // wall velocity, global frame
  BoundaryField field;          // inflow / analytic
};

struct BcSet {
  BcSpec by_tag[4];  // 0 left, 1 right, 2 bottom, 3 top
  double R = 1;      // gas constant, sets the temperature scale
};

// Ghost state and gradients seen across a boundary point. Everything is in
// the edge-local frame: x along the outward normal (nx,ny), momentum rotated.
// Wall kinds mirror the interior polynomial through the wall line, composed
// with the state reflection, so gradients stay consistent to the same order.
void ghost_point(const BcSpec& bc, const BcSet& set, const FluxParams& par,
                 double x, double y, double t, double nx, double ny,
                 const Vec4& q_in, const Vec4& gx_in, const Vec4& gy_in,
                 Vec4& q_g, Vec4& gx_g, Vec4& gy_g);

}  // namespace trikin
