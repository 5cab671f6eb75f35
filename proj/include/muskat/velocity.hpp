#pragma once

#include <array>
#include <span>
#include <vector>

#include "muskat/grid.hpp"
#include "muskat/params.hpp"
#include "muskat/state.hpp"

namespace muskat {

struct VelocityField {
  std::vector<double> u_plus;
  std::vector<double> u_minus;
};

struct RhsPair {
  std::vector<double> first;   // df/dt or dh/dt
  std::vector<double> second;  // dg/dt or dtheta/dt
};

/// u+ and u- from the principal-value kernel sums.  Throws CollisionError
/// when the gap closes.
VelocityField compute_velocity(const InterfaceState& s, const PhysicalParams& p,
                               const Grid1D& g);

/// Full nonlinear right-hand sides of the (f, g) system, transport terms
/// moved to the right.
RhsPair rhs_fg(const InterfaceState& s, const PhysicalParams& p, const Grid1D& g);

/// Right-hand sides of the diagonalized (h, theta) system, evaluated with
/// its own kernel combinations (not by recombining rhs_fg).
RhsPair rhs_htheta(const HThetaState& s, const PhysicalParams& p, const Grid1D& g);

/// Two-phase Muskat right-hand side with density jump rho_jump = rho2 - rho0.
std::vector<double> rhs_twophase(std::span<const double> f, double rho_jump,
                                 const Grid1D& g);

/// Fourier-space generator of the system linearized at f = g = 0:
///   M(xi) = -delta_rho * pi * |xi| * [ mu2        mu1 E ]
///                                    [ mu2 E      mu1   ],  E = e^{-2 sigma |xi|}.
/// Eigenvalues are real and sorted ascending (fastest decay first).
struct LinearizedSymbol {
  std::array<std::array<double, 2>, 2> matrix;
  std::array<double, 2> eigenvalues;
};
LinearizedSymbol linearized_symbol(double xi, const PhysicalParams& p);

}  // namespace muskat
