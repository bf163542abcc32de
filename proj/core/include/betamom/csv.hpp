#pragma once

#include <ostream>
#include <string>

#include "betamom/energy.hpp"
#include "betamom/method.hpp"
#include "betamom/ode.hpp"

namespace betamom {

/// Shortest round-trip decimal form of a double (full precision, locale-free).
std::string format_full(double v);

// Column orders are stable: downstream plot scripts index by header name.

/// Header `k,x0..,v0..,gap,grad_norm`; the final row has no velocity (nan).
void write_csv(const Trajectory& traj, std::ostream& os);

/// Header `t,X0..,V0..,gap`.
void write_csv(const OdeSolution& sol, const Objective& obj, std::ostream& os);

/// Header `k,E,dE,rhs,violated`; trailing rows without a decrement carry nan.
void write_csv(const EnergySeries& series, std::ostream& os);

}  // namespace betamom
