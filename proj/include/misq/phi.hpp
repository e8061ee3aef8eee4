#pragma once

#include <span>
#include <vector>

#include "misq/rate_map.hpp"
#include "misq/step_path.hpp"

namespace misq {

// The path-dependent Poisson mean of the job count at time t:
//
//   phi_t(f) = ∫_0^t lambda(f(s)) exp(-kappa(f(s)) ∫_s^t mu(f(r)) dr) ds.
//
// Evaluated in closed form by one backward pass over the constant segments:
// with tail work R(v) = ∫_v^t mu(f) dr, a segment [u,v) in state x adds
// lambda(x) e^{-kappa(x) R(v)} (v-u) em1(kappa(x) mu(x) (v-u)), and the
// degenerate kappa*mu = 0 branch is the exact analytic limit em1(0) = 1.
double phi(const StepPath& path, const Modulation& mod, double t);

// phi evaluated at each grid time (diagnostic profile).
std::vector<double> phi_profile(const StepPath& path, const Modulation& mod,
                                std::span<const double> grid);

}  // namespace misq
