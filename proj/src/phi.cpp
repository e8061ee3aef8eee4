#include "misq/phi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"

namespace misq {

double phi(const StepPath& path, const Modulation& mod, double t) {
  if (t < 0.0) throw std::invalid_argument("phi: t must be >= 0");
  if (t > path.horizon()) throw std::invalid_argument("phi: t exceeds the path horizon");
  if (!path.space().compatible_with(mod.space()))
    throw std::invalid_argument("phi: path and modulation state spaces differ");

  const auto& times = path.times();
  const auto& states = path.states();
  const auto last = static_cast<std::size_t>(
      std::upper_bound(times.begin(), times.end(), t) - times.begin() - 1);

  double total = 0.0;
  double tail_work = 0.0;  // ∫_v^t mu(f) dr for the current segment end v
  for (std::size_t i = last + 1; i-- > 0;) {
    const double u = times[i];
    const double v = (i == last) ? t : times[i + 1];
    const double len = v - u;
    const double x = states[i];
    const double lam = mod.lambda(x), kap = mod.kappa(x), m = mod.mu(x);
    total += lam * std::exp(-kap * tail_work) * len * em1(kap * m * len);
    tail_work += m * len;
  }
  return total;
}

std::vector<double> phi_profile(const StepPath& path, const Modulation& mod,
                                std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double s : grid) out.push_back(phi(path, mod, s));
  return out;
}

}  // namespace misq
