#include "misq/rate_map.hpp"

#include <cmath>
#include <stdexcept>

namespace misq {

RateMap RateMap::constant(double c) {
  if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("RateMap: constant must be finite and >= 0");
  RateMap m;
  m.form_ = RateForm::Constant;
  m.a_ = c;
  return m;
}

RateMap RateMap::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("RateMap: empty table");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("RateMap: table entries must be finite and >= 0");
  RateMap m;
  m.form_ = RateForm::Table;
  m.table_ = std::move(values);
  return m;
}

RateMap RateMap::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("RateMap: affine coefficients must be finite");
  RateMap m;
  m.form_ = RateForm::Affine;
  m.a_ = a;
  m.b_ = b;
  return m;
}

RateMap RateMap::identity() {
  RateMap m;
  m.form_ = RateForm::Identity;
  return m;
}

RateMap RateMap::one_minus() {
  RateMap m;
  m.form_ = RateForm::OneMinus;
  return m;
}

void RateMap::validate_on(const StateSpace& space) const {
  const auto fail = [](const char* msg) { throw std::invalid_argument(std::string("RateMap: ") + msg); };
  switch (space.kind()) {
    case SpaceKind::Finite:
      if (form_ == RateForm::Table) {
        if (static_cast<int>(table_.size()) != space.size())
          fail("table size does not match the finite space");
      } else if (form_ != RateForm::Constant) {
        fail("finite label spaces support only constant and table maps");
      }
      break;
    case SpaceKind::NonNegInt:
      if (form_ == RateForm::Table) fail("table maps need a finite space");
      if (form_ == RateForm::OneMinus) fail("one_minus is negative on the integers >= 2");
      if (form_ == RateForm::Affine && (a_ < 0.0 || b_ < 0.0))
        fail("affine map on the nonnegative integers needs a >= 0 and b >= 0");
      break;
    case SpaceKind::Interval: {
      if (form_ == RateForm::Table) fail("table maps need a finite space");
      // Affine-family maps are monotone, so endpoint checks settle nonnegativity.
      const double at_lo = (*this)(space.lo()), at_hi = (*this)(space.hi());
      double raw_lo = at_lo, raw_hi = at_hi;
      if (form_ == RateForm::Affine) { raw_lo = a_ + b_ * space.lo(); raw_hi = a_ + b_ * space.hi(); }
      if (form_ == RateForm::Identity) { raw_lo = space.lo(); raw_hi = space.hi(); }
      if (form_ == RateForm::OneMinus) { raw_lo = 1.0 - space.hi(); raw_hi = 1.0 - space.lo(); }
      if (raw_lo < 0.0 || raw_hi < 0.0) fail("map is negative somewhere on the interval");
      break;
    }
    case SpaceKind::RealLine:
      if (form_ == RateForm::Table) fail("table maps need a finite space");
      break;
  }
}

Modulation::Modulation(StateSpace space, RateMap lambda, RateMap kappa, RateMap mu)
    : space_(std::move(space)), lambda_(std::move(lambda)), kappa_(std::move(kappa)),
      mu_(std::move(mu)) {
  lambda_.validate_on(space_);
  kappa_.validate_on(space_);
  mu_.validate_on(space_);
}

std::vector<double> Modulation::tabulate(const RateMap& m) const {
  if (space_.kind() != SpaceKind::Finite)
    throw std::logic_error("Modulation: tables require a finite state space");
  std::vector<double> out(static_cast<std::size_t>(space_.size()));
  for (int j = 0; j < space_.size(); ++j) out[static_cast<std::size_t>(j)] = m(j);
  return out;
}

std::vector<double> Modulation::lambda_table() const { return tabulate(lambda_); }
std::vector<double> Modulation::kappa_table() const { return tabulate(kappa_); }
std::vector<double> Modulation::mu_table() const { return tabulate(mu_); }

Modulation discretize_modulation(const Modulation& mod, int levels) {
  if (mod.space().kind() != SpaceKind::Interval)
    throw std::invalid_argument("discretize_modulation: needs an interval state space");
  if (levels < 2) throw std::invalid_argument("discretize_modulation: levels must be >= 2");
  const double lo = mod.space().lo(), hi = mod.space().hi();
  std::vector<double> lam, kap, mu;
  lam.reserve(levels); kap.reserve(levels); mu.reserve(levels);
  for (int i = 0; i < levels; ++i) {
    const double x = lo + (hi - lo) * i / (levels - 1);
    lam.push_back(mod.lambda(x));
    kap.push_back(mod.kappa(x));
    mu.push_back(mod.mu(x));
  }
  return Modulation(StateSpace::finite(levels), RateMap::table(std::move(lam)),
                    RateMap::table(std::move(kap)), RateMap::table(std::move(mu)));
}

Modulation truncate_modulation(const Modulation& mod, int max_state) {
  if (mod.space().kind() != SpaceKind::NonNegInt)
    throw std::invalid_argument("truncate_modulation: needs the nonnegative-integer space");
  if (max_state < 0) throw std::invalid_argument("truncate_modulation: max_state must be >= 0");
  std::vector<double> lam, kap, mu;
  for (int j = 0; j <= max_state; ++j) {
    lam.push_back(mod.lambda(j));
    kap.push_back(mod.kappa(j));
    mu.push_back(mod.mu(j));
  }
  return Modulation(StateSpace::finite(max_state + 1), RateMap::table(std::move(lam)),
                    RateMap::table(std::move(kap)), RateMap::table(std::move(mu)));
}

}  // namespace misq
