#pragma once

#include <string>
#include <vector>

#include "misq/state_space.hpp"

namespace misq {

enum class RateForm { Constant, Table, Affine, Identity, OneMinus };

// A nonnegative rate as a function of the background state. The forms are a
// closed enumeration so nonnegativity (and continuity in the state) can be
// checked when a Modulation is assembled:
//   constant c            any space
//   table [v_0..v_{d-1}]  finite spaces, entrywise v_j >= 0
//   affine a + b*x        numeric spaces
//   identity x            numeric spaces
//   one_minus 1 - x       bounded numeric spaces
// On the real line, where no endpoint check exists, evaluation clamps at 0
// (max(0, .) keeps the map continuous and nonnegative).
class RateMap {
 public:
  static RateMap constant(double c);
  static RateMap table(std::vector<double> values);
  static RateMap affine(double a, double b);
  static RateMap identity();
  static RateMap one_minus();

  double operator()(double x) const {
    double v;
    switch (form_) {
      case RateForm::Constant: v = a_; break;
      case RateForm::Table: v = table_[static_cast<std::size_t>(x)]; break;
      case RateForm::Affine: v = a_ + b_ * x; break;
      case RateForm::Identity: v = x; break;
      case RateForm::OneMinus: v = 1.0 - x; break;
      default: v = 0.0;
    }
    return v > 0.0 ? v : 0.0;
  }

  RateForm form() const { return form_; }
  const std::vector<double>& table_values() const { return table_; }
  double affine_a() const { return a_; }
  double affine_b() const { return b_; }

  // Throws unless the map is well defined and nonnegative on the space.
  void validate_on(const StateSpace& space) const;

 private:
  RateMap() = default;
  RateForm form_ = RateForm::Constant;
  double a_ = 0.0, b_ = 0.0;
  std::vector<double> table_;
};

// The modulation triple: arrival intensity, service-requirement rate and
// server work rate, all over one state space.
class Modulation {
 public:
  Modulation(StateSpace space, RateMap lambda, RateMap kappa, RateMap mu);

  const StateSpace& space() const { return space_; }
  double lambda(double x) const { return lambda_(x); }
  double kappa(double x) const { return kappa_(x); }
  double mu(double x) const { return mu_(x); }

  const RateMap& lambda_map() const { return lambda_; }
  const RateMap& kappa_map() const { return kappa_; }
  const RateMap& mu_map() const { return mu_; }

  // Table values over a finite space (index order). Throws on non-finite
  // spaces; used by the finite-state solvers.
  std::vector<double> lambda_table() const;
  std::vector<double> kappa_table() const;
  std::vector<double> mu_table() const;

 private:
  std::vector<double> tabulate(const RateMap& m) const;
  StateSpace space_;
  RateMap lambda_, kappa_, mu_;
};

// Samples an interval-space modulation at `levels` equispaced states and
// returns the finite-space table modulation on those states.
Modulation discretize_modulation(const Modulation& mod, int levels);

// Table modulation over the truncated integer state set {0..max_state}.
Modulation truncate_modulation(const Modulation& mod, int max_state);

}  // namespace misq
