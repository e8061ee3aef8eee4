#include "misq/generator_matrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "misq/numerics.hpp"

namespace misq {

namespace {

// Reachability in the directed graph of positive off-diagonal rates.
bool all_reachable(const GeneratorMatrix& q, bool transpose) {
  const int d = q.dimension();
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < d; ++j) {
      const double r = transpose ? q.rate(j, i) : q.rate(i, j);
      if (i != j && r > 0.0 && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        stack.push_back(j);
      }
    }
  }
  for (char s : seen)
    if (!s) return false;
  return true;
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(std::vector<std::vector<double>> rows) {
  d_ = static_cast<int>(rows.size());
  if (d_ < 1) throw std::invalid_argument("GeneratorMatrix: dimension must be >= 1");
  q_.resize(static_cast<std::size_t>(d_) * d_);
  for (int i = 0; i < d_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != d_)
      throw std::invalid_argument("GeneratorMatrix: rows must all have the matrix dimension");
    double sum = 0.0;
    for (int j = 0; j < d_; ++j) {
      const double v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!std::isfinite(v)) throw std::invalid_argument("GeneratorMatrix: non-finite entry");
      if (i != j && v < 0.0)
        throw std::invalid_argument("GeneratorMatrix: off-diagonal entries must be >= 0");
      q_[static_cast<std::size_t>(i * d_ + j)] = v;
      sum += v;
    }
    if (std::abs(sum) > 1e-12)
      throw std::invalid_argument("GeneratorMatrix: row sums must vanish (tolerance 1e-12)");
  }
  if (d_ > 1 && (!all_reachable(*this, false) || !all_reachable(*this, true)))
    throw std::invalid_argument("GeneratorMatrix: chain is not irreducible");
}

GeneratorMatrix GeneratorMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("GeneratorMatrix: scale factor must be > 0");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(d_),
                                        std::vector<double>(static_cast<std::size_t>(d_)));
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = factor * rate(i, j);
  return GeneratorMatrix(std::move(rows));
}

std::vector<double> stationary_distribution(const GeneratorMatrix& q) {
  const int d = q.dimension();
  if (d == 1) return {1.0};
  // pi Q = 0 with the normalization replacing the redundant last equation.
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = q.rate(j, i);
  for (int j = 0; j < d; ++j) a(d - 1, j) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  b(d - 1) = 1.0;
  Eigen::VectorXd pi = a.partialPivLu().solve(b);

  double residual = 0.0;
  for (int j = 0; j < d; ++j) {
    double r = 0.0;
    for (int i = 0; i < d; ++i) r += pi(i) * q.rate(i, j);
    residual = std::max(residual, std::abs(r));
  }
  double sum = pi.sum();
  if (!std::isfinite(sum) || std::abs(sum - 1.0) > 1e-8 || residual > 1e-10)
    throw std::runtime_error("stationary_distribution: singular system; generator not irreducible");
  std::vector<double> out(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    if (!(pi(j) > 0.0))
      throw std::runtime_error("stationary_distribution: non-positive entry; generator not irreducible");
    out[static_cast<std::size_t>(j)] = pi(j) / sum;
  }
  return out;
}

double rho_t(const GeneratorMatrix& q, const Modulation& mod, double t) {
  if (t < 0.0) throw std::invalid_argument("rho_t: t must be >= 0");
  if (mod.space().kind() != SpaceKind::Finite || mod.space().size() != q.dimension())
    throw std::invalid_argument("rho_t: modulation must be tabled over the generator's state space");
  const auto pi = stationary_distribution(q);
  const auto lam = mod.lambda_table(), kap = mod.kappa_table(), mu = mod.mu_table();
  double mu_inf = 0.0;
  for (int j = 0; j < q.dimension(); ++j) mu_inf += pi[static_cast<std::size_t>(j)] * mu[static_cast<std::size_t>(j)];
  double rho = 0.0;
  for (int j = 0; j < q.dimension(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    rho += pi[k] * lam[k] * t * em1(kap[k] * mu_inf * t);
  }
  return rho;
}

}  // namespace misq
