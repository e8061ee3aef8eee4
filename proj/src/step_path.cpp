#include "misq/step_path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace misq {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

StepPath::StepPath(StateSpace space, std::vector<double> times, std::vector<double> states,
                   double horizon)
    : space_(std::move(space)), times_(std::move(times)), states_(std::move(states)),
      horizon_(horizon) {
  if (times_.empty()) throw std::invalid_argument("StepPath: needs at least one breakpoint");
  if (times_.size() != states_.size())
    throw std::invalid_argument("StepPath: times and states differ in length");
  if (times_.front() != 0.0) throw std::invalid_argument("StepPath: first breakpoint time must be 0");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) throw std::invalid_argument("StepPath: non-finite breakpoint time");
    if (i > 0 && !(times_[i] > times_[i - 1]))
      throw std::invalid_argument("StepPath: breakpoint times must be strictly increasing");
    if (!space_.contains(states_[i]))
      throw std::invalid_argument("StepPath: state outside the declared state space");
  }
  if (!std::isfinite(horizon_) || horizon_ < times_.back())
    throw std::invalid_argument("StepPath: horizon must be finite and >= last breakpoint time");
}

double StepPath::value_at(double s) const {
  if (s < 0.0 || s > horizon_)
    throw std::out_of_range("StepPath: evaluation outside [0, horizon]");
  auto it = std::upper_bound(times_.begin(), times_.end(), s);
  return states_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

StepPath StepPath::minimal_representation() const {
  std::vector<double> ts, xs;
  ts.reserve(times_.size());
  xs.reserve(states_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (i == 0 || states_[i] != xs.back()) {
      ts.push_back(times_[i]);
      xs.push_back(states_[i]);
    }
  }
  return StepPath(space_, std::move(ts), std::move(xs), horizon_);
}

StepPath StepPath::restricted(double new_horizon) const {
  if (new_horizon < 0.0 || new_horizon > horizon_)
    throw std::invalid_argument("StepPath: restriction horizon outside [0, horizon]");
  std::vector<double> ts, xs;
  for (std::size_t i = 0; i < times_.size() && times_[i] <= new_horizon; ++i) {
    ts.push_back(times_[i]);
    xs.push_back(states_[i]);
  }
  return StepPath(space_, std::move(ts), std::move(xs), new_horizon);
}

double truncated_min_step(const StepPath& path) {
  const auto& ts = path.times();
  double m = 1.0;
  for (std::size_t i = 1; i < ts.size(); ++i) m = std::min(m, ts[i] - ts[i - 1]);
  return m;
}

double sup_distance(const StepPath& a, const StepPath& b, double T) {
  if (!a.space().compatible_with(b.space()))
    throw std::invalid_argument("sup_distance: paths live on incompatible state spaces");
  if (T < 0.0) throw std::invalid_argument("sup_distance: T must be >= 0");
  if (a.horizon() < T || b.horizon() < T)
    throw std::invalid_argument("sup_distance: both paths must be defined up to T");
  // Both paths are constant between consecutive union breakpoints, so the
  // sup over [0, T] is attained at a union breakpoint.
  double d = 0.0;
  const auto eval = [&](double s) { d = std::max(d, a.space().metric(a.value_at(s), b.value_at(s))); };
  eval(0.0);
  for (double t : a.times())
    if (t <= T) eval(t);
  for (double t : b.times())
    if (t <= T) eval(t);
  return d;
}

StepPath discretize(const StateSpace& space, std::span<const double> grid_times,
                    std::span<const double> values, double horizon) {
  if (grid_times.empty()) throw std::invalid_argument("discretize: empty sample sequence");
  if (grid_times.size() != values.size())
    throw std::invalid_argument("discretize: grid and values differ in length");
  return StepPath(space, std::vector<double>(grid_times.begin(), grid_times.end()),
                  std::vector<double>(values.begin(), values.end()), horizon);
}

void write_csv(const StepPath& path, std::ostream& out) {
  out << "# horizon=" << fmt_double(path.horizon()) << "\n";
  out << "time,state\n";
  for (std::size_t i = 0; i < path.breakpoint_count(); ++i)
    out << fmt_double(path.times()[i]) << "," << fmt_double(path.states()[i]) << "\n";
}

std::string to_csv(const StepPath& path) {
  std::ostringstream os;
  write_csv(path, os);
  return os.str();
}

StepPath read_csv(const StateSpace& space, std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# horizon=", 0) != 0)
    throw std::invalid_argument("path csv line 1: expected '# horizon=<value>'");
  double horizon = 0.0;
  try {
    horizon = std::stod(line.substr(10));
  } catch (const std::exception&) {
    throw std::invalid_argument("path csv line 1: bad horizon value");
  }
  if (!std::getline(in, line) || line != "time,state")
    throw std::invalid_argument("path csv line 2: expected header 'time,state'");
  std::vector<double> ts, xs;
  int lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("path csv line " + std::to_string(lineno) + ": expected 'time,state'");
    try {
      ts.push_back(std::stod(line.substr(0, comma)));
      xs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("path csv line " + std::to_string(lineno) + ": bad number");
    }
  }
  return StepPath(space, std::move(ts), std::move(xs), horizon);
}

StepPath read_csv_file(const StateSpace& space, const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open path file: " + filename);
  return read_csv(space, in);
}

}  // namespace misq
