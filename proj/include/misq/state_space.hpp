#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace misq {

enum class SpaceKind { Finite, NonNegInt, Interval, RealLine };

// State values travel as doubles everywhere. Finite spaces store states as
// the label index 0..d-1 (exact in a double); integer spaces as exact
// integer values. The metric is discrete on finite label sets and Euclidean
// on the numeric kinds.
class StateSpace {
 public:
  static StateSpace finite(int size) {
    if (size < 1) throw std::invalid_argument("StateSpace: finite space needs size >= 1");
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) labels.push_back(std::to_string(i));
    return finite(std::move(labels));
  }

  static StateSpace finite(std::vector<std::string> labels) {
    if (labels.empty()) throw std::invalid_argument("StateSpace: finite space needs size >= 1");
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          throw std::invalid_argument("StateSpace: finite labels must be distinct");
    StateSpace s;
    s.kind_ = SpaceKind::Finite;
    s.labels_ = std::move(labels);
    return s;
  }

  static StateSpace nonneg_int() {
    StateSpace s;
    s.kind_ = SpaceKind::NonNegInt;
    return s;
  }

  static StateSpace interval(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
      throw std::invalid_argument("StateSpace: interval needs finite lo < hi");
    StateSpace s;
    s.kind_ = SpaceKind::Interval;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
  }

  static StateSpace real_line() {
    StateSpace s;
    s.kind_ = SpaceKind::RealLine;
    return s;
  }

  SpaceKind kind() const { return kind_; }

  int size() const {
    if (kind_ != SpaceKind::Finite) throw std::logic_error("StateSpace: size() on non-finite space");
    return static_cast<int>(labels_.size());
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(double x) const {
    if (!std::isfinite(x)) return false;
    switch (kind_) {
      case SpaceKind::Finite:
        return x == std::floor(x) && x >= 0.0 && x < static_cast<double>(labels_.size());
      case SpaceKind::NonNegInt:
        return x == std::floor(x) && x >= 0.0;
      case SpaceKind::Interval:
        return x >= lo_ && x <= hi_;
      case SpaceKind::RealLine:
        return true;
    }
    return false;
  }

  double metric(double a, double b) const {
    if (kind_ == SpaceKind::Finite) return a == b ? 0.0 : 1.0;
    return std::abs(a - b);
  }

  bool compatible_with(const StateSpace& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
      case SpaceKind::Finite:
        return labels_ == other.labels_;
      case SpaceKind::Interval:
        return lo_ == other.lo_ && hi_ == other.hi_;
      default:
        return true;
    }
  }

 private:
  StateSpace() = default;
  SpaceKind kind_ = SpaceKind::RealLine;
  std::vector<std::string> labels_;
  double lo_ = 0.0, hi_ = 0.0;
};

}  // namespace misq
