#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symthermo/errors.hpp"

namespace symthermo {

/// A Darboux chart on phase space: names for the base coordinates q and the
/// conjugate momenta p, plus display conventions for the momenta.
///
/// Momenta are stored canonically. A display sign of -1 means the physical
/// variable shown to users is the negative of the stored momentum (the
/// hydrostatic chart stores p_V = -P but reports P).
class Chart {
 public:
  Chart(std::string name, std::vector<std::string> q_names,
        std::vector<std::string> p_display_names,
        std::vector<double> p_display_signs)
      : name_(std::move(name)),
        q_names_(std::move(q_names)),
        p_display_names_(std::move(p_display_names)),
        p_display_signs_(std::move(p_display_signs)) {
    if (q_names_.empty() || q_names_.size() != p_display_names_.size() ||
        q_names_.size() != p_display_signs_.size()) {
      throw DimensionError("chart coordinate name lists must be non-empty and equal length");
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return q_names_.size(); }

  const std::vector<std::string>& q_names() const { return q_names_; }
  const std::vector<std::string>& p_display_names() const { return p_display_names_; }

  /// Sign s_k with physical_k = s_k * p_k (stored canonical momentum).
  double p_display_sign(std::size_t k) const { return p_display_signs_.at(k); }

  /// Index of a base coordinate by name, -1 if absent.
  int q_index(const std::string& n) const {
    for (std::size_t i = 0; i < q_names_.size(); ++i)
      if (q_names_[i] == n) return static_cast<int>(i);
    return -1;
  }

  /// Index of a momentum by display name, -1 if absent.
  int p_display_index(const std::string& n) const {
    for (std::size_t i = 0; i < p_display_names_.size(); ++i)
      if (p_display_names_[i] == n) return static_cast<int>(i);
    return -1;
  }

  /// The chart used throughout: q = (S, V, N), canonical p = (T, -P, mu).
  static std::shared_ptr<const Chart> hydrostatic() {
    static const auto chart = std::make_shared<const Chart>(
        "hydrostatic", std::vector<std::string>{"S", "V", "N"},
        std::vector<std::string>{"T", "P", "mu"},
        std::vector<double>{1.0, -1.0, 1.0});
    return chart;
  }

 private:
  std::string name_;
  std::vector<std::string> q_names_;
  std::vector<std::string> p_display_names_;
  std::vector<double> p_display_signs_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a.get() != b.get()) {
    throw ChartMismatchError("operands live in different charts: '" +
                             (a ? a->name() : std::string("null")) + "' vs '" +
                             (b ? b->name() : std::string("null")) + "'");
  }
}

}  // namespace symthermo
