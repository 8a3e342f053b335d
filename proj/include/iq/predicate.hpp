#pragma once

#include <stdexcept>

#include "iq/geometry.hpp"

namespace iq {

enum class PredicateKind { EpsRange, Knn, DynamicSkyline };

struct Predicate {
  PredicateKind kind = PredicateKind::EpsRange;
  double eps = 0.0;  // EpsRange
  int k = 0;         // Knn

  static Predicate eps_range(double eps) { return {PredicateKind::EpsRange, eps, 0}; }
  static Predicate knn(int k) { return {PredicateKind::Knn, 0.0, k}; }
  static Predicate dynamic_skyline() { return {PredicateKind::DynamicSkyline, 0.0, 0}; }

  void validate() const {
    if (kind == PredicateKind::EpsRange && !(eps > 0))
      throw std::invalid_argument("eps-range predicate requires eps > 0");
    if (kind == PredicateKind::Knn && k < 1)
      throw std::invalid_argument("knn predicate requires k >= 1");
  }
};

}  // namespace iq
