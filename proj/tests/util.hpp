#pragma once

#include <initializer_list>

#include "bishort/numcore.hpp"

namespace testutil {

using bishort::Operator;

inline Operator mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto m = Eigen::Index(rows.size());
  const auto n = m ? Eigen::Index(rows.begin()->size()) : 0;
  Operator out(m, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index k = 0;
    for (double v : r) out(i, k++) = v;
    ++i;
  }
  return out;
}

inline Operator e(Eigen::Index n, Eigen::Index k) {
  Operator v = Operator::Zero(n, 1);
  v(k, 0) = 1.0;
  return v;
}

inline double dist(const Operator& a, const Operator& b) { return bishort::opnorm(a - b); }

}  // namespace testutil
