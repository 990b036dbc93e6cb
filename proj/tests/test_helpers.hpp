#pragma once

#include "pwtime/kernel.hpp"
#include "pwtime/sampling.hpp"

#include <vector>

namespace pwtest {

inline pwtime::Vec random_vec(pwtime::SplitMix64& g, Eigen::Index n) {
  pwtime::Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = pwtime::Complex(2.0 * g.next_unit() - 1.0, 2.0 * g.next_unit() - 1.0);
  return v;
}

inline pwtime::StateVector random_state(pwtime::SplitMix64& g,
                                        std::vector<Eigen::Index> dims) {
  pwtime::Vec v = random_vec(g, pwtime::dim_product(dims));
  pwtime::StateVector s(std::move(v), std::move(dims));
  s.normalize();
  return s;
}

inline pwtime::StateVector make_state(std::vector<pwtime::Complex> amps,
                                      std::vector<Eigen::Index> dims) {
  pwtime::Vec v(static_cast<Eigen::Index>(amps.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = amps[i];
  return {std::move(v), std::move(dims)};
}

}  // namespace pwtest
