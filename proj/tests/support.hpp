#pragma once

#include <random>

#include "epwforge/exterior.hpp"
#include "epwforge/scalar.hpp"

namespace testing {

using namespace epwforge;

inline const Field kQ = Field::rationals();

template <typename S>
Vec6<S> random_vec(std::mt19937_64& rng, const Field& f) {
  while (true) {
    Vec6<S> v;
    for (int i = 0; i < kDim; ++i) v(i) = random_scalar<S>(rng, f);
    if (!all_zero(v)) return v;
  }
}

template <typename S>
KVector<S> random_form(int grade, std::mt19937_64& rng, const Field& f) {
  KVector<S> w(grade);
  for (int s = 0; s < w.size(); ++s) w[s] = random_scalar<S>(rng, f);
  return w;
}

template <typename S>
KVector<S> vec(const Vec6<S>& v) {
  return KVector<S>::vector(v);
}

}  // namespace testing
