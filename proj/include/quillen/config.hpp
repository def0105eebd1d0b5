#pragma once

#include <cstddef>

namespace quillen {

/// Size caps shared by every computation. All enumeration is explicit, so
/// these are the only thing standing between a typo and an OOM.
struct Limits {
  std::size_t element_cap = 50'000;
  std::size_t poset_cap = 20'000;
  std::size_t simplex_cap = 4'000'000;
  /// Box for small integer combinations when searching unit coefficients.
  int coeff_box = 2;
};

}  // namespace quillen
