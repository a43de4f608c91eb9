#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <doctest.h>

#include "percolab/error.hpp"
#include "percolab/percolation.hpp"

#define CHECK_ERROR_CODE(expr, expected_code)                  \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const percolab::Error& e_) {                      \
      thrown_ = true;                                          \
      CHECK(e_.code() == percolab::ErrorCode::expected_code);  \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected " #expected_code);        \
  } while (0)

namespace testing {

// Bit i of mask colors canonical hexagon i Yellow.
inline percolab::Coloring from_mask(const std::shared_ptr<const percolab::LatticeDomain>& d, std::uint64_t mask) {
  std::vector<percolab::Color> colors(d->size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    colors[i] = (mask >> i) & 1 ? percolab::Color::Yellow : percolab::Color::Blue;
  }
  return percolab::Coloring(d, std::move(colors));
}

}  // namespace testing
