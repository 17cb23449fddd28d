#pragma once

// Shared fixtures: one space and scheme per q, built on first use.

#include <map>
#include <memory>

#include "pw/scheme.hpp"

namespace pw::test {

inline std::shared_ptr<const QuadraticSpace> space_ptr(std::uint32_t q) {
  static std::map<std::uint32_t, std::shared_ptr<const QuadraticSpace>> cache;
  auto& slot = cache[q];
  if (!slot) {
    const auto [p, e] = prime_power_decompose(q);
    slot = std::make_shared<const QuadraticSpace>(QuadraticSpace::build(GaloisField::build(p, e)));
  }
  return slot;
}

inline const QuadraticSpace& space(std::uint32_t q) { return *space_ptr(q); }

inline const SchemeInstance& scheme(std::uint32_t q) {
  static std::map<std::uint32_t, SchemeInstance> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, SchemeInstance::build(space_ptr(q))).first;
  return it->second;
}

}  // namespace pw::test
