#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "finitetop/error.hpp"

namespace finitetop {

/// Default cap on the number of stored relation pairs of a FinitePreorder (|P|^2).
inline constexpr std::size_t kDefaultMaxRelationPairs = std::size_t{1} << 16;

/// Default cap on enumerated faces of a simplicial complex.
inline constexpr std::size_t kDefaultMaxFaces = 1'000'000;

/// Face-count guard, overridable through FINITETOP_MAX_FACES.
inline std::size_t max_faces() {
  static const std::size_t value = [] {
    if (const char* env = std::getenv("FINITETOP_MAX_FACES")) {
      try {
        std::size_t pos = 0;
        const unsigned long long parsed = std::stoull(env, &pos);
        if (pos == std::string(env).size() && parsed > 0) return static_cast<std::size_t>(parsed);
      } catch (const std::exception&) {
      }
    }
    return kDefaultMaxFaces;
  }();
  return value;
}

/// Default cap on the total simplex count handed to the homology engine.
inline constexpr std::size_t kDefaultMaxChainSimplices = 100'000;

/// Chain-complex guard; FINITETOP_MAX_FACES, when set, overrides this one too.
inline std::size_t max_chain_simplices() {
  return std::getenv("FINITETOP_MAX_FACES") ? max_faces() : kDefaultMaxChainSimplices;
}

inline void require_faces(std::size_t count, const char* what) {
  if (count > max_faces())
    throw ResourceError(std::string(what) + ": " + std::to_string(count) +
                        " faces exceeds the face guard of " + std::to_string(max_faces()));
}

}  // namespace finitetop
