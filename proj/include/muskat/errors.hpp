#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

// Interfaces touched or crossed; the kernel evaluations are no longer valid.
class CollisionError : public std::runtime_error {
 public:
  explicit CollisionError(const std::string& what) : std::runtime_error(what) {}
};

// The cosh(2*gamma*xi) weight exceeded the floating-point range, or the
// spectrum decayed too slowly for the requested strip width.  Analyticity
// tracking is broken at this resolution; the caller must refine or stop.
class ResolutionLossError : public std::runtime_error {
 public:
  explicit ResolutionLossError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace muskat
