#include "muskat/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace muskat {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid1D::Grid1D(double half_length, int n) : L_(half_length), n_(n) {
  if (!(half_length > 0.0)) {
    throw std::invalid_argument("Grid1D: half_length must be positive");
  }
  if (!is_pow2(n) || n < 8) {
    throw std::invalid_argument("Grid1D: n must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  dx_ = 2.0 * L_ / n_;
  xi1_ = std::numbers::pi / L_;
}

}  // namespace muskat
