#include "nfisac/common.hpp"

namespace nfisac {

cplx phasor_from_cycles(double cycles) {
  const double frac = cycles - std::floor(cycles);
  const double angle = kTwoPi * frac;
  return {std::cos(angle), -std::sin(angle)};
}

}  // namespace nfisac
