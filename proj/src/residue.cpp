#include "sunit/residue.hpp"

#include "sunit/errors.hpp"

namespace sunit {

std::optional<ResidueProgression> residue_progression(Int c, Int s, Int a) {
  if (a < 1 || !fits_u64(a)) throw DomainError("residue_progression: modulus out of range");
  const Int g = gcd_int(c, a);
  if (g == 0 || s % g != 0) return std::nullopt;
  const Int step = a / g;
  ResidueProgression p;
  p.step = step;
  if (step == 1) {
    p.first = 1;
    return p;
  }
  const u64 m = static_cast<u64>(step);
  const u64 sr = static_cast<u64>((((s / g) % step) + step) % step);
  const u64 inv = static_cast<u64>(mod_inverse(c / g, step));
  const u64 w0 = mulmod(sr, inv, m);
  p.first = w0 == 0 ? step : static_cast<Int>(w0);
  return p;
}

}  // namespace sunit
