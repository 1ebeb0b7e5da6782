// Walks the quantised angles of the strip for both basis sectors and prints
// <J>, the normalisation and the energy of the nearest level.

#include <cstdio>
#include <numbers>

#include "mobius/mobius.hpp"

int main() {
  using namespace mobius;
  constexpr double r = 0.5;

  for (Offset s : {Offset::integer, Offset::half}) {
    std::printf("sector j in Z%s\n", s == Offset::half ? " + 1/2" : "");
    for (double l : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      for (const auto& q : states::quantization_scan(r, l, s)) {
        const states::StateLabel label{l, q.phi, r, s};
        std::printf("  l = %+4.1f  phi = %6.4f pi  l' = %+.3f  <J> = %+.15f  <xi|xi> = %.12f  E = %.6f\n", l,
                    q.phi / std::numbers::pi, q.lprime, q.expect_J, states::norm2(label),
                    dynamics::energy_quantized(q.expect_J, 0.0, r));
      }
    }
  }

  // Away from the quantised angles <J> misses l' by a correction of order 2 pi e^{-pi^2}.
  const states::StateLabel generic{0.0, 2.0, r};
  std::printf("generic label: l' = %.12f  <J> = %.12f\n", states::lprime(generic), states::expect_J(generic));
  return 0;
}
