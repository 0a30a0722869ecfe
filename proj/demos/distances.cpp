// Distances between a few states for a small metric, plus the p < 2 failure.
#include <cstdio>

#include "pqdist.hpp"

using namespace pqdist;

int main() {
  // the 3-4-5 right triangle as a three-point metric space
  const auto e = DistanceMatrix::from_rows({{0, 3, 5}, {3, 0, 4}, {5, 4, 0}});
  const auto x = PureState::basis(3, 0);
  const auto y = PureState::normalize(ComplexVector({1.0, Complex(0, 1), 0.0}));
  const auto z = PureState::normalize(ComplexVector({1.0, 1.0, 1.0}));

  for (double p : {2.0, 3.0, 10.0}) {
    const DpMetric d(e, p);
    std::printf("p = %-4g d(x,y) = %.6f  d(y,z) = %.6f  d(x,z) = %.6f\n", p, d(x, y), d(y, z), d(x, z));
  }
  std::printf("Hilbert-Schmidt d(x,z) = %.6f\n", d_hs(x, z));

  const auto emb = embed(e, 3.0);
  std::printf("basis embedding, p = 3: max relative error %.2g\n", emb.max_relative_error);

  for (double p : {1.0, 1.5, 1.9}) {
    const auto ce = counterexample_p_lt_2(p, 1.0);
    std::printf("p = %-4g triangle fails by %.6g (d_xy = %.6f > %.6f + %.6f)\n", p, ce.margin, ce.d_xy, ce.d_xz,
                ce.d_yz);
  }
}
