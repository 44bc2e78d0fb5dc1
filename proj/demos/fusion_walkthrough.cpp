// Builds the fusion frame of two lines at sixty degrees, forms its Naimark
// complement, and checks the principal-angle and chordal-distance transfer.
#include <cmath>
#include <iostream>

#include "naimark/fusion.hpp"

int main() {
  using naimark::RealMatrix;
  const double c = 0.5;             // cos 60
  const double s = std::sqrt(3.0) / 2.0;

  RealMatrix q1(2, 1), q2(2, 1);
  q1 << 1.0, 0.0;
  q2 << c, s;
  naimark::FusionFrame<double> ff(2, {{q1, 1.0}, {q2, 1.0}});

  const auto fn = naimark::fusion_naimark(ff);
  std::cout << "bound " << fn.embedding.bessel_bound << ", complement blocks "
            << fn.complement.block_count() << "\n";
  for (const auto& blk : fn.complement.blocks) std::cout << "weight " << blk.weight << "\n";

  const auto input_angles = naimark::principal_angles(q1, q2);
  const auto comp_angles =
      naimark::principal_angles(fn.complement.blocks[0].basis, fn.complement.blocks[1].basis);
  std::cout << "input angle " << input_angles.angles[0] << ", complement angle "
            << comp_angles.angles[0] << "\n";

  const auto report = naimark::fusion_transfer_report(ff);
  for (const auto& item : report.items)
    std::cout << (item.pass ? "pass " : "FAIL ") << item.name << " residual " << item.residual
              << "\n";
  return report.passed() ? 0 : 1;
}
