// Walks a small diagonal Bessel sequence through completion, complement
// construction, verification, and the closed-form complement bounds.
#include <iostream>

#include "naimark/complement.hpp"
#include "naimark/completion.hpp"
#include "naimark/frame.hpp"

int main() {
  using naimark::RealMatrix;
  RealMatrix f(2, 2);
  f << 1.0, 0.0, 0.0, 0.5;
  const naimark::Frame<double> frame(f);
  const auto sd = naimark::spectral(frame);
  std::cout << "synthesis:\n" << f << "\n";
  std::cout << "bessel bound " << sd.upper_bound << ", lower bound " << sd.lower_bound
            << ", top multiplicity " << sd.top_multiplicity << "\n\n";

  const auto completion = naimark::complete_to_tight(frame, sd, naimark::CompletionMode::minimal());
  std::cout << "columns added to reach a tight frame at bound " << completion.target_bound << ":\n"
            << completion.added << "\n\n";

  const auto nr = naimark::naimark_complement(frame, sd);
  std::cout << "complement (rows live in a " << nr.complement.rows() << "-dimensional space):\n"
            << nr.complement << "\n\n";

  const auto report = naimark::verify_complement(frame, nr);
  for (const auto& item : report.items)
    std::cout << (item.pass ? "pass " : "FAIL ") << item.name << " residual " << item.residual
              << "\n";

  const auto bounds =
      naimark::complement_bounds(sd, frame.vector_count(), naimark::CompletionMode::minimal());
  if (bounds.complement_is_empty)
    std::cout << "complement is empty\n";
  else
    std::cout << "complement frame bounds [" << bounds.lower << ", " << bounds.upper << "]\n";
  return report.passed() ? 0 : 1;
}
