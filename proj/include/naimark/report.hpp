#pragma once

#include <string>
#include <utility>
#include <vector>

namespace naimark {

/// One named residual with the tolerance it was judged against.
struct CheckItem {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckItem> items;

  void add(std::string name, double residual, double tolerance) {
    items.push_back({std::move(name), residual, tolerance, residual <= tolerance});
  }

  void add_flag(std::string name, bool ok) {
    items.push_back({std::move(name), ok ? 0.0 : 1.0, 0.5, ok});
  }

  bool passed() const {
    for (const CheckItem& item : items)
      if (!item.pass) return false;
    return true;
  }

  double max_residual() const {
    double r = 0.0;
    for (const CheckItem& item : items) r = std::max(r, item.residual);
    return r;
  }
};

}  // namespace naimark
