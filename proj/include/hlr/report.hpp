#pragma once

// Violation reports shared by every axiom/structure checker. A checker
// enumerates all failures rather than stopping at the first one.

#include <string>
#include <vector>

namespace hlr {

struct Violation {
  std::string condition;         // stable identifier, e.g. "hom_jacobi"
  std::vector<std::size_t> witness;  // the basis indices exhibiting the failure
  std::string detail;            // optional human-readable note

  std::string to_string() const {
    std::string s = condition + " at (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(witness[i]);
    }
    s += ")";
    if (!detail.empty()) s += " " + detail;
    return s;
  }
};

struct CheckReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string condition, std::vector<std::size_t> witness, std::string detail = {}) {
    violations.push_back({std::move(condition), std::move(witness), std::move(detail)});
  }
  void merge(const CheckReport& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

}  // namespace hlr
