#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qres {

// Outcome of one randomized property check. Guaranteed properties gate the
// harness exit code; probe properties are falsification experiments and are
// reported only.
struct PropertyResult {
  std::string name;
  bool guaranteed = true;
  long trials = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;  // worst observed excess over the tolerance-free defect
  long violation_count = 0;
  std::vector<std::uint64_t> failing_seeds;  // first few reproducing seeds
  std::string note;

  bool passed() const { return violation_count == 0; }

  void record(double defect, std::uint64_t seed) {
    if (defect > max_violation) max_violation = defect;
    if (defect > tolerance) {
      ++violation_count;
      if (failing_seeds.size() < 8) failing_seeds.push_back(seed);
    }
  }
};

}  // namespace qres
