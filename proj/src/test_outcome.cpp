#include "fgof/test_outcome.hpp"

namespace fgof {

const char* to_string(StatisticFamily family) noexcept {
  switch (family) {
    case StatisticFamily::kKs: return "KS";
    case StatisticFamily::kCvmSimple: return "CVM_SIMPLE";
    case StatisticFamily::kCvmCompositeNormal: return "CVM_COMPOSITE_NORMAL";
    case StatisticFamily::kEcfSimple: return "ECF_SIMPLE";
    case StatisticFamily::kEcfCompositeNormal: return "ECF_COMPOSITE_NORMAL";
  }
  return "?";
}

const char* to_string(TestRegime regime) noexcept {
  return regime == TestRegime::kAb1 ? "AB1" : "AB2";
}

const std::vector<double>& tabled_levels() {
  static const std::vector<double> levels{0.15, 0.1, 0.05, 0.025, 0.01};
  return levels;
}

void decide(TestOutcome& outcome) {
  outcome.rejected.clear();
  for (const auto& [level, c] : outcome.critical_values) {
    outcome.rejected[level] = outcome.statistic > c;
  }
}

}  // namespace fgof
