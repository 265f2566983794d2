#ifndef TTS_ACCEPTANCE_CRITERIA_HPP
#define TTS_ACCEPTANCE_CRITERIA_HPP

#include <string>
#include <vector>

namespace tts::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// All criterion ids, in order.
std::vector<int> all_criteria();

// Criteria belonging to a named suite ("all", "wootters", "choi", "theorem1",
// "lindblad", "hierarchy", "haar", "lemmas", "unitarity"); throws on an
// unknown tag.
std::vector<int> suite_criteria(const std::string &tag);

CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_criteria(const std::vector<int> &ids);

} // namespace tts::acceptance

#endif
