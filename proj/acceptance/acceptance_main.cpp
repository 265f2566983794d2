#include "criteria.hpp"

#include <cstdio>
#include <string>

int main(int argc, char **argv) {
  std::string suite = "all";
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--suite") suite = argv[i + 1];

  int failures = 0;
  for (int id : tts::acceptance::suite_criteria(suite)) {
    tts::acceptance::CriterionResult r = tts::acceptance::run_criterion(id);
    std::printf("[%s] criterion %2d: %s — %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
