#include <iostream>

#include "qtoric/selftest/battery.hpp"

int main(int argc, char** argv) {
  using namespace qtoric::selftest;
  const std::string dir = argc > 1 ? argv[1] : QTORIC_MODELS_DIR;
  Corpus corpus;
  try {
    corpus = load_corpus(dir);
  } catch (const std::exception& e) {
    std::cout << "FAIL  corpus could not be loaded from " << dir << ": " << e.what() << "\n";
    return 1;
  }
  int failed = 0;
  for (const auto& r : run_acceptance(corpus)) {
    std::cout << format_result(r) << "\n";
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
