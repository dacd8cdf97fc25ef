#pragma once

#include <random>
#include <string>

#include "qtoric/qtoric.hpp"

namespace qtoric::testing {

inline GitPresentation corpus_model(const std::string& name) {
  return load_presentation_file(std::string(QTORIC_MODELS_DIR) + "/" + name + ".json");
}

inline GitPresentation rank_one(std::vector<long> charges, long theta = 1) {
  std::vector<Integer> row(charges.begin(), charges.end());
  return make_presentation("rank1", {row}, {Integer(theta)});
}

// A random full-rank presentation with small charges; ss = s is not guaranteed.
inline GitPresentation random_presentation(std::mt19937& rng, int rank, int n_rays, int lo = -2, int hi = 3) {
  std::uniform_int_distribution<int> entry(lo, hi);
  std::uniform_int_distribution<int> theta_entry(0, 3);
  for (;;) {
    std::vector<std::vector<Integer>> rows(static_cast<std::size_t>(rank));
    for (auto& row : rows)
      for (int j = 0; j < n_rays; ++j) row.emplace_back(entry(rng));
    std::vector<Integer> theta;
    bool nonzero = false;
    for (int i = 0; i < rank; ++i) {
      theta.emplace_back(theta_entry(rng));
      nonzero = nonzero || theta.back() != 0;
    }
    if (!nonzero) continue;
    try {
      return make_presentation("random", rows, theta);
    } catch (const InputError&) {
    }
  }
}

// Random presentations with W^ss = W^s and a nonempty semistable locus.
inline std::vector<GitPresentation> random_stable_models(unsigned seed, int count, int max_rank = 2, int max_rays = 5) {
  std::mt19937 rng(seed);
  std::vector<GitPresentation> out;
  while (static_cast<int>(out.size()) < count) {
    int r = std::uniform_int_distribution<int>(1, max_rank)(rng);
    int n = std::uniform_int_distribution<int>(r + 1, max_rays)(rng);
    auto p = random_presentation(rng, r, n, -1, 3);
    if (check_ss_equals_s(p).ss_equals_s) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qtoric::testing
