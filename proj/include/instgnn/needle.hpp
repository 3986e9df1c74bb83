#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace instgnn {

/// One synthetic needle problem over m constants: every constant satisfies a
/// population fact p(c_i), and exactly one (the needle, 1-based position) is
/// additionally marked through a nested ground fact key(g(c_needle)). The
/// single QE refutes only when instantiated with the needle, e-matching finds
/// it in one round through the key(g(x)) trigger, and age-ordered enumeration
/// needs as many rounds as the needle's position.
std::string needle_problem_text(int num_constants, int needle_position);

struct NeedleCorpusSpec {
  int n_problems = 50;
  int n_distractors = 20;
  uint64_t seed = 0;
  // Needle positions are drawn uniformly from [min(4, m), m] so that a small
  // round budget separates guided from unguided enumeration.
  int min_position() const;
};

/// Writes needle_NNNN.sx files; returns the file paths in name order.
std::vector<std::string> gen_needle_corpus(const std::string& out_dir,
                                           const NeedleCorpusSpec& spec);

}  // namespace instgnn
