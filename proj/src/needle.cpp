#include "instgnn/needle.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace instgnn {

std::string needle_problem_text(int num_constants, int needle_position) {
  if (num_constants < 1 || needle_position < 1 ||
      needle_position > num_constants) {
    throw std::invalid_argument("bad needle problem shape");
  }
  std::ostringstream os;
  os << "(declare-sort S)\n"
     << "(declare-fun g (S) S)\n"
     << "(declare-fun p (S) Bool)\n"
     << "(declare-fun key (S) Bool)\n";
  for (int i = 1; i <= num_constants; ++i) {
    os << "(declare-fun c" << i << " () S)\n";
  }
  for (int i = 1; i <= num_constants; ++i) {
    os << "(assert (p c" << i << "))\n";
  }
  os << "(assert (key (g c" << needle_position << ")))\n";
  os << "(assert-forall ((x S)) (or (not (key (g x))) (not (p x))))\n";
  return os.str();
}

int NeedleCorpusSpec::min_position() const {
  int m = n_distractors + 1;
  return m < 4 ? m : 4;
}

std::vector<std::string> gen_needle_corpus(const std::string& out_dir,
                                           const NeedleCorpusSpec& spec) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::mt19937_64 rng(spec.seed);
  const int m = spec.n_distractors + 1;
  const int lo = spec.min_position();
  std::vector<std::string> paths;
  for (int i = 0; i < spec.n_problems; ++i) {
    int pos = lo + static_cast<int>(rng() % static_cast<uint64_t>(m - lo + 1));
    char name[32];
    std::snprintf(name, sizeof(name), "needle_%04d.sx", i);
    fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
    out << needle_problem_text(m, pos);
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace instgnn
