#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "instgnn/proof_graph.hpp"

namespace instgnn {

/// One labeled training example: the proof-state graph of a round, which QEs
/// had a useful instantiation available, and for those QEs the chosen term
/// per variable (an index into that variable's candidate list).
struct Transition {
  ProofStateGraph graph;
  std::vector<uint8_t> qe_labels;              // aligned with graph.qe_nodes
  std::vector<std::vector<int>> term_labels;   // per QE; empty unless useful
  std::string problem_name;
  int round_index = 0;

  bool structurally_equal(const Transition& other) const;
};

class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DatasetHeader {
  int format_version = 1;
  std::vector<std::string> kinds = kind_vocabulary();
  int edge_type_count = kNumEdgeTypes;
  uint64_t label_seed = 0;
};

/// Line-delimited JSON: one header line, then one Transition per line.
void write_dataset(const std::string& path,
                   const std::vector<Transition>& transitions,
                   const DatasetHeader& header = {});

struct Dataset {
  DatasetHeader header;
  std::vector<Transition> transitions;
};

Dataset read_dataset(const std::string& path);

}  // namespace instgnn
