#include "instgnn/transitions.hpp"

#include <fstream>

#include "json.hpp"

namespace instgnn {

using nlohmann::json;

bool Transition::structurally_equal(const Transition& other) const {
  return graph.structurally_equal(other.graph) &&
         qe_labels == other.qe_labels && term_labels == other.term_labels &&
         problem_name == other.problem_name &&
         round_index == other.round_index;
}

namespace {

json graph_to_json(const ProofStateGraph& g) {
  json edges = json::array();
  for (const GraphEdge& e : g.edges) {
    edges.push_back({e.src, e.dst, e.type});
  }
  json kinds = json::array();
  for (Kind k : g.node_kinds) kinds.push_back(static_cast<int>(k));
  return json{{"node_kinds", kinds},
              {"edges", edges},
              {"qe_nodes", g.qe_nodes},
              {"var_nodes", g.var_nodes},
              {"candidates", g.candidates}};
}

ProofStateGraph graph_from_json(const json& j, int round_index) {
  ProofStateGraph g;
  g.round_index = round_index;
  for (int k : j.at("node_kinds")) {
    if (k < 0 || k >= kNumKinds) throw DatasetError("bad node kind");
    g.node_kinds.push_back(static_cast<Kind>(k));
  }
  for (const auto& e : j.at("edges")) {
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                       e.at(2).get<int>()});
  }
  g.qe_nodes = j.at("qe_nodes").get<std::vector<int>>();
  g.var_nodes = j.at("var_nodes").get<std::vector<std::vector<int>>>();
  g.candidates =
      j.at("candidates").get<std::vector<std::vector<std::vector<int>>>>();
  return g;
}

}  // namespace

void write_dataset(const std::string& path,
                   const std::vector<Transition>& transitions,
                   const DatasetHeader& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot open for writing: " + path);
  json h{{"format_version", header.format_version},
         {"kind_vocabulary", header.kinds},
         {"edge_type_count", header.edge_type_count},
         {"label_seed", header.label_seed}};
  out << h.dump() << "\n";
  for (const Transition& t : transitions) {
    json rec = graph_to_json(t.graph);
    rec["problem"] = t.problem_name;
    rec["round"] = t.round_index;
    rec["qe_labels"] = t.qe_labels;
    rec["term_labels"] = t.term_labels;
    out << rec.dump() << "\n";
  }
  if (!out) throw DatasetError("write failed: " + path);
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DatasetError("empty dataset file");

  Dataset ds;
  try {
    json h = json::parse(line);
    if (!h.contains("format_version") ||
        h.at("format_version").get<int>() != 1) {
      throw DatasetError("unsupported dataset format version");
    }
    ds.header.format_version = 1;
    ds.header.kinds = h.at("kind_vocabulary").get<std::vector<std::string>>();
    ds.header.edge_type_count = h.at("edge_type_count").get<int>();
    ds.header.label_seed = h.at("label_seed").get<uint64_t>();
  } catch (const json::exception& e) {
    throw DatasetError(std::string("bad dataset header: ") + e.what());
  }
  if (ds.header.kinds != kind_vocabulary()) {
    throw DatasetError("dataset kind vocabulary does not match this build");
  }
  if (ds.header.edge_type_count != kNumEdgeTypes) {
    throw DatasetError("dataset edge type count does not match this build");
  }

  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      json rec = json::parse(line);
      Transition t;
      t.problem_name = rec.at("problem").get<std::string>();
      t.round_index = rec.at("round").get<int>();
      t.graph = graph_from_json(rec, t.round_index);
      t.qe_labels = rec.at("qe_labels").get<std::vector<uint8_t>>();
      t.term_labels =
          rec.at("term_labels").get<std::vector<std::vector<int>>>();
      if (t.qe_labels.size() != t.graph.qe_nodes.size() ||
          t.term_labels.size() != t.graph.qe_nodes.size()) {
        throw DatasetError("label lists do not match the QE count");
      }
      for (size_t q = 0; q < t.qe_labels.size(); ++q) {
        if (!t.qe_labels[q]) continue;
        if (t.term_labels[q].size() != t.graph.candidates[q].size()) {
          throw DatasetError("term labels do not match the variable count");
        }
        for (size_t v = 0; v < t.term_labels[q].size(); ++v) {
          int label = t.term_labels[q][v];
          if (label < 0 ||
              label >= static_cast<int>(t.graph.candidates[q][v].size())) {
            throw DatasetError("term label out of candidate range");
          }
        }
      }
      ds.transitions.push_back(std::move(t));
    } catch (const json::exception& e) {
      throw DatasetError("bad transition on line " + std::to_string(line_no) +
                         ": " + e.what());
    }
  }
  return ds;
}

}  // namespace instgnn
