#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "instgnn/term_bank.hpp"

namespace instgnn {

/// Union-find over ground terms, closed under congruence: merging a with b
/// also merges f(..a..) with f(..b..) whenever both applications exist.
/// Registered terms are constants, function applications and predicate
/// applications; formula nodes never enter the e-graph.
class EGraph {
 public:
  explicit EGraph(const TermBank& bank) : bank_(&bank) {}

  /// Registers a ground term and its value/atom subterms. Registering an
  /// application congruent to an existing one merges their classes.
  void add_term(TermId t);

  bool contains(TermId t) const { return index_.count(t) > 0; }

  /// Canonical representative of t's class. t must be registered.
  TermId find(TermId t) const;
  bool same(TermId a, TermId b) const { return find(a) == find(b); }

  /// cc_assert_equality: merges the classes of s and t and restores
  /// congruence closure over all registered applications.
  void merge(TermId s, TermId t);

  /// All members of the class rooted at find(t).
  const std::vector<TermId>& class_members(TermId t) const;

  /// Looks up an existing application congruent to symbol(child_classes...).
  /// Children are given by class representative; returns a member term id.
  std::optional<TermId> lookup(SymbolId symbol,
                               const std::vector<TermId>& child_reps) const;

  /// Class of the hypothetical term symbol(args...) where args are registered
  /// terms; nullopt when no congruent application exists.
  std::optional<TermId> eval_apply(SymbolId symbol,
                                   const std::vector<TermId>& args) const;

  size_t class_count() const;
  std::vector<TermId> class_roots() const;
  const std::vector<TermId>& registered_terms() const { return order_; }

 private:
  struct SigKey {
    SymbolId symbol;
    std::vector<TermId> child_reps;
    bool operator==(const SigKey&) const = default;
  };
  struct SigKeyHash {
    size_t operator()(const SigKey& k) const {
      size_t h = std::hash<uint32_t>()(k.symbol);
      for (TermId c : k.child_reps) h = h * 31 + std::hash<uint32_t>()(c);
      return h;
    }
  };

  uint32_t local(TermId t) const;
  uint32_t find_local(uint32_t i) const;
  void merge_roots(uint32_t a, uint32_t b,
                   std::vector<std::pair<TermId, TermId>>& pending);
  SigKey signature(TermId app) const;

  const TermBank* bank_;
  std::unordered_map<TermId, uint32_t> index_;
  std::vector<TermId> order_;              // registration order
  mutable std::vector<uint32_t> parent_;   // union-find, path-compressed
  std::vector<uint32_t> rank_size_;        // class size at roots
  std::vector<std::vector<TermId>> members_;    // valid at roots
  std::vector<std::vector<TermId>> use_lists_;  // parent applications, roots
  std::unordered_map<SigKey, TermId, SigKeyHash> sig_table_;
};

}  // namespace instgnn
