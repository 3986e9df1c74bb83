#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace instgnn {

using TermId = uint32_t;
using SortId = uint32_t;
using SymbolId = uint32_t;

inline constexpr SymbolId kNoSymbol = UINT32_MAX;
inline constexpr TermId kNoTerm = UINT32_MAX;

/// Expression kinds. This vocabulary is closed: it doubles as the row index
/// of the guidance network's kind-embedding table, so order matters.
enum class Kind : uint8_t {
  Variable = 0,
  BoundVariable,
  Constant,
  FunctionApply,
  PredicateApply,
  Equality,
  Not,
  Or,
  Forall,
  True,
  False,
};

inline constexpr int kNumKinds = 11;

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view name);

/// The fixed vocabulary, in embedding-table order.
const std::vector<std::string>& kind_vocabulary();

enum class SymbolCategory : uint8_t { Function, Predicate, Variable };

struct SymbolInfo {
  std::string name;
  SymbolCategory category;
  std::vector<SortId> arg_sorts;  // empty for constants and variables
  SortId result_sort;
};

struct TermData {
  Kind kind;
  SymbolId symbol;  // kNoSymbol for Equality/Not/Or/Forall/True/False
  SortId sort;
  uint32_t age;
  bool ground;
  std::vector<TermId> children;
};

struct Literal {
  bool positive;
  TermId atom;  // PredicateApply or Equality node

  bool operator==(const Literal&) const = default;
};

struct Clause {
  std::vector<Literal> literals;
  // Formula node of this clause (OR of literal nodes, or the single literal
  // node itself). Set when the clause is interned via TermBank::intern_clause.
  TermId formula = kNoTerm;
};

struct QuantifiedExpression {
  uint32_t qe_id;
  std::vector<TermId> variables;  // BoundVariable nodes, in binder order
  Clause body;
  TermId formula = kNoTerm;  // the Forall node
  std::set<std::vector<TermId>> done_instantiations;
};

/// Maps the variables of one QE to ground terms.
class Substitution {
 public:
  void bind(TermId var, TermId image) { entries_.emplace_back(var, image); }
  std::optional<TermId> lookup(TermId var) const;
  size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<TermId, TermId>> entries_;
};

class TermError : public std::runtime_error {
 public:
  explicit TermError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Hash-consed term store. Structurally identical terms share one id; ids are
/// dense and assigned in creation order, so they double as creation ages.
class TermBank {
 public:
  TermBank();

  // Sorts. "Bool" is built in and reserved for atoms and formulas.
  SortId bool_sort() const { return 0; }
  SortId declare_sort(const std::string& name);
  std::optional<SortId> find_sort(std::string_view name) const;
  const std::string& sort_name(SortId s) const { return sort_names_.at(s); }
  size_t num_sorts() const { return sort_names_.size(); }

  // Symbols. Functions and predicates live in one global namespace;
  // variables are scoped by the caller and never enter the lookup map.
  SymbolId declare_function(const std::string& name,
                            std::vector<SortId> arg_sorts, SortId result_sort);
  SymbolId declare_predicate(const std::string& name,
                             std::vector<SortId> arg_sorts);
  SymbolId declare_variable(const std::string& name, SortId sort);
  std::optional<SymbolId> find_symbol(std::string_view name) const;
  const SymbolInfo& symbol(SymbolId s) const { return symbols_.at(s); }
  size_t num_symbols() const { return symbols_.size(); }

  // Term construction. Returns the existing id when the node is already
  // present, otherwise interns a fresh node with the next age.
  TermId mk_term(Kind kind, SymbolId symbol, std::vector<TermId> children);

  TermId mk_constant(SymbolId sym) { return mk_term(Kind::Constant, sym, {}); }
  TermId mk_bound_variable(SymbolId sym) {
    return mk_term(Kind::BoundVariable, sym, {});
  }
  TermId mk_apply(SymbolId sym, std::vector<TermId> args);
  TermId mk_equality(TermId lhs, TermId rhs) {
    return mk_term(Kind::Equality, kNoSymbol, {lhs, rhs});
  }
  TermId mk_not(TermId t) { return mk_term(Kind::Not, kNoSymbol, {t}); }
  TermId mk_or(std::vector<TermId> disjuncts) {
    return mk_term(Kind::Or, kNoSymbol, std::move(disjuncts));
  }

  const TermData& term(TermId t) const { return terms_.at(t); }
  size_t num_terms() const { return terms_.size(); }
  bool is_ground(TermId t) const { return terms_.at(t).ground; }
  bool is_atom(TermId t) const;
  bool is_value_term(TermId t) const;  // Constant or FunctionApply

  /// Ground value terms of the given sort, ascending age. Unknown or
  /// formula-level sorts yield an empty list.
  std::vector<TermId> ground_terms_of_sort(SortId sort) const;

  /// Interns the formula node of a clause (OR of its literal nodes, or the
  /// bare literal for unit clauses) and stores it in clause.formula.
  TermId intern_clause(Clause& clause);

  /// Interns the Forall node of a QE and stores it in qe.formula. The body
  /// clause is interned first if needed.
  TermId intern_qe(QuantifiedExpression& qe);

  std::string term_to_string(TermId t) const;

 private:
  struct NodeKey {
    Kind kind;
    SymbolId symbol;
    std::vector<TermId> children;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const;
  };

  SortId intern_sort(const std::string& name);
  void check_apply(Kind kind, SymbolId symbol,
                   const std::vector<TermId>& children) const;

  std::vector<std::string> sort_names_;
  std::unordered_map<std::string, SortId> sort_lookup_;
  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> symbol_lookup_;
  std::vector<TermData> terms_;
  std::unordered_map<NodeKey, TermId, NodeKeyHash> node_lookup_;
  // Per sort: ground value terms in creation (= age) order.
  std::vector<std::vector<TermId>> ground_by_sort_;
};

/// Simultaneous replacement of the QE's variables by their images. Every new
/// ground term is interned; the returned clause is interned as well.
Clause apply_substitution(TermBank& bank, const QuantifiedExpression& qe,
                          const Substitution& sub);

/// Convenience: substitution from a tuple aligned with qe.variables.
Clause apply_tuple(TermBank& bank, const QuantifiedExpression& qe,
                   const std::vector<TermId>& tuple);

}  // namespace instgnn
