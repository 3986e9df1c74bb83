#include "instgnn/term_bank.hpp"

#include <algorithm>
#include <sstream>

namespace instgnn {

namespace {

const char* const kKindNames[kNumKinds] = {
    "VARIABLE",  "BOUND_VARIABLE", "CONSTANT", "FUNCTION_APPLY",
    "PREDICATE_APPLY", "EQUALITY", "NOT",      "OR",
    "FORALL",    "TRUE",           "FALSE"};

}  // namespace

const char* kind_name(Kind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<Kind> kind_from_name(std::string_view name) {
  for (int i = 0; i < kNumKinds; ++i) {
    if (name == kKindNames[i]) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

const std::vector<std::string>& kind_vocabulary() {
  static const std::vector<std::string> vocab(kKindNames,
                                              kKindNames + kNumKinds);
  return vocab;
}

std::optional<TermId> Substitution::lookup(TermId var) const {
  for (const auto& [v, img] : entries_) {
    if (v == var) return img;
  }
  return std::nullopt;
}

size_t TermBank::NodeKeyHash::operator()(const NodeKey& k) const {
  size_t h = std::hash<uint32_t>()(static_cast<uint32_t>(k.kind));
  h = h * 31 + std::hash<uint32_t>()(k.symbol);
  for (TermId c : k.children) h = h * 31 + std::hash<uint32_t>()(c);
  return h;
}

TermBank::TermBank() {
  // Sort 0 is the built-in Bool; atoms and formula nodes live there.
  sort_names_.push_back("Bool");
  sort_lookup_.emplace("Bool", 0);
  ground_by_sort_.emplace_back();
}

SortId TermBank::declare_sort(const std::string& name) {
  if (sort_lookup_.count(name)) {
    throw TermError("sort already declared: " + name);
  }
  return intern_sort(name);
}

SortId TermBank::intern_sort(const std::string& name) {
  SortId id = static_cast<SortId>(sort_names_.size());
  sort_names_.push_back(name);
  sort_lookup_.emplace(name, id);
  ground_by_sort_.emplace_back();
  return id;
}

std::optional<SortId> TermBank::find_sort(std::string_view name) const {
  auto it = sort_lookup_.find(std::string(name));
  if (it == sort_lookup_.end()) return std::nullopt;
  return it->second;
}

SymbolId TermBank::declare_function(const std::string& name,
                                    std::vector<SortId> arg_sorts,
                                    SortId result_sort) {
  if (symbol_lookup_.count(name)) {
    throw TermError("symbol already declared: " + name);
  }
  if (result_sort == bool_sort()) {
    throw TermError("function result sort must not be Bool: " + name);
  }
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back({name, SymbolCategory::Function, std::move(arg_sorts),
                      result_sort});
  symbol_lookup_.emplace(name, id);
  return id;
}

SymbolId TermBank::declare_predicate(const std::string& name,
                                     std::vector<SortId> arg_sorts) {
  if (symbol_lookup_.count(name)) {
    throw TermError("symbol already declared: " + name);
  }
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(
      {name, SymbolCategory::Predicate, std::move(arg_sorts), bool_sort()});
  symbol_lookup_.emplace(name, id);
  return id;
}

SymbolId TermBank::declare_variable(const std::string& name, SortId sort) {
  // Variables are scoped per QE by the caller; they deliberately bypass the
  // name lookup so distinct binders never collide.
  SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back({name, SymbolCategory::Variable, {}, sort});
  return id;
}

std::optional<SymbolId> TermBank::find_symbol(std::string_view name) const {
  auto it = symbol_lookup_.find(std::string(name));
  if (it == symbol_lookup_.end()) return std::nullopt;
  return it->second;
}

bool TermBank::is_atom(TermId t) const {
  Kind k = terms_.at(t).kind;
  return k == Kind::PredicateApply || k == Kind::Equality;
}

bool TermBank::is_value_term(TermId t) const {
  Kind k = terms_.at(t).kind;
  return k == Kind::Constant || k == Kind::FunctionApply;
}

void TermBank::check_apply(Kind kind, SymbolId symbol,
                           const std::vector<TermId>& children) const {
  const SymbolInfo& info = symbols_.at(symbol);
  if (children.size() != info.arg_sorts.size()) {
    std::ostringstream os;
    os << "arity mismatch for " << info.name << ": expected "
       << info.arg_sorts.size() << " arguments, got " << children.size();
    throw TermError(os.str());
  }
  for (size_t i = 0; i < children.size(); ++i) {
    const TermData& child = terms_.at(children[i]);
    if (child.sort != info.arg_sorts[i]) {
      std::ostringstream os;
      os << "sort mismatch for argument " << i << " of " << info.name
         << ": expected " << sort_names_.at(info.arg_sorts[i]) << ", got "
         << sort_names_.at(child.sort);
      throw TermError(os.str());
    }
    if (child.sort == bool_sort()) {
      throw TermError("formula used as argument of " + info.name);
    }
  }
  if (kind == Kind::FunctionApply &&
      info.category != SymbolCategory::Function) {
    throw TermError("not a function symbol: " + info.name);
  }
  if (kind == Kind::PredicateApply &&
      info.category != SymbolCategory::Predicate) {
    throw TermError("not a predicate symbol: " + info.name);
  }
}

TermId TermBank::mk_term(Kind kind, SymbolId symbol,
                         std::vector<TermId> children) {
  for (TermId c : children) {
    if (c >= terms_.size()) throw TermError("unknown child term");
  }
  SortId sort = 0;
  switch (kind) {
    case Kind::Variable:
    case Kind::BoundVariable: {
      const SymbolInfo& info = symbols_.at(symbol);
      if (info.category != SymbolCategory::Variable) {
        throw TermError("not a variable symbol: " + info.name);
      }
      if (!children.empty()) throw TermError("variables take no arguments");
      sort = info.result_sort;
      break;
    }
    case Kind::Constant: {
      const SymbolInfo& info = symbols_.at(symbol);
      if (info.category != SymbolCategory::Function ||
          !info.arg_sorts.empty()) {
        throw TermError("not a constant symbol: " + info.name);
      }
      if (!children.empty()) throw TermError("constants take no arguments");
      sort = info.result_sort;
      break;
    }
    case Kind::FunctionApply:
      if (children.empty()) {
        throw TermError("function application needs arguments");
      }
      check_apply(kind, symbol, children);
      sort = symbols_.at(symbol).result_sort;
      break;
    case Kind::PredicateApply:
      check_apply(kind, symbol, children);
      sort = bool_sort();
      break;
    case Kind::Equality: {
      if (children.size() != 2) throw TermError("equality needs two sides");
      const TermData& lhs = terms_.at(children[0]);
      const TermData& rhs = terms_.at(children[1]);
      if (lhs.sort != rhs.sort) {
        throw TermError("equality between different sorts: " +
                        sort_names_.at(lhs.sort) + " vs " +
                        sort_names_.at(rhs.sort));
      }
      if (lhs.sort == bool_sort()) {
        throw TermError("equality between formulas is not supported");
      }
      sort = bool_sort();
      break;
    }
    case Kind::Not:
      if (children.size() != 1 || terms_.at(children[0]).sort != bool_sort()) {
        throw TermError("NOT takes a single atom");
      }
      sort = bool_sort();
      break;
    case Kind::Or:
      if (children.empty()) throw TermError("empty disjunction");
      for (TermId c : children) {
        if (terms_.at(c).sort != bool_sort()) {
          throw TermError("OR over non-formula term");
        }
      }
      sort = bool_sort();
      break;
    case Kind::Forall: {
      if (children.size() < 2) throw TermError("FORALL needs binders + body");
      for (size_t i = 0; i + 1 < children.size(); ++i) {
        if (terms_.at(children[i]).kind != Kind::BoundVariable) {
          throw TermError("FORALL binder is not a bound variable");
        }
      }
      if (terms_.at(children.back()).sort != bool_sort()) {
        throw TermError("FORALL body is not a formula");
      }
      sort = bool_sort();
      break;
    }
    case Kind::True:
    case Kind::False:
      if (!children.empty()) throw TermError("constants take no arguments");
      sort = bool_sort();
      break;
  }

  NodeKey key{kind, symbol, children};
  auto it = node_lookup_.find(key);
  if (it != node_lookup_.end()) return it->second;

  bool ground = kind != Kind::Variable && kind != Kind::BoundVariable;
  for (TermId c : children) ground = ground && terms_[c].ground;

  TermId id = static_cast<TermId>(terms_.size());
  terms_.push_back(
      {kind, symbol, sort, /*age=*/id, ground, std::move(key.children)});
  key.children = terms_.back().children;  // key keeps a copy for the map
  node_lookup_.emplace(NodeKey{kind, symbol, terms_.back().children}, id);
  if (ground && (kind == Kind::Constant || kind == Kind::FunctionApply)) {
    ground_by_sort_[sort].push_back(id);
  }
  return id;
}

TermId TermBank::mk_apply(SymbolId sym, std::vector<TermId> args) {
  const SymbolInfo& info = symbols_.at(sym);
  if (info.category == SymbolCategory::Predicate) {
    return mk_term(Kind::PredicateApply, sym, std::move(args));
  }
  if (args.empty()) return mk_constant(sym);
  return mk_term(Kind::FunctionApply, sym, std::move(args));
}

std::vector<TermId> TermBank::ground_terms_of_sort(SortId sort) const {
  if (sort >= ground_by_sort_.size()) return {};
  return ground_by_sort_[sort];
}

TermId TermBank::intern_clause(Clause& clause) {
  if (clause.formula != kNoTerm) return clause.formula;
  std::vector<TermId> lits;
  lits.reserve(clause.literals.size());
  for (const Literal& lit : clause.literals) {
    lits.push_back(lit.positive ? lit.atom : mk_not(lit.atom));
  }
  clause.formula = lits.size() == 1 ? lits[0] : mk_or(std::move(lits));
  return clause.formula;
}

TermId TermBank::intern_qe(QuantifiedExpression& qe) {
  if (qe.formula != kNoTerm) return qe.formula;
  std::vector<TermId> children = qe.variables;
  children.push_back(intern_clause(qe.body));
  qe.formula = mk_term(Kind::Forall, kNoSymbol, std::move(children));
  return qe.formula;
}

std::string TermBank::term_to_string(TermId t) const {
  const TermData& d = terms_.at(t);
  switch (d.kind) {
    case Kind::Variable:
    case Kind::BoundVariable:
    case Kind::Constant:
      return symbols_.at(d.symbol).name;
    case Kind::True:
      return "true";
    case Kind::False:
      return "false";
    default:
      break;
  }
  std::string head;
  switch (d.kind) {
    case Kind::FunctionApply:
    case Kind::PredicateApply:
      head = symbols_.at(d.symbol).name;
      break;
    case Kind::Equality:
      head = "=";
      break;
    case Kind::Not:
      head = "not";
      break;
    case Kind::Or:
      head = "or";
      break;
    case Kind::Forall:
      head = "forall";
      break;
    default:
      head = "?";
      break;
  }
  std::string out = "(" + head;
  for (TermId c : d.children) out += " " + term_to_string(c);
  out += ")";
  return out;
}

namespace {

TermId substitute(TermBank& bank, TermId t, const Substitution& sub,
                  std::unordered_map<TermId, TermId>& memo) {
  if (bank.is_ground(t)) return t;
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;

  const TermData& d = bank.term(t);
  TermId result;
  if (d.kind == Kind::BoundVariable || d.kind == Kind::Variable) {
    auto image = sub.lookup(t);
    if (!image) {
      throw TermError("substitution does not map variable " +
                      bank.term_to_string(t));
    }
    if (!bank.is_ground(*image)) {
      throw TermError("substitution image is not ground: " +
                      bank.term_to_string(*image));
    }
    if (bank.term(*image).sort != d.sort) {
      throw TermError("substitution image has wrong sort for " +
                      bank.term_to_string(t));
    }
    result = *image;
  } else {
    std::vector<TermId> children;
    children.reserve(d.children.size());
    for (TermId c : d.children) {
      children.push_back(substitute(bank, c, sub, memo));
    }
    result = bank.mk_term(d.kind, d.symbol, std::move(children));
  }
  memo.emplace(t, result);
  return result;
}

}  // namespace

Clause apply_substitution(TermBank& bank, const QuantifiedExpression& qe,
                          const Substitution& sub) {
  for (TermId v : qe.variables) {
    if (!sub.lookup(v)) {
      throw TermError("substitution does not cover variable " +
                      bank.term_to_string(v));
    }
  }
  std::unordered_map<TermId, TermId> memo;
  Clause out;
  out.literals.reserve(qe.body.literals.size());
  for (const Literal& lit : qe.body.literals) {
    out.literals.push_back(
        {lit.positive, substitute(bank, lit.atom, sub, memo)});
  }
  bank.intern_clause(out);
  return out;
}

Clause apply_tuple(TermBank& bank, const QuantifiedExpression& qe,
                   const std::vector<TermId>& tuple) {
  if (tuple.size() != qe.variables.size()) {
    throw TermError("tuple arity does not match QE variables");
  }
  Substitution sub;
  for (size_t i = 0; i < tuple.size(); ++i) sub.bind(qe.variables[i], tuple[i]);
  return apply_substitution(bank, qe, sub);
}

}  // namespace instgnn
