#include "instgnn/egraph.hpp"

namespace instgnn {

uint32_t EGraph::local(TermId t) const {
  auto it = index_.find(t);
  if (it == index_.end()) {
    throw TermError("term not registered in e-graph: " +
                    bank_->term_to_string(t));
  }
  return it->second;
}

uint32_t EGraph::find_local(uint32_t i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

TermId EGraph::find(TermId t) const { return order_[find_local(local(t))]; }

EGraph::SigKey EGraph::signature(TermId app) const {
  const TermData& d = bank_->term(app);
  SigKey key{d.symbol, {}};
  key.child_reps.reserve(d.children.size());
  for (TermId c : d.children) key.child_reps.push_back(find(c));
  return key;
}

void EGraph::add_term(TermId t) {
  const TermData& d = bank_->term(t);
  if (!d.ground) {
    throw TermError("cannot register non-ground term: " +
                    bank_->term_to_string(t));
  }
  switch (d.kind) {
    case Kind::Constant:
    case Kind::FunctionApply:
    case Kind::PredicateApply:
      break;
    case Kind::Equality:
    case Kind::Not:
    case Kind::Or:
      for (TermId c : d.children) add_term(c);
      return;
    default:
      return;  // True/False/Forall carry no e-graph content
  }
  if (index_.count(t)) return;
  for (TermId c : d.children) add_term(c);

  uint32_t i = static_cast<uint32_t>(order_.size());
  index_.emplace(t, i);
  order_.push_back(t);
  parent_.push_back(i);
  rank_size_.push_back(1);
  members_.push_back({t});
  use_lists_.emplace_back();

  for (TermId c : d.children) {
    use_lists_[find_local(local(c))].push_back(t);
  }
  if (!d.children.empty()) {
    SigKey key = signature(t);
    auto [it, inserted] = sig_table_.emplace(std::move(key), t);
    if (!inserted && find(it->second) != t) {
      merge(it->second, t);
    }
  }
}

const std::vector<TermId>& EGraph::class_members(TermId t) const {
  return members_[find_local(local(t))];
}

void EGraph::merge_roots(uint32_t a, uint32_t b,
                         std::vector<std::pair<TermId, TermId>>& pending) {
  if (a == b) return;
  if (rank_size_[a] < rank_size_[b]) std::swap(a, b);
  // b's class is folded into a's.
  parent_[b] = a;
  rank_size_[a] += rank_size_[b];
  for (TermId m : members_[b]) members_[a].push_back(m);
  members_[b].clear();

  std::vector<TermId> moved_uses;
  moved_uses.swap(use_lists_[b]);
  for (TermId app : moved_uses) {
    SigKey key = signature(app);
    auto it = sig_table_.find(key);
    if (it == sig_table_.end()) {
      sig_table_.emplace(std::move(key), app);
    } else if (find(it->second) != find(app)) {
      pending.emplace_back(it->second, app);
    }
    use_lists_[a].push_back(app);
  }
}

void EGraph::merge(TermId s, TermId t) {
  std::vector<std::pair<TermId, TermId>> pending{{s, t}};
  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    merge_roots(find_local(local(a)), find_local(local(b)), pending);
  }
}

std::optional<TermId> EGraph::lookup(
    SymbolId symbol, const std::vector<TermId>& child_reps) const {
  auto it = sig_table_.find(SigKey{symbol, child_reps});
  if (it == sig_table_.end()) return std::nullopt;
  return it->second;
}

std::optional<TermId> EGraph::eval_apply(
    SymbolId symbol, const std::vector<TermId>& args) const {
  SigKey key{symbol, {}};
  key.child_reps.reserve(args.size());
  for (TermId a : args) {
    if (!contains(a)) return std::nullopt;
    key.child_reps.push_back(find(a));
  }
  auto it = sig_table_.find(key);
  if (it == sig_table_.end()) return std::nullopt;
  return it->second;
}

size_t EGraph::class_count() const {
  size_t n = 0;
  for (uint32_t i = 0; i < parent_.size(); ++i) {
    if (find_local(i) == i) ++n;
  }
  return n;
}

std::vector<TermId> EGraph::class_roots() const {
  std::vector<TermId> roots;
  for (uint32_t i = 0; i < parent_.size(); ++i) {
    if (find_local(i) == i) roots.push_back(order_[i]);
  }
  return roots;
}

}  // namespace instgnn
