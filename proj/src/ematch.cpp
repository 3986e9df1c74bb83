#include "instgnn/ematch.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace instgnn {

namespace {

void collect_vars(const TermBank& bank, TermId t,
                  std::unordered_set<TermId>& out) {
  const TermData& d = bank.term(t);
  if (d.kind == Kind::BoundVariable || d.kind == Kind::Variable) {
    out.insert(t);
    return;
  }
  for (TermId c : d.children) collect_vars(bank, c, out);
}

struct PatternCandidate {
  TermId term;
  int depth;
  bool predicate;  // PredicateApply subterm
  std::unordered_set<TermId> vars;
};

void collect_candidates(const TermBank& bank, TermId t, int depth,
                        std::vector<PatternCandidate>& out,
                        std::unordered_set<TermId>& seen) {
  const TermData& d = bank.term(t);
  if (d.kind == Kind::FunctionApply || d.kind == Kind::PredicateApply) {
    std::unordered_set<TermId> vars;
    collect_vars(bank, t, vars);
    if (!vars.empty() && seen.insert(t).second) {
      out.push_back(
          {t, depth, d.kind == Kind::PredicateApply, std::move(vars)});
    }
  }
  for (TermId c : d.children) collect_candidates(bank, c, depth + 1, out, seen);
}

}  // namespace

std::vector<Trigger> select_triggers(const TermBank& bank,
                                     const QuantifiedExpression& qe) {
  std::vector<PatternCandidate> candidates;
  std::unordered_set<TermId> seen;
  for (const Literal& lit : qe.body.literals) {
    collect_candidates(bank, lit.atom, 0, candidates, seen);
  }
  if (candidates.empty()) return {};

  const size_t n_vars = qe.variables.size();
  auto covers_all = [&](const PatternCandidate& c) {
    if (c.vars.size() != n_vars) return false;
    for (TermId v : qe.variables) {
      if (!c.vars.count(v)) return false;
    }
    return true;
  };

  // Single-pattern triggers: all minimal-depth covering subterms, with
  // predicate applications shadowing function subterms at the same depth.
  int best_depth = -1;
  for (const PatternCandidate& c : candidates) {
    if (covers_all(c) && (best_depth < 0 || c.depth < best_depth)) {
      best_depth = c.depth;
    }
  }
  if (best_depth >= 0) {
    bool any_predicate = false;
    for (const PatternCandidate& c : candidates) {
      if (covers_all(c) && c.depth == best_depth && c.predicate) {
        any_predicate = true;
        break;
      }
    }
    std::vector<Trigger> out;
    for (const PatternCandidate& c : candidates) {
      if (covers_all(c) && c.depth == best_depth &&
          (c.predicate || !any_predicate)) {
        out.push_back({qe.qe_id, {c.term}});
      }
    }
    return out;
  }

  // Multi-pattern: greedy cover of the variable set.
  std::unordered_set<TermId> remaining(qe.variables.begin(),
                                       qe.variables.end());
  std::vector<TermId> patterns;
  while (!remaining.empty()) {
    const PatternCandidate* best = nullptr;
    size_t best_gain = 0;
    for (const PatternCandidate& c : candidates) {
      size_t gain = 0;
      for (TermId v : c.vars) {
        if (remaining.count(v)) ++gain;
      }
      if (gain == 0) continue;
      if (!best || gain > best_gain ||
          (gain == best_gain && c.predicate && !best->predicate) ||
          (gain == best_gain && c.predicate == best->predicate &&
           c.depth < best->depth)) {
        best = &c;
        best_gain = gain;
      }
    }
    if (!best) return {};  // some variable occurs under no application
    patterns.push_back(best->term);
    for (TermId v : best->vars) remaining.erase(v);
  }
  return {Trigger{qe.qe_id, std::move(patterns)}};
}

namespace {

// Backtracking matcher: descends the pattern, branching over the members of
// the required e-class at each application.
class Matcher {
 public:
  Matcher(const TermBank& bank, const EGraph& eg,
          const QuantifiedExpression& qe)
      : bank_(bank), eg_(eg) {
    for (size_t i = 0; i < qe.variables.size(); ++i) {
      var_pos_.emplace(qe.variables[i], i);
    }
    binding_.assign(qe.variables.size(), kNoTerm);
  }

  std::vector<std::vector<TermId>> run(const std::vector<TermId>& patterns) {
    results_.clear();
    match_next_pattern(patterns, 0);
    std::sort(results_.begin(), results_.end());
    results_.erase(std::unique(results_.begin(), results_.end()),
                   results_.end());
    return std::move(results_);
  }

 private:
  void match_next_pattern(const std::vector<TermId>& patterns, size_t i) {
    if (i == patterns.size()) {
      for (TermId b : binding_) {
        if (b == kNoTerm) return;  // trigger does not cover all variables
      }
      results_.push_back(binding_);
      return;
    }
    const TermData& p = bank_.term(patterns[i]);
    if (p.kind != Kind::FunctionApply && p.kind != Kind::PredicateApply) {
      return;  // only application patterns are matchable
    }
    // Anchor on every registered ground application of the same symbol.
    for (TermId g : eg_.registered_terms()) {
      const TermData& gd = bank_.term(g);
      if (gd.symbol != p.symbol || gd.kind != p.kind) continue;
      match_children(p.children, gd.children, 0,
                     [&] { match_next_pattern(patterns, i + 1); });
    }
  }

  using Cont = std::function<void()>;

  void match_children(const std::vector<TermId>& pats,
                      const std::vector<TermId>& grounds, size_t k,
                      const Cont& cont) {
    if (k == pats.size()) {
      cont();
      return;
    }
    match_one(pats[k], eg_.find(grounds[k]),
              [&, k] { match_children(pats, grounds, k + 1, cont); });
  }

  void match_one(TermId pattern, TermId cls, const Cont& cont) {
    const TermData& p = bank_.term(pattern);
    if (p.kind == Kind::BoundVariable || p.kind == Kind::Variable) {
      auto it = var_pos_.find(pattern);
      if (it == var_pos_.end()) return;  // variable of another QE
      TermId& slot = binding_[it->second];
      if (slot != kNoTerm) {
        if (eg_.contains(slot) && eg_.find(slot) == cls) cont();
        return;
      }
      for (TermId m : eg_.class_members(cls)) {
        slot = m;
        cont();
      }
      slot = kNoTerm;
      return;
    }
    if (p.ground) {
      if (eg_.contains(pattern) && eg_.find(pattern) == cls) cont();
      return;
    }
    // Non-ground application: branch over same-symbol members of the class.
    for (TermId m : eg_.class_members(cls)) {
      const TermData& md = bank_.term(m);
      if (md.symbol != p.symbol || md.kind != p.kind) continue;
      match_children(p.children, md.children, 0, cont);
    }
  }

  const TermBank& bank_;
  const EGraph& eg_;
  std::unordered_map<TermId, size_t> var_pos_;
  std::vector<TermId> binding_;
  std::vector<std::vector<TermId>> results_;
};

}  // namespace

std::vector<std::vector<TermId>> ematch(const TermBank& bank, const EGraph& eg,
                                        const QuantifiedExpression& qe,
                                        const Trigger& trigger) {
  return Matcher(bank, eg, qe).run(trigger.patterns);
}

std::vector<InstEvent> ematch_round(const TermBank& bank, const EGraph& eg,
                                    const std::vector<QuantifiedExpression>& qes,
                                    size_t cap_per_qe) {
  std::vector<InstEvent> events;
  for (const QuantifiedExpression& qe : qes) {
    std::vector<std::vector<TermId>> tuples;
    for (const Trigger& trigger : select_triggers(bank, qe)) {
      auto matched = ematch(bank, eg, qe, trigger);
      tuples.insert(tuples.end(), matched.begin(), matched.end());
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    size_t taken = 0;
    for (auto& tuple : tuples) {
      if (taken >= cap_per_qe) break;
      if (qe.done_instantiations.count(tuple)) continue;
      events.push_back({qe.qe_id, std::move(tuple)});
      ++taken;
    }
  }
  return events;
}

}  // namespace instgnn
