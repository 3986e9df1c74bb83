#include "instgnn/ground_solver.hpp"

#include <algorithm>
#include <unordered_map>

namespace instgnn {

std::optional<bool> GroundModel::value_of(TermId atom) const {
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i] == atom) return values[i];
  }
  return std::nullopt;
}

EGraph build_model_egraph(const TermBank& bank, const GroundModel& model) {
  EGraph eg(bank);
  for (TermId t = 0; t < bank.num_terms(); ++t) {
    const TermData& d = bank.term(t);
    if (d.ground && (d.kind == Kind::Constant ||
                     d.kind == Kind::FunctionApply ||
                     d.kind == Kind::PredicateApply)) {
      eg.add_term(t);
    }
  }
  for (size_t i = 0; i < model.atoms.size(); ++i) {
    const TermData& d = bank.term(model.atoms[i]);
    if (d.kind == Kind::Equality && model.values[i]) {
      eg.merge(d.children[0], d.children[1]);
    }
  }
  return eg;
}

namespace {

class DpllSolver {
 public:
  DpllSolver(const TermBank& bank, const std::vector<Clause>& clauses,
             long budget)
      : bank_(bank), input_(clauses), budget_(budget) {
    for (const Clause& c : clauses) {
      std::vector<int> lits;
      for (const Literal& lit : c.literals) {
        int idx = atom_index(lit.atom);
        lits.push_back(lit.positive ? idx + 1 : -(idx + 1));
      }
      clauses_.push_back(std::move(lits));
    }
    values_.assign(atoms_.size(), -1);
  }

  GroundCheckResult solve() {
    if (atoms_.empty()) {
      // No atoms: clauses are empty, therefore vacuously satisfiable.
      return sat_result();
    }
    while (true) {
      if (!propagate()) {
        if (!backtrack()) return unsat_result();
        continue;
      }
      int next = first_unassigned();
      if (next < 0) {
        GroundModel model = make_model();
        if (consistent(model)) {
          GroundCheckResult r;
          r.status = GroundStatus::SatCandidate;
          r.model = std::move(model);
          return r;
        }
        if (decision_trail_.empty()) return unsat_result();
        block_current_decisions();
        if (!backtrack()) return unsat_result();
        continue;
      }
      if (++decisions_ > budget_) {
        return GroundCheckResult{GroundStatus::ResourceOut, {}, std::nullopt};
      }
      decide(next, false);
    }
  }

 private:
  int atom_index(TermId atom) {
    auto it = atom_lookup_.find(atom);
    if (it != atom_lookup_.end()) return it->second;
    int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    atom_lookup_.emplace(atom, idx);
    return idx;
  }

  bool lit_true(int lit) const {
    int v = values_[std::abs(lit) - 1];
    return v >= 0 && (v == 1) == (lit > 0);
  }
  bool lit_false(int lit) const {
    int v = values_[std::abs(lit) - 1];
    return v >= 0 && (v == 1) != (lit > 0);
  }

  void assign(int atom, bool value) {
    values_[atom] = value ? 1 : 0;
    trail_.push_back(atom);
  }

  void decide(int atom, bool value) {
    decision_trail_.push_back({trail_.size(), atom, false});
    assign(atom, value);
  }

  // Unit propagation to fixpoint; false iff some clause is falsified.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const std::vector<int>& clause : clauses_) {
        int unassigned = 0;
        int unit = 0;
        bool satisfied = false;
        for (int lit : clause) {
          if (lit_true(lit)) {
            satisfied = true;
            break;
          }
          if (!lit_false(lit)) {
            ++unassigned;
            unit = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(std::abs(unit) - 1, unit > 0);
          changed = true;
        }
      }
    }
    return true;
  }

  int first_unassigned() const {
    for (size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < 0) return static_cast<int>(i);
    }
    return -1;
  }

  // Undoes to the most recent unflipped decision and flips it.
  bool backtrack() {
    while (!decision_trail_.empty()) {
      DecisionFrame frame = decision_trail_.back();
      decision_trail_.pop_back();
      while (trail_.size() > frame.trail_size) {
        values_[trail_.back()] = -1;
        trail_.pop_back();
      }
      if (!frame.flipped) {
        decision_trail_.push_back({trail_.size(), frame.atom, true});
        assign(frame.atom, true);  // first branch tried false
        return true;
      }
    }
    return false;
  }

  void block_current_decisions() {
    std::vector<int> clause;
    for (const DecisionFrame& frame : decision_trail_) {
      int v = values_[frame.atom];
      clause.push_back(v == 1 ? -(frame.atom + 1) : frame.atom + 1);
    }
    clauses_.push_back(std::move(clause));
  }

  GroundModel make_model() const {
    GroundModel model{atoms_, {}, EGraph(bank_)};
    model.values.reserve(values_.size());
    for (int8_t v : values_) model.values.push_back(v == 1);
    model.egraph = build_model_egraph(bank_, model);
    return model;
  }

  bool consistent(const GroundModel& model) const {
    const EGraph& eg = model.egraph;
    // Disequalities must keep their sides apart.
    for (size_t i = 0; i < atoms_.size(); ++i) {
      const TermData& d = bank_.term(atoms_[i]);
      if (d.kind == Kind::Equality && !model.values[i] &&
          eg.same(d.children[0], d.children[1])) {
        return false;
      }
    }
    // Congruent predicate atoms must agree on their truth value.
    std::unordered_map<TermId, bool> root_value;
    for (size_t i = 0; i < atoms_.size(); ++i) {
      const TermData& d = bank_.term(atoms_[i]);
      if (d.kind != Kind::PredicateApply) continue;
      TermId root = eg.find(atoms_[i]);
      auto [it, inserted] = root_value.emplace(root, model.values[i]);
      if (!inserted && it->second != model.values[i]) return false;
    }
    return true;
  }

  GroundCheckResult unsat_result() const {
    GroundCheckResult r;
    r.status = GroundStatus::Unsat;
    r.core.resize(input_.size());
    for (size_t i = 0; i < input_.size(); ++i) r.core[i] = i;
    return r;
  }

  GroundCheckResult sat_result() const {
    GroundCheckResult r;
    r.status = GroundStatus::SatCandidate;
    r.model = make_model();
    return r;
  }

  struct DecisionFrame {
    size_t trail_size;
    int atom;
    bool flipped;
  };

  const TermBank& bank_;
  const std::vector<Clause>& input_;
  long budget_;
  long decisions_ = 0;
  std::vector<TermId> atoms_;
  std::unordered_map<TermId, int> atom_lookup_;
  std::vector<std::vector<int>> clauses_;  // input plus blocking clauses
  std::vector<int8_t> values_;
  std::vector<int> trail_;
  std::vector<DecisionFrame> decision_trail_;
};

}  // namespace

GroundCheckResult ground_sat_check(const TermBank& bank,
                                   const std::vector<Clause>& clauses,
                                   long decision_budget) {
  return DpllSolver(bank, clauses, decision_budget).solve();
}

}  // namespace instgnn
