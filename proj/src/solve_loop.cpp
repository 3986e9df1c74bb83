#include "instgnn/solve_loop.hpp"

#include <chrono>

#include "instgnn/ematch.hpp"

namespace instgnn {

const char* strategy_name(StrategyKind s) {
  switch (s) {
    case StrategyKind::Enumeration: return "enum";
    case StrategyKind::EMatching: return "ematch";
    case StrategyKind::DryRun: return "dry-run";
    case StrategyKind::RandomizedDryRun: return "random-dry-run";
    case StrategyKind::QSampling: return "qsampling";
    case StrategyKind::Threshold: return "threshold";
  }
  return "?";
}

std::optional<StrategyKind> strategy_from_name(std::string_view name) {
  for (StrategyKind s :
       {StrategyKind::Enumeration, StrategyKind::EMatching, StrategyKind::DryRun,
        StrategyKind::RandomizedDryRun, StrategyKind::QSampling,
        StrategyKind::Threshold}) {
    if (name == strategy_name(s)) return s;
  }
  return std::nullopt;
}

bool strategy_needs_weights(StrategyKind s) {
  return s == StrategyKind::DryRun || s == StrategyKind::RandomizedDryRun ||
         s == StrategyKind::QSampling || s == StrategyKind::Threshold;
}

const char* outcome_name(SolveOutcome o) {
  switch (o) {
    case SolveOutcome::Proved: return "PROVED";
    case SolveOutcome::GaveUp: return "GAVE_UP";
    case SolveOutcome::Timeout: return "TIMEOUT";
  }
  return "?";
}

namespace {

GuidanceMode guidance_mode_of(StrategyKind s) {
  switch (s) {
    case StrategyKind::DryRun: return GuidanceMode::DryRun;
    case StrategyKind::RandomizedDryRun: return GuidanceMode::RandomizedDryRun;
    case StrategyKind::QSampling: return GuidanceMode::QSampling;
    default: return GuidanceMode::Threshold;
  }
}

}  // namespace

SolveResult solve(Problem& problem, const SolveOptions& options,
                  SolveObserver* observer) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(options.timeout_s));
  auto elapsed_micros = [&] {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                                 start)
        .count();
  };

  SolveResult result;
  TermBank& bank = problem.bank;
  std::vector<Clause> ground = problem.ground_clauses;

  GuidanceConfig guidance = options.guidance;
  guidance.mode = guidance_mode_of(options.strategy);
  std::mt19937_64 rng(guidance.rng_seed);
  if (strategy_needs_weights(options.strategy) && options.params == nullptr) {
    throw TermError("strategy requires trained weights");
  }

  auto finish = [&](SolveOutcome outcome, GroundStatus status) {
    result.outcome = outcome;
    result.last_ground_status = status;
    result.wall_micros = elapsed_micros();
    if (observer) observer->on_result(result);
    return result;
  };

  GroundCheckResult check =
      ground_sat_check(bank, ground, options.decision_budget);
  if (check.status == GroundStatus::Unsat) {
    return finish(SolveOutcome::Proved, GroundStatus::Unsat);
  }
  if (check.status == GroundStatus::ResourceOut) {
    return finish(SolveOutcome::Timeout, GroundStatus::ResourceOut);
  }

  while (true) {
    if (options.max_rounds > 0 && result.rounds >= options.max_rounds) {
      return finish(SolveOutcome::Timeout, check.status);
    }
    if (Clock::now() >= deadline) {
      return finish(SolveOutcome::Timeout, check.status);
    }
    const int round = ++result.rounds;
    if (observer) observer->on_round_start(round, problem, ground);

    std::vector<InstEvent> events;
    switch (options.strategy) {
      case StrategyKind::Enumeration:
        events = enum_round(bank, problem.qes);
        break;
      case StrategyKind::EMatching: {
        EGraph match_graph = build_model_egraph(bank, *check.model);
        events = ematch_round(bank, match_graph, problem.qes,
                              options.ematch_cap_per_qe);
        break;
      }
      default: {
        ProofStateGraph graph =
            export_graph(bank, ground, problem.qes, round);
        events = guided_round(bank, problem.qes, graph, *options.params,
                              guidance, rng, &result.gnn_micros);
        break;
      }
    }

    if (events.empty()) {
      return finish(SolveOutcome::GaveUp, check.status);
    }

    RoundTrace trace;
    for (InstEvent& ev : events) {
      QuantifiedExpression& qe = problem.qes[ev.qe_id];
      qe.done_instantiations.insert(ev.tuple);
      Clause lemma = apply_tuple(bank, qe, ev.tuple);
      if (observer) observer->on_lemma(round, ev.qe_id, ev.tuple, lemma);
      ground.push_back(std::move(lemma));
      ++result.instantiation_count;
      trace.insts.push_back(std::move(ev));
    }
    result.trace.push_back(std::move(trace));

    check = ground_sat_check(bank, ground, options.decision_budget);
    if (check.status == GroundStatus::Unsat) {
      return finish(SolveOutcome::Proved, GroundStatus::Unsat);
    }
    if (check.status == GroundStatus::ResourceOut) {
      return finish(SolveOutcome::Timeout, GroundStatus::ResourceOut);
    }
  }
}

}  // namespace instgnn
