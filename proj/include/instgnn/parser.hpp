#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "instgnn/term_bank.hpp"

namespace instgnn {

struct Problem {
  std::string name;
  TermBank bank;
  std::vector<Clause> ground_clauses;
  std::vector<QuantifiedExpression> qes;
};

struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;
};

struct ParseResult {
  std::optional<Problem> problem;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return problem.has_value(); }
  std::string diagnostics_to_string() const;
};

/// Native clausal format:
///   (declare-sort NAME)
///   (declare-fun NAME (SORT*) SORT)          ; result sort Bool => predicate
///   (assert CLAUSE)
///   (assert-forall ((VAR SORT)*) CLAUSE)
/// CLAUSE is (or LIT*) or a single LIT; LIT is ATOM or (not ATOM);
/// ATOM is (= T T) or (NAME T*). Line comments start with ';'.
ParseResult parse_native(std::string_view text, std::string name = "");

/// TPTP CNF subset: cnf(name, role, formula). clauses only, single sort $i.
/// fof/tff/include constructs are reported as unsupported.
ParseResult parse_tptp_cnf(std::string_view text, std::string name = "");

/// Pretty-prints a Problem in the native format. Reparsing the output yields
/// a structurally identical Problem.
std::string print_native(const Problem& problem);

enum class ProblemFormat { Native, TptpCnf, Auto };

/// Reads a problem file, picking the parser from the extension (.p/.cnf/.tptp
/// are TPTP) or, for Auto with other extensions, from the content.
ParseResult parse_file(const std::string& path,
                       ProblemFormat format = ProblemFormat::Auto);

}  // namespace instgnn
