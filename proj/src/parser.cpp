#include "instgnn/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace instgnn {

std::string ParseResult::diagnostics_to_string() const {
  std::ostringstream os;
  for (const auto& d : diagnostics) {
    os << d.line << ":" << d.col << ": " << d.message << "\n";
  }
  return os.str();
}

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 0;
  int col = 0;
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view text) : text_(text) {}

  // Reads all top-level forms. Returns false on a lexical error.
  bool read_all(std::vector<SExpr>& out, Diagnostic& err) {
    skip_ws();
    while (pos_ < text_.size()) {
      SExpr e;
      if (!read(e, err)) return false;
      out.push_back(std::move(e));
      skip_ws();
    }
    return true;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool read(SExpr& out, Diagnostic& err) {
    skip_ws();
    if (pos_ >= text_.size()) {
      err = {line_, col_, "unexpected end of input"};
      return false;
    }
    out.line = line_;
    out.col = col_;
    char c = text_[pos_];
    if (c == '(') {
      advance();
      out.is_list = true;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) {
          err = {out.line, out.col, "unbalanced '(': missing ')'"};
          return false;
        }
        if (text_[pos_] == ')') {
          advance();
          return true;
        }
        SExpr child;
        if (!read(child, err)) return false;
        out.items.push_back(std::move(child));
      }
    }
    if (c == ')') {
      err = {line_, col_, "unexpected ')'"};
      return false;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' ||
          std::isspace(static_cast<unsigned char>(d))) {
        break;
      }
      out.atom.push_back(d);
      advance();
    }
    return true;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class NativeParser {
 public:
  explicit NativeParser(std::string name) { problem_.name = std::move(name); }

  ParseResult run(std::string_view text) {
    std::vector<SExpr> forms;
    Diagnostic err;
    SExprReader reader(text);
    if (!reader.read_all(forms, err)) {
      result_.diagnostics.push_back(err);
      return std::move(result_);
    }
    for (const SExpr& form : forms) parse_form(form);
    if (result_.diagnostics.empty()) {
      result_.problem = std::move(problem_);
    }
    return std::move(result_);
  }

 private:
  void error(const SExpr& at, const std::string& msg) {
    result_.diagnostics.push_back({at.line, at.col, msg});
  }

  void parse_form(const SExpr& form) {
    if (!form.is_list || form.items.empty() || form.items[0].is_list) {
      error(form, "expected (declare-sort ...), (declare-fun ...), "
                  "(assert ...) or (assert-forall ...)");
      return;
    }
    const std::string& head = form.items[0].atom;
    try {
      if (head == "declare-sort") {
        parse_declare_sort(form);
      } else if (head == "declare-fun") {
        parse_declare_fun(form);
      } else if (head == "assert") {
        parse_assert(form);
      } else if (head == "assert-forall") {
        parse_assert_forall(form);
      } else {
        error(form, "unknown form: " + head);
      }
    } catch (const TermError& e) {
      error(form, e.what());
    }
  }

  void parse_declare_sort(const SExpr& form) {
    if (form.items.size() != 2 || form.items[1].is_list) {
      error(form, "expected (declare-sort NAME)");
      return;
    }
    const std::string& name = form.items[1].atom;
    if (problem_.bank.find_sort(name)) {
      error(form.items[1], "sort already declared: " + name);
      return;
    }
    problem_.bank.declare_sort(name);
  }

  std::optional<SortId> resolve_sort(const SExpr& e) {
    if (e.is_list) {
      error(e, "expected a sort name");
      return std::nullopt;
    }
    auto s = problem_.bank.find_sort(e.atom);
    if (!s) error(e, "unknown sort: " + e.atom);
    return s;
  }

  void parse_declare_fun(const SExpr& form) {
    if (form.items.size() != 4 || form.items[1].is_list ||
        !form.items[2].is_list || form.items[3].is_list) {
      error(form, "expected (declare-fun NAME (SORT*) SORT)");
      return;
    }
    const std::string& name = form.items[1].atom;
    if (problem_.bank.find_symbol(name)) {
      error(form.items[1], "symbol already declared: " + name);
      return;
    }
    std::vector<SortId> args;
    for (const SExpr& a : form.items[2].items) {
      auto s = resolve_sort(a);
      if (!s) return;
      if (*s == problem_.bank.bool_sort()) {
        error(a, "Bool is not a valid argument sort");
        return;
      }
      args.push_back(*s);
    }
    auto result = resolve_sort(form.items[3]);
    if (!result) return;
    if (*result == problem_.bank.bool_sort()) {
      problem_.bank.declare_predicate(name, std::move(args));
    } else {
      problem_.bank.declare_function(name, std::move(args), *result);
    }
  }

  // Scope maps surface variable names to bound-variable terms.
  using Scope = std::unordered_map<std::string, TermId>;

  std::optional<TermId> parse_term(const SExpr& e, const Scope& scope) {
    if (!e.is_list) {
      auto it = scope.find(e.atom);
      if (it != scope.end()) return it->second;
      auto sym = problem_.bank.find_symbol(e.atom);
      if (!sym) {
        error(e, "unknown symbol: " + e.atom);
        return std::nullopt;
      }
      const SymbolInfo& info = problem_.bank.symbol(*sym);
      if (info.category != SymbolCategory::Function ||
          !info.arg_sorts.empty()) {
        error(e, e.atom + " is not a constant");
        return std::nullopt;
      }
      return problem_.bank.mk_constant(*sym);
    }
    if (e.items.empty() || e.items[0].is_list) {
      error(e, "expected a function application");
      return std::nullopt;
    }
    const std::string& head = e.items[0].atom;
    auto sym = problem_.bank.find_symbol(head);
    if (!sym) {
      error(e.items[0], "unknown symbol: " + head);
      return std::nullopt;
    }
    if (problem_.bank.symbol(*sym).category != SymbolCategory::Function) {
      error(e.items[0], head + " is a predicate, expected a function");
      return std::nullopt;
    }
    std::vector<TermId> args;
    for (size_t i = 1; i < e.items.size(); ++i) {
      auto t = parse_term(e.items[i], scope);
      if (!t) return std::nullopt;
      args.push_back(*t);
    }
    return problem_.bank.mk_apply(*sym, std::move(args));
  }

  std::optional<TermId> parse_atom(const SExpr& e, const Scope& scope) {
    if (!e.is_list) {
      // 0-ary predicate
      auto sym = problem_.bank.find_symbol(e.atom);
      if (!sym ||
          problem_.bank.symbol(*sym).category != SymbolCategory::Predicate) {
        error(e, "expected an atom, got: " + e.atom);
        return std::nullopt;
      }
      return problem_.bank.mk_term(Kind::PredicateApply, *sym, {});
    }
    if (e.items.empty() || e.items[0].is_list) {
      error(e, "expected an atom");
      return std::nullopt;
    }
    const std::string& head = e.items[0].atom;
    if (head == "=") {
      if (e.items.size() != 3) {
        error(e, "expected (= T T)");
        return std::nullopt;
      }
      auto lhs = parse_term(e.items[1], scope);
      auto rhs = parse_term(e.items[2], scope);
      if (!lhs || !rhs) return std::nullopt;
      return problem_.bank.mk_equality(*lhs, *rhs);
    }
    auto sym = problem_.bank.find_symbol(head);
    if (!sym) {
      error(e.items[0], "unknown symbol: " + head);
      return std::nullopt;
    }
    if (problem_.bank.symbol(*sym).category != SymbolCategory::Predicate) {
      error(e.items[0], head + " is not a predicate");
      return std::nullopt;
    }
    std::vector<TermId> args;
    for (size_t i = 1; i < e.items.size(); ++i) {
      auto t = parse_term(e.items[i], scope);
      if (!t) return std::nullopt;
      args.push_back(*t);
    }
    return problem_.bank.mk_apply(*sym, std::move(args));
  }

  std::optional<Literal> parse_literal(const SExpr& e, const Scope& scope) {
    if (e.is_list && !e.items.empty() && !e.items[0].is_list &&
        e.items[0].atom == "not") {
      if (e.items.size() != 2) {
        error(e, "expected (not ATOM)");
        return std::nullopt;
      }
      auto atom = parse_atom(e.items[1], scope);
      if (!atom) return std::nullopt;
      return Literal{false, *atom};
    }
    auto atom = parse_atom(e, scope);
    if (!atom) return std::nullopt;
    return Literal{true, *atom};
  }

  std::optional<Clause> parse_clause(const SExpr& e, const Scope& scope) {
    Clause clause;
    if (e.is_list && !e.items.empty() && !e.items[0].is_list &&
        e.items[0].atom == "or") {
      if (e.items.size() == 1) {
        error(e, "empty clause");
        return std::nullopt;
      }
      for (size_t i = 1; i < e.items.size(); ++i) {
        auto lit = parse_literal(e.items[i], scope);
        if (!lit) return std::nullopt;
        clause.literals.push_back(*lit);
      }
    } else {
      auto lit = parse_literal(e, scope);
      if (!lit) return std::nullopt;
      clause.literals.push_back(*lit);
    }
    problem_.bank.intern_clause(clause);
    return clause;
  }

  void parse_assert(const SExpr& form) {
    if (form.items.size() != 2) {
      error(form, "expected (assert CLAUSE)");
      return;
    }
    Scope empty;
    auto clause = parse_clause(form.items[1], empty);
    if (!clause) return;
    problem_.ground_clauses.push_back(std::move(*clause));
  }

  void parse_assert_forall(const SExpr& form) {
    if (form.items.size() != 3 || !form.items[1].is_list) {
      error(form, "expected (assert-forall ((VAR SORT)*) CLAUSE)");
      return;
    }
    QuantifiedExpression qe;
    qe.qe_id = static_cast<uint32_t>(problem_.qes.size());
    Scope scope;
    for (const SExpr& binder : form.items[1].items) {
      if (!binder.is_list || binder.items.size() != 2 ||
          binder.items[0].is_list) {
        error(binder, "expected (VAR SORT)");
        return;
      }
      const std::string& vname = binder.items[0].atom;
      if (scope.count(vname)) {
        error(binder.items[0], "duplicate variable: " + vname);
        return;
      }
      auto sort = resolve_sort(binder.items[1]);
      if (!sort) return;
      if (*sort == problem_.bank.bool_sort()) {
        error(binder.items[1], "variables must not have sort Bool");
        return;
      }
      SymbolId vsym = problem_.bank.declare_variable(vname, *sort);
      TermId var = problem_.bank.mk_bound_variable(vsym);
      scope.emplace(vname, var);
      qe.variables.push_back(var);
    }
    if (qe.variables.empty()) {
      error(form.items[1], "assert-forall needs at least one variable");
      return;
    }
    auto body = parse_clause(form.items[2], scope);
    if (!body) return;
    qe.body = std::move(*body);
    problem_.bank.intern_qe(qe);
    problem_.qes.push_back(std::move(qe));
  }

  Problem problem_;
  ParseResult result_;
};

}  // namespace

ParseResult parse_native(std::string_view text, std::string name) {
  return NativeParser(std::move(name)).run(text);
}

// ---------------------------------------------------------------------------
// TPTP CNF subset
// ---------------------------------------------------------------------------

namespace {

struct TptpToken {
  enum Type { Name, Var, LParen, RParen, Comma, Dot, Pipe, Tilde, Eq, Neq,
              End } type;
  std::string text;
  int line;
  int col;
};

class TptpLexer {
 public:
  explicit TptpLexer(std::string_view text) : text_(text) {}

  bool next(TptpToken& tok, Diagnostic& err) {
    skip_ws();
    tok.text.clear();
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) {
      tok.type = TptpToken::End;
      return true;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); tok.type = TptpToken::LParen; return true;
      case ')': advance(); tok.type = TptpToken::RParen; return true;
      case ',': advance(); tok.type = TptpToken::Comma; return true;
      case '.': advance(); tok.type = TptpToken::Dot; return true;
      case '|': advance(); tok.type = TptpToken::Pipe; return true;
      case '~': advance(); tok.type = TptpToken::Tilde; return true;
      case '=': advance(); tok.type = TptpToken::Eq; return true;
      case '!':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          tok.type = TptpToken::Neq;
          return true;
        }
        err = {tok.line, tok.col, "unsupported construct: '!'"};
        return false;
      case '\'': {
        advance();
        tok.type = TptpToken::Name;
        while (pos_ < text_.size() && text_[pos_] != '\'') {
          tok.text.push_back(text_[pos_]);
          advance();
        }
        if (pos_ >= text_.size()) {
          err = {tok.line, tok.col, "unterminated quoted name"};
          return false;
        }
        advance();
        return true;
      }
      default:
        break;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      bool upper = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      tok.type = upper ? TptpToken::Var : TptpToken::Name;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' &&
            d != '$') {
          break;
        }
        tok.text.push_back(d);
        advance();
      }
      return true;
    }
    err = {line_, col_, std::string("unexpected character: ") + c};
    return false;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() &&
                 text_[pos_ + 1] == '*') {
        advance();
        advance();
        while (pos_ + 1 < text_.size() &&
               !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) {
          advance();
        }
        if (pos_ + 1 < text_.size()) {
          advance();
          advance();
        } else {
          pos_ = text_.size();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Term tree built before symbols are resolved; TPTP fixes each symbol's
// arity and function/predicate role at first use.
struct TptpTerm {
  bool is_var = false;
  std::string name;
  std::vector<TptpTerm> args;
  int line = 0;
  int col = 0;
};

struct TptpLiteral {
  bool positive = true;
  bool is_equality = false;
  TptpTerm lhs;  // for equality; otherwise the atom
  TptpTerm rhs;
};

class TptpParser {
 public:
  explicit TptpParser(std::string name) { problem_.name = std::move(name); }

  ParseResult run(std::string_view text) {
    lexer_.emplace(text);
    if (!advance()) return std::move(result_);
    sort_ = problem_.bank.declare_sort("$i");
    while (tok_.type != TptpToken::End) {
      if (!parse_annotated()) {
        // Diagnostics already recorded; stop at the first bad formula since
        // recovery points are unreliable in this format.
        break;
      }
    }
    if (result_.diagnostics.empty()) result_.problem = std::move(problem_);
    return std::move(result_);
  }

 private:
  void error(int line, int col, const std::string& msg) {
    result_.diagnostics.push_back({line, col, msg});
  }

  bool advance() {
    Diagnostic err;
    if (!lexer_->next(tok_, err)) {
      result_.diagnostics.push_back(err);
      return false;
    }
    return true;
  }

  bool expect(TptpToken::Type type, const char* what) {
    if (tok_.type != type) {
      error(tok_.line, tok_.col, std::string("expected ") + what);
      return false;
    }
    return advance();
  }

  bool parse_annotated() {
    if (tok_.type != TptpToken::Name) {
      error(tok_.line, tok_.col, "expected cnf(...)");
      return false;
    }
    if (tok_.text != "cnf") {
      error(tok_.line, tok_.col,
            "unsupported construct: " + tok_.text + " (only cnf is accepted)");
      return false;
    }
    if (!advance()) return false;
    if (!expect(TptpToken::LParen, "'('")) return false;
    if (tok_.type != TptpToken::Name && tok_.type != TptpToken::Var) {
      error(tok_.line, tok_.col, "expected formula name");
      return false;
    }
    if (!advance()) return false;
    if (!expect(TptpToken::Comma, "','")) return false;
    if (tok_.type != TptpToken::Name) {
      error(tok_.line, tok_.col, "expected formula role");
      return false;
    }
    if (!advance()) return false;
    if (!expect(TptpToken::Comma, "','")) return false;

    bool parenthesized = tok_.type == TptpToken::LParen;
    if (parenthesized && !advance()) return false;

    std::vector<TptpLiteral> literals;
    while (true) {
      TptpLiteral lit;
      if (!parse_literal(lit)) return false;
      literals.push_back(std::move(lit));
      if (tok_.type == TptpToken::Pipe) {
        if (!advance()) return false;
        continue;
      }
      break;
    }
    if (parenthesized && !expect(TptpToken::RParen, "')'")) return false;
    if (!expect(TptpToken::RParen, "')'")) return false;
    if (!expect(TptpToken::Dot, "'.'")) return false;
    return build_clause(literals);
  }

  bool parse_literal(TptpLiteral& lit) {
    if (tok_.type == TptpToken::Tilde) {
      lit.positive = false;
      if (!advance()) return false;
    }
    if (!parse_term(lit.lhs)) return false;
    if (tok_.type == TptpToken::Eq || tok_.type == TptpToken::Neq) {
      lit.is_equality = true;
      if (tok_.type == TptpToken::Neq) lit.positive = !lit.positive;
      if (!advance()) return false;
      if (!parse_term(lit.rhs)) return false;
    }
    return true;
  }

  bool parse_term(TptpTerm& term) {
    term.line = tok_.line;
    term.col = tok_.col;
    if (tok_.type == TptpToken::Var) {
      term.is_var = true;
      term.name = tok_.text;
      return advance();
    }
    if (tok_.type != TptpToken::Name) {
      error(tok_.line, tok_.col, "expected a term");
      return false;
    }
    term.name = tok_.text;
    if (!advance()) return false;
    if (tok_.type == TptpToken::LParen) {
      if (!advance()) return false;
      while (true) {
        TptpTerm arg;
        if (!parse_term(arg)) return false;
        term.args.push_back(std::move(arg));
        if (tok_.type == TptpToken::Comma) {
          if (!advance()) return false;
          continue;
        }
        break;
      }
      if (!expect(TptpToken::RParen, "')'")) return false;
    }
    return true;
  }

  SymbolId resolve(const TptpTerm& t, bool as_predicate, bool& ok) {
    auto existing = problem_.bank.find_symbol(t.name);
    if (existing) {
      const SymbolInfo& info = problem_.bank.symbol(*existing);
      bool is_pred = info.category == SymbolCategory::Predicate;
      if (is_pred != as_predicate) {
        error(t.line, t.col,
              t.name + " used both as predicate and as function");
        ok = false;
        return 0;
      }
      if (info.arg_sorts.size() != t.args.size()) {
        std::ostringstream os;
        os << t.name << " used with " << t.args.size()
           << " arguments, previously " << info.arg_sorts.size();
        error(t.line, t.col, os.str());
        ok = false;
        return 0;
      }
      return *existing;
    }
    std::vector<SortId> args(t.args.size(), sort_);
    return as_predicate
               ? problem_.bank.declare_predicate(t.name, std::move(args))
               : problem_.bank.declare_function(t.name, std::move(args),
                                                sort_);
  }

  std::optional<TermId> build_term(const TptpTerm& t,
                                   std::unordered_map<std::string, TermId>&
                                       scope) {
    if (t.is_var) {
      auto it = scope.find(t.name);
      if (it != scope.end()) return it->second;
      SymbolId vsym = problem_.bank.declare_variable(t.name, sort_);
      TermId var = problem_.bank.mk_bound_variable(vsym);
      scope.emplace(t.name, var);
      var_order_.push_back(var);
      return var;
    }
    bool ok = true;
    SymbolId sym = resolve(t, /*as_predicate=*/false, ok);
    if (!ok) return std::nullopt;
    std::vector<TermId> args;
    for (const TptpTerm& a : t.args) {
      auto built = build_term(a, scope);
      if (!built) return std::nullopt;
      args.push_back(*built);
    }
    return problem_.bank.mk_apply(sym, std::move(args));
  }

  bool build_clause(const std::vector<TptpLiteral>& literals) {
    std::unordered_map<std::string, TermId> scope;
    var_order_.clear();
    Clause clause;
    for (const TptpLiteral& lit : literals) {
      TermId atom;
      try {
        if (lit.is_equality) {
          auto lhs = build_term(lit.lhs, scope);
          auto rhs = build_term(lit.rhs, scope);
          if (!lhs || !rhs) return false;
          atom = problem_.bank.mk_equality(*lhs, *rhs);
        } else {
          bool ok = true;
          SymbolId sym = resolve(lit.lhs, /*as_predicate=*/true, ok);
          if (!ok) return false;
          std::vector<TermId> args;
          for (const TptpTerm& a : lit.lhs.args) {
            auto built = build_term(a, scope);
            if (!built) return false;
            args.push_back(*built);
          }
          atom = problem_.bank.mk_apply(sym, std::move(args));
        }
      } catch (const TermError& e) {
        error(lit.lhs.line, lit.lhs.col, e.what());
        return false;
      }
      clause.literals.push_back({lit.positive, atom});
    }
    problem_.bank.intern_clause(clause);
    if (var_order_.empty()) {
      problem_.ground_clauses.push_back(std::move(clause));
    } else {
      QuantifiedExpression qe;
      qe.qe_id = static_cast<uint32_t>(problem_.qes.size());
      qe.variables = var_order_;
      qe.body = std::move(clause);
      problem_.bank.intern_qe(qe);
      problem_.qes.push_back(std::move(qe));
    }
    return true;
  }

  std::optional<TptpLexer> lexer_;
  TptpToken tok_;
  Problem problem_;
  ParseResult result_;
  SortId sort_ = 0;
  std::vector<TermId> var_order_;  // first-occurrence order in the clause
};

}  // namespace

ParseResult parse_tptp_cnf(std::string_view text, std::string name) {
  return TptpParser(std::move(name)).run(text);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

void print_clause(const TermBank& bank, const Clause& clause,
                  std::ostream& os) {
  auto print_literal = [&](const Literal& lit) {
    if (lit.positive) {
      os << bank.term_to_string(lit.atom);
    } else {
      os << "(not " << bank.term_to_string(lit.atom) << ")";
    }
  };
  if (clause.literals.size() == 1) {
    print_literal(clause.literals[0]);
    return;
  }
  os << "(or";
  for (const Literal& lit : clause.literals) {
    os << " ";
    print_literal(lit);
  }
  os << ")";
}

}  // namespace

std::string print_native(const Problem& problem) {
  const TermBank& bank = problem.bank;
  std::ostringstream os;
  for (SortId s = 1; s < bank.num_sorts(); ++s) {
    os << "(declare-sort " << bank.sort_name(s) << ")\n";
  }
  for (SymbolId sym = 0; sym < bank.num_symbols(); ++sym) {
    const SymbolInfo& info = bank.symbol(sym);
    if (info.category == SymbolCategory::Variable) continue;
    os << "(declare-fun " << info.name << " (";
    for (size_t i = 0; i < info.arg_sorts.size(); ++i) {
      if (i) os << " ";
      os << bank.sort_name(info.arg_sorts[i]);
    }
    os << ") " << bank.sort_name(info.result_sort) << ")\n";
  }
  for (const Clause& clause : problem.ground_clauses) {
    os << "(assert ";
    print_clause(bank, clause, os);
    os << ")\n";
  }
  for (const QuantifiedExpression& qe : problem.qes) {
    os << "(assert-forall (";
    for (size_t i = 0; i < qe.variables.size(); ++i) {
      if (i) os << " ";
      const TermData& v = bank.term(qe.variables[i]);
      os << "(" << bank.symbol(v.symbol).name << " " << bank.sort_name(v.sort)
         << ")";
    }
    os << ") ";
    print_clause(bank, qe.body, os);
    os << ")\n";
  }
  return os.str();
}

ParseResult parse_file(const std::string& path, ProblemFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult r;
    r.diagnostics.push_back({0, 0, "cannot open file: " + path});
    return r;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (auto dot = name.find_last_of('.'); dot != std::string::npos) {
    name = name.substr(0, dot);
  }

  if (format == ProblemFormat::Auto) {
    bool tptp_ext = path.ends_with(".p") || path.ends_with(".cnf") ||
                    path.ends_with(".tptp");
    if (tptp_ext) {
      format = ProblemFormat::TptpCnf;
    } else {
      // Sniff: TPTP files start with cnf(/fof(/% comments.
      size_t i = text.find_first_not_of(" \t\r\n");
      format = (i != std::string::npos && (text.compare(i, 4, "cnf(") == 0 ||
                                           text[i] == '%'))
                   ? ProblemFormat::TptpCnf
                   : ProblemFormat::Native;
    }
  }
  return format == ProblemFormat::TptpCnf ? parse_tptp_cnf(text, name)
                                          : parse_native(text, name);
}

}  // namespace instgnn
