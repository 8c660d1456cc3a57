// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "proofpilot/fol/problem.hpp"

namespace proofpilot::fol {

ParseError::ParseError(const std::string &msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

std::vector<Clause> Problem::inputs() const {
  std::vector<Clause> all;
  all.reserve(size());
  all.insert(all.end(), axioms.begin(), axioms.end());
  all.insert(all.end(), negated_conjecture.begin(), negated_conjecture.end());
  std::sort(all.begin(), all.end(), [](const Clause &a, const Clause &b) { return a.id < b.id; });
  return all;
}

namespace {

enum class Tok { LowerWord, UpperWord, Quoted, Number, Dollar, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok{Tok::End, "", line_, col_};
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      tok.kind = Tok::LowerWord;
      tok.text = word();
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Tok::UpperWord;
      tok.text = word();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Tok::Number;
      tok.text = word();
    } else if (c == '$') {
      advance();
      tok.kind = Tok::Dollar;
      tok.text = "$" + word();
    } else if (c == '\'') {
      tok.kind = Tok::Quoted;
      advance();
      while (pos_ < text_.size() && text_[pos_] != '\'') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        tok.text += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", tok.line, tok.column);
      advance();
    } else if (c == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok.kind = Tok::Punct;
      tok.text = "!=";
      advance();
      advance();
    } else if (std::string_view("(),.|~=[]").find(c) != std::string_view::npos) {
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
    return tok;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        std::size_t l = line_, col = col_;
        advance();
        advance();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= text_.size()) throw ParseError("unterminated comment", l, col);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string word() {
    std::string w;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      w += text_[pos_];
      advance();
    }
    return w;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// Terms are read into a raw tree first since whether a head is a predicate
// or a function is only known from its position.
struct RawTerm {
  std::string name;
  bool is_var = false;
  std::vector<RawTerm> args;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Parser {
 public:
  Parser(std::string_view text, Problem &problem)
      : lex_(text), problem_(&problem), symbols_(*problem.symbols), next_var_(problem.next_var) {
    shift();
  }
  Parser(std::string_view text, SymbolTable &symbols, std::map<std::string, VarId> &vars,
         VarId &next_var)
      : lex_(text), symbols_(symbols), external_vars_(&vars), next_var_(next_var) {
    shift();
  }

  void parse() {
    while (cur_.kind != Tok::End) statement();
  }

  std::vector<Literal> literals_only() {
    std::vector<Literal> lits = formula();
    if (cur_.kind != Tok::End) fail("trailing input '" + cur_.text + "'");
    return lits;
  }

  Term term_only() {
    Term t = to_term(raw_term());
    if (cur_.kind != Tok::End) fail("trailing input '" + cur_.text + "'");
    return t;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, cur_.line, cur_.column); }

  void expect(const char *punct) {
    if (cur_.kind != Tok::Punct || cur_.text != punct) {
      fail(std::string("expected '") + punct + "' but found '" + cur_.text + "'");
    }
    shift();
  }

  bool at(const char *punct) const { return cur_.kind == Tok::Punct && cur_.text == punct; }

  void statement() {
    if (cur_.kind != Tok::LowerWord) fail("expected 'cnf'");
    if (cur_.text == "include") fail("include directives are not supported");
    if (cur_.text != "cnf") fail("unsupported statement '" + cur_.text + "'");
    shift();
    expect("(");
    if (cur_.kind != Tok::LowerWord && cur_.kind != Tok::Number && cur_.kind != Tok::Quoted &&
        cur_.kind != Tok::UpperWord) {
      fail("expected statement name");
    }
    std::string name = cur_.text;
    shift();
    expect(",");
    if (cur_.kind != Tok::LowerWord) fail("expected role");
    const Token role = cur_;
    if (role.text != "axiom" && role.text != "hypothesis" && role.text != "negated_conjecture") {
      fail("unknown role '" + role.text + "'");
    }
    shift();
    expect(",");
    var_names_.clear();
    std::vector<Literal> lits = formula();
    if (at(",")) skip_annotations();
    expect(")");
    expect(".");

    Clause c;
    c.literals = dedup_literals(std::move(lits));
    c.id = next_id_++;
    c.age = 0;
    c.name = std::move(name);
    c.from_negated_conjecture = role.text == "negated_conjecture";
    c.set_of_support = c.from_negated_conjecture;
    (c.from_negated_conjecture ? problem_->negated_conjecture : problem_->axioms).push_back(std::move(c));
  }

  void skip_annotations() {
    int depth = 0;
    while (cur_.kind != Tok::End) {
      if (depth == 0 && at(")")) return;
      if (at("(") || at("[")) ++depth;
      if (at(")") || at("]")) --depth;
      shift();
    }
    fail("unterminated annotations");
  }

  std::vector<Literal> formula() {
    if (at("(")) {
      shift();
      auto lits = disjunction();
      expect(")");
      return lits;
    }
    return disjunction();
  }

  std::vector<Literal> disjunction() {
    std::vector<Literal> lits;
    literal(lits);
    while (at("|")) {
      shift();
      literal(lits);
    }
    return lits;
  }

  void literal(std::vector<Literal> &out) {
    bool positive = true;
    if (at("~")) {
      positive = false;
      shift();
    }
    if (cur_.kind == Tok::Dollar) {
      if (cur_.text == "$false" && positive) {
        shift();
        return;  // contributes nothing to the disjunction
      }
      fail("unsupported literal '" + cur_.text + "'");
    }
    RawTerm lhs = raw_term();
    if (at("=") || at("!=")) {
      if (at("!=")) positive = !positive;
      shift();
      RawTerm rhs = raw_term();
      SymbolId eq = symbols_.intern("=", SymbolKind::Predicate, 2);
      std::vector<Term> args{to_term(lhs), to_term(rhs)};
      out.push_back(Literal{positive, Term::application(eq, std::move(args))});
      return;
    }
    if (lhs.is_var) throw ParseError("variable used as a predicate", lhs.line, lhs.column);
    SymbolId pred = intern_checked(lhs, SymbolKind::Predicate);
    std::vector<Term> args;
    for (const RawTerm &a : lhs.args) args.push_back(to_term(a));
    out.push_back(Literal{positive, Term::application(pred, std::move(args))});
  }

  SymbolId intern_checked(const RawTerm &raw, SymbolKind kind) {
    try {
      return symbols_.intern(raw.name, kind, static_cast<std::uint32_t>(raw.args.size()));
    } catch (const ArityConflict &e) {
      throw ParseError(std::string("arity conflict: ") + e.what(), raw.line, raw.column);
    }
  }

  Term to_term(const RawTerm &raw) {
    if (raw.is_var) {
      auto &names = external_vars_ ? *external_vars_ : var_names_;
      auto [it, inserted] = names.emplace(raw.name, next_var_);
      if (inserted) ++next_var_;
      return Term::variable(it->second);
    }
    SymbolId f = intern_checked(raw, SymbolKind::Function);
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const RawTerm &a : raw.args) args.push_back(to_term(a));
    return Term::application(f, std::move(args));
  }

  RawTerm raw_term() {
    RawTerm t;
    t.line = cur_.line;
    t.column = cur_.column;
    switch (cur_.kind) {
      case Tok::UpperWord:
        t.is_var = true;
        t.name = cur_.text;
        shift();
        return t;
      case Tok::LowerWord:
      case Tok::Quoted:
      case Tok::Number:
        t.name = cur_.text;
        shift();
        break;
      default:
        fail("expected a term but found '" + cur_.text + "'");
    }
    if (at("(")) {
      shift();
      t.args.push_back(raw_term());
      while (at(",")) {
        shift();
        t.args.push_back(raw_term());
      }
      expect(")");
    }
    return t;
  }

  Lexer lex_;
  Token cur_{Tok::End, "", 0, 0};
  Problem *problem_ = nullptr;
  SymbolTable &symbols_;
  std::map<std::string, VarId> *external_vars_ = nullptr;
  VarId &next_var_;
  std::map<std::string, VarId> var_names_;
  ClauseId next_id_ = 0;
};

}  // namespace

Problem parse_problem(std::string_view text, std::string name) {
  Problem problem;
  problem.name = std::move(name);
  Parser(text, problem).parse();
  return problem;
}

std::vector<Literal> parse_literals(std::string_view text, SymbolTable &symbols,
                                    std::map<std::string, VarId> &vars, VarId &next_var) {
  return Parser(text, symbols, vars, next_var).literals_only();
}

Term parse_term(std::string_view text, SymbolTable &symbols, std::map<std::string, VarId> &vars,
                VarId &next_var) {
  return Parser(text, symbols, vars, next_var).term_only();
}

Problem parse_problem_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_problem(buf.str(), name);
}

}  // namespace proofpilot::fol
