#include "lumenloop/dsl/parser.hpp"

#include <optional>

namespace lumenloop::dsl {
namespace {

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {
    if (!tokens.empty()) {
      const Token& last = tokens.back();
      end_pos_ = SourcePos{last.pos.line, last.pos.column + static_cast<int>(last.lexeme.size())};
    }
  }

  RuleProgram program() {
    RuleProgram p;
    p.statements = block({});
    if (!at_end()) {
      fail({"statement"});
    }
    p.token_count = tokens_.size();
    return p;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.nesting_ > kParserNestingLimit) {
        throw ParseError(parser.pos(), "program is nested too deeply");
      }
    }
    ~DepthGuard() { --parser.nesting_; }
    Parser& parser;
  };

  bool at_end() const { return index_ >= tokens_.size(); }
  const Token* peek() const { return at_end() ? nullptr : &tokens_[index_]; }
  SourcePos pos() const { return at_end() ? end_pos_ : tokens_[index_].pos; }

  bool check(TokenKind kind, std::string_view lexeme) const {
    const Token* t = peek();
    return t != nullptr && t->kind == kind && t->lexeme == lexeme;
  }

  bool accept(TokenKind kind, std::string_view lexeme) {
    if (check(kind, lexeme)) {
      ++index_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) {
        msg += i + 1 == expected.size() ? " or " : ", ";
      }
      msg += expected[i];
    }
    const Token* t = peek();
    msg += t == nullptr ? " but reached end of input" : " but found '" + t->lexeme + "'";
    throw ParseError(pos(), msg, std::move(expected));
  }

  void expect(TokenKind kind, std::string_view lexeme) {
    if (!accept(kind, lexeme)) {
      fail({"'" + std::string(lexeme) + "'"});
    }
  }

  // Statements until one of the terminator keywords (or end of input).
  Block block(std::initializer_list<std::string_view> terminators) {
    Block out;
    while (!at_end()) {
      for (auto term : terminators) {
        if (check(TokenKind::keyword, term)) {
          return out;
        }
      }
      out.push_back(statement());
    }
    return out;
  }

  Statement statement() {
    DepthGuard guard(*this);
    const SourcePos start = pos();
    if (accept(TokenKind::keyword, "if")) {
      IfStmt s;
      s.cond = cond();
      expect(TokenKind::keyword, "then");
      s.then_block = block({"else", "end"});
      if (accept(TokenKind::keyword, "else")) {
        s.else_block = block({"end"});
      }
      if (!accept(TokenKind::keyword, "end")) {
        fail(s.else_block ? std::vector<std::string>{"statement", "'end'"}
                          : std::vector<std::string>{"statement", "'else'", "'end'"});
      }
      return Statement{std::move(s), start};
    }
    const Token* t = peek();
    if (t == nullptr || t->kind != TokenKind::identifier) {
      fail({"statement"});
    }
    Assignment a;
    a.target = target();
    expect(TokenKind::op, "=");
    a.value = expr();
    return Statement{std::move(a), start};
  }

  Target target() {
    const Token& t = tokens_[index_++];
    if (t.lexeme == "mem") {
      return Target{Target::Kind::mem, mem_slot()};
    }
    if (t.lexeme == "light") return Target{Target::Kind::light, {}};
    if (t.lexeme == "listen") return Target{Target::Kind::listen, {}};
    if (t.lexeme == "broadcast") return Target{Target::Kind::broadcast, {}};
    return Target{Target::Kind::other, t.lexeme};
  }

  // After 'mem': "." ident
  std::string mem_slot() {
    expect(TokenKind::punctuation, ".");
    const Token* t = peek();
    if (t == nullptr || t->kind != TokenKind::identifier) {
      fail({"memory slot name"});
    }
    ++index_;
    return t->lexeme;
  }

  CondPtr cond() {
    DepthGuard guard(*this);
    const SourcePos start = pos();
    CondPtr lhs = and_cond();
    while (accept(TokenKind::keyword, "or")) {
      lhs = make_cond(Logic{LogicOp::op_or, lhs, and_cond()}, start);
    }
    return lhs;
  }

  CondPtr and_cond() {
    const SourcePos start = pos();
    CondPtr lhs = not_cond();
    while (accept(TokenKind::keyword, "and")) {
      lhs = make_cond(Logic{LogicOp::op_and, lhs, not_cond()}, start);
    }
    return lhs;
  }

  CondPtr not_cond() {
    const SourcePos start = pos();
    if (accept(TokenKind::keyword, "not")) {
      return make_cond(Not{atom_cond()}, start);
    }
    return atom_cond();
  }

  static std::optional<CompareOp> comparator(const Token* t) {
    if (t == nullptr || t->kind != TokenKind::comparator) return std::nullopt;
    if (t->lexeme == "<") return CompareOp::lt;
    if (t->lexeme == "<=") return CompareOp::le;
    if (t->lexeme == ">") return CompareOp::gt;
    if (t->lexeme == ">=") return CompareOp::ge;
    if (t->lexeme == "==") return CompareOp::eq;
    return CompareOp::ne;
  }

  // comparison | "(" cond ")" | "motion". A comparison is tried first; on
  // failure the parser backtracks and reports whichever error got furthest.
  CondPtr atom_cond() {
    DepthGuard guard(*this);
    const SourcePos start = pos();
    const std::size_t mark = index_;
    std::optional<ParseError> comparison_error;
    try {
      ExprPtr lhs = expr();
      const auto op = comparator(peek());
      if (!op) {
        fail({"comparison operator"});
      }
      ++index_;
      ExprPtr rhs = expr();
      return make_cond(Compare{*op, lhs, rhs}, start);
    } catch (const ParseError& e) {
      comparison_error = e;
    }

    const std::size_t comparison_reach = index_;
    index_ = mark;
    if (check(TokenKind::identifier, "motion") && comparison_reach == mark + 1) {
      ++index_;
      return make_cond(MotionTest{}, start);
    }
    if (accept(TokenKind::punctuation, "(")) {
      try {
        CondPtr inner = cond();
        expect(TokenKind::punctuation, ")");
        return inner;
      } catch (const ParseError& e) {
        if (comparison_error->diagnostic().pos > e.diagnostic().pos) {
          throw *comparison_error;
        }
        throw;
      }
    }
    if (comparison_reach == mark) {
      fail({"comparison", "'('", "'motion'"});
    }
    throw *comparison_error;
  }

  ExprPtr expr() {
    DepthGuard guard(*this);
    const SourcePos start = pos();
    ExprPtr lhs = term();
    while (true) {
      if (accept(TokenKind::op, "+")) {
        lhs = make_expr(Arith{ArithOp::add, lhs, term()}, start);
      } else if (accept(TokenKind::op, "-")) {
        lhs = make_expr(Arith{ArithOp::sub, lhs, term()}, start);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    const SourcePos start = pos();
    ExprPtr lhs = factor();
    while (true) {
      if (accept(TokenKind::op, "*")) {
        lhs = make_expr(Arith{ArithOp::mul, lhs, factor()}, start);
      } else if (accept(TokenKind::op, "/")) {
        lhs = make_expr(Arith{ArithOp::div, lhs, factor()}, start);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    DepthGuard guard(*this);
    const SourcePos start = pos();
    const Token* t = peek();
    if (t == nullptr) {
      fail({"expression"});
    }
    if (t->kind == TokenKind::number) {
      ++index_;
      return make_expr(NumberLit{t->number}, start);
    }
    if (t->kind == TokenKind::identifier) {
      ++index_;
      if (t->lexeme == "mem") {
        return make_expr(MemRef{mem_slot()}, start);
      }
      if (auto s = sensor_from_name(t->lexeme)) {
        return make_expr(SensorRef{*s}, start);
      }
      return make_expr(UnknownRef{t->lexeme}, start);
    }
    if (accept(TokenKind::punctuation, "(")) {
      ExprPtr inner = expr();
      expect(TokenKind::punctuation, ")");
      return inner;
    }
    if (accept(TokenKind::op, "-")) {
      return make_expr(Negate{factor()}, start);
    }
    fail({"expression"});
  }

  std::span<const Token> tokens_;
  std::size_t index_ = 0;
  SourcePos end_pos_;
  int nesting_ = 0;
};

}  // namespace

RuleProgram parse(std::span<const Token> tokens) { return Parser(tokens).program(); }

RuleProgram parse_program(std::string_view source) {
  const auto tokens = tokenize(source);
  return parse(tokens);
}

}  // namespace lumenloop::dsl
