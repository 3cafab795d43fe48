#include "lumenloop/dsl/format.hpp"

#include <charconv>
#include <cmath>

namespace lumenloop::dsl {
namespace {

int precedence(const Expr& e) {
  if (const auto* a = std::get_if<Arith>(&e.node)) {
    return a->op == ArithOp::add || a->op == ArithOp::sub ? 1 : 2;
  }
  return 3;
}

int precedence(const Cond& c) {
  if (const auto* l = std::get_if<Logic>(&c.node)) {
    return l->op == LogicOp::op_or ? 1 : 2;
  }
  return 3;
}

std::string wrap(std::string s, bool parens) { return parens ? "(" + s + ")" : s; }

std::string target_text(const Target& t) {
  switch (t.kind) {
    case Target::Kind::light: return "light";
    case Target::Kind::listen: return "listen";
    case Target::Kind::broadcast: return "broadcast";
    case Target::Kind::mem: return "mem." + t.name;
    case Target::Kind::other: return t.name;
  }
  return t.name;
}

void format_block(const Block& block, int indent, std::string& out);

void format_statement(const Statement& s, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (const auto* a = std::get_if<Assignment>(&s.node)) {
    out += pad + target_text(a->target) + " = " + format_expr(*a->value) + "\n";
    return;
  }
  const auto& i = std::get<IfStmt>(s.node);
  out += pad + "if " + format_cond(*i.cond) + " then\n";
  format_block(i.then_block, indent + 1, out);
  if (i.else_block) {
    out += pad + "else\n";
    format_block(*i.else_block, indent + 1, out);
  }
  out += pad + "end\n";
}

void format_block(const Block& block, int indent, std::string& out) {
  for (const auto& s : block) {
    format_statement(s, indent, out);
  }
}

}  // namespace

std::string format_number(double value) {
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  std::string s(buf, ec == std::errc{} ? ptr : buf);
  if (s.find('.') == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string format_expr(const Expr& e) {
  if (const auto* n = std::get_if<NumberLit>(&e.node)) {
    return format_number(n->value);
  }
  if (const auto* s = std::get_if<SensorRef>(&e.node)) {
    return std::string(to_string(s->sensor));
  }
  if (const auto* m = std::get_if<MemRef>(&e.node)) {
    return "mem." + m->name;
  }
  if (const auto* u = std::get_if<UnknownRef>(&e.node)) {
    return u->name;
  }
  if (const auto* neg = std::get_if<Negate>(&e.node)) {
    return "-" + wrap(format_expr(*neg->operand), precedence(*neg->operand) < 3);
  }
  const auto& a = std::get<Arith>(e.node);
  const int p = precedence(e);
  return wrap(format_expr(*a.lhs), precedence(*a.lhs) < p) + " " + std::string(to_string(a.op)) + " " +
         wrap(format_expr(*a.rhs), precedence(*a.rhs) <= p);
}

std::string format_cond(const Cond& c) {
  if (const auto* cmp = std::get_if<Compare>(&c.node)) {
    return format_expr(*cmp->lhs) + " " + std::string(to_string(cmp->op)) + " " + format_expr(*cmp->rhs);
  }
  if (std::holds_alternative<MotionTest>(c.node)) {
    return "motion";
  }
  if (const auto* n = std::get_if<Not>(&c.node)) {
    const bool atom = std::holds_alternative<Compare>(n->operand->node) ||
                      std::holds_alternative<MotionTest>(n->operand->node);
    return "not " + wrap(format_cond(*n->operand), !atom);
  }
  const auto& l = std::get<Logic>(c.node);
  const int p = precedence(c);
  return wrap(format_cond(*l.lhs), precedence(*l.lhs) < p) + (l.op == LogicOp::op_and ? " and " : " or ") +
         wrap(format_cond(*l.rhs), precedence(*l.rhs) <= p);
}

std::string format_program(const RuleProgram& program) {
  std::string out;
  format_block(program.statements, 0, out);
  if (!out.empty()) {
    out.pop_back();
  }
  return out;
}

}  // namespace lumenloop::dsl
