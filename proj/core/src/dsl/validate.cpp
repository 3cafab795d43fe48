#include "lumenloop/dsl/validate.hpp"

#include <map>
#include <optional>
#include <set>

#include "lumenloop/dsl/format.hpp"
#include "lumenloop/dsl/parser.hpp"

namespace lumenloop::dsl {
namespace {

// Value of an expression built only from literals, if any.
std::optional<double> constant_value(const Expr& e) {
  if (const auto* n = std::get_if<NumberLit>(&e.node)) {
    return n->value;
  }
  if (const auto* neg = std::get_if<Negate>(&e.node)) {
    if (auto v = constant_value(*neg->operand)) {
      return -*v;
    }
    return std::nullopt;
  }
  if (const auto* a = std::get_if<Arith>(&e.node)) {
    const auto l = constant_value(*a->lhs);
    const auto r = constant_value(*a->rhs);
    if (!l || !r) {
      return std::nullopt;
    }
    switch (a->op) {
      case ArithOp::add: return *l + *r;
      case ArithOp::sub: return *l - *r;
      case ArithOp::mul: return *l * *r;
      case ArithOp::div: return *r == 0.0 ? 0.0 : *l / *r;
    }
  }
  return std::nullopt;
}

class Validator {
 public:
  std::vector<Diagnostic> run(const RuleProgram& p) {
    if (p.token_count > kMaxTokens) {
      error({1, 1}, "program has " + std::to_string(p.token_count) + " tokens; the limit is " +
                         std::to_string(kMaxTokens));
    }
    const int d = depth(p);
    if (d > kMaxDepth) {
      error({1, 1}, "program nesting depth " + std::to_string(d) + " exceeds the limit of " +
                         std::to_string(kMaxDepth));
    }
    block(p.statements);
    for (const auto& [name, pos] : reads_) {
      if (!writes_.contains(name)) {
        warn(pos, "mem." + name + " is never assigned and always reads 0");
      }
    }
    return std::move(out_);
  }

 private:
  void error(SourcePos pos, std::string msg) { out_.push_back({Severity::error, pos, std::move(msg)}); }
  void warn(SourcePos pos, std::string msg) { out_.push_back({Severity::warning, pos, std::move(msg)}); }

  void block(const Block& b) {
    for (const auto& s : b) {
      if (const auto* a = std::get_if<Assignment>(&s.node)) {
        assignment(*a, s.pos);
      } else {
        const auto& i = std::get<IfStmt>(s.node);
        cond(*i.cond);
        block(i.then_block);
        if (i.else_block) {
          block(*i.else_block);
        }
      }
    }
  }

  void assignment(const Assignment& a, SourcePos pos) {
    switch (a.target.kind) {
      case Target::Kind::other:
        if (sensor_from_name(a.target.name)) {
          error(pos, "cannot assign to sensor '" + a.target.name + "'");
        } else {
          error(pos, "unknown identifier '" + a.target.name + "'");
        }
        break;
      case Target::Kind::mem:
        writes_.insert(a.target.name);
        break;
      case Target::Kind::light:
      case Target::Kind::broadcast:
        if (auto v = constant_value(*a.value); v && (*v < 0.0 || *v > 1.0)) {
          warn(pos, "constant " + format_number(*v) + " is outside [0, 1] and will be clamped at runtime");
        }
        break;
      case Target::Kind::listen:
        if (auto v = constant_value(*a.value); v && (*v < 0.0 || *v > 1.0)) {
          warn(pos, "constant " + format_number(*v) + " is outside [0, 1]; listen is on when the value is >= 0.5");
        }
        break;
    }
    expr(*a.value);
  }

  void expr(const Expr& e) {
    if (const auto* u = std::get_if<UnknownRef>(&e.node)) {
      error(e.pos, "unknown identifier '" + u->name + "'");
    } else if (const auto* m = std::get_if<MemRef>(&e.node)) {
      reads_.emplace(m->name, e.pos);
    } else if (const auto* n = std::get_if<Negate>(&e.node)) {
      expr(*n->operand);
    } else if (const auto* a = std::get_if<Arith>(&e.node)) {
      expr(*a->lhs);
      expr(*a->rhs);
    }
  }

  void cond(const Cond& c) {
    if (const auto* cmp = std::get_if<Compare>(&c.node)) {
      expr(*cmp->lhs);
      expr(*cmp->rhs);
    } else if (const auto* n = std::get_if<Not>(&c.node)) {
      cond(*n->operand);
    } else if (const auto* l = std::get_if<Logic>(&c.node)) {
      cond(*l->lhs);
      cond(*l->rhs);
    }
  }

  std::vector<Diagnostic> out_;
  std::set<std::string> writes_;
  std::map<std::string, SourcePos> reads_;  // first read of each slot
};

}  // namespace

std::vector<Diagnostic> validate(const RuleProgram& program) { return Validator{}.run(program); }

RuleProgram compile(std::string_view source) {
  RuleProgram program = parse_program(source);
  auto diagnostics = validate(program);
  if (has_errors(diagnostics)) {
    throw ProgramError(std::move(diagnostics));
  }
  return program;
}

}  // namespace lumenloop::dsl
