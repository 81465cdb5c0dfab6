#include "pasda/minilang/interp.hpp"

#include <cmath>
#include <map>

namespace pasda::minilang {

using sym::Value;

std::string to_string(const Effect& e) {
  if (e.kind == Effect::Kind::Return) return "RETURN " + sym::to_string(e.value);
  return "THROWN " + e.error_name;
}

namespace {

struct ThrownSignal {
  std::string name;
};

struct ReturnSignal {
  Value value;
};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

Value coerce(const Value& v, Ty ty) {
  if (ty == Ty::Real && v.type == sym::Type::Int) return Value::of_real(static_cast<double>(v.i));
  return v;
}

class Interp {
public:
  Interp(const Program& prog, std::int64_t fuel) : prog_(prog), fuel_(fuel) {}

  Value run_function(const FunctionDef& fn, const std::vector<Value>& args) {
    if (args.size() != fn.params.size()) {
      throw MiniLangError("arity mismatch calling '" + fn.name + "'");
    }
    std::vector<Scope> saved;
    saved.swap(scopes_);
    scopes_.emplace_back();
    for (size_t i = 0; i < fn.params.size(); ++i) {
      const auto& p = fn.params[i];
      if (p.ty == Ty::Int && args[i].type != sym::Type::Int) {
        throw MiniLangError("argument type mismatch for '" + p.name + "'");
      }
      scopes_.back().emplace(p.name, Binding{p.ty, coerce(args[i], p.ty)});
    }
    try {
      exec_block(fn.body);
    } catch (const ReturnSignal& r) {
      scopes_.swap(saved);
      return coerce(r.value, fn.return_ty);
    } catch (...) {
      scopes_.swap(saved);
      throw;
    }
    scopes_.swap(saved);
    throw MiniLangError("function '" + fn.name + "' fell off the end");
  }

private:
  struct Binding {
    Ty ty;
    Value value;
  };
  using Scope = std::map<std::string, Binding>;

  void spend_fuel() {
    if (--fuel_ < 0) throw FuelExhausted();
  }

  Binding& lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    throw MiniLangError("unbound variable '" + name + "'");
  }

  void exec_block(const std::vector<StmtPtr>& stmts) {
    scopes_.emplace_back();
    struct Pop {
      std::vector<Scope>& s;
      ~Pop() { s.pop_back(); }
    } pop{scopes_};
    for (const auto& s : stmts) exec_stmt(*s);
  }

  void exec_stmt(const Stmt& s) {
    spend_fuel();
    switch (s.kind) {
      case Stmt::Kind::Let: {
        Value v = eval(*s.value);
        scopes_.back().insert_or_assign(s.var, Binding{*s.declared_ty, coerce(v, *s.declared_ty)});
        break;
      }
      case Stmt::Kind::Assign: {
        Binding& b = lookup(s.var);
        Value v;
        if (s.is_compound) {
          v = arith(s.compound_op, b.value, eval(*s.value));
        } else {
          v = eval(*s.value);
        }
        b.value = coerce(v, b.ty);
        break;
      }
      case Stmt::Kind::If:
        if (eval_bool(*s.cond)) {
          exec_block(s.body);
        } else {
          exec_block(s.else_body);
        }
        break;
      case Stmt::Kind::While:
        while (true) {
          spend_fuel();
          if (!eval_bool(*s.cond)) break;
          exec_block(s.body);
        }
        break;
      case Stmt::Kind::For: {
        scopes_.emplace_back();
        struct Pop {
          std::vector<Scope>& s;
          ~Pop() { s.pop_back(); }
        } pop{scopes_};
        if (s.init) exec_stmt(*s.init);
        while (true) {
          spend_fuel();
          if (s.cond && !eval_bool(*s.cond)) break;
          exec_block(s.body);
          if (s.step) exec_stmt(*s.step);
        }
        break;
      }
      case Stmt::Kind::Return: throw ReturnSignal{eval(*s.value)};
      case Stmt::Kind::Fail: throw ThrownSignal{s.error_name};
    }
  }

  Value arith(sym::BinOp op, const Value& l, const Value& r) {
    if (l.type == sym::Type::Int && r.type == sym::Type::Int) {
      std::int64_t a = l.i, b = r.i;
      switch (op) {
        case sym::BinOp::Add: return Value::of_int(wrap_add(a, b));
        case sym::BinOp::Sub: return Value::of_int(wrap_sub(a, b));
        case sym::BinOp::Mul: return Value::of_int(wrap_mul(a, b));
        case sym::BinOp::Div:
          if (b == 0) throw ThrownSignal{"DivByZero"};
          if (a == INT64_MIN && b == -1) return Value::of_int(INT64_MIN);
          return Value::of_int(a / b);
        case sym::BinOp::Mod:
          if (b == 0) throw ThrownSignal{"DivByZero"};
          if (a == INT64_MIN && b == -1) return Value::of_int(0);
          return Value::of_int(a % b);
      }
    }
    double a = l.as_real(), b = r.as_real();
    switch (op) {
      case sym::BinOp::Add: return Value::of_real(a + b);
      case sym::BinOp::Sub: return Value::of_real(a - b);
      case sym::BinOp::Mul: return Value::of_real(a * b);
      case sym::BinOp::Div:
        if (b == 0.0) throw ThrownSignal{"DivByZero"};
        return Value::of_real(a / b);
      case sym::BinOp::Mod: throw MiniLangError("'%' on real operands");
    }
    throw MiniLangError("unreachable arithmetic");
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::IntLit: return Value::of_int(e.int_val);
      case Expr::Kind::RealLit: return Value::of_real(e.real_val);
      case Expr::Kind::Var: return lookup(e.name).value;
      case Expr::Kind::Neg: {
        Value v = eval(*e.args[0]);
        if (v.type == sym::Type::Int) return Value::of_int(wrap_sub(0, v.i));
        return Value::of_real(-v.r);
      }
      case Expr::Kind::Arith: return arith(e.arith, eval(*e.args[0]), eval(*e.args[1]));
      case Expr::Kind::Call: {
        std::vector<Value> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(eval(*a));
        if (e.intrinsic) return sym::eval_intrinsic(*e.intrinsic, args);
        return run_function(prog_.functions[e.callee_index], args);
      }
      case Expr::Kind::Uif:
        throw MiniLangError("cannot interpret an abstracted function");
      default: throw MiniLangError("boolean expression in scalar position");
    }
  }

  bool eval_bool(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Cmp: {
        Value l = eval(*e.args[0]);
        Value r = eval(*e.args[1]);
        if (l.type == sym::Type::Int && r.type == sym::Type::Int) {
          switch (e.cmp) {
            case sym::CmpOp::Eq: return l.i == r.i;
            case sym::CmpOp::Ne: return l.i != r.i;
            case sym::CmpOp::Lt: return l.i < r.i;
            case sym::CmpOp::Le: return l.i <= r.i;
            case sym::CmpOp::Gt: return l.i > r.i;
            case sym::CmpOp::Ge: return l.i >= r.i;
          }
        }
        double a = l.as_real(), b = r.as_real();
        switch (e.cmp) {
          case sym::CmpOp::Eq: return a == b;
          case sym::CmpOp::Ne: return a != b;
          case sym::CmpOp::Lt: return a < b;
          case sym::CmpOp::Le: return a <= b;
          case sym::CmpOp::Gt: return a > b;
          case sym::CmpOp::Ge: return a >= b;
        }
        return false;
      }
      case Expr::Kind::Bool:
        if (e.bop == Expr::BoolOp::And) {
          return eval_bool(*e.args[0]) && eval_bool(*e.args[1]);  // short-circuit
        }
        return eval_bool(*e.args[0]) || eval_bool(*e.args[1]);
      case Expr::Kind::Not: return !eval_bool(*e.args[0]);
      default: throw MiniLangError("scalar expression in boolean position");
    }
  }

  const Program& prog_;
  std::vector<Scope> scopes_;
  std::int64_t fuel_;
};

}  // namespace

Effect interpret(const FunctionDef& fn, const ConcreteInput& input, const Program& prog,
                 const InterpOptions& opts) {
  Interp interp(prog, opts.fuel);
  try {
    return Effect::returned(interp.run_function(fn, input));
  } catch (const ThrownSignal& t) {
    return Effect::thrown(t.name);
  }
}

}  // namespace pasda::minilang
