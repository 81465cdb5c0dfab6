#include "pasda/sym/eval.hpp"

#include <cmath>
#include <sstream>

namespace pasda::sym {

std::string to_string(const Value& v) {
  if (v.type == Type::Int) return std::to_string(v.i);
  std::ostringstream os;
  os.precision(17);
  os << v.r;
  std::string s = os.str();
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

namespace {

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

}  // namespace

Value eval_intrinsic(Intrinsic fn, const std::vector<Value>& args) {
  bool all_int = true;
  for (const auto& a : args) all_int = all_int && a.type == Type::Int;
  if (all_int && (fn == Intrinsic::Abs || fn == Intrinsic::Min || fn == Intrinsic::Max)) {
    std::int64_t a = args[0].i;
    switch (fn) {
      case Intrinsic::Abs: return Value::of_int(a < 0 ? wrap_sub(0, a) : a);
      case Intrinsic::Min: return Value::of_int(std::min(a, args[1].i));
      case Intrinsic::Max: return Value::of_int(std::max(a, args[1].i));
      default: break;
    }
  }
  double a = args[0].as_real();
  double b = args.size() > 1 ? args[1].as_real() : 0.0;
  switch (fn) {
    case Intrinsic::Tan: return Value::of_real(std::tan(a));
    case Intrinsic::Sin: return Value::of_real(std::sin(a));
    case Intrinsic::Cos: return Value::of_real(std::cos(a));
    case Intrinsic::Sqrt: return Value::of_real(std::sqrt(a));
    case Intrinsic::Log: return Value::of_real(std::log(a));
    case Intrinsic::Pow: return Value::of_real(std::pow(a, b));
    case Intrinsic::Abs: return Value::of_real(std::fabs(a));
    case Intrinsic::Min: return Value::of_real(std::min(a, b));
    case Intrinsic::Max: return Value::of_real(std::max(a, b));
  }
  return Value::of_real(0.0);
}

std::optional<Value> eval(const ExprPtr& e, const Assignment& asg) {
  switch (e->kind) {
    case Expr::Kind::IntConst: return Value::of_int(e->int_val);
    case Expr::Kind::RealConst: return Value::of_real(e->real_val);
    case Expr::Kind::Symbol: {
      auto it = asg.vars.find(e->name);
      if (it == asg.vars.end()) return std::nullopt;
      return it->second;
    }
    case Expr::Kind::Neg: {
      auto v = eval(e->args[0], asg);
      if (!v) return std::nullopt;
      if (v->type == Type::Int) return Value::of_int(wrap_sub(0, v->i));
      return Value::of_real(-v->r);
    }
    case Expr::Kind::IntToReal: {
      auto v = eval(e->args[0], asg);
      if (!v) return std::nullopt;
      return Value::of_real(v->as_real());
    }
    case Expr::Kind::Bin: {
      auto l = eval(e->args[0], asg);
      auto r = eval(e->args[1], asg);
      if (!l || !r) return std::nullopt;
      if (e->type == Type::Int) {
        std::int64_t a = l->i, b = r->i;
        switch (e->op) {
          case BinOp::Add: return Value::of_int(wrap_add(a, b));
          case BinOp::Sub: return Value::of_int(wrap_sub(a, b));
          case BinOp::Mul: return Value::of_int(wrap_mul(a, b));
          case BinOp::Div:
            if (b == 0) return std::nullopt;
            if (a == INT64_MIN && b == -1) return Value::of_int(INT64_MIN);
            return Value::of_int(a / b);
          case BinOp::Mod:
            if (b == 0) return std::nullopt;
            if (a == INT64_MIN && b == -1) return Value::of_int(0);
            return Value::of_int(a % b);
        }
      }
      double a = l->as_real(), b = r->as_real();
      switch (e->op) {
        case BinOp::Add: return Value::of_real(a + b);
        case BinOp::Sub: return Value::of_real(a - b);
        case BinOp::Mul: return Value::of_real(a * b);
        case BinOp::Div:
          if (b == 0.0) return std::nullopt;
          return Value::of_real(a / b);
        case BinOp::Mod: return std::nullopt;
      }
      return std::nullopt;
    }
    case Expr::Kind::Call: {
      std::vector<Value> args;
      args.reserve(e->args.size());
      for (const auto& a : e->args) {
        auto v = eval(a, asg);
        if (!v) return std::nullopt;
        args.push_back(*v);
      }
      return eval_intrinsic(e->fn, args);
    }
    case Expr::Kind::Uif: {
      UifKey key;
      key.id = e->uif_id;
      for (const auto& a : e->args) {
        auto v = eval(a, asg);
        if (!v) return std::nullopt;
        key.args.push_back(*v);
      }
      auto it = asg.uif_tables.find(key);
      if (it == asg.uif_tables.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

std::optional<bool> eval(const FormulaPtr& f, const Assignment& asg) {
  switch (f->kind) {
    case Formula::Kind::Const: return f->value;
    case Formula::Kind::Cmp: {
      auto l = eval(f->lhs, asg);
      auto r = eval(f->rhs, asg);
      if (!l || !r) return std::nullopt;
      if (l->type == Type::Int && r->type == Type::Int) {
        std::int64_t a = l->i, b = r->i;
        switch (f->op) {
          case CmpOp::Eq: return a == b;
          case CmpOp::Ne: return a != b;
          case CmpOp::Lt: return a < b;
          case CmpOp::Le: return a <= b;
          case CmpOp::Gt: return a > b;
          case CmpOp::Ge: return a >= b;
        }
      }
      double a = l->as_real(), b = r->as_real();
      switch (f->op) {
        case CmpOp::Eq: return a == b;
        case CmpOp::Ne: return a != b;
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
      }
      return std::nullopt;
    }
    case Formula::Kind::And: {
      for (const auto& p : f->parts) {
        auto v = eval(p, asg);
        if (!v) return std::nullopt;
        if (!*v) return false;
      }
      return true;
    }
    case Formula::Kind::Or: {
      for (const auto& p : f->parts) {
        auto v = eval(p, asg);
        if (!v) return std::nullopt;
        if (*v) return true;
      }
      return false;
    }
    case Formula::Kind::Not: {
      auto v = eval(f->parts[0], asg);
      if (!v) return std::nullopt;
      return !*v;
    }
  }
  return std::nullopt;
}

}  // namespace pasda::sym
