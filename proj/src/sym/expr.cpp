#include "pasda/sym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pasda::sym {

const char* intrinsic_name(Intrinsic f) {
  switch (f) {
    case Intrinsic::Tan: return "tan";
    case Intrinsic::Sin: return "sin";
    case Intrinsic::Cos: return "cos";
    case Intrinsic::Sqrt: return "sqrt";
    case Intrinsic::Log: return "log";
    case Intrinsic::Pow: return "pow";
    case Intrinsic::Abs: return "abs";
    case Intrinsic::Min: return "min";
    case Intrinsic::Max: return "max";
  }
  return "?";
}

int intrinsic_arity(Intrinsic f) {
  switch (f) {
    case Intrinsic::Pow:
    case Intrinsic::Min:
    case Intrinsic::Max: return 2;
    default: return 1;
  }
}

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

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

ExprPtr int_const(std::int64_t v) {
  Expr e;
  e.kind = Expr::Kind::IntConst;
  e.type = Type::Int;
  e.int_val = v;
  return make(std::move(e));
}

ExprPtr real_const(double v) {
  Expr e;
  e.kind = Expr::Kind::RealConst;
  e.type = Type::Real;
  e.real_val = v;
  return make(std::move(e));
}

ExprPtr symbol(const std::string& name, Type t) {
  Expr e;
  e.kind = Expr::Kind::Symbol;
  e.type = t;
  e.name = name;
  return make(std::move(e));
}

bool is_const(const ExprPtr& e) {
  return e->kind == Expr::Kind::IntConst || e->kind == Expr::Kind::RealConst;
}

ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  Type t = (lhs->type == Type::Real || rhs->type == Type::Real) ? Type::Real : Type::Int;
  if (t == Type::Real) {
    if (lhs->type == Type::Int) lhs = to_real(lhs);
    if (rhs->type == Type::Int) rhs = to_real(rhs);
  }
  // Constant folding. Division/modulo by a constant zero is left symbolic;
  // the executor decides how a division by zero surfaces.
  if (is_const(lhs) && is_const(rhs)) {
    if (t == Type::Int) {
      std::int64_t a = lhs->int_val, b = rhs->int_val;
      switch (op) {
        case BinOp::Add: return int_const(wrap_add(a, b));
        case BinOp::Sub: return int_const(wrap_sub(a, b));
        case BinOp::Mul: return int_const(wrap_mul(a, b));
        case BinOp::Div:
          if (b != 0) {
            if (a == INT64_MIN && b == -1) return int_const(INT64_MIN);
            return int_const(a / b);
          }
          break;
        case BinOp::Mod:
          if (b != 0) {
            if (a == INT64_MIN && b == -1) return int_const(0);
            return int_const(a % b);
          }
          break;
      }
    } else {
      double a = lhs->real_val, b = rhs->real_val;
      switch (op) {
        case BinOp::Add: return real_const(a + b);
        case BinOp::Sub: return real_const(a - b);
        case BinOp::Mul: return real_const(a * b);
        case BinOp::Div:
          if (b != 0.0) return real_const(a / b);
          break;
        case BinOp::Mod: break;
      }
    }
  }
  Expr e;
  e.kind = Expr::Kind::Bin;
  e.type = t;
  e.op = op;
  e.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(e));
}

ExprPtr negate(ExprPtr e) {
  if (e->kind == Expr::Kind::IntConst) return int_const(wrap_sub(0, e->int_val));
  if (e->kind == Expr::Kind::RealConst) return real_const(-e->real_val);
  if (e->kind == Expr::Kind::Neg) return e->args[0];
  Expr n;
  n.kind = Expr::Kind::Neg;
  n.type = e->type;
  n.args = {std::move(e)};
  return make(std::move(n));
}

ExprPtr to_real(ExprPtr e) {
  if (e->type == Type::Real) return e;
  if (e->kind == Expr::Kind::IntConst) return real_const(static_cast<double>(e->int_val));
  Expr c;
  c.kind = Expr::Kind::IntToReal;
  c.type = Type::Real;
  c.args = {std::move(e)};
  return make(std::move(c));
}

ExprPtr call(Intrinsic fn, std::vector<ExprPtr> args) {
  bool all_const = true;
  bool all_int = true;
  for (const auto& a : args) {
    all_const = all_const && is_const(a);
    all_int = all_int && a->type == Type::Int;
  }
  // abs/min/max stay in the int domain when all arguments are ints;
  // everything else is a real function.
  bool int_result =
      all_int && (fn == Intrinsic::Abs || fn == Intrinsic::Min || fn == Intrinsic::Max);
  if (all_const && int_result) {
    std::int64_t a = args[0]->int_val;
    switch (fn) {
      case Intrinsic::Abs: return int_const(a < 0 ? wrap_sub(0, a) : a);
      case Intrinsic::Min: return int_const(std::min(a, args[1]->int_val));
      case Intrinsic::Max: return int_const(std::max(a, args[1]->int_val));
      default: break;
    }
  }
  if (!int_result) {
    for (auto& a : args) a = to_real(a);
    if (all_const) {
      double a = args[0]->real_val;
      // tan/sin/cos/log applications are not folded here: the solver layer
      // keeps them visible so its trust policy can see them.
      switch (fn) {
        case Intrinsic::Sqrt: return real_const(std::sqrt(a));
        case Intrinsic::Abs: return real_const(std::fabs(a));
        case Intrinsic::Min: return real_const(std::min(a, args[1]->real_val));
        case Intrinsic::Max: return real_const(std::max(a, args[1]->real_val));
        case Intrinsic::Pow: return real_const(std::pow(a, args[1]->real_val));
        default: break;
      }
    }
  }
  Expr e;
  e.kind = Expr::Kind::Call;
  e.type = int_result ? Type::Int : Type::Real;
  e.fn = fn;
  e.args = std::move(args);
  return make(std::move(e));
}

ExprPtr uif_app(int uif_id, std::vector<ExprPtr> args, Type result_type) {
  Expr e;
  e.kind = Expr::Kind::Uif;
  e.type = result_type;
  e.uif_id = uif_id;
  e.args = std::move(args);
  return make(std::move(e));
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  return compare_expr(a, b) == 0;
}

int compare_expr(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->type != b->type) return a->type < b->type ? -1 : 1;
  auto cmp_args = [&]() {
    if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
    for (size_t i = 0; i < a->args.size(); ++i) {
      int c = compare_expr(a->args[i], b->args[i]);
      if (c != 0) return c;
    }
    return 0;
  };
  switch (a->kind) {
    case Expr::Kind::IntConst:
      if (a->int_val != b->int_val) return a->int_val < b->int_val ? -1 : 1;
      return 0;
    case Expr::Kind::RealConst:
      if (a->real_val != b->real_val) return a->real_val < b->real_val ? -1 : 1;
      return 0;
    case Expr::Kind::Symbol: return a->name.compare(b->name);
    case Expr::Kind::Bin:
      if (a->op != b->op) return a->op < b->op ? -1 : 1;
      return cmp_args();
    case Expr::Kind::Neg:
    case Expr::Kind::IntToReal: return cmp_args();
    case Expr::Kind::Call:
      if (a->fn != b->fn) return a->fn < b->fn ? -1 : 1;
      return cmp_args();
    case Expr::Kind::Uif:
      if (a->uif_id != b->uif_id) return a->uif_id < b->uif_id ? -1 : 1;
      return cmp_args();
  }
  return 0;
}

namespace {

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::Bin) {
    return (e.op == BinOp::Add || e.op == BinOp::Sub) ? 1 : 2;
  }
  if (e.kind == Expr::Kind::Neg) return 3;
  return 4;
}

void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  int prec = precedence(*e);
  bool paren = prec < parent_prec;
  if (paren) os << '(';
  switch (e->kind) {
    case Expr::Kind::IntConst: os << e->int_val; break;
    case Expr::Kind::RealConst: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << e->real_val;
      std::string s = tmp.str();
      os << s;
      if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
          s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        os << ".0";
      }
      break;
    }
    case Expr::Kind::Symbol: os << e->name; break;
    case Expr::Kind::Bin: {
      const char* opstr = "?";
      switch (e->op) {
        case BinOp::Add: opstr = " + "; break;
        case BinOp::Sub: opstr = " - "; break;
        case BinOp::Mul: opstr = " * "; break;
        case BinOp::Div: opstr = " / "; break;
        case BinOp::Mod: opstr = " % "; break;
      }
      print_expr(os, e->args[0], prec);
      os << opstr;
      // Right operand needs one level more to keep a-b-c left associative.
      print_expr(os, e->args[1], prec + 1);
      break;
    }
    case Expr::Kind::Neg:
      os << '-';
      print_expr(os, e->args[0], prec + 1);
      break;
    case Expr::Kind::IntToReal: print_expr(os, e->args[0], parent_prec); break;
    case Expr::Kind::Call: {
      os << intrinsic_name(e->fn) << '(';
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, e->args[i], 0);
      }
      os << ')';
      break;
    }
    case Expr::Kind::Uif: {
      os << "uif_" << e->uif_id << '(';
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, e->args[i], 0);
      }
      os << ')';
      break;
    }
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

CmpOp negate_cmp(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
  }
  return CmpOp::Eq;
}

const char* cmp_op_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

namespace {
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr bool_const(bool v) {
  Formula f;
  f.kind = Formula::Kind::Const;
  f.value = v;
  return make(std::move(f));
}

FormulaPtr cmp(CmpOp op, ExprPtr lhs, ExprPtr rhs) {
  if (lhs->type != rhs->type) {
    lhs = to_real(lhs);
    rhs = to_real(rhs);
  }
  Formula f;
  f.kind = Formula::Kind::Cmp;
  f.op = op;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return make(std::move(f));
}

FormulaPtr conj(std::vector<FormulaPtr> parts) {
  if (parts.empty()) return bool_const(true);
  if (parts.size() == 1) return parts[0];
  Formula f;
  f.kind = Formula::Kind::And;
  f.parts = std::move(parts);
  return make(std::move(f));
}

FormulaPtr disj(std::vector<FormulaPtr> parts) {
  if (parts.empty()) return bool_const(false);
  if (parts.size() == 1) return parts[0];
  Formula f;
  f.kind = Formula::Kind::Or;
  f.parts = std::move(parts);
  return make(std::move(f));
}

FormulaPtr neg(FormulaPtr f) {
  if (f->kind == Formula::Kind::Const) return bool_const(!f->value);
  if (f->kind == Formula::Kind::Cmp) return cmp(negate_cmp(f->op), f->lhs, f->rhs);
  if (f->kind == Formula::Kind::Not) return f->parts[0];
  Formula n;
  n.kind = Formula::Kind::Not;
  n.parts = {std::move(f)};
  return make(std::move(n));
}

bool is_true(const FormulaPtr& f) { return f->kind == Formula::Kind::Const && f->value; }
bool is_false(const FormulaPtr& f) { return f->kind == Formula::Kind::Const && !f->value; }

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Const: return a->value == b->value;
    case Formula::Kind::Cmp:
      return a->op == b->op && structurally_equal(a->lhs, b->lhs) &&
             structurally_equal(a->rhs, b->rhs);
    default: {
      if (a->parts.size() != b->parts.size()) return false;
      for (size_t i = 0; i < a->parts.size(); ++i) {
        if (!structurally_equal(a->parts[i], b->parts[i])) return false;
      }
      return true;
    }
  }
}

namespace {

void print_formula(std::ostream& os, const FormulaPtr& f, int parent_prec) {
  // precedence: Or = 1, And = 2, Not = 3, Cmp/Const = 4
  switch (f->kind) {
    case Formula::Kind::Const: os << (f->value ? "true" : "false"); break;
    case Formula::Kind::Cmp:
      print_expr(os, f->lhs, 1);
      os << ' ' << cmp_op_text(f->op) << ' ';
      print_expr(os, f->rhs, 1);
      break;
    case Formula::Kind::And: {
      bool paren = parent_prec > 2;
      if (paren) os << '(';
      for (size_t i = 0; i < f->parts.size(); ++i) {
        if (i) os << " && ";
        print_formula(os, f->parts[i], 3);
      }
      if (paren) os << ')';
      break;
    }
    case Formula::Kind::Or: {
      bool paren = parent_prec > 1;
      if (paren) os << '(';
      for (size_t i = 0; i < f->parts.size(); ++i) {
        if (i) os << " || ";
        print_formula(os, f->parts[i], 2);
      }
      if (paren) os << ')';
      break;
    }
    case Formula::Kind::Not:
      os << '!';
      print_formula(os, f->parts[0], 4);
      break;
  }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

std::vector<FormulaPtr> conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  if (f->kind == Formula::Kind::And) {
    for (const auto& p : f->parts) {
      auto inner = conjuncts(p);
      out.insert(out.end(), inner.begin(), inner.end());
    }
  } else {
    out.push_back(f);
  }
  return out;
}

void collect_symbols(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == Expr::Kind::Symbol) {
    for (const auto& s : out) {
      if (s->name == e->name) return;
    }
    out.push_back(e);
    return;
  }
  for (const auto& a : e->args) collect_symbols(a, out);
}

void collect_symbols(const FormulaPtr& f, std::vector<ExprPtr>& out) {
  if (f->kind == Formula::Kind::Cmp) {
    collect_symbols(f->lhs, out);
    collect_symbols(f->rhs, out);
    return;
  }
  for (const auto& p : f->parts) collect_symbols(p, out);
}

bool contains_uif(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Uif) return true;
  for (const auto& a : e->args) {
    if (contains_uif(a)) return true;
  }
  return false;
}

bool contains_uif(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Cmp) return contains_uif(f->lhs) || contains_uif(f->rhs);
  for (const auto& p : f->parts) {
    if (contains_uif(p)) return true;
  }
  return false;
}

void collect_uif_apps(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == Expr::Kind::Uif) {
    for (const auto& u : out) {
      if (structurally_equal(u, e)) return;
    }
    out.push_back(e);
  }
  for (const auto& a : e->args) collect_uif_apps(a, out);
}

void collect_uif_apps(const FormulaPtr& f, std::vector<ExprPtr>& out) {
  if (f->kind == Formula::Kind::Cmp) {
    collect_uif_apps(f->lhs, out);
    collect_uif_apps(f->rhs, out);
    return;
  }
  for (const auto& p : f->parts) collect_uif_apps(p, out);
}

}  // namespace pasda::sym
