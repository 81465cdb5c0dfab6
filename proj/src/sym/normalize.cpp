#include "pasda/sym/normalize.hpp"

#include <algorithm>
#include <cmath>

#include "pasda/sym/eval.hpp"

namespace pasda::sym {

namespace {

std::optional<LinForm> lin_scale(const LinForm& f, const Rational& c) {
  LinForm out;
  auto k = Rational::mul(f.constant, c);
  if (!k) return std::nullopt;
  out.constant = *k;
  for (const auto& [atom, coeff] : f.terms) {
    auto v = Rational::mul(coeff, c);
    if (!v) return std::nullopt;
    if (!v->is_zero()) out.terms.emplace(atom, *v);
  }
  return out;
}

std::optional<LinForm> lin_add(const LinForm& a, const LinForm& b, bool subtract) {
  LinForm out = a;
  auto k = subtract ? Rational::sub(a.constant, b.constant) : Rational::add(a.constant, b.constant);
  if (!k) return std::nullopt;
  out.constant = *k;
  for (const auto& [atom, coeff] : b.terms) {
    auto it = out.terms.find(atom);
    Rational incoming = coeff;
    if (subtract) {
      auto negc = Rational::sub(Rational(0), coeff);
      if (!negc) return std::nullopt;
      incoming = *negc;
    }
    if (it == out.terms.end()) {
      if (!incoming.is_zero()) out.terms.emplace(atom, incoming);
    } else {
      auto sum = Rational::add(it->second, incoming);
      if (!sum) return std::nullopt;
      if (sum->is_zero()) {
        out.terms.erase(it);
      } else {
        it->second = *sum;
      }
    }
  }
  return out;
}

ExprPtr atom_with_canonical_args(const ExprPtr& e) {
  if (e->args.empty()) return e;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(canonicalize(a));
  switch (e->kind) {
    case Expr::Kind::Bin: {
      if (e->op == BinOp::Mul && compare_expr(args[0], args[1]) > 0) {
        std::swap(args[0], args[1]);  // commutative product, canonical order
      }
      return binary(e->op, args[0], args[1]);
    }
    case Expr::Kind::Call: return call(e->fn, std::move(args));
    case Expr::Kind::Uif: return uif_app(e->uif_id, std::move(args), e->type);
    case Expr::Kind::Neg: return negate(args[0]);
    case Expr::Kind::IntToReal: return to_real(args[0]);
    default: return e;
  }
}

bool linform_is_real(const LinForm& f) {
  if (!f.constant.is_integer()) return true;
  for (const auto& [atom, coeff] : f.terms) {
    if (atom->type == Type::Real || !coeff.is_integer()) return true;
  }
  return false;
}

}  // namespace

std::optional<LinForm> linearize(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::IntConst: {
      LinForm f;
      f.constant = Rational(e->int_val);
      return f;
    }
    case Expr::Kind::RealConst: {
      auto r = Rational::from_double(e->real_val);
      if (!r) return std::nullopt;
      LinForm f;
      f.constant = *r;
      return f;
    }
    case Expr::Kind::Symbol: {
      LinForm f;
      f.terms.emplace(e, Rational(1));
      return f;
    }
    case Expr::Kind::Neg: {
      auto inner = linearize(e->args[0]);
      if (!inner) return std::nullopt;
      return lin_scale(*inner, Rational(-1));
    }
    case Expr::Kind::IntToReal: return linearize(e->args[0]);
    case Expr::Kind::Bin: {
      auto lhs = linearize(e->args[0]);
      auto rhs = linearize(e->args[1]);
      switch (e->op) {
        case BinOp::Add:
          if (lhs && rhs) return lin_add(*lhs, *rhs, false);
          return std::nullopt;
        case BinOp::Sub:
          if (lhs && rhs) return lin_add(*lhs, *rhs, true);
          return std::nullopt;
        case BinOp::Mul: {
          if (lhs && lhs->is_constant() && rhs) return lin_scale(*rhs, lhs->constant);
          if (rhs && rhs->is_constant() && lhs) return lin_scale(*lhs, rhs->constant);
          break;  // non-linear product: opaque atom
        }
        case BinOp::Div: {
          // Real division by a nonzero constant is an exact scale; int
          // division truncates and stays opaque.
          if (e->type == Type::Real && rhs && rhs->is_constant() && !rhs->constant.is_zero() &&
              lhs) {
            auto inv = Rational::div(Rational(1), rhs->constant);
            if (inv) return lin_scale(*lhs, *inv);
          }
          break;
        }
        case BinOp::Mod: break;
      }
      LinForm f;
      f.terms.emplace(atom_with_canonical_args(e), Rational(1));
      return f;
    }
    case Expr::Kind::Call:
    case Expr::Kind::Uif: {
      LinForm f;
      f.terms.emplace(atom_with_canonical_args(e), Rational(1));
      return f;
    }
  }
  return std::nullopt;
}

namespace {

ExprPtr coeff_const(const Rational& c, bool as_real) {
  if (!as_real && c.is_integer()) return int_const(c.num());
  return real_const(c.to_double());
}

ExprPtr from_linform(const LinForm& f) {
  bool as_real = linform_is_real(f);
  ExprPtr acc;
  for (const auto& [atom, coeff] : f.terms) {
    ExprPtr term;
    Rational a = coeff.is_negative() && acc ? *Rational::sub(Rational(0), coeff) : coeff;
    bool negative_tail = coeff.is_negative() && acc;
    if (a == Rational(1)) {
      term = atom;
    } else if (a == Rational(-1)) {
      term = negate(atom);
    } else {
      term = binary(BinOp::Mul, coeff_const(a, as_real && !a.is_integer()), atom);
    }
    if (!acc) {
      acc = term;
    } else {
      acc = binary(negative_tail ? BinOp::Sub : BinOp::Add, acc, term);
    }
  }
  if (!acc) return coeff_const(f.constant, as_real);
  if (!f.constant.is_zero()) {
    bool neg_const = f.constant.is_negative();
    Rational c = neg_const ? *Rational::sub(Rational(0), f.constant) : f.constant;
    acc = binary(neg_const ? BinOp::Sub : BinOp::Add, acc, coeff_const(c, as_real && !c.is_integer()));
  }
  if (as_real) acc = to_real(acc);
  return acc;
}

}  // namespace

ExprPtr canonicalize(const ExprPtr& e) {
  auto lin = linearize(e);
  if (!lin) return atom_with_canonical_args(e);
  return from_linform(*lin);
}

FormulaPtr normalize_cmp(CmpOp op, const ExprPtr& lhs, const ExprPtr& rhs) {
  auto l = linearize(lhs);
  auto r = linearize(rhs);
  if (!l || !r) {
    return cmp(op, atom_with_canonical_args(lhs), atom_with_canonical_args(rhs));
  }
  auto diff = lin_add(*l, *r, true);
  if (!diff) return cmp(op, lhs, rhs);
  if (diff->is_constant()) {
    int c = Rational::compare(diff->constant, Rational(0));
    switch (op) {
      case CmpOp::Eq: return bool_const(c == 0);
      case CmpOp::Ne: return bool_const(c != 0);
      case CmpOp::Lt: return bool_const(c < 0);
      case CmpOp::Le: return bool_const(c <= 0);
      case CmpOp::Gt: return bool_const(c > 0);
      case CmpOp::Ge: return bool_const(c >= 0);
    }
  }
  // Scale to integer coefficients with positive leading coefficient;
  // the constant moves to the right-hand side.
  auto gcd128 = [](__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  };
  __int128 scale = 1;
  auto lcm_update = [&](const Rational& r2) {
    __int128 d = r2.den();
    __int128 g = gcd128(scale, d);
    scale = scale / (g == 0 ? 1 : g) * d;
  };
  lcm_update(diff->constant);
  for (const auto& [atom, coeff] : diff->terms) lcm_update(coeff);
  if (scale > INT64_MAX) return cmp(op, lhs, rhs);
  auto scaled = lin_scale(*diff, Rational(static_cast<std::int64_t>(scale)));
  if (!scaled) return cmp(op, lhs, rhs);
  __int128 g = 0;
  for (const auto& [atom, coeff] : scaled->terms) g = gcd128(g, coeff.num());
  g = gcd128(g, scaled->constant.num());
  if (g > 1) {
    auto reduced = lin_scale(*scaled, Rational(1, static_cast<std::int64_t>(g)));
    if (reduced) scaled = reduced;
  }
  bool flip = scaled->terms.begin()->second.is_negative();
  if (flip) {
    auto negated = lin_scale(*scaled, Rational(-1));
    if (!negated) return cmp(op, lhs, rhs);
    scaled = negated;
    switch (op) {
      case CmpOp::Lt: op = CmpOp::Gt; break;
      case CmpOp::Le: op = CmpOp::Ge; break;
      case CmpOp::Gt: op = CmpOp::Lt; break;
      case CmpOp::Ge: op = CmpOp::Le; break;
      default: break;
    }
  }
  LinForm left = *scaled;
  Rational c = left.constant;
  left.constant = Rational(0);
  auto neg_c = Rational::sub(Rational(0), c);
  if (!neg_c) return cmp(op, lhs, rhs);
  bool as_real = linform_is_real(left) || !neg_c->is_integer();
  ExprPtr lhs_expr = from_linform(left);
  ExprPtr rhs_expr = coeff_const(*neg_c, as_real);
  // An int-only linear form can never equal a fractional constant.
  if (!linform_is_real(left) && !neg_c->is_integer()) {
    if (op == CmpOp::Eq) return bool_const(false);
    if (op == CmpOp::Ne) return bool_const(true);
  }
  return cmp(op, lhs_expr, rhs_expr);
}

bool has_transcendental(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Call) {
    switch (e->fn) {
      case Intrinsic::Tan:
      case Intrinsic::Sin:
      case Intrinsic::Cos:
      case Intrinsic::Log: return true;
      case Intrinsic::Pow:
        if (!is_const(e->args[1])) return true;
        break;
      default: break;
    }
  }
  for (const auto& a : e->args) {
    if (has_transcendental(a)) return true;
  }
  return false;
}

bool has_transcendental(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Cmp) {
    return has_transcendental(f->lhs) || has_transcendental(f->rhs);
  }
  for (const auto& p : f->parts) {
    if (has_transcendental(p)) return true;
  }
  return false;
}

namespace {

FormulaPtr simplify_rec(const FormulaPtr& f, bool negated);

// Detects a conjunct of the shape sym == const (post-normalization).
bool is_var_equality(const FormulaPtr& f, std::string* name, Value* val) {
  if (f->kind != Formula::Kind::Cmp || f->op != CmpOp::Eq) return false;
  const ExprPtr* sym = nullptr;
  const ExprPtr* cst = nullptr;
  ExprPtr lhs = f->lhs;
  if (lhs->kind == Expr::Kind::IntToReal) lhs = lhs->args[0];
  ExprPtr rhs = f->rhs;
  if (rhs->kind == Expr::Kind::IntToReal) rhs = rhs->args[0];
  if (lhs->kind == Expr::Kind::Symbol && is_const(rhs)) {
    sym = &lhs;
    cst = &rhs;
  } else if (rhs->kind == Expr::Kind::Symbol && is_const(lhs)) {
    sym = &rhs;
    cst = &lhs;
  } else {
    return false;
  }
  *name = (*sym)->name;
  if ((*cst)->kind == Expr::Kind::IntConst) {
    *val = (*sym)->type == Type::Real ? Value::of_real(static_cast<double>((*cst)->int_val))
                                      : Value::of_int((*cst)->int_val);
  } else {
    if ((*sym)->type == Type::Int) return false;
    *val = Value::of_real((*cst)->real_val);
  }
  return true;
}

struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  bool empty = false;

  void add_lo(const Rational& v, bool strict) {
    if (!lo || Rational::compare(v, *lo) > 0 || (Rational::compare(v, *lo) == 0 && strict)) {
      lo = v;
      lo_strict = strict;
    }
  }
  void add_hi(const Rational& v, bool strict) {
    if (!hi || Rational::compare(v, *hi) < 0 || (Rational::compare(v, *hi) == 0 && strict)) {
      hi = v;
      hi_strict = strict;
    }
  }
  void check_empty(bool is_int) {
    if (!lo || !hi) return;
    int c = Rational::compare(*lo, *hi);
    if (c > 0 || (c == 0 && (lo_strict || hi_strict))) {
      empty = true;
      return;
    }
    if (is_int) {
      // no integer left between the tightened bounds
      double lo_int = std::floor(lo->to_double()) + (lo_strict || !lo->is_integer() ? 1 : 0);
      double hi_int = std::ceil(hi->to_double()) - (hi_strict || !hi->is_integer() ? 1 : 0);
      if (lo_int > hi_int) empty = true;
    }
  }
};

// Single-variable linear atom: coeff * sym ⋈ const.
bool single_var_atom(const FormulaPtr& f, ExprPtr* sym, CmpOp* op, Rational* bound) {
  if (f->kind != Formula::Kind::Cmp) return false;
  auto l = linearize(f->lhs);
  auto r = linearize(f->rhs);
  if (!l || !r) return false;
  auto diff = lin_add(*l, *r, true);
  if (!diff || diff->terms.size() != 1) return false;
  const auto& [atom, coeff] = *diff->terms.begin();
  if (atom->kind != Expr::Kind::Symbol) return false;
  auto c = Rational::sub(Rational(0), diff->constant);
  if (!c) return false;
  auto b = Rational::div(*c, coeff);
  if (!b) return false;
  CmpOp o = f->op;
  if (coeff.is_negative()) {
    switch (o) {
      case CmpOp::Lt: o = CmpOp::Gt; break;
      case CmpOp::Le: o = CmpOp::Ge; break;
      case CmpOp::Gt: o = CmpOp::Lt; break;
      case CmpOp::Ge: o = CmpOp::Le; break;
      default: break;
    }
  }
  *sym = atom;
  *op = o;
  *bound = *b;
  return true;
}

FormulaPtr simplify_and(std::vector<FormulaPtr> parts) {
  // Flatten, drop true, absorb false, dedup, detect complements.
  std::vector<FormulaPtr> flat;
  for (auto& p : parts) {
    if (is_true(p)) continue;
    if (is_false(p)) return bool_const(false);
    if (p->kind == Formula::Kind::And) {
      for (const auto& q : p->parts) flat.push_back(q);
    } else {
      flat.push_back(p);
    }
  }
  std::vector<FormulaPtr> uniq;
  for (const auto& p : flat) {
    bool dup = false;
    for (const auto& q : uniq) {
      if (structurally_equal(p, q)) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    for (const auto& q : uniq) {
      if (structurally_equal(p, neg(q))) return bool_const(false);
    }
    uniq.push_back(p);
  }
  if (uniq.empty()) return bool_const(true);

  // Interval emptiness over single-variable atoms.
  std::map<std::string, Interval> intervals;
  std::map<std::string, Type> var_types;
  for (const auto& p : uniq) {
    ExprPtr s;
    CmpOp op;
    Rational b;
    if (!single_var_atom(p, &s, &op, &b)) continue;
    auto& iv = intervals[s->name];
    var_types[s->name] = s->type;
    switch (op) {
      case CmpOp::Lt: iv.add_hi(b, true); break;
      case CmpOp::Le: iv.add_hi(b, false); break;
      case CmpOp::Gt: iv.add_lo(b, true); break;
      case CmpOp::Ge: iv.add_lo(b, false); break;
      case CmpOp::Eq:
        iv.add_lo(b, false);
        iv.add_hi(b, false);
        if (s->type == Type::Int && !b.is_integer()) return bool_const(false);
        break;
      case CmpOp::Ne: break;
    }
  }
  for (auto& [name, iv] : intervals) {
    iv.check_empty(var_types[name] == Type::Int);
    if (iv.empty) return bool_const(false);
  }

  // Contradiction by concretization: substitute var = const equalities into
  // sibling conjuncts and evaluate. Only a false result changes anything.
  Assignment subst;
  for (const auto& p : uniq) {
    std::string name;
    Value v;
    if (is_var_equality(p, &name, &v)) subst.vars.emplace(std::move(name), v);
  }
  for (const auto& p : uniq) {
    auto v = eval(p, subst);
    if (v && !*v) return bool_const(false);
  }
  return conj(std::move(uniq));
}

FormulaPtr simplify_or(std::vector<FormulaPtr> parts) {
  std::vector<FormulaPtr> flat;
  for (auto& p : parts) {
    if (is_false(p)) continue;
    if (is_true(p)) return bool_const(true);
    if (p->kind == Formula::Kind::Or) {
      for (const auto& q : p->parts) flat.push_back(q);
    } else {
      flat.push_back(p);
    }
  }
  std::vector<FormulaPtr> uniq;
  for (const auto& p : flat) {
    bool dup = false;
    for (const auto& q : uniq) {
      if (structurally_equal(p, q)) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    for (const auto& q : uniq) {
      if (structurally_equal(p, neg(q))) return bool_const(true);
    }
    uniq.push_back(p);
  }
  return disj(std::move(uniq));
}

FormulaPtr simplify_rec(const FormulaPtr& f, bool negated) {
  switch (f->kind) {
    case Formula::Kind::Const: return bool_const(negated ? !f->value : f->value);
    case Formula::Kind::Cmp: {
      CmpOp op = negated ? negate_cmp(f->op) : f->op;
      return normalize_cmp(op, f->lhs, f->rhs);
    }
    case Formula::Kind::Not: return simplify_rec(f->parts[0], !negated);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = (f->kind == Formula::Kind::And) != negated;  // De Morgan
      std::vector<FormulaPtr> parts;
      parts.reserve(f->parts.size());
      for (const auto& p : f->parts) parts.push_back(simplify_rec(p, negated));
      return is_and ? simplify_and(std::move(parts)) : simplify_or(std::move(parts));
    }
  }
  return f;
}

}  // namespace

FormulaPtr simplify_formula(const FormulaPtr& f) { return simplify_rec(f, false); }

std::map<std::string, VarBounds> extract_bounds(const FormulaPtr& f) {
  std::map<std::string, VarBounds> out;
  if (is_false(f) || is_true(f)) return out;
  for (const auto& part : conjuncts(f)) {
    ExprPtr s;
    CmpOp op;
    Rational b;
    if (!single_var_atom(part, &s, &op, &b)) continue;
    auto& vb = out[s->name];
    vb.type = s->type;
    bool is_int = s->type == Type::Int;
    // Int bounds are tightened to integers; real bounds record the raw
    // constant and ignore strictness (informative only).
    auto tighten_lo = [&](Rational v, bool strict) {
      if (is_int) {
        double d = v.to_double();
        double c = std::ceil(d);
        if (strict && c == d && v.is_integer()) c += 1;
        v = Rational(static_cast<std::int64_t>(c));
      }
      if (!vb.lo || Rational::compare(v, *vb.lo) > 0) vb.lo = v;
    };
    auto tighten_hi = [&](Rational v, bool strict) {
      if (is_int) {
        double d = v.to_double();
        double fl = std::floor(d);
        if (strict && fl == d && v.is_integer()) fl -= 1;
        v = Rational(static_cast<std::int64_t>(fl));
      }
      if (!vb.hi || Rational::compare(v, *vb.hi) < 0) vb.hi = v;
    };
    switch (op) {
      case CmpOp::Lt: tighten_hi(b, true); break;
      case CmpOp::Le: tighten_hi(b, false); break;
      case CmpOp::Gt: tighten_lo(b, true); break;
      case CmpOp::Ge: tighten_lo(b, false); break;
      case CmpOp::Eq:
        tighten_lo(b, false);
        tighten_hi(b, false);
        break;
      case CmpOp::Ne: break;
    }
  }
  return out;
}

ExprPtr replace_uif_apps(const ExprPtr& e, int uif_id, const ExprPtr& replacement) {
  if (e->kind == Expr::Kind::Uif && e->uif_id == uif_id) return replacement;
  if (e->args.empty()) return e;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool changed = false;
  for (const auto& a : e->args) {
    auto r = replace_uif_apps(a, uif_id, replacement);
    changed = changed || r.get() != a.get();
    args.push_back(std::move(r));
  }
  if (!changed) return e;
  switch (e->kind) {
    case Expr::Kind::Bin: return binary(e->op, args[0], args[1]);
    case Expr::Kind::Neg: return negate(args[0]);
    case Expr::Kind::IntToReal: return to_real(args[0]);
    case Expr::Kind::Call: return call(e->fn, std::move(args));
    case Expr::Kind::Uif: return uif_app(e->uif_id, std::move(args), e->type);
    default: return e;
  }
}

FormulaPtr replace_uif_apps(const FormulaPtr& f, int uif_id, const ExprPtr& replacement) {
  switch (f->kind) {
    case Formula::Kind::Const: return f;
    case Formula::Kind::Cmp:
      return cmp(f->op, replace_uif_apps(f->lhs, uif_id, replacement),
                 replace_uif_apps(f->rhs, uif_id, replacement));
    default: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->parts.size());
      for (const auto& p : f->parts) parts.push_back(replace_uif_apps(p, uif_id, replacement));
      if (f->kind == Formula::Kind::And) return conj(std::move(parts));
      if (f->kind == Formula::Kind::Or) return disj(std::move(parts));
      return neg(parts[0]);
    }
  }
}

}  // namespace pasda::sym
