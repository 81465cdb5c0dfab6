#include "pasda/minilang/print.hpp"

#include <sstream>

namespace pasda::minilang {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Bool: return e.bop == Expr::BoolOp::Or ? 1 : 2;
    case Expr::Kind::Cmp: return 3;
    case Expr::Kind::Arith:
      return (e.arith == sym::BinOp::Add || e.arith == sym::BinOp::Sub) ? 4 : 5;
    case Expr::Kind::Neg:
    case Expr::Kind::Not: return 6;
    default: return 7;
  }
}

void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  int prec = precedence(*e);
  bool paren = prec < parent_prec;
  if (paren) os << '(';
  switch (e->kind) {
    case Expr::Kind::IntLit: os << e->int_val; break;
    case Expr::Kind::RealLit: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << e->real_val;
      std::string s = tmp.str();
      os << s;
      if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) os << ".0";
      break;
    }
    case Expr::Kind::Var: os << e->name; break;
    case Expr::Kind::Arith: {
      const char* op = "?";
      switch (e->arith) {
        case sym::BinOp::Add: op = " + "; break;
        case sym::BinOp::Sub: op = " - "; break;
        case sym::BinOp::Mul: op = " * "; break;
        case sym::BinOp::Div: op = " / "; break;
        case sym::BinOp::Mod: op = " % "; break;
      }
      print_expr(os, e->args[0], prec);
      os << op;
      print_expr(os, e->args[1], prec + 1);
      break;
    }
    case Expr::Kind::Cmp:
      print_expr(os, e->args[0], prec + 1);
      os << ' ' << sym::cmp_op_text(e->cmp) << ' ';
      print_expr(os, e->args[1], prec + 1);
      break;
    case Expr::Kind::Bool:
      print_expr(os, e->args[0], prec);
      os << (e->bop == Expr::BoolOp::And ? " && " : " || ");
      print_expr(os, e->args[1], prec + 1);
      break;
    case Expr::Kind::Not:
      os << '!';
      print_expr(os, e->args[0], prec + 1);
      break;
    case Expr::Kind::Neg:
      os << '-';
      print_expr(os, e->args[0], prec + 1);
      break;
    case Expr::Kind::Call: {
      os << e->name << '(';
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

void print_simple(std::ostream& os, const StmtPtr& s) {
  if (s->kind == Stmt::Kind::Let) {
    os << "let " << s->var;
    if (s->declared_ty) os << ": " << ty_name(*s->declared_ty);
    os << " = ";
    print_expr(os, s->value, 0);
    return;
  }
  os << s->var << ' ';
  if (s->is_compound) {
    switch (s->compound_op) {
      case sym::BinOp::Add: os << "+="; break;
      case sym::BinOp::Sub: os << "-="; break;
      case sym::BinOp::Mul: os << "*="; break;
      case sym::BinOp::Div: os << "/="; break;
      case sym::BinOp::Mod: os << "%="; break;
    }
  } else {
    os << '=';
  }
  os << ' ';
  print_expr(os, s->value, 0);
}

void print_stmt(std::ostream& os, const StmtPtr& s, int indent);

void print_block(std::ostream& os, const std::vector<StmtPtr>& body, int indent) {
  os << "{\n";
  for (const auto& s : body) print_stmt(os, s, indent + 1);
  for (int i = 0; i < indent; ++i) os << "  ";
  os << "}";
}

void print_stmt(std::ostream& os, const StmtPtr& s, int indent) {
  for (int i = 0; i < indent; ++i) os << "  ";
  switch (s->kind) {
    case Stmt::Kind::Let:
    case Stmt::Kind::Assign:
      print_simple(os, s);
      os << ";\n";
      break;
    case Stmt::Kind::If:
      os << "if (";
      print_expr(os, s->cond, 0);
      os << ") ";
      print_block(os, s->body, indent);
      if (!s->else_body.empty()) {
        os << " else ";
        if (s->else_body.size() == 1 && s->else_body[0]->kind == Stmt::Kind::If) {
          // print chained else-if inline
          std::ostringstream tmp;
          print_stmt(tmp, s->else_body[0], indent);
          std::string text = tmp.str();
          os << text.substr(static_cast<size_t>(indent) * 2);
          break;
        }
        print_block(os, s->else_body, indent);
      }
      os << "\n";
      break;
    case Stmt::Kind::While:
      os << "while (";
      print_expr(os, s->cond, 0);
      os << ") ";
      print_block(os, s->body, indent);
      os << "\n";
      break;
    case Stmt::Kind::For:
      os << "for (";
      if (s->init) print_simple(os, s->init);
      os << "; ";
      if (s->cond) print_expr(os, s->cond, 0);
      os << "; ";
      if (s->step) print_simple(os, s->step);
      os << ") ";
      print_block(os, s->body, indent);
      os << "\n";
      break;
    case Stmt::Kind::Return:
      os << "return ";
      print_expr(os, s->value, 0);
      os << ";\n";
      break;
    case Stmt::Kind::Fail: os << "fail " << s->error_name << ";\n"; break;
  }
}

}  // namespace

std::string expr_text(const ExprPtr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string stmt_text(const StmtPtr& s) {
  std::ostringstream os;
  switch (s->kind) {
    case Stmt::Kind::Let:
    case Stmt::Kind::Assign:
      print_simple(os, s);
      os << ";";
      break;
    case Stmt::Kind::If:
      os << "if (";
      print_expr(os, s->cond, 0);
      os << ")";
      break;
    case Stmt::Kind::While:
      os << "while (";
      print_expr(os, s->cond, 0);
      os << ")";
      break;
    case Stmt::Kind::For:
      os << "for (";
      if (s->init) print_simple(os, s->init);
      os << "; ";
      if (s->cond) print_expr(os, s->cond, 0);
      os << "; ";
      if (s->step) print_simple(os, s->step);
      os << ")";
      break;
    case Stmt::Kind::Return:
      os << "return ";
      print_expr(os, s->value, 0);
      os << ";";
      break;
    case Stmt::Kind::Fail: os << "fail " << s->error_name << ";"; break;
  }
  return os.str();
}

std::string pretty_print(const FunctionDef& fn) {
  std::ostringstream os;
  os << "fn " << fn.name << '(';
  for (size_t i = 0; i < fn.params.size(); ++i) {
    if (i) os << ", ";
    os << fn.params[i].name << ": " << ty_name(fn.params[i].ty);
  }
  os << ") -> " << ty_name(fn.return_ty) << " ";
  print_block(os, fn.body, 0);
  os << "\n";
  return os.str();
}

std::string pretty_print(const Program& prog) {
  std::ostringstream os;
  for (size_t i = 0; i < prog.functions.size(); ++i) {
    if (i) os << "\n";
    os << pretty_print(prog.functions[i]);
  }
  return os.str();
}

}  // namespace pasda::minilang
