#include "pasda/minilang/parse.hpp"

#include <cctype>
#include <map>
#include <set>

namespace pasda::minilang {

const char* ty_name(Ty t) {
  switch (t) {
    case Ty::Int: return "int";
    case Ty::Real: return "real";
    case Ty::Bool: return "bool";
  }
  return "?";
}

bool is_intrinsic_name(const std::string& name) {
  static const std::set<std::string> names = {"tan", "sin", "cos",  "sqrt", "log",
                                              "pow", "abs", "min",  "max"};
  return names.count(name) > 0;
}

namespace {

sym::Intrinsic intrinsic_by_name(const std::string& name) {
  if (name == "tan") return sym::Intrinsic::Tan;
  if (name == "sin") return sym::Intrinsic::Sin;
  if (name == "cos") return sym::Intrinsic::Cos;
  if (name == "sqrt") return sym::Intrinsic::Sqrt;
  if (name == "log") return sym::Intrinsic::Log;
  if (name == "pow") return sym::Intrinsic::Pow;
  if (name == "abs") return sym::Intrinsic::Abs;
  if (name == "min") return sym::Intrinsic::Min;
  return sym::Intrinsic::Max;
}

struct Token {
  enum class Kind { Ident, Int, Real, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t int_val = 0;
  double real_val = 0.0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws_and_comments();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        bump();
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      bool real = false;
      if (pos_ < src_.size() && src_[pos_] == '.' && pos_ + 1 < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        real = true;
        bump();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        size_t save = pos_;
        bump();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          real = true;
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))bump();
        } else {
          pos_ = save;  // not an exponent; leave 'e' for the next token
        }
      }
      std::string text = src_.substr(start, pos_ - start);
      if (real) {
        tok_.kind = Token::Kind::Real;
        tok_.real_val = std::stod(text);
      } else {
        tok_.kind = Token::Kind::Int;
        try {
          tok_.int_val = std::stoll(text);
        } catch (const std::out_of_range&) {
          throw SyntaxError(tok_.line, tok_.col, "integer literal out of range");
        }
      }
      tok_.text = std::move(text);
      return;
    }
    // punctuation, longest match first
    static const char* puncts[] = {"->", "==", "!=", "<=", ">=", "&&", "||", "+=", "-=",
                                   "*=", "/=", "%=", "(",  ")",  "{",  "}",  ",",  ";",
                                   ":",  "+",  "-",  "*",  "/",  "%",  "<",  ">",  "=",
                                   "!"};
    for (const char* p : puncts) {
      size_t len = std::char_traits<char>::length(p);
      if (src_.compare(pos_, len, p) == 0) {
        tok_.kind = Token::Kind::Punct;
        tok_.text = p;
        for (size_t i = 0; i < len; ++i) bump();
        return;
      }
    }
    throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Program parse_program() {
    Program prog;
    while (lex_.peek().kind != Token::Kind::End) {
      prog.functions.push_back(parse_function());
    }
    if (prog.functions.empty()) {
      throw SyntaxError(1, 1, "expected at least one function");
    }
    return prog;
  }

private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.line, t.col, msg);
  }

  Token expect_punct(const std::string& p) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Punct || t.text != p) {
      fail(t, "expected '" + p + "'" + (t.text.empty() ? "" : ", got '" + t.text + "'"));
    }
    return t;
  }

  bool peek_punct(const std::string& p) {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }

  bool peek_ident(const std::string& kw) {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == kw;
  }

  Token expect_ident() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident) fail(t, "expected identifier");
    return t;
  }

  Ty parse_type() {
    Token t = expect_ident();
    if (t.text == "int") return Ty::Int;
    if (t.text == "real") return Ty::Real;
    fail(t, "expected type 'int' or 'real'");
  }

  FunctionDef parse_function() {
    Token kw = expect_ident();
    if (kw.text != "fn") fail(kw, "expected 'fn'");
    FunctionDef fn;
    fn.line = kw.line;
    fn.name = expect_ident().text;
    expect_punct("(");
    if (!peek_punct(")")) {
      while (true) {
        Param p;
        p.name = expect_ident().text;
        expect_punct(":");
        p.ty = parse_type();
        fn.params.push_back(std::move(p));
        if (peek_punct(",")) {
          lex_.next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    expect_punct("->");
    fn.return_ty = parse_type();
    fn.body = parse_block();
    return fn;
  }

  std::vector<StmtPtr> parse_block() {
    expect_punct("{");
    std::vector<StmtPtr> stmts;
    while (!peek_punct("}")) {
      stmts.push_back(parse_stmt());
    }
    expect_punct("}");
    return stmts;
  }

  StmtPtr parse_stmt() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "let") {
        auto s = parse_simple();
        expect_punct(";");
        return s;
      }
      if (t.text == "if") return parse_if();
      if (t.text == "while") return parse_while();
      if (t.text == "for") return parse_for();
      if (t.text == "return") {
        Token kw = lex_.next();
        auto s = std::make_shared<Stmt>();
        s->kind = Stmt::Kind::Return;
        s->line = kw.line;
        s->value = parse_expr();
        expect_punct(";");
        return s;
      }
      if (t.text == "fail") {
        Token kw = lex_.next();
        auto s = std::make_shared<Stmt>();
        s->kind = Stmt::Kind::Fail;
        s->line = kw.line;
        s->error_name = expect_ident().text;
        expect_punct(";");
        return s;
      }
      auto s = parse_simple();
      expect_punct(";");
      return s;
    }
    fail(t, "expected statement");
  }

  // let-declaration or assignment (used directly and as for-header parts)
  StmtPtr parse_simple() {
    if (peek_ident("let")) {
      Token kw = lex_.next();
      auto s = std::make_shared<Stmt>();
      s->kind = Stmt::Kind::Let;
      s->line = kw.line;
      s->var = expect_ident().text;
      if (peek_punct(":")) {
        lex_.next();
        s->declared_ty = parse_type();
      }
      expect_punct("=");
      s->value = parse_expr();
      return s;
    }
    Token name = expect_ident();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::Assign;
    s->line = name.line;
    s->var = name.text;
    Token op = lex_.next();
    if (op.kind != Token::Kind::Punct) fail(op, "expected assignment operator");
    if (op.text == "=") {
      s->is_compound = false;
    } else if (op.text == "+=" || op.text == "-=" || op.text == "*=" || op.text == "/=" ||
               op.text == "%=") {
      s->is_compound = true;
      switch (op.text[0]) {
        case '+': s->compound_op = sym::BinOp::Add; break;
        case '-': s->compound_op = sym::BinOp::Sub; break;
        case '*': s->compound_op = sym::BinOp::Mul; break;
        case '/': s->compound_op = sym::BinOp::Div; break;
        default: s->compound_op = sym::BinOp::Mod; break;
      }
    } else {
      fail(op, "expected assignment operator, got '" + op.text + "'");
    }
    s->value = parse_expr();
    return s;
  }

  StmtPtr parse_if() {
    Token kw = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::If;
    s->line = kw.line;
    expect_punct("(");
    s->cond = parse_expr();
    expect_punct(")");
    s->body = parse_block();
    if (peek_ident("else")) {
      lex_.next();
      if (peek_ident("if")) {
        s->else_body.push_back(parse_if());
      } else {
        s->else_body = parse_block();
      }
    }
    return s;
  }

  StmtPtr parse_while() {
    Token kw = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::While;
    s->line = kw.line;
    expect_punct("(");
    s->cond = parse_expr();
    expect_punct(")");
    s->body = parse_block();
    return s;
  }

  StmtPtr parse_for() {
    Token kw = lex_.next();
    auto s = std::make_shared<Stmt>();
    s->kind = Stmt::Kind::For;
    s->line = kw.line;
    expect_punct("(");
    if (!peek_punct(";")) s->init = parse_simple();
    expect_punct(";");
    if (!peek_punct(";")) s->cond = parse_expr();
    expect_punct(";");
    if (!peek_punct(")")) s->step = parse_simple();
    expect_punct(")");
    s->body = parse_block();
    return s;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr make_expr(Expr::Kind kind, const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  ExprPtr parse_or() {
    auto lhs = parse_and();
    while (peek_punct("||")) {
      Token op = lex_.next();
      auto e = make_expr(Expr::Kind::Bool, op);
      e->bop = Expr::BoolOp::Or;
      e->args = {lhs, parse_and()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr parse_and() {
    auto lhs = parse_cmp();
    while (peek_punct("&&")) {
      Token op = lex_.next();
      auto e = make_expr(Expr::Kind::Bool, op);
      e->bop = Expr::BoolOp::And;
      e->args = {lhs, parse_cmp()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr parse_cmp() {
    auto lhs = parse_add();
    static const std::map<std::string, sym::CmpOp> ops = {
        {"==", sym::CmpOp::Eq}, {"!=", sym::CmpOp::Ne}, {"<", sym::CmpOp::Lt},
        {"<=", sym::CmpOp::Le}, {">", sym::CmpOp::Gt},  {">=", sym::CmpOp::Ge}};
    if (lex_.peek().kind == Token::Kind::Punct) {
      auto it = ops.find(lex_.peek().text);
      if (it != ops.end()) {
        Token op = lex_.next();
        auto e = make_expr(Expr::Kind::Cmp, op);
        e->cmp = it->second;
        e->args = {lhs, parse_add()};
        return e;
      }
    }
    return lhs;
  }

  ExprPtr parse_add() {
    auto lhs = parse_mul();
    while (peek_punct("+") || peek_punct("-")) {
      Token op = lex_.next();
      auto e = make_expr(Expr::Kind::Arith, op);
      e->arith = op.text == "+" ? sym::BinOp::Add : sym::BinOp::Sub;
      e->args = {lhs, parse_mul()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr parse_mul() {
    auto lhs = parse_unary();
    while (peek_punct("*") || peek_punct("/") || peek_punct("%")) {
      Token op = lex_.next();
      auto e = make_expr(Expr::Kind::Arith, op);
      e->arith = op.text == "*"   ? sym::BinOp::Mul
                 : op.text == "/" ? sym::BinOp::Div
                                  : sym::BinOp::Mod;
      e->args = {lhs, parse_unary()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (peek_punct("-")) {
      Token op = lex_.next();
      auto e = make_expr(Expr::Kind::Neg, op);
      e->args = {parse_unary()};
      return e;
    }
    if (peek_punct("!")) {
      Token op = lex_.next();
      auto e = make_expr(Expr::Kind::Not, op);
      e->args = {parse_unary()};
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Token t = lex_.next();
    if (t.kind == Token::Kind::Int) {
      auto e = make_expr(Expr::Kind::IntLit, t);
      e->int_val = t.int_val;
      return e;
    }
    if (t.kind == Token::Kind::Real) {
      auto e = make_expr(Expr::Kind::RealLit, t);
      e->real_val = t.real_val;
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (peek_punct("(")) {
        lex_.next();
        auto e = make_expr(Expr::Kind::Call, t);
        e->name = t.text;
        if (!peek_punct(")")) {
          while (true) {
            e->args.push_back(parse_expr());
            if (peek_punct(",")) {
              lex_.next();
              continue;
            }
            break;
          }
        }
        expect_punct(")");
        return e;
      }
      auto e = make_expr(Expr::Kind::Var, t);
      e->name = t.text;
      return e;
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      auto e = parse_expr();
      expect_punct(")");
      return e;
    }
    fail(t, "expected expression");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Resolution and type checking
// ---------------------------------------------------------------------------

class Checker {
public:
  explicit Checker(Program& prog) : prog_(prog) {}

  void run() {
    for (size_t i = 0; i < prog_.functions.size(); ++i) {
      const auto& fn = prog_.functions[i];
      if (is_intrinsic_name(fn.name)) {
        throw TypeError(fn.line, "function name '" + fn.name + "' shadows an intrinsic");
      }
      for (size_t j = 0; j < i; ++j) {
        if (prog_.functions[j].name == fn.name) {
          throw TypeError(fn.line, "duplicate function '" + fn.name + "'");
        }
      }
    }
    for (auto& fn : prog_.functions) check_function(fn);
    check_no_recursion();
  }

private:
  void check_function(FunctionDef& fn) {
    scopes_.clear();
    scopes_.emplace_back();
    for (const auto& p : fn.params) {
      if (scopes_.back().count(p.name)) {
        throw TypeError(fn.line, "duplicate parameter '" + p.name + "' in '" + fn.name + "'");
      }
      scopes_.back().emplace(p.name, p.ty);
    }
    current_ = &fn;
    next_stmt_id_ = 0;
    check_block(fn.body);
    fn.stmt_count = next_stmt_id_;
    if (!block_returns(fn.body)) {
      throw TypeError(fn.line, "not every control path in '" + fn.name +
                                   "' ends in return or fail");
    }
  }

  void check_block(std::vector<StmtPtr>& stmts) {
    scopes_.emplace_back();
    for (auto& s : stmts) check_stmt(s);
    scopes_.pop_back();
  }

  void check_stmt(StmtPtr& s) {
    s->id = next_stmt_id_++;
    switch (s->kind) {
      case Stmt::Kind::Let: {
        Ty vt = check_expr(s->value);
        if (vt == Ty::Bool) throw TypeError(s->line, "cannot bind a boolean value");
        for (const auto& scope : scopes_) {
          if (scope.count(s->var)) {
            throw TypeError(s->line, "redeclaration of '" + s->var + "'");
          }
        }
        Ty declared = s->declared_ty.value_or(vt);
        require_assignable(vt, declared, s->line);
        s->declared_ty = declared;
        scopes_.back().emplace(s->var, declared);
        break;
      }
      case Stmt::Kind::Assign: {
        Ty target = lookup(s->var, s->line);
        Ty vt = check_expr(s->value);
        if (vt == Ty::Bool) throw TypeError(s->line, "cannot assign a boolean value");
        if (s->is_compound) {
          Ty combined = arith_result(target, vt, s->compound_op, s->line);
          require_assignable(combined, target, s->line);
        } else {
          require_assignable(vt, target, s->line);
        }
        break;
      }
      case Stmt::Kind::If: {
        require_bool(s->cond);
        check_block(s->body);
        check_block(s->else_body);
        break;
      }
      case Stmt::Kind::While: {
        require_bool(s->cond);
        check_block(s->body);
        break;
      }
      case Stmt::Kind::For: {
        scopes_.emplace_back();  // for-header scope
        if (s->init) check_stmt(s->init);
        if (s->cond) require_bool(s->cond);
        check_block(s->body);
        if (s->step) check_stmt(s->step);
        scopes_.pop_back();
        break;
      }
      case Stmt::Kind::Return: {
        Ty vt = check_expr(s->value);
        if (vt == Ty::Bool) throw TypeError(s->line, "cannot return a boolean value");
        require_assignable(vt, current_->return_ty, s->line);
        break;
      }
      case Stmt::Kind::Fail: break;
    }
  }

  Ty lookup(const std::string& name, int line) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    throw SyntaxError(line, 1, "unresolved identifier '" + name + "'");
  }

  void require_assignable(Ty from, Ty to, int line) {
    if (from == to) return;
    if (from == Ty::Int && to == Ty::Real) return;  // widening
    throw TypeError(line, std::string("cannot convert ") + ty_name(from) + " to " + ty_name(to));
  }

  Ty arith_result(Ty a, Ty b, sym::BinOp op, int line) {
    if (a == Ty::Bool || b == Ty::Bool) {
      throw TypeError(line, "arithmetic on boolean operand");
    }
    if (op == sym::BinOp::Mod && (a != Ty::Int || b != Ty::Int)) {
      throw TypeError(line, "'%' requires int operands");
    }
    return (a == Ty::Real || b == Ty::Real) ? Ty::Real : Ty::Int;
  }

  void require_bool(const ExprPtr& e) {
    if (check_expr(e) != Ty::Bool) {
      throw TypeError(e->line, "condition must be boolean");
    }
  }

  Ty check_expr(const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Kind::IntLit: e->ty = Ty::Int; break;
      case Expr::Kind::RealLit: e->ty = Ty::Real; break;
      case Expr::Kind::Var: e->ty = lookup(e->name, e->line); break;
      case Expr::Kind::Neg: {
        Ty t = check_expr(e->args[0]);
        if (t == Ty::Bool) throw TypeError(e->line, "cannot negate a boolean");
        e->ty = t;
        break;
      }
      case Expr::Kind::Not: {
        if (check_expr(e->args[0]) != Ty::Bool) {
          throw TypeError(e->line, "'!' requires a boolean operand");
        }
        e->ty = Ty::Bool;
        break;
      }
      case Expr::Kind::Arith: {
        Ty a = check_expr(e->args[0]);
        Ty b = check_expr(e->args[1]);
        e->ty = arith_result(a, b, e->arith, e->line);
        break;
      }
      case Expr::Kind::Cmp: {
        Ty a = check_expr(e->args[0]);
        Ty b = check_expr(e->args[1]);
        if (a == Ty::Bool || b == Ty::Bool) {
          throw TypeError(e->line, "comparison on boolean operand");
        }
        e->ty = Ty::Bool;
        break;
      }
      case Expr::Kind::Bool: {
        if (check_expr(e->args[0]) != Ty::Bool || check_expr(e->args[1]) != Ty::Bool) {
          throw TypeError(e->line, "'&&'/'||' require boolean operands");
        }
        e->ty = Ty::Bool;
        break;
      }
      case Expr::Kind::Call: {
        if (is_intrinsic_name(e->name)) {
          auto fn = intrinsic_by_name(e->name);
          e->intrinsic = fn;
          if ((int)e->args.size() != sym::intrinsic_arity(fn)) {
            throw TypeError(e->line, "'" + e->name + "' expects " +
                                         std::to_string(sym::intrinsic_arity(fn)) + " argument(s)");
          }
          bool all_int = true;
          for (auto& a : e->args) {
            Ty t = check_expr(a);
            if (t == Ty::Bool) throw TypeError(e->line, "intrinsic argument must be scalar");
            all_int = all_int && t == Ty::Int;
          }
          bool int_result = all_int && (fn == sym::Intrinsic::Abs || fn == sym::Intrinsic::Min ||
                                        fn == sym::Intrinsic::Max);
          e->ty = int_result ? Ty::Int : Ty::Real;
          break;
        }
        int idx = -1;
        for (size_t i = 0; i < prog_.functions.size(); ++i) {
          if (prog_.functions[i].name == e->name) {
            idx = static_cast<int>(i);
            break;
          }
        }
        if (idx < 0) throw SyntaxError(e->line, e->col, "unresolved identifier '" + e->name + "'");
        const auto& callee = prog_.functions[idx];
        if (e->args.size() != callee.params.size()) {
          throw TypeError(e->line, "call to '" + e->name + "' with wrong arity");
        }
        for (size_t i = 0; i < e->args.size(); ++i) {
          Ty t = check_expr(e->args[i]);
          if (t == Ty::Bool) throw TypeError(e->line, "call argument must be scalar");
          require_assignable(t, callee.params[i].ty, e->line);
        }
        e->callee_index = idx;
        e->ty = callee.return_ty;
        calls_[current_->name].insert(e->name);
        break;
      }
      case Expr::Kind::Uif: break;  // introduced post-parse only
    }
    return e->ty;
  }

  bool block_returns(const std::vector<StmtPtr>& stmts) {
    for (const auto& s : stmts) {
      if (stmt_returns(s)) return true;  // anything after is dead code
    }
    return false;
  }

  bool stmt_returns(const StmtPtr& s) {
    switch (s->kind) {
      case Stmt::Kind::Return:
      case Stmt::Kind::Fail: return true;
      case Stmt::Kind::If:
        return !s->else_body.empty() && block_returns(s->body) && block_returns(s->else_body);
      default: return false;
    }
  }

  void check_no_recursion() {
    // DFS over the call graph; any cycle is an error.
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    for (const auto& fn : prog_.functions) {
      if (!visit(fn.name, state)) return;
    }
  }

  bool visit(const std::string& name, std::map<std::string, int>& state) {
    int& st = state[name];
    if (st == 1) throw RecursionError("call cycle through '" + name + "'");
    if (st == 2) return true;
    st = 1;
    for (const auto& callee : calls_[name]) visit(callee, state);
    st = 2;
    return true;
  }

  Program& prog_;
  FunctionDef* current_ = nullptr;
  std::vector<std::map<std::string, Ty>> scopes_;
  std::map<std::string, std::set<std::string>> calls_;
  int next_stmt_id_ = 0;
};

}  // namespace

Program parse(const std::string& source) {
  Parser parser(source);
  Program prog = parser.parse_program();
  Checker checker(prog);
  checker.run();
  return prog;
}

}  // namespace pasda::minilang
