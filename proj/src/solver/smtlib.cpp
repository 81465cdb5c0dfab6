#include "pasda/solver/smtlib.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pasda/sym/eval.hpp"
#include "pasda/sym/rational.hpp"

namespace pasda::solver {

using sym::ExprPtr;
using sym::FormulaPtr;
using sym::Type;
using sym::Value;

namespace {

struct EmitState {
  std::ostringstream decls;
  std::ostringstream body;
  std::map<std::string, Type> symbols;
  std::map<int, std::vector<Type>> uifs;          // id -> arg sorts
  std::map<int, Type> uif_results;
  bool needs_tdiv = false;
  bool uses_intrinsic_uf = false;  // _tan etc.: sat answers need witness checks
  bool failed = false;
};

const char* sort_name(Type t) { return t == Type::Int ? "Int" : "Real"; }

void emit_expr(std::ostream& os, const ExprPtr& e, EmitState& st);

void emit_real_const(std::ostream& os, double v, EmitState& st) {
  auto r = sym::Rational::from_double(v);
  if (!r) {
    st.failed = true;
    os << "0.0";
    return;
  }
  if (r->is_integer()) {
    if (r->num() < 0) {
      os << "(- " << -(r->num()) << ".0)";
    } else {
      os << r->num() << ".0";
    }
    return;
  }
  os << "(/ ";
  if (r->num() < 0) {
    os << "(- " << -(r->num()) << ".0)";
  } else {
    os << r->num() << ".0";
  }
  os << " " << r->den() << ".0)";
}

void emit_nary(std::ostream& os, const char* op, const std::vector<ExprPtr>& args, EmitState& st) {
  os << '(' << op;
  for (const auto& a : args) {
    os << ' ';
    emit_expr(os, a, st);
  }
  os << ')';
}

void emit_expr(std::ostream& os, const ExprPtr& e, EmitState& st) {
  switch (e->kind) {
    case sym::Expr::Kind::IntConst:
      if (e->int_val < 0) {
        os << "(- " << static_cast<std::uint64_t>(-(e->int_val + 1)) + 1 << ')';
      } else {
        os << e->int_val;
      }
      break;
    case sym::Expr::Kind::RealConst: emit_real_const(os, e->real_val, st); break;
    case sym::Expr::Kind::Symbol:
      st.symbols.emplace(e->name, e->type);
      os << "v_" << e->name;
      break;
    case sym::Expr::Kind::Neg:
      os << "(- ";
      emit_expr(os, e->args[0], st);
      os << ')';
      break;
    case sym::Expr::Kind::IntToReal:
      os << "(to_real ";
      emit_expr(os, e->args[0], st);
      os << ')';
      break;
    case sym::Expr::Kind::Bin: {
      const char* op = nullptr;
      switch (e->op) {
        case sym::BinOp::Add: op = "+"; break;
        case sym::BinOp::Sub: op = "-"; break;
        case sym::BinOp::Mul: op = "*"; break;
        case sym::BinOp::Div:
          if (e->type == Type::Int) {
            st.needs_tdiv = true;
            op = "tdiv";
          } else {
            op = "/";
          }
          break;
        case sym::BinOp::Mod:
          st.needs_tdiv = true;
          op = "tmod";
          break;
      }
      emit_nary(os, op, e->args, st);
      break;
    }
    case sym::Expr::Kind::Call: {
      switch (e->fn) {
        case sym::Intrinsic::Abs:
          os << "(ite (>= ";
          emit_expr(os, e->args[0], st);
          os << ' ' << (e->type == Type::Int ? "0" : "0.0") << ") ";
          emit_expr(os, e->args[0], st);
          os << " (- ";
          emit_expr(os, e->args[0], st);
          os << "))";
          break;
        case sym::Intrinsic::Min:
        case sym::Intrinsic::Max: {
          os << "(ite (" << (e->fn == sym::Intrinsic::Min ? "<=" : ">=") << ' ';
          emit_expr(os, e->args[0], st);
          os << ' ';
          emit_expr(os, e->args[1], st);
          os << ") ";
          emit_expr(os, e->args[0], st);
          os << ' ';
          emit_expr(os, e->args[1], st);
          os << ')';
          break;
        }
        case sym::Intrinsic::Pow: {
          // Unroll small constant non-negative integer exponents exactly;
          // otherwise pass through as the official power operator.
          const auto& exp = e->args[1];
          std::int64_t n = -1;
          if (exp->kind == sym::Expr::Kind::IntConst) n = exp->int_val;
          if (exp->kind == sym::Expr::Kind::RealConst &&
              exp->real_val == std::floor(exp->real_val)) {
            n = static_cast<std::int64_t>(exp->real_val);
          }
          if (n >= 0 && n <= 8) {
            if (n == 0) {
              os << "1.0";
            } else {
              os << "(*";
              for (std::int64_t i = 0; i < n; ++i) {
                os << ' ';
                emit_expr(os, e->args[0], st);
              }
              os << ')';
            }
          } else {
            st.uses_intrinsic_uf = true;
            emit_nary(os, "^", e->args, st);
          }
          break;
        }
        default: {
          // Transcendental application: uninterpreted stand-in. Such
          // formulas are normally filtered out by the hard-term policy;
          // answers here require witness validation.
          st.uses_intrinsic_uf = true;
          std::string name = std::string("_") + sym::intrinsic_name(e->fn);
          st.decls << "(declare-fun " << name << " (";
          for (size_t i = 0; i < e->args.size(); ++i) st.decls << (i ? " Real" : "Real");
          st.decls << ") Real)\n";
          emit_nary(os, name.c_str(), e->args, st);
          break;
        }
      }
      break;
    }
    case sym::Expr::Kind::Uif: {
      std::vector<Type> sorts;
      for (const auto& a : e->args) sorts.push_back(a->type);
      st.uifs.emplace(e->uif_id, std::move(sorts));
      st.uif_results.emplace(e->uif_id, e->type);
      std::string name = "uif_" + std::to_string(e->uif_id);
      emit_nary(os, name.c_str(), e->args, st);
      break;
    }
  }
}

void emit_formula(std::ostream& os, const FormulaPtr& f, EmitState& st) {
  switch (f->kind) {
    case sym::Formula::Kind::Const: os << (f->value ? "true" : "false"); break;
    case sym::Formula::Kind::Cmp: {
      const char* op = nullptr;
      bool negate = false;
      switch (f->op) {
        case sym::CmpOp::Eq: op = "="; break;
        case sym::CmpOp::Ne:
          op = "=";
          negate = true;
          break;
        case sym::CmpOp::Lt: op = "<"; break;
        case sym::CmpOp::Le: op = "<="; break;
        case sym::CmpOp::Gt: op = ">"; break;
        case sym::CmpOp::Ge: op = ">="; break;
      }
      if (negate) os << "(not ";
      os << '(' << op << ' ';
      emit_expr(os, f->lhs, st);
      os << ' ';
      emit_expr(os, f->rhs, st);
      os << ')';
      if (negate) os << ')';
      break;
    }
    case sym::Formula::Kind::And:
    case sym::Formula::Kind::Or: {
      os << (f->kind == sym::Formula::Kind::And ? "(and" : "(or");
      for (const auto& p : f->parts) {
        os << ' ';
        emit_formula(os, p, st);
      }
      os << ')';
      break;
    }
    case sym::Formula::Kind::Not:
      os << "(not ";
      emit_formula(os, f->parts[0], st);
      os << ')';
      break;
  }
}

struct RenderedQuery {
  std::string text;
  bool uses_intrinsic_uf = false;
  bool has_uifs = false;
};

std::optional<RenderedQuery> render(const FormulaPtr& f, int timeout_ms) {
  EmitState st;
  std::ostringstream assertion;
  emit_formula(assertion, f, st);
  if (st.failed) return std::nullopt;

  std::ostringstream q;
  q << "(set-option :print-success false)\n";
  if (timeout_ms > 0) q << "(set-option :timeout " << timeout_ms << ")\n";
  q << "(set-logic ALL)\n";
  if (st.needs_tdiv) {
    q << "(define-fun tdiv ((a Int) (b Int)) Int (ite (>= a 0) (div a b) (- (div (- a) b))))\n";
    q << "(define-fun tmod ((a Int) (b Int)) Int (- a (* b (tdiv a b))))\n";
  }
  for (const auto& [name, type] : st.symbols) {
    q << "(declare-const v_" << name << ' ' << sort_name(type) << ")\n";
  }
  for (const auto& [id, sorts] : st.uifs) {
    q << "(declare-fun uif_" << id << " (";
    for (size_t i = 0; i < sorts.size(); ++i) q << (i ? " " : "") << sort_name(sorts[i]);
    q << ") " << sort_name(st.uif_results[id]) << ")\n";
  }
  q << st.decls.str();
  q << "(assert " << assertion.str() << ")\n";
  q << "(check-sat)\n";
  RenderedQuery out;
  out.text = q.str();
  out.uses_intrinsic_uf = st.uses_intrinsic_uf;
  out.has_uifs = !st.uifs.empty();
  return out;
}

// --------------------------------------------------------------------------
// Model parsing (minimal s-expression reader)
// --------------------------------------------------------------------------

struct SNode {
  bool is_atom = true;
  std::string atom;
  std::vector<SNode> list;
};

bool parse_snodes(const std::string& text, size_t& pos, std::vector<SNode>& out) {
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == ')') return true;
    if (c == '(') {
      ++pos;
      SNode node;
      node.is_atom = false;
      if (!parse_snodes(text, pos, node.list)) return false;
      if (pos >= text.size() || text[pos] != ')') return false;
      ++pos;
      out.push_back(std::move(node));
      continue;
    }
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    SNode node;
    node.atom = text.substr(start, pos - start);
    out.push_back(std::move(node));
  }
  return true;
}

std::optional<double> eval_model_value(const SNode& n) {
  if (n.is_atom) {
    try {
      return std::stod(n.atom);
    } catch (...) {
      return std::nullopt;
    }
  }
  if (n.list.empty()) return std::nullopt;
  const auto& head = n.list[0];
  if (!head.is_atom) return std::nullopt;
  if (head.atom == "-" && n.list.size() == 2) {
    auto v = eval_model_value(n.list[1]);
    if (!v) return std::nullopt;
    return -*v;
  }
  if (head.atom == "/" && n.list.size() == 3) {
    auto a = eval_model_value(n.list[1]);
    auto b = eval_model_value(n.list[2]);
    if (!a || !b || *b == 0.0) return std::nullopt;
    return *a / *b;
  }
  return std::nullopt;
}

sym::Assignment parse_model(const std::string& text) {
  sym::Assignment out;
  std::vector<SNode> nodes;
  size_t pos = 0;
  if (!parse_snodes(text, pos, nodes)) return out;
  // unwrap optional top-level (model ...) / ( ... ) wrapper
  std::vector<const SNode*> defs;
  std::function<void(const SNode&)> scan = [&](const SNode& n) {
    if (n.is_atom) return;
    if (!n.list.empty() && n.list[0].is_atom && n.list[0].atom == "define-fun") {
      defs.push_back(&n);
      return;
    }
    for (const auto& c : n.list) scan(c);
  };
  for (const auto& n : nodes) scan(n);
  for (const SNode* def : defs) {
    const auto& l = def->list;
    if (l.size() != 5 || !l[1].is_atom || l[2].is_atom || !l[3].is_atom) continue;
    if (!l[2].list.empty()) continue;  // function model (uif table): skipped
    const std::string& name = l[1].atom;
    if (name.rfind("v_", 0) != 0) continue;
    auto value = eval_model_value(l[4]);
    if (!value) continue;
    if (l[3].atom == "Int") {
      out.vars[name.substr(2)] = Value::of_int(static_cast<std::int64_t>(*value));
    } else if (l[3].atom == "Real") {
      out.vars[name.substr(2)] = Value::of_real(*value);
    }
  }
  return out;
}

}  // namespace

std::optional<std::string> emit_smtlib_query(const sym::FormulaPtr& f, int timeout_ms) {
  auto r = render(f, timeout_ms);
  if (!r) return std::nullopt;
  return r->text;
}

// --------------------------------------------------------------------------
// Subprocess plumbing
// --------------------------------------------------------------------------

struct ExternalBackend::Process {
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;

  ~Process() {
    if (to_child >= 0) close(to_child);
    if (from_child >= 0) close(from_child);
    if (pid > 0) {
      kill(pid, SIGKILL);
      waitpid(pid, nullptr, 0);
    }
  }
};

ExternalBackend::ExternalBackend(std::string bin, std::vector<std::string> args,
                                 std::string query_log_path)
    : bin_(std::move(bin)), args_(std::move(args)), query_log_path_(std::move(query_log_path)) {}

ExternalBackend::~ExternalBackend() = default;

void ExternalBackend::ensure_process() {
  if (proc_) return;
  if (bin_.empty()) throw BackendUnavailable("no solver binary configured");
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw BackendUnavailable("pipe() failed");
  }
  pid_t pid = fork();
  if (pid < 0) throw BackendUnavailable("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(bin_.c_str()));
    for (auto& a : args_) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(bin_.c_str(), argv.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  auto p = std::make_unique<Process>();
  p->pid = pid;
  p->to_child = in_pipe[1];
  p->from_child = out_pipe[0];
  fcntl(p->from_child, F_SETFL, O_NONBLOCK);
  proc_ = std::move(p);
}

void ExternalBackend::kill_process() { proc_.reset(); }

namespace {

bool write_all(int fd, const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = write(fd, data.data() + off, data.size() - off);
    if (n <= 0) return false;
    off += static_cast<size_t>(n);
  }
  return true;
}

// Reads until the predicate finds a complete answer in the buffer or the
// deadline passes. Returns false on timeout/EOF-without-answer.
template <typename Pred>
bool read_until(int fd, std::string& buf, std::chrono::steady_clock::time_point until,
                Pred done) {
  while (true) {
    if (done(buf)) return true;
    auto now = std::chrono::steady_clock::now();
    if (now >= until) return false;
    struct pollfd pfd{fd, POLLIN, 0};
    int ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(until - now).count());
    int r = poll(&pfd, 1, std::max(1, std::min(ms, 200)));
    if (r < 0) return false;
    if (r == 0) continue;
    char chunk[4096];
    ssize_t n = read(fd, chunk, sizeof(chunk));
    if (n > 0) {
      buf.append(chunk, static_cast<size_t>(n));
    } else if (n == 0) {
      return done(buf);  // EOF
    } else if (errno != EAGAIN && errno != EWOULDBLOCK) {
      return false;
    }
  }
}

// First complete line that is exactly sat/unsat/unknown.
std::optional<std::string> find_answer_line(const std::string& buf) {
  size_t start = 0;
  while (start <= buf.size()) {
    size_t end = buf.find('\n', start);
    if (end == std::string::npos) break;
    std::string line = buf.substr(start, end - start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    size_t first = line.find_first_not_of(' ');
    if (first != std::string::npos) line = line.substr(first);
    if (line == "sat" || line == "unsat" || line == "unknown") return line;
    start = end + 1;
  }
  return std::nullopt;
}

bool balanced_nonempty(const std::string& s) {
  int depth = 0;
  bool seen = false;
  for (char c : s) {
    if (c == '(') {
      ++depth;
      seen = true;
    } else if (c == ')') {
      --depth;
      if (depth == 0 && seen) return true;
    }
  }
  return false;
}

}  // namespace

SolverVerdict ExternalBackend::check(const sym::FormulaPtr& f, int timeout_ms,
                                     const Deadline& deadline) {
  auto rendered = render(f, timeout_ms);
  if (!rendered) return SolverVerdict{Sat::Unknown, std::nullopt};

  if (!query_log_path_.empty()) {
    std::ofstream log(query_log_path_, std::ios::app);
    log << rendered->text << "\n";
  }

  ensure_process();
  std::string payload = "(reset)\n" + rendered->text;
  if (!write_all(proc_->to_child, payload)) {
    kill_process();
    ensure_process();  // one respawn attempt
    if (!write_all(proc_->to_child, payload)) {
      kill_process();
      throw BackendUnavailable("cannot write to solver process");
    }
  }

  auto until = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  if (deadline && *deadline < until) until = *deadline;

  std::string buf;
  bool got = read_until(proc_->from_child, buf,until,
                        [](const std::string& b) { return find_answer_line(b).has_value(); });
  if (!got) {
    kill_process();  // timed out or died; next query respawns
    return SolverVerdict{Sat::Unknown, std::nullopt};
  }
  auto answer = *find_answer_line(buf);
  if (answer == "unsat") return SolverVerdict{Sat::Unsat, std::nullopt};
  if (answer == "unknown") return SolverVerdict{Sat::Unknown, std::nullopt};

  // sat: fetch a model for the witness when the formula is UIF-free.
  SolverVerdict verdict{Sat::Sat, std::nullopt};
  if (!rendered->has_uifs) {
    if (write_all(proc_->to_child, "(get-model)\n")) {
      std::string model_buf;
      read_until(proc_->from_child, model_buf, until,
                 [](const std::string& b) { return balanced_nonempty(b); });
      auto witness = parse_model(model_buf);
      bool complete = true;
      std::vector<ExprPtr> symbols;
      sym::collect_symbols(f, symbols);
      for (const auto& s : symbols) complete = complete && witness.vars.count(s->name) > 0;
      if (complete) {
        auto check = sym::eval(f, witness);
        if (check && *check) {
          verdict.witness = std::move(witness);
        } else if (rendered->uses_intrinsic_uf) {
          // model assigned an uninterpreted stand-in inconsistently with the
          // actual intrinsic; the sat answer cannot be trusted
          return SolverVerdict{Sat::Unknown, std::nullopt};
        }
      } else if (rendered->uses_intrinsic_uf) {
        return SolverVerdict{Sat::Unknown, std::nullopt};
      }
    }
  } else if (rendered->uses_intrinsic_uf) {
    return SolverVerdict{Sat::Unknown, std::nullopt};
  }
  return verdict;
}

}  // namespace pasda::solver
