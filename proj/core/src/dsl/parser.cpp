#include "qcrt/dsl/kernel.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace qcrt::dsl {

namespace {

struct GateSignature {
  Gate gate;
  int qubits;
  int scalars;
};

const std::map<std::string, GateSignature, std::less<>>& gate_table() {
  static const std::map<std::string, GateSignature, std::less<>> table = {
      {"H", {Gate::H, 1, 0}},          {"X", {Gate::X, 1, 0}},
      {"Y", {Gate::Y, 1, 0}},          {"Z", {Gate::Z, 1, 0}},
      {"S", {Gate::S, 1, 0}},          {"T", {Gate::T, 1, 0}},
      {"Rx", {Gate::Rx, 1, 1}},        {"Ry", {Gate::Ry, 1, 1}},
      {"Rz", {Gate::Rz, 1, 1}},        {"CX", {Gate::CX, 2, 0}},
      {"CZ", {Gate::CZ, 2, 0}},        {"CPhase", {Gate::CPhase, 2, 1}},
      {"SWAP", {Gate::SWAP, 2, 0}},    {"Measure", {Gate::Measure, 1, 0}},
  };
  return table;
}

enum class TokenKind { Identifier, Integer, Float, LParen, RParen, LBrace, RBrace,
                       LBracket, RBracket, Comma, Semicolon, DotDot, Minus, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_trivia();
    Token token;
    token.loc = loc();
    if (pos_ >= text_.size()) return token;

    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        advance();
      }
      token.kind = TokenKind::Identifier;
      token.text = std::string(text_.substr(start, pos_ - start));
      return token;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      bool is_float = false;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      }
      // '..' belongs to the range operator, a single '.' starts a fraction
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' && text_[pos_ + 1] != '.') {
        is_float = true;
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        is_float = true;
        advance();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
      }
      token.kind = is_float ? TokenKind::Float : TokenKind::Integer;
      token.text = std::string(text_.substr(start, pos_ - start));
      return token;
    }

    advance();
    switch (c) {
      case '(': token.kind = TokenKind::LParen; return token;
      case ')': token.kind = TokenKind::RParen; return token;
      case '{': token.kind = TokenKind::LBrace; return token;
      case '}': token.kind = TokenKind::RBrace; return token;
      case '[': token.kind = TokenKind::LBracket; return token;
      case ']': token.kind = TokenKind::RBracket; return token;
      case ',': token.kind = TokenKind::Comma; return token;
      case ';': token.kind = TokenKind::Semicolon; return token;
      case '-': token.kind = TokenKind::Minus; return token;
      case '.':
        if (pos_ < text_.size() && text_[pos_] == '.') {
          advance();
          token.kind = TokenKind::DotDot;
          return token;
        }
        break;
      default: break;
    }
    throw ParseError(DiagnosticKind::Syntax, token.loc,
                     std::string("unexpected character '") + c + "'");
  }

 private:
  SourceLoc loc() const { return {line_, column_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  KernelSource parse() {
    KernelSource kernel;
    expect_keyword("kernel");
    kernel.name = expect(TokenKind::Identifier, "kernel name").text;
    expect(TokenKind::LParen, "'('");
    kernel.register_param = expect(TokenKind::Identifier, "register parameter").text;
    while (accept(TokenKind::Comma)) {
      kernel.scalar_params.push_back(expect(TokenKind::Identifier, "scalar parameter").text);
    }
    expect(TokenKind::RParen, "')'");
    expect(TokenKind::LBrace, "'{'");
    Scope scope{kernel, {}};
    while (!accept(TokenKind::RBrace)) {
      if (current_.kind == TokenKind::End) {
        throw ParseError(DiagnosticKind::Syntax, current_.loc, "unexpected end of input");
      }
      kernel.body.push_back(parse_stmt(scope));
    }
    if (current_.kind != TokenKind::End) {
      throw ParseError(DiagnosticKind::Syntax, current_.loc,
                       "trailing input after kernel body");
    }
    return kernel;
  }

 private:
  struct Scope {
    KernelSource& kernel;
    std::vector<std::string> loop_vars;

    bool is_scalar(const std::string& id) const {
      for (const std::string& p : kernel.scalar_params) {
        if (p == id) return true;
      }
      return false;
    }
    bool is_loop_var(const std::string& id) const {
      for (const std::string& v : loop_vars) {
        if (v == id) return true;
      }
      return false;
    }
  };

  Stmt parse_stmt(Scope& scope) {
    const Token head = expect(TokenKind::Identifier, "gate name or 'for'");
    if (head.text == "for") return parse_for(scope, head.loc);
    return parse_gate(scope, head);
  }

  Stmt parse_for(Scope& scope, SourceLoc loc) {
    ForStmt stmt;
    stmt.loc = loc;
    stmt.var = expect(TokenKind::Identifier, "loop variable").text;
    expect_keyword("in");
    stmt.begin = expect_integer("loop start");
    expect(TokenKind::DotDot, "'..'");
    stmt.end = expect_integer("loop end");
    expect(TokenKind::LBrace, "'{'");
    scope.loop_vars.push_back(stmt.var);
    while (!accept(TokenKind::RBrace)) {
      if (current_.kind == TokenKind::End) {
        throw ParseError(DiagnosticKind::Syntax, current_.loc, "unterminated for body");
      }
      stmt.body.push_back(parse_stmt(scope));
    }
    scope.loop_vars.pop_back();
    return stmt;
  }

  Stmt parse_gate(Scope& scope, const Token& head) {
    const auto& table = gate_table();
    auto it = table.find(head.text);
    if (it == table.end()) {
      throw ParseError(DiagnosticKind::UnknownGate, head.loc,
                       "unknown gate '" + head.text + "'");
    }
    const GateSignature& sig = it->second;

    GateStmt stmt;
    stmt.gate = sig.gate;
    stmt.loc = head.loc;
    expect(TokenKind::LParen, "'('");
    for (int q = 0; q < sig.qubits; ++q) {
      if (q > 0) expect(TokenKind::Comma, "','");
      stmt.qubits.push_back(parse_qubit_ref(scope));
    }
    for (int s = 0; s < sig.scalars; ++s) {
      expect(TokenKind::Comma, "','");
      stmt.args.push_back(parse_scalar(scope));
    }
    expect(TokenKind::RParen, "')'");
    expect(TokenKind::Semicolon, "';'");
    return stmt;
  }

  QubitRef parse_qubit_ref(Scope& scope) {
    const Token reg = expect(TokenKind::Identifier, "qubit reference");
    if (reg.text != scope.kernel.register_param) {
      throw ParseError(DiagnosticKind::UnboundIdentifier, reg.loc,
                       "unbound register '" + reg.text + "'");
    }
    QubitRef ref;
    ref.reg = reg.text;
    expect(TokenKind::LBracket, "'['");
    const Token index = shift();
    if (index.kind == TokenKind::Integer) {
      ref.index = to_int(index);
    } else if (index.kind == TokenKind::Identifier) {
      if (!scope.is_loop_var(index.text)) {
        throw ParseError(DiagnosticKind::UnboundIdentifier, index.loc,
                         "unbound index identifier '" + index.text + "'");
      }
      ref.is_var = true;
      ref.var = index.text;
    } else {
      throw ParseError(DiagnosticKind::Syntax, index.loc, "expected qubit index");
    }
    expect(TokenKind::RBracket, "']'");
    return ref;
  }

  ScalarExpr parse_scalar(Scope& scope) {
    ScalarExpr expr;
    while (accept(TokenKind::Minus)) expr.negated = !expr.negated;
    const Token token = shift();
    if (token.kind == TokenKind::Float || token.kind == TokenKind::Integer) {
      expr.literal = to_double(token);
      return expr;
    }
    if (token.kind == TokenKind::Identifier) {
      if (!scope.is_scalar(token.text)) {
        throw ParseError(DiagnosticKind::UnboundIdentifier, token.loc,
                         "unbound scalar '" + token.text + "'");
      }
      expr.is_param = true;
      expr.param = token.text;
      return expr;
    }
    throw ParseError(DiagnosticKind::Syntax, token.loc, "expected scalar expression");
  }

  Token shift() {
    Token out = current_;
    current_ = lexer_.next();
    return out;
  }

  bool accept(TokenKind kind) {
    if (current_.kind != kind) return false;
    shift();
    return true;
  }

  Token expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) {
      throw ParseError(DiagnosticKind::Syntax, current_.loc,
                       std::string("expected ") + what +
                           (current_.text.empty() ? "" : ", got '" + current_.text + "'"));
    }
    return shift();
  }

  void expect_keyword(const char* keyword) {
    const Token token = expect(TokenKind::Identifier, ("'" + std::string(keyword) + "'").c_str());
    if (token.text != keyword) {
      throw ParseError(DiagnosticKind::Syntax, token.loc,
                       "expected '" + std::string(keyword) + "', got '" + token.text + "'");
    }
  }

  std::int64_t expect_integer(const char* what) {
    bool negate = false;
    while (accept(TokenKind::Minus)) negate = !negate;
    const Token token = expect(TokenKind::Integer, what);
    const std::int64_t value = to_int(token);
    return negate ? -value : value;
  }

  std::int64_t to_int(const Token& token) {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
    if (ec != std::errc{} || ptr != token.text.data() + token.text.size()) {
      throw ParseError(DiagnosticKind::Syntax, token.loc, "bad integer '" + token.text + "'");
    }
    return value;
  }

  double to_double(const Token& token) {
    try {
      return std::stod(token.text);
    } catch (const std::exception&) {
      throw ParseError(DiagnosticKind::Syntax, token.loc, "bad number '" + token.text + "'");
    }
  }

  Lexer lexer_;
  Token current_;
};

}  // namespace

KernelSource parse_kernel(std::string_view text) { return Parser(text).parse(); }

KernelSource parse_kernel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open kernel file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_kernel(buffer.str());
}

namespace {

void print_scalar(std::ostream& out, const ScalarExpr& expr) {
  if (expr.negated) out << '-';
  if (expr.is_param) {
    out << expr.param;
  } else {
    std::ostringstream fmt;
    fmt.precision(17);
    fmt << expr.literal;
    std::string text = fmt.str();
    // keep literals re-lexable as floats
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find("inf") == std::string::npos && text.find("nan") == std::string::npos) {
      text += ".0";
    }
    out << text;
  }
}

void print_stmt(std::ostream& out, const Stmt& stmt, int depth) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  if (const auto* gate = std::get_if<GateStmt>(&stmt)) {
    out << indent << gate_name(gate->gate) << '(';
    bool first = true;
    for (const QubitRef& q : gate->qubits) {
      if (!first) out << ", ";
      first = false;
      out << q.reg << '[';
      if (q.is_var) {
        out << q.var;
      } else {
        out << q.index;
      }
      out << ']';
    }
    for (const ScalarExpr& a : gate->args) {
      out << ", ";
      print_scalar(out, a);
    }
    out << ");\n";
    return;
  }
  const auto& loop = std::get<ForStmt>(stmt);
  out << indent << "for " << loop.var << " in " << loop.begin << ".." << loop.end << " {\n";
  for (const Stmt& inner : loop.body) print_stmt(out, inner, depth + 1);
  out << indent << "}\n";
}

}  // namespace

std::string pretty_print(const KernelSource& kernel) {
  std::ostringstream out;
  out << "kernel " << kernel.name << '(' << kernel.register_param;
  for (const std::string& p : kernel.scalar_params) out << ", " << p;
  out << ") {\n";
  for (const Stmt& stmt : kernel.body) print_stmt(out, stmt, 1);
  out << "}\n";
  return out.str();
}

namespace {

bool stmts_equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

bool stmt_equal(const Stmt& a, const Stmt& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<GateStmt>(&a)) {
    const auto& gb = std::get<GateStmt>(b);
    if (ga->gate != gb.gate || ga->qubits.size() != gb.qubits.size() ||
        ga->args.size() != gb.args.size()) {
      return false;
    }
    for (std::size_t i = 0; i < ga->qubits.size(); ++i) {
      const QubitRef& qa = ga->qubits[i];
      const QubitRef& qb = gb.qubits[i];
      if (qa.reg != qb.reg || qa.is_var != qb.is_var || qa.index != qb.index ||
          qa.var != qb.var) {
        return false;
      }
    }
    for (std::size_t i = 0; i < ga->args.size(); ++i) {
      const ScalarExpr& ea = ga->args[i];
      const ScalarExpr& eb = gb.args[i];
      if (ea.is_param != eb.is_param || ea.negated != eb.negated || ea.param != eb.param ||
          ea.literal != eb.literal) {
        return false;
      }
    }
    return true;
  }
  const auto& fa = std::get<ForStmt>(a);
  const auto& fb = std::get<ForStmt>(b);
  return fa.var == fb.var && fa.begin == fb.begin && fa.end == fb.end &&
         stmts_equal(fa.body, fb.body);
}

bool stmts_equal(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!stmt_equal(a[i], b[i])) return false;
  }
  return true;
}

struct LowerContext {
  const KernelSource& kernel;
  std::uint32_t register_size;
  std::span<const double> scalar_args;
  std::map<std::string, std::int64_t> loop_values;
  Circuit* circuit;
};

std::uint32_t resolve_index(const LowerContext& ctx, const QubitRef& ref) {
  std::int64_t index = ref.index;
  if (ref.is_var) index = ctx.loop_values.at(ref.var);
  if (index < 0 || index >= static_cast<std::int64_t>(ctx.register_size)) {
    throw std::out_of_range("lower: index " + std::to_string(index) + " out of bounds for " +
                            ref.reg + "[" + std::to_string(ctx.register_size) + "]");
  }
  return static_cast<std::uint32_t>(index);
}

double resolve_scalar(const LowerContext& ctx, const ScalarExpr& expr) {
  double value = expr.literal;
  if (expr.is_param) {
    std::size_t slot = 0;
    for (; slot < ctx.kernel.scalar_params.size(); ++slot) {
      if (ctx.kernel.scalar_params[slot] == expr.param) break;
    }
    value = ctx.scalar_args[slot];
  }
  return expr.negated ? -value : value;
}

void lower_stmts(LowerContext& ctx, const std::vector<Stmt>& stmts) {
  for (const Stmt& stmt : stmts) {
    if (const auto* gate = std::get_if<GateStmt>(&stmt)) {
      Instruction inst;
      inst.kind = gate->gate;
      for (const QubitRef& q : gate->qubits) inst.targets.push_back(resolve_index(ctx, q));
      for (const ScalarExpr& a : gate->args) inst.params.push_back(resolve_scalar(ctx, a));
      ctx.circuit->append(std::move(inst));
      continue;
    }
    const auto& loop = std::get<ForStmt>(stmt);
    for (std::int64_t i = loop.begin; i < loop.end; ++i) {
      ctx.loop_values[loop.var] = i;
      lower_stmts(ctx, loop.body);
    }
    ctx.loop_values.erase(loop.var);
  }
}

}  // namespace

bool structurally_equal(const KernelSource& a, const KernelSource& b) {
  return a.name == b.name && a.register_param == b.register_param &&
         a.scalar_params == b.scalar_params && stmts_equal(a.body, b.body);
}

Circuit lower(const KernelSource& kernel, std::uint32_t register_size,
              std::span<const double> scalar_args) {
  if (scalar_args.size() != kernel.scalar_params.size()) {
    throw std::invalid_argument("lower: kernel '" + kernel.name + "' takes " +
                                std::to_string(kernel.scalar_params.size()) +
                                " scalar argument(s), got " +
                                std::to_string(scalar_args.size()));
  }
  if (register_size == 0) throw std::invalid_argument("lower: register size must be >= 1");

  Circuit circuit(register_size, kernel.name);
  LowerContext ctx{kernel, register_size, scalar_args, {}, &circuit};
  lower_stmts(ctx, kernel.body);
  return circuit;
}

}  // namespace qcrt::dsl
