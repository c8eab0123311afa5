#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcrt/circuit.hpp"

namespace qcrt::dsl {

struct SourceLoc {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
};

enum class DiagnosticKind { Syntax, UnknownGate, UnboundIdentifier };

class ParseError : public std::runtime_error {
 public:
  ParseError(DiagnosticKind kind, SourceLoc loc, const std::string& message)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
                           message),
        kind_(kind),
        loc_(loc) {}

  DiagnosticKind kind() const { return kind_; }
  SourceLoc location() const { return loc_; }

 private:
  DiagnosticKind kind_;
  SourceLoc loc_;
};

/// A qubit operand `reg[index]`; the index is an integer literal or a loop
/// variable.
struct QubitRef {
  std::string reg;
  bool is_var = false;
  std::int64_t index = 0;
  std::string var;
};

/// Scalar argument: a float literal or a (possibly negated) parameter name.
struct ScalarExpr {
  bool is_param = false;
  bool negated = false;
  double literal = 0.0;
  std::string param;
};

struct GateStmt;
struct ForStmt;
using Stmt = std::variant<GateStmt, ForStmt>;

struct GateStmt {
  Gate gate = Gate::H;
  std::vector<QubitRef> qubits;
  std::vector<ScalarExpr> args;
  SourceLoc loc;
};

/// `for <var> in <begin>..<end> { ... }`, half-open bounds.
struct ForStmt {
  std::string var;
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::vector<Stmt> body;
  SourceLoc loc;
};

struct KernelSource {
  std::string name;
  std::string register_param;
  std::vector<std::string> scalar_params;
  std::vector<Stmt> body;
};

/// Parses `kernel <name>(<reg>[, <param>...]) { <stmt>* }`. `//` comments
/// and whitespace are insignificant. Throws ParseError with a position and
/// one of the three diagnostic kinds.
KernelSource parse_kernel(std::string_view text);

/// Canonical source form; reparsing yields a structurally identical kernel.
std::string pretty_print(const KernelSource& kernel);

bool structurally_equal(const KernelSource& a, const KernelSource& b);

/// Unrolls loops, substitutes scalar arguments and instantiates the register
/// at `register_size` qubits. Throws std::invalid_argument on scalar arity
/// mismatch and std::out_of_range on qubit indices outside the register.
Circuit lower(const KernelSource& kernel, std::uint32_t register_size,
              std::span<const double> scalar_args = {});

/// Reads and parses a kernel file (conventionally `.xqk`).
KernelSource parse_kernel_file(const std::string& path);

}  // namespace qcrt::dsl
