#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <thread>

#include "qcrt/algorithms/bell.hpp"
#include "qcrt/algorithms/vqe.hpp"
#include "qcrt/dsl/kernel.hpp"

using namespace qcrt;
using namespace qcrt::dsl;

namespace {

const char* kBellSource =
    "kernel bell(q) {\n"
    "  H(q[0]);\n"
    "  CX(q[0], q[1]);\n"
    "  for i in 0..2 {\n"
    "    Measure(q[i]);\n"
    "  }\n"
    "}\n";

const char* kAnsatzSource =
    "kernel ansatz(q, theta) {\n"
    "  X(q[0]);\n"
    "  Ry(q[1], theta);\n"
    "  CX(q[1], q[0]);\n"
    "}\n";

}  // namespace

TEST_CASE("bell source parses into the documented structure") {
  const KernelSource kernel = parse_kernel(kBellSource);
  CHECK(kernel.name == "bell");
  CHECK(kernel.register_param == "q");
  CHECK(kernel.scalar_params.empty());
  REQUIRE(kernel.body.size() == 3);  // two gate stmts + one loop
  CHECK(std::holds_alternative<GateStmt>(kernel.body[0]));
  CHECK(std::holds_alternative<GateStmt>(kernel.body[1]));
  REQUIRE(std::holds_alternative<ForStmt>(kernel.body[2]));
  const auto& loop = std::get<ForStmt>(kernel.body[2]);
  CHECK(loop.begin == 0);
  CHECK(loop.end == 2);
  REQUIRE(loop.body.size() == 1);
  const auto& measure = std::get<GateStmt>(loop.body[0]);
  CHECK(measure.gate == Gate::Measure);
  CHECK(measure.qubits[0].is_var);
  CHECK(measure.qubits[0].var == "i");
}

TEST_CASE("lowered bell equals the programmatic constructor") {
  const Circuit lowered = lower(parse_kernel(kBellSource), 2);
  CHECK(lowered.structurally_equal(algo::bell_kernel()));
}

TEST_CASE("lowered ansatz equals the programmatic constructor") {
  const KernelSource kernel = parse_kernel(kAnsatzSource);
  CHECK(kernel.scalar_params == std::vector<std::string>{"theta"});

  const double theta[] = {0.7};
  const Circuit lowered = lower(kernel, 2, theta);
  CHECK(lowered.structurally_equal(algo::ansatz(0.7)));
  REQUIRE(lowered.size() == 3);
  CHECK(lowered.instructions()[1].params[0] == doctest::Approx(0.7));
}

TEST_CASE("parameterized statement example") {
  const KernelSource kernel = parse_kernel("kernel a(q, theta) { Ry(q[1], theta); }");
  REQUIRE(kernel.body.size() == 1);
  const auto& gate = std::get<GateStmt>(kernel.body[0]);
  CHECK(gate.gate == Gate::Ry);
  REQUIRE(gate.args.size() == 1);
  CHECK(gate.args[0].is_param);
  CHECK(gate.args[0].param == "theta");
}

TEST_CASE("unknown gate diagnostic names the gate and its position") {
  try {
    parse_kernel("kernel x(q) { Foo(q[0]); }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == DiagnosticKind::UnknownGate);
    CHECK(std::string(e.what()).find("Foo") != std::string::npos);
    CHECK(e.location().line == 1);
    CHECK(e.location().column == 15);
  }
}

TEST_CASE("syntax diagnostic carries line and column") {
  try {
    parse_kernel("kernel b(q) {\n  H(q[0])\n}\n");  // missing semicolon
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == DiagnosticKind::Syntax);
    CHECK(e.location().line == 3);
  }
}

TEST_CASE("unbound identifier diagnostics") {
  SUBCASE("unknown register") {
    try {
      parse_kernel("kernel c(q) { H(r[0]); }");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == DiagnosticKind::UnboundIdentifier);
      CHECK(std::string(e.what()).find("r") != std::string::npos);
    }
  }
  SUBCASE("unknown scalar") {
    try {
      parse_kernel("kernel c(q) { Ry(q[0], phi); }");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == DiagnosticKind::UnboundIdentifier);
      CHECK(std::string(e.what()).find("phi") != std::string::npos);
    }
  }
  SUBCASE("loop variable out of scope") {
    try {
      parse_kernel("kernel c(q) { for i in 0..2 { H(q[i]); } X(q[i]); }");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == DiagnosticKind::UnboundIdentifier);
    }
  }
}

TEST_CASE("comments and whitespace are insignificant") {
  const KernelSource kernel = parse_kernel(
      "// header comment\nkernel   spaced ( q )   {\n  H(q[0]);  // trailing\n}\n");
  CHECK(kernel.name == "spaced");
  REQUIRE(kernel.body.size() == 1);
}

TEST_CASE("round-trip: pretty-print reparses to an identical kernel") {
  for (const char* source :
       {kBellSource, kAnsatzSource,
        "kernel mixed(q, a, b) {\n"
        "  Rx(q[0], -a);\n"
        "  CPhase(q[0], q[1], 1.5);\n"
        "  for i in 1..3 { for j in 0..1 { CX(q[i], q[j]); } SWAP(q[0], q[i]); }\n"
        "  Rz(q[2], -0.25);\n"
        "  T(q[1]); S(q[0]); Z(q[2]); Y(q[1]);\n"
        "}"}) {
    const KernelSource first = parse_kernel(source);
    const KernelSource second = parse_kernel(pretty_print(first));
    CHECK(structurally_equal(first, second));
    // printing is a fixed point after one round
    CHECK(pretty_print(first) == pretty_print(second));
  }
}

TEST_CASE("lowering reports scalar arity mismatches") {
  const KernelSource kernel = parse_kernel(kAnsatzSource);
  CHECK_THROWS_AS(lower(kernel, 2), std::invalid_argument);
  const double too_many[] = {0.1, 0.2};
  CHECK_THROWS_AS(lower(kernel, 2, too_many), std::invalid_argument);
}

TEST_CASE("lowering bounds-checks unrolled indices") {
  const KernelSource kernel = parse_kernel(kBellSource);
  CHECK_THROWS_AS(lower(kernel, 1), std::out_of_range);  // q[1] does not fit
}

TEST_CASE("nested loops unroll in order") {
  const KernelSource kernel = parse_kernel(
      "kernel grid(q) { for i in 0..2 { H(q[i]); for j in 2..4 { CX(q[i], q[j]); } } }");
  const Circuit circuit = lower(kernel, 4);
  REQUIRE(circuit.size() == 6);
  CHECK(circuit.instructions()[0].kind == Gate::H);
  CHECK(circuit.instructions()[1].targets == std::vector<std::uint32_t>{0, 2});
  CHECK(circuit.instructions()[2].targets == std::vector<std::uint32_t>{0, 3});
  CHECK(circuit.instructions()[3].kind == Gate::H);
  CHECK(circuit.instructions()[4].targets == std::vector<std::uint32_t>{1, 2});
  CHECK(circuit.instructions()[5].targets == std::vector<std::uint32_t>{1, 3});
}

TEST_CASE("negated literals and parameters lower with their sign") {
  const KernelSource kernel = parse_kernel("kernel n(q, a) { Rx(q[0], -a); Ry(q[0], -2.5); }");
  const double args[] = {1.25};
  const Circuit circuit = lower(kernel, 1, args);
  CHECK(circuit.instructions()[0].params[0] == doctest::Approx(-1.25));
  CHECK(circuit.instructions()[1].params[0] == doctest::Approx(-2.5));
}

TEST_CASE("parser is pure and reentrant under concurrent use") {
  std::atomic<int> failures{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&failures, t] {
      for (int i = 0; i < 200; ++i) {
        const char* source = (t + i) % 2 == 0 ? kBellSource : kAnsatzSource;
        const KernelSource kernel = parse_kernel(source);
        const bool ok = (t + i) % 2 == 0 ? kernel.name == "bell" : kernel.name == "ansatz";
        if (!ok) failures.fetch_add(1);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  CHECK(failures.load() == 0);
}
