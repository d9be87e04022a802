#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopwhile/complexity.hpp"
#include "loopwhile/encoding.hpp"
#include "loopwhile/parser.hpp"
#include "loopwhile/semantics.hpp"
#include "loopwhile/transforms.hpp"
#include "support/corpus.hpp"

using lw::Nat;
using lw::Program;

TEST_CASE("steps: definitional values") {
  CHECK(lw::steps(Program::skip(), {}, Nat(10)) == Nat(0));
  CHECK(lw::steps(lw::parse("x0 := x0 + 1;\nx0 := x0 + 1"), {}, Nat(10)) == Nat(2));
  CHECK(lw::steps(corpus::two_increment_program(), {}, Nat(10)) == Nat(2));
  // add on [2,3]: copy 1 + loop entry 1 + three increments
  CHECK(lw::steps(corpus::add_program(), {Nat(2), Nat(3)}, Nat(10000)) == Nat(5));
  // diverging program exhausts
  CHECK_FALSE(lw::steps(lw::parse("while x1 /= 0 do x1 := x1 + 0 end"), {Nat(1)}, Nat(99)));
}

TEST_CASE("steps is additive over Seq on halting corpus programs") {
  for (const auto& e : corpus::entries()) {
    std::vector<Nat> in(e.arity, Nat(2));
    auto whole = lw::steps(Program::seq(e.program, e.program), in, Nat(1000000));
    lw::Outcome first = lw::run(e.program, in, Nat(1000000));
    if (!first.halted) continue;
    // Rerun the second copy from the first's final state by priming the
    // inputs: only checkable directly when the program reads x1..xn that
    // the first run left intact -- instead check the cheap direction:
    // steps(Seq(p,p)) >= steps(p).
    REQUIRE(whole.has_value());
    CHECK(*whole >= first.steps);
  }
  // Exact additivity on a pair with independent variables.
  Program a = lw::parse("x0 := x1 + 2");
  Program b = lw::parse("loop x2 do x3 := x3 + 1 end");
  auto sa = lw::steps(a, {Nat(1), Nat(4)}, Nat(100));
  auto sb = lw::steps(b, {Nat(1), Nat(4)}, Nat(100));
  auto sab = lw::steps(Program::seq(a, b), {Nat(1), Nat(4)}, Nat(100));
  CHECK(*sab == *sa + *sb);
}

TEST_CASE("growth_profile: add is affine, mult is an exact quadratic") {
  auto add = lw::growth_profile(corpus::add_program(), 2, 8, Nat(100000));
  REQUIRE(add.rows.size() == 9);
  for (size_t n = 1; n + 2 < add.rows.size(); ++n) {
    Nat d1 = *add.rows[n + 1].steps - *add.rows[n].steps;
    Nat d2 = *add.rows[n + 2].steps - *add.rows[n + 1].steps;
    CHECK(d2 - d1 == 0);
  }

  auto mult = lw::growth_profile(corpus::mult_program(), 2, 6, Nat(100000));
  // t(n) = n^2 + n + 2: const 1, outer entry 1, n * (inner entry 1 + n).
  for (const auto& row : mult.rows) {
    REQUIRE(row.steps.has_value());
    CHECK(*row.steps == row.n * row.n + row.n + 2);
    CHECK(*row.output == row.n * row.n);
  }

  auto skip = lw::growth_profile(Program::skip(), 1, 4, Nat(10));
  for (const auto& row : skip.rows) CHECK(*row.steps == 0);
}

TEST_CASE("growth_profile flags exhausted rows; CSV/JSON render them") {
  // Halts for n = 0, diverges for n > 0.
  Program p = lw::parse("x3 := x1;\nwhile x3 /= 0 do x3 := x3 + 1 end;\nx0 := 9");
  auto g = lw::growth_profile(p, 1, 2, Nat(500));
  REQUIRE(g.rows.size() == 3);
  CHECK(g.rows[0].steps.has_value());
  CHECK(*g.rows[0].output == 9);
  CHECK_FALSE(g.rows[1].steps.has_value());
  CHECK_FALSE(g.rows[2].output.has_value());

  std::string csv = lw::growth_csv(g);
  CHECK(csv.substr(0, 25) == "n,steps,output,exhausted\n");
  CHECK(csv.find("1,,,true\n") != std::string::npos);
  CHECK(csv.find(",false\n") != std::string::npos);

  std::string json = lw::growth_json(g);
  CHECK(json.front() == '[');
  CHECK(json.find("\"exhausted\":true") != std::string::npos);
  CHECK(json.find("\"steps\":null") != std::string::npos);
  CHECK(json.find("\"n\":0") != std::string::npos);
}

TEST_CASE("growth_profile is deterministic") {
  auto a = lw::growth_profile(corpus::exp_program(), 2, 4, Nat(100000));
  auto b = lw::growth_profile(corpus::exp_program(), 2, 4, Nat(100000));
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].steps == b.rows[i].steps);
    CHECK(a.rows[i].output == b.rows[i].output);
  }
}

TEST_CASE("nesting_depth") {
  CHECK(lw::nesting_depth(Program::add_assign(0, 0, 1)) == 0);
  CHECK(lw::nesting_depth(Program::loop(1, Program::loop(2, Program::skip()))) == 2);
  CHECK(lw::nesting_depth(Program::while_loop(1, Program::loop(2, Program::skip()))) == 2);
  CHECK(lw::nesting_depth(Program::seq(Program::loop(1, Program::skip()),
                                       Program::skip())) == 1);
  // Sugar-free programs keep their depth through desugar.
  Program k = lw::desugar(corpus::mult_program());
  CHECK(lw::nesting_depth(lw::desugar(k)) == lw::nesting_depth(k));
  // Normal form: one While plus whatever flag Loops the dispatch uses.
  Program n = lw::normalize_single_while(corpus::mult_program());
  CHECK(lw::count_while(n) == 1);
  CHECK(lw::nesting_depth(n) >= 2);
}

TEST_CASE("universal_overhead: finite ratio above 1, exact denominator") {
  Program p = Program::add_assign(0, 1, 1);
  auto ratio = lw::universal_overhead(p, Nat(0), Nat(10000000));
  REQUIRE(ratio.has_value());
  CHECK(*ratio > 1);
  Nat direct = *lw::steps(p, {Nat(0)}, Nat(100));
  CHECK(ratio->get_den() <= direct);  // canonicalized divisor of the exact steps

  // Exhaustion on the universal side yields nullopt.
  CHECK_FALSE(lw::universal_overhead(p, Nat(0), Nat(1000)).has_value());
}
