#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loopwhile/parser.hpp"
#include "loopwhile/semantics.hpp"
#include "loopwhile/transforms.hpp"
#include "support/corpus.hpp"

using lw::Nat;
using lw::Program;

namespace {

std::vector<std::vector<Nat>> grid(unsigned arity, unsigned max_value) {
  std::vector<std::vector<Nat>> out{{}};
  for (unsigned i = 0; i < arity; ++i) {
    std::vector<std::vector<Nat>> next;
    for (const auto& t : out)
      for (unsigned v = 0; v <= max_value; ++v) {
        auto u = t;
        u.emplace_back(v);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

void check_equivalent(const Program& a, const Program& b, unsigned arity,
                      unsigned max_value, const Nat& fuel) {
  for (const auto& in : grid(arity, max_value)) {
    auto va = lw::eval_fn(a, in, fuel);
    auto vb = lw::eval_fn(b, in, fuel);
    CHECK(va == vb);
  }
}

}  // namespace

TEST_CASE("desugar: kernel output, equivalence, exact step preservation") {
  for (const auto& e : corpus::entries()) {
    CAPTURE(e.name);
    Program d = lw::desugar(e.program);
    CHECK(lw::is_kernel(d));
    // A program that is nothing but skip is the one case where the
    // kernel can't realize cost 0; it desugars to a cost-1 no-op.
    for (const auto& in : grid(e.arity, 3)) {
      lw::Outcome a = lw::run(e.program, in, Nat(100000));
      lw::Outcome b = lw::run(d, in, Nat(100000));
      CHECK(a.halted == b.halted);
      if (a.halted) {
        if (a.steps == 0) CHECK(b.steps <= 1);
        else CHECK(a.steps == b.steps);
        CHECK(a.state.get(0) == b.state.get(0));
      }
    }
  }
}

TEST_CASE("desugar: fresh variables sit above max_var and start at zero") {
  Program p = Program::if_zero(1, Program::const_assign(0, 7), Program::copy_assign(0, 2));
  Program d = lw::desugar(p);
  CHECK(lw::max_var(d) > lw::max_var(p));
  // The transformed program must not disturb x0..max_var(p) conventions:
  // already covered by equivalence, but the fresh zero variable must read 0
  // at the end of a run.
  lw::Outcome o = lw::run(d, {Nat(2), Nat(9)}, Nat(1000));
  CHECK(o.state.get(lw::max_var(p) + 1) == 0);
}

TEST_CASE("desugar on random sugared programs preserves runs exactly") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    Program p = corpus::random_program(rng, 3);
    Program d = lw::desugar(p);
    CHECK(lw::is_kernel(d));
    // Inputs bind only variables the program mentions; fresh transform
    // variables sit above max_var and must stay untouched.
    size_t arity = std::min<size_t>(2, lw::max_var(p).get_ui());
    std::vector<Nat> in;
    for (size_t k = 0; k < arity; ++k) in.emplace_back(rng() % 3);
    lw::Outcome a = lw::run(p, in, Nat(20000));
    lw::Outcome b = lw::run(d, in, Nat(20000));
    CHECK(a.halted == b.halted);
    if (a.halted) {
      // All-skip programs are the one exception: the kernel no-op costs 1.
      if (a.steps == 0) CHECK(b.steps <= 1);
      else CHECK(a.steps == b.steps);
      CHECK(a.state.get(0) == b.state.get(0));
    }
  }
}

TEST_CASE("for_to_while: shape and equivalence") {
  Program single = Program::loop(1, Program::add_assign(0, 0, 1));
  Program fw = lw::for_to_while(single);
  CHECK(lw::count_loop(fw) == 0);
  check_equivalent(single, fw, 1, 5, Nat(10000));

  Program leaf = Program::add_assign(0, 0, 1);
  CHECK(lw::for_to_while(leaf) == leaf);

  Program mult = lw::desugar(corpus::mult_program());
  Program mw = lw::for_to_while(mult);
  CHECK(lw::count_loop(mw) == 0);
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      CHECK(lw::eval_fn(mw, {Nat(a), Nat(b)}, Nat(100000)) == Nat(a * b));

  CHECK_THROWS_AS(lw::for_to_while(Program::skip()), std::invalid_argument);
}

TEST_CASE("to_goto: hand-checked flattenings") {
  using Op = lw::GotoInstr::Op;

  auto g1 = lw::to_goto(Program::add_assign(0, 0, 1));
  REQUIRE(g1.instrs.size() == 2);
  CHECK(g1.instrs[0].op == Op::AddAssign);
  CHECK(g1.instrs[1].op == Op::Halt);

  auto g2 = lw::to_goto(Program::while_loop(1, Program::sub_assign(1, 1, 1)));
  REQUIRE(g2.instrs.size() == 4);
  CHECK(g2.instrs[0].op == Op::IfZeroGoto);
  CHECK(g2.instrs[0].label == 4);
  CHECK(g2.instrs[1].op == Op::SubAssign);
  CHECK(g2.instrs[2].op == Op::Goto);
  CHECK(g2.instrs[2].label == 1);
  CHECK(g2.instrs[3].op == Op::Halt);
  for (unsigned n = 0; n <= 5; ++n) {
    lw::Outcome o = lw::run_goto(g2, {Nat(n)}, Nat(1000));
    CHECK(o.halted);
    CHECK(o.state.get(1) == 0);
  }

  auto g3 = lw::to_goto(Program::seq(Program::add_assign(0, 0, 1),
                                     Program::add_assign(0, 0, 2)));
  CHECK(g3.instrs.size() == 3);
  CHECK(g3.instrs[2].op == Op::Halt);

  CHECK_THROWS_AS(lw::to_goto(Program::loop(1, Program::skip())), std::invalid_argument);
  CHECK_THROWS_AS(lw::to_goto(Program::skip()), std::invalid_argument);
}

TEST_CASE("goto_to_text renders numbered instructions") {
  auto g = lw::to_goto(Program::while_loop(1, Program::sub_assign(1, 1, 1)));
  std::string text = lw::goto_to_text(g);
  CHECK(text.find("1:") != std::string::npos);
  CHECK(text.find("GOTO 1") != std::string::npos);
  CHECK(text.find("HALT") != std::string::npos);
}

TEST_CASE("from_goto: single while, equivalence with the IR") {
  lw::GotoProgram halt_only{{lw::GotoInstr{lw::GotoInstr::Op::Halt, 0, 0, 0, 0}}};
  Program ph = lw::from_goto(halt_only);
  CHECK(lw::count_while(ph) == 1);
  CHECK(lw::eval_fn(ph, {}, Nat(1000)) == Nat(0));

  auto g2 = lw::to_goto(Program::while_loop(1, Program::sub_assign(1, 1, 1)));
  Program p2 = lw::from_goto(g2);
  CHECK(lw::count_while(p2) == 1);
  for (unsigned n = 0; n <= 5; ++n) {
    lw::Outcome o = lw::run(p2, {Nat(n)}, Nat(100000));
    CHECK(o.halted);
    CHECK(o.state.get(1) == 0);
  }

  auto g3 = lw::to_goto(Program::add_assign(0, 0, 1));
  CHECK(lw::eval_fn(lw::from_goto(g3), {}, Nat(1000)) == Nat(1));

  lw::GotoProgram bad{{lw::GotoInstr{lw::GotoInstr::Op::Goto, 0, 0, 0, 5}}};
  CHECK_THROWS_AS(lw::from_goto(bad), std::invalid_argument);
}

TEST_CASE("normalize_single_while: shape and equivalence on the corpus") {
  for (const auto& e : corpus::entries()) {
    CAPTURE(e.name);
    Program n = lw::normalize_single_while(e.program);
    CHECK(lw::count_while(n) == 1);
    for (const auto& in : grid(e.arity, 2)) {
      auto a = lw::eval_fn(e.program, in, Nat(1000000));
      auto b = lw::eval_fn(n, in, Nat(1000000));
      CHECK(a == b);
    }
  }
  Program skip_norm = lw::normalize_single_while(Program::skip());
  CHECK(lw::count_while(skip_norm) == 1);
  CHECK(lw::eval_fn(skip_norm, {}, Nat(1000)) == Nat(0));
}

TEST_CASE("schema parsing and arity checking") {
  lw::RecSchema add = lw::parse_schema("(primrec (proj 1 1) (comp succ ((proj 3 3))))");
  CHECK(add.arity() == 2);
  CHECK(add.is_primitive());
  CHECK(add.evaluate({Nat(2), Nat(3)}, Nat(100)) == Nat(5));

  CHECK(lw::parse_schema("zero").arity() == 0);
  CHECK(lw::parse_schema("succ").arity() == 1);
  CHECK(lw::parse_schema("(proj 2 3)").arity() == 3);
  CHECK_FALSE(lw::parse_schema("(mu (proj 1 1))").is_primitive());

  CHECK_THROWS(lw::parse_schema("(proj 4 3)"));
  CHECK_THROWS(lw::parse_schema("(comp succ ((proj 1 1) (proj 1 1)))"));
  CHECK_THROWS(lw::parse_schema("(primrec succ succ)"));
  CHECK_THROWS(lw::parse_schema("(mu zero)"));
  CHECK_THROWS(lw::parse_schema("(frob 1)"));
  CHECK_THROWS(lw::parse_schema("(proj 1"));
}

TEST_CASE("compile_recursive: oracles") {
  Program id = lw::compile_recursive(lw::parse_schema("(proj 1 1)"));
  for (unsigned v = 0; v <= 9; ++v) CHECK(lw::eval_fn(id, {Nat(v)}, Nat(10000)) == Nat(v));

  Program add = lw::compile_recursive(
      lw::parse_schema("(primrec (proj 1 1) (comp succ ((proj 3 3))))"));
  CHECK(lw::is_for(lw::desugar(add)));
  for (unsigned a = 0; a <= 5; ++a)
    for (unsigned b = 0; b <= 5; ++b)
      CHECK(lw::eval_fn(add, {Nat(a), Nat(b)}, Nat(100000)) == Nat(a + b));
}

TEST_CASE("compile_recursive: mu via a subtraction schema") {
  // f(y, x) = x monus y, written with primrec-on-last-argument, so the
  // searched variable has to come last in f's own argument order; build
  // g(x, y) = x monus y and then flip with proj composition.
  lw::RecSchema pred = lw::parse_schema("(primrec zero (proj 1 2))");
  lw::RecSchema monus2 = lw::RecSchema::prim_rec(
      lw::parse_schema("(proj 1 1)"),
      lw::RecSchema::comp(pred, {lw::RecSchema::proj(3, 3)}));  // g(x,y)=x-y
  // f(y, x) = g(x, y)
  lw::RecSchema f = lw::RecSchema::comp(
      monus2, {lw::RecSchema::proj(2, 2), lw::RecSchema::proj(1, 2)});
  lw::RecSchema mu = lw::RecSchema::mu(f);
  CHECK(mu.arity() == 1);
  Program p = lw::compile_recursive(mu);
  for (unsigned x = 0; x <= 5; ++x) {
    CHECK(mu.evaluate({Nat(x)}, Nat(100)) == Nat(x));
    CHECK(lw::eval_fn(p, {Nat(x)}, Nat(1000000)) == Nat(x));
  }
}

TEST_CASE("compile_recursive: mu-free schemata give FOR programs") {
  std::vector<std::string> schemas = {
      "zero",
      "succ",
      "(proj 2 3)",
      "(comp succ (succ))",
      "(primrec zero (proj 1 2))",
      "(primrec (proj 1 1) (comp succ ((proj 3 3))))",
  };
  for (const auto& text : schemas) {
    lw::RecSchema s = lw::parse_schema(text);
    Program p = lw::compile_recursive(s);
    CHECK(lw::is_for(lw::desugar(p)));
    // FOR programs run without fuel.
    std::vector<Nat> in(s.arity(), Nat(3));
    lw::Outcome o = lw::run(lw::desugar(p), in);
    CHECK(o.halted);
    CHECK(o.state.get(0) == *s.evaluate(in, Nat(100)));
  }
}

TEST_CASE("transform pipeline agrees with originals on random programs") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 25; ++i) {
    Program p = corpus::random_program(rng, 3);
    Program d = lw::desugar(p);
    Program f = lw::for_to_while(d);
    Program n = lw::normalize_single_while(p);
    CHECK(lw::count_loop(f) == 0);
    CHECK(lw::count_while(n) == 1);
    size_t arity = std::min<size_t>(2, lw::max_var(p).get_ui());
    std::vector<Nat> in;
    for (size_t k = 0; k < arity; ++k) in.emplace_back(rng() % 3);
    auto base = lw::eval_fn(p, in, Nat(1000000));
    CHECK(lw::eval_fn(d, in, Nat(1000000)) == base);
    CHECK(lw::eval_fn(f, in, Nat(1000000)) == base);
    CHECK(lw::eval_fn(n, in, Nat(1000000)) == base);
  }
}
