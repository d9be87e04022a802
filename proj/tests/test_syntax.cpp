#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loopwhile/parser.hpp"
#include "support/corpus.hpp"

using lw::Program;

TEST_CASE("parse: single statements") {
  CHECK(lw::parse("x0 := x1 + 0") == Program::add_assign(0, 1, 0));
  CHECK(lw::parse("skip") == Program::skip());
  CHECK(lw::parse("loop x1 do x0 := x0 + 1 end") ==
        Program::loop(1, Program::add_assign(0, 0, 1)));
  CHECK(lw::parse("while x1 /= 0 do x1 := x1 - 1 end") ==
        Program::while_loop(1, Program::sub_assign(1, 1, 1)));
  CHECK(lw::parse("if x2 = 0 then skip else x0 := 3 end") ==
        Program::if_zero(2, Program::skip(), Program::const_assign(0, 3)));
  CHECK(lw::parse("x4 := 7") == Program::const_assign(4, 7));
  CHECK(lw::parse("x4 := x9") == Program::copy_assign(4, 9));
}

TEST_CASE("parse: sequences, comments, whitespace") {
  CHECK(lw::parse("skip;skip") == Program::seq(Program::skip(), Program::skip()));
  CHECK(lw::parse("  x0:=x1+2  # trailing comment\n") == Program::add_assign(0, 1, 2));
  CHECK(lw::parse("# leading comment\nx0 := 1;\nx1 := 2") ==
        Program::seq(Program::const_assign(0, 1), Program::const_assign(1, 2)));
  // Trailing ';' before 'end' or EOF is accepted the way pretty prints it.
  CHECK(lw::parse(lw::pretty(Program::seq(Program::skip(), Program::skip()))) ==
        Program::seq(Program::skip(), Program::skip()));
}

TEST_CASE("parse: errors carry position and expectation") {
  CHECK_THROWS_AS(lw::parse(""), lw::SyntaxError);
  CHECK_THROWS_AS(lw::parse("x0 := x1 *"), lw::SyntaxError);
  CHECK_THROWS_AS(lw::parse("loop x1 do skip"), lw::SyntaxError);
  CHECK_THROWS_AS(lw::parse("while x1 = 0 do skip end"), lw::SyntaxError);
  CHECK_THROWS_AS(lw::parse("y0 := 1"), lw::SyntaxError);
  CHECK_THROWS_AS(lw::parse("x0 := x1 + 1 extra"), lw::SyntaxError);
  try {
    lw::parse("skip;\nloop q do skip end");
    CHECK(false);
  } catch (const lw::SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("pretty: canonical layout") {
  CHECK(lw::pretty(Program::add_assign(0, 1, 0)) == "x0 := x1 + 0");
  CHECK(lw::pretty(Program::skip()) == "skip");
  CHECK(lw::pretty(Program::seq(Program::skip(), Program::skip())) == "skip;\nskip");
}

TEST_CASE("pretty: idempotent under re-parse and re-pretty") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Program p = corpus::random_program(rng, 4);
    std::string once = lw::pretty(p);
    CHECK(lw::pretty(lw::parse(once)) == once);
  }
}

TEST_CASE("round trip: parse(pretty(p)) == p on random programs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    Program p = corpus::random_program(rng, 6);
    CHECK(lw::parse(lw::pretty(p)) == p);
  }
}

TEST_CASE("round trip: corpus programs") {
  for (const auto& e : corpus::entries())
    CHECK(lw::parse(lw::pretty(e.program)) == e.program);
  // The ackermann program nests pre-built Seq blocks inside statement
  // lists, so its tree is not in the canonical fold; its text still
  // re-parses to the same canonical form.
  std::string ack = lw::pretty(corpus::ackermann_program());
  CHECK(lw::pretty(lw::parse(ack)) == ack);
}

TEST_CASE("pretty is injective on distinct random trees") {
  std::mt19937_64 rng(11);
  std::vector<Program> ps;
  std::vector<std::string> texts;
  for (int i = 0; i < 120; ++i) {
    ps.push_back(corpus::random_program(rng, 3));
    texts.push_back(lw::pretty(ps.back()));
  }
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i + 1; j < ps.size(); ++j)
      if (ps[i] != ps[j]) CHECK(texts[i] != texts[j]);
}

TEST_CASE("structural queries") {
  Program add = Program::add_assign(0, 0, 0);
  CHECK(lw::is_kernel(add));
  CHECK_FALSE(lw::is_kernel(Program::if_zero(1, Program::skip(), Program::skip())));
  CHECK_FALSE(lw::is_kernel(
      Program::seq(Program::add_assign(0, 0, 1), Program::const_assign(2, 5))));

  CHECK(lw::is_for(Program::loop(1, Program::add_assign(0, 0, 1))));
  CHECK_FALSE(lw::is_for(Program::while_loop(1, Program::skip())));
  CHECK_FALSE(lw::is_for(Program::seq(Program::loop(1, Program::add_assign(0, 0, 1)),
                                      Program::while_loop(2, Program::add_assign(2, 2, 0)))));

  CHECK(lw::max_var(Program::skip()) == 0);
  CHECK(lw::max_var(Program::add_assign(3, 1, 7)) == 3);
  CHECK(lw::max_var(Program::seq(Program::add_assign(0, 5, 1),
                                 Program::loop(2, Program::skip()))) == 5);

  CHECK(lw::count_while(Program::while_loop(1, Program::skip())) == 1);
  CHECK(lw::count_loop(Program::while_loop(1, Program::skip())) == 0);
  CHECK(lw::count_loop(Program::loop(1, Program::loop(2, Program::skip()))) == 2);
}

TEST_CASE("is_for implies is_kernel; max_var distributes over Seq") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Program p = corpus::random_program(rng, 4);
    if (lw::is_for(p)) CHECK(lw::is_kernel(p));
    Program q = corpus::random_program(rng, 3);
    Program s = Program::seq(p, q);
    CHECK(lw::max_var(s) == std::max(lw::max_var(p), lw::max_var(q)));
  }
}

TEST_CASE("seq_of and flatten_seq are inverse on non-Seq statement lists") {
  std::mt19937_64 rng(9);
  corpus::GenOptions opt;
  for (int i = 0; i < 100; ++i) {
    std::vector<Program> stmts;
    unsigned len = 1 + static_cast<unsigned>(rng() % 7);
    for (unsigned k = 0; k < len; ++k)
      stmts.push_back(corpus::random_statement(rng, opt, 0));
    Program folded = Program::seq_of(stmts);
    CHECK(lw::flatten_seq(folded) == stmts);
  }
  CHECK(Program::seq_of({}) == Program::skip());
}
