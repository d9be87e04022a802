#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loopwhile/parser.hpp"
#include "loopwhile/semantics.hpp"
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

}  // namespace

TEST_CASE("run: basics from the definition") {
  lw::Outcome skip = lw::run(Program::skip(), {}, Nat(10));
  CHECK(skip.halted);
  CHECK(skip.steps == 0);
  CHECK(skip.state == lw::State());

  lw::Outcome add = lw::run(lw::parse("x0 := x1 + 0;\nloop x2 do\n  x0 := x0 + 1;\nend"),
                            {Nat(2), Nat(3)}, Nat(100));
  CHECK(add.halted);
  CHECK(add.state.get(0) == 5);
  // copy 1 + loop entry 1 + three body assignments
  CHECK(add.steps == 5);

  lw::Outcome diverge =
      lw::run(lw::parse("while x1 /= 0 do\n  x1 := x1 + 1;\nend"), {Nat(1)}, Nat(1000));
  CHECK_FALSE(diverge.halted);
  CHECK(diverge.steps == 1000);
}

TEST_CASE("eval_fn: x0 convention") {
  CHECK(lw::eval_fn(Program::skip(), {Nat(7), Nat(7)}) == Nat(0));
  CHECK(lw::eval_fn(corpus::add_program(), {Nat(2), Nat(3)}) == Nat(5));
  CHECK_FALSE(
      lw::eval_fn(lw::parse("while x1 /= 0 do x1 := x1 + 0 end"), {Nat(1)}, Nat(50)));
}

TEST_CASE("corpus programs match their oracles on a grid") {
  for (const auto& e : corpus::entries()) {
    for (const auto& in : grid(e.arity, 4)) {
      auto got = lw::eval_fn(e.program, in, Nat(200000));
      auto want = e.oracle(in);
      CAPTURE(e.name);
      CHECK(got == want);
    }
  }
}

TEST_CASE("fuel policy: unbounded only for While-free programs") {
  CHECK_NOTHROW(lw::run(corpus::mult_program(), {Nat(3), Nat(3)}));
  Program w = Program::while_loop(1, Program::sub_assign(1, 1, 1));
  CHECK_THROWS_AS(lw::run(w, {Nat(2)}), std::invalid_argument);
  lw::Outcome o = lw::run(w, {Nat(2)}, std::nullopt, /*allow_unbounded=*/true);
  CHECK(o.halted);
  CHECK(o.state.get(1) == 0);
}

TEST_CASE("loop snapshot semantics") {
  lw::Outcome o = lw::run(lw::parse("loop x1 do x1 := x1 + 1 end"), {Nat(3)}, Nat(100));
  CHECK(o.halted);
  CHECK(o.state.get(1) == 6);
  CHECK(o.steps == 4);  // entry + three body assignments
}

TEST_CASE("cost model: statement prices") {
  auto steps_of = [](const Program& p, std::vector<Nat> in) {
    return lw::run(p, in, Nat(100000)).steps;
  };
  CHECK(steps_of(Program::add_assign(0, 0, 1), {}) == 1);
  CHECK(steps_of(Program::sub_assign(0, 0, 1), {}) == 1);
  CHECK(steps_of(Program::const_assign(0, 3), {}) == 1);
  CHECK(steps_of(Program::copy_assign(0, 1), {}) == 1);
  CHECK(steps_of(Program::skip(), {}) == 0);
  CHECK(steps_of(corpus::two_increment_program(), {}) == 2);
  // while x1 /= 0 do x1 := x1 - 1 end from n: n+1 guard tests + n bodies
  Program count_down = Program::while_loop(1, Program::sub_assign(1, 1, 1));
  for (unsigned n = 0; n <= 5; ++n)
    CHECK(steps_of(count_down, {Nat(n)}) == 2 * n + 1);
  // loop x1 do skip end: 1 at entry regardless of the trip count
  for (unsigned n = 0; n <= 5; ++n)
    CHECK(steps_of(Program::loop(1, Program::skip()), {Nat(n)}) == 1);
  // If costs 5 + 2 * guard value + the taken branch
  Program iff = Program::if_zero(1, Program::const_assign(0, 1),
                                 Program::seq(Program::const_assign(0, 2),
                                              Program::const_assign(2, 2)));
  CHECK(steps_of(iff, {Nat(0)}) == 5 + 0 + 1);
  CHECK(steps_of(iff, {Nat(3)}) == 5 + 6 + 2);
}

TEST_CASE("fuel monotonicity and step stability") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 80; ++i) {
    Program p = corpus::random_program(rng, 3);
    std::vector<Nat> in{Nat(rng() % 4), Nat(rng() % 4)};
    lw::Outcome lo = lw::run(p, in, Nat(3000));
    if (!lo.halted) continue;
    lw::Outcome hi = lw::run(p, in, Nat(30000));
    CHECK(hi.halted);
    CHECK(hi.steps == lo.steps);
    CHECK(hi.state == lo.state);
  }
}

TEST_CASE("exact fuel boundary") {
  Program p = corpus::two_increment_program();
  CHECK(lw::run(p, {}, Nat(2)).halted);
  lw::Outcome starved = lw::run(p, {}, Nat(1));
  CHECK_FALSE(starved.halted);
  CHECK(starved.steps == 1);
}

TEST_CASE("trace: events and JSON rendering") {
  CHECK(lw::trace(Program::skip(), {}, Nat(10)).empty());

  auto one = lw::trace(lw::parse("x0 := x0 + 1"), {}, Nat(10));
  REQUIRE(one.size() == 1);
  CHECK(one[0].step == 1);
  CHECK(one[0].stmt == "x0 := x0 + 1");
  REQUIRE(one[0].writes.size() == 1);
  CHECK(one[0].writes[0].first == 0);
  CHECK(one[0].writes[0].second == 1);
  CHECK(lw::trace_event_json(one[0]) == "{\"step\":1,\"stmt\":\"x0 := x0 + 1\",\"writes\":{\"x0\":1}}");

  // add on [1,1] costs 3 units: copy, loop entry, one increment.
  auto add = lw::trace(corpus::add_program(), {Nat(1), Nat(1)}, Nat(4));
  REQUIRE(add.size() == 3);
  CHECK(add.back().writes.back().first == 0);
  CHECK(add.back().writes.back().second == 2);
}

TEST_CASE("trace is prefix-consistent with run") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    Program p = corpus::random_program(rng, 3);
    std::vector<Nat> in{Nat(rng() % 3), Nat(rng() % 3)};
    auto events = lw::trace(p, in, Nat(50));
    lw::Outcome full = lw::run(p, in, Nat(50));
    if (!events.empty()) CHECK(events.back().step <= full.steps);
    // Replaying the recorded writes yields the final state of a run with
    // the same budget.
    lw::State replay;
    unsigned i1 = 1;
    for (const auto& v : in) replay.set(Nat(i1++), v);
    for (const auto& ev : events)
      for (const auto& [var, val] : ev.writes) replay.set(var, val);
    CHECK(replay == full.state);
  }
}

TEST_CASE("ackermann program against the recursive oracle (small)") {
  Program ack = corpus::ackermann_program();
  for (unsigned m = 0; m <= 2; ++m)
    for (unsigned n = 0; n <= 3; ++n)
      CHECK(lw::eval_fn(ack, {Nat(m), Nat(n)}, Nat(1000000)) ==
            corpus::ackermann_oracle(m, n));
  CHECK(lw::eval_fn(ack, {Nat(3), Nat(2)}, Nat(10000000)) ==
        corpus::ackermann_oracle(3, 2));
}
