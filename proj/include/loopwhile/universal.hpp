#pragma once

#include <string>
#include <vector>

#include "loopwhile/ast.hpp"

namespace lw {

// Library of kernel WHILE building blocks used to assemble the
// universal program. Each macro computes its function into the listed
// output variable(s) and touches nothing outside its declared
// variables plus a documented block of scratch variables starting at
// max(vars)+1 (stdlib_macro_scratch gives the block size).
//
//   zero     [a]            a := 0
//   copy     [dst, src]     dst := src
//   add      [out, a, b]    out := a + b
//   monus    [out, a, b]    out := a - b truncated at 0
//   mul      [out, a, b]    out := a * b        (out distinct from a, b)
//   divmod   [q, r, a, b]   q := a div b, r := a mod b; b = 0 leaves
//                           q = 0, r = a
//   pair     [out, a, b]    Cantor pair         (out distinct from a, b)
//   unpair   [a, b, n]      Cantor unpair       (a, b distinct from n)
//   tagsplit [tag, rest, n] tag := n mod 5, rest := n div 5
//
// Arithmetic walks a fixed binary ladder and falls back to coarse
// chunked loops above 2^128, so the macros are total on all naturals;
// they are just slow far beyond that range.
Program stdlib_macro(const std::string& name, const std::vector<Nat>& vars);
unsigned stdlib_macro_arity(const std::string& name);
unsigned stdlib_macro_scratch(const std::string& name);

// A kernel WHILE program U with inputs x1 = code, x2 = argument and
// output x0, satisfying eval_fn(U, [encode(P), x]) = eval_fn(P, [x])
// for every kernel P whenever the simulated run halts. The simulated
// state and the pending-statement stack each live in one natural,
// built out of Cantor pairs; one outer while loop steps a small
// micro-instruction machine that pops, splits and dispatches statement
// codes. Deterministic; the result is cached after the first build.
const Program& build_universal();

// s-m-n: a code e' with decode(e') = Seq(prologue, decode(e)) such that
// eval_fn(decode(e'), [ys...]) = eval_fn(decode(e), [v, ys...]).
Nat specialize(const Nat& e, const Nat& v);

// The executable diagonal program D: on input a code x, D simulates
// decode(x) on x via the universal machinery and then enters a
// deliberate infinite loop once the simulation halts. In particular
// D never halts on encode(D).
const Program& build_diagonal();

}  // namespace lw
