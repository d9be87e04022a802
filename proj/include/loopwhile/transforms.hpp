#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopwhile/ast.hpp"
#include "loopwhile/semantics.hpp"

namespace lw {

// Jump-based intermediate form. Instructions are 1-indexed; label 0
// means halt, label len+1 (running off the end) also halts.
struct GotoInstr {
  enum class Op { AddAssign, SubAssign, IfZeroGoto, Goto, Halt };
  Op op;
  Nat target;   // assignment target / guard variable
  Nat source;   // assignment source
  Nat constant; // assignment constant
  Nat label;    // jump target for Goto/IfZeroGoto
};

struct GotoProgram {
  std::vector<GotoInstr> instrs;
};

// Numbered text rendering, one instruction per line ("3: GOTO 1").
std::string goto_to_text(const GotoProgram& g);

// Reference executor for the IR, fuel-bounded like run(); each executed
// instruction costs 1.
Outcome run_goto(const GotoProgram& g, const std::vector<Nat>& inputs, const Nat& fuel);

// Rewrites sugar into the kernel. Fresh variables are max_var(p)+1
// (a shared always-zero variable) and then one pair of flags per If in
// preorder. Step counts are preserved exactly, except that a Skip which
// is not Seq-adjacent to another statement (a bare-skip program, or a
// skip loop body) desugars to a cost-1 kernel statement where the
// enclosing construct's cost allows, see the Loop/While special cases.
Program desugar(const Program& p);

// Eliminates Loop nodes via a fresh down-counter per loop. Input must
// be kernel.
Program for_to_while(const Program& p);

// Flattens a Loop-free kernel program into jump form.
GotoProgram to_goto(const Program& p);

// Single-while simulation of the IR. A fresh run flag at max_var(g)+1
// drives the one While (1 while running, Halt clears it); the rest of
// the pc is a binary block index over basic blocks, dispatched each
// cycle by a tree of bounded flag Loops over a snapshot of the bits.
Program from_goto(const GotoProgram& g);

// from_goto . to_goto . for_to_while . desugar; the result has exactly
// one While node.
Program normalize_single_while(const Program& p);

// Primitive-recursive / mu-recursive schemata. Arities:
//   Zero: 0, Succ: 1, Proj(k, n): n (1 <= k <= n),
//   Comp(f, gs): common arity of gs, with arity(f) == |gs|,
//   PrimRec(g, h): arity(g)+1 with arity(h) == arity(g)+2, recursion on
//     the last argument: f(xs, 0) = g(xs), f(xs, y+1) = h(xs, y, f(xs, y)),
//   Mu(f): arity(f)-1, least y with f(y, xs) = 0.
class RecSchema {
 public:
  enum class Kind { Zero, Succ, Proj, Comp, PrimRec, Mu };

  static RecSchema zero();
  static RecSchema succ();
  static RecSchema proj(unsigned k, unsigned n);
  static RecSchema comp(RecSchema f, std::vector<RecSchema> gs);
  static RecSchema prim_rec(RecSchema base, RecSchema step);
  static RecSchema mu(RecSchema f);

  Kind kind() const { return node_->kind; }
  unsigned arity() const { return node_->arity; }
  unsigned proj_index() const { return node_->k; }
  const RecSchema& fn() const { return node_->children[0]; }
  const std::vector<RecSchema>& args() const { return node_->args; }
  const RecSchema& base() const { return node_->children[0]; }
  const RecSchema& step() const { return node_->children[1]; }
  bool is_primitive() const;  // no Mu anywhere

  // Direct evaluator, used as an independent oracle in tests and by the
  // CLI for cross-checking. Returns nullopt when a Mu search exceeds
  // search_limit.
  std::optional<Nat> evaluate(const std::vector<Nat>& args, const Nat& search_limit) const;

 private:
  struct Node {
    Kind kind;
    unsigned arity = 0;
    unsigned k = 0;
    std::vector<RecSchema> children;
    std::vector<RecSchema> args;
  };
  explicit RecSchema(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// S-expression schema text, e.g. "(primrec (proj 1 1) (comp succ ((proj 3 3))))".
// Atoms: zero, succ; forms: (proj k n), (comp f (g1 ... gm)),
// (primrec g h), (mu f).
RecSchema parse_schema(std::string_view text);

// Compiles a schema to a program with inputs x1..xn and output x0.
// Mu-free schemata compile to FOR programs (after desugar).
Program compile_recursive(const RecSchema& s);

}  // namespace lw
