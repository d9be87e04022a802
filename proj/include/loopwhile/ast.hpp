#pragma once

#include <memory>
#include <string>
#include <vector>

#include "loopwhile/nat.hpp"

namespace lw {

// Statement forms of the FOR/WHILE languages. The kernel subset is
// {AddAssign, SubAssign, Seq, Loop, While}; the rest is sugar.
enum class NodeKind {
  AddAssign,    // xi := xj + c
  SubAssign,    // xi := xj - c   (monus)
  Seq,          // P ; Q
  Loop,         // loop xi do P end
  While,        // while xi /= 0 do P end
  ConstAssign,  // xi := c
  CopyAssign,   // xi := xj
  If,           // if xi = 0 then P else Q end
  Skip,         // skip
};

// Immutable program tree with shared structure. Copies are cheap; all
// observers are const, so concurrent readers are safe.
class Program {
 public:
  Program() : Program(skip()) {}

  static Program add_assign(Nat target, Nat source, Nat addend);
  static Program sub_assign(Nat target, Nat source, Nat subtrahend);
  static Program seq(Program first, Program second);
  static Program loop(Nat guard, Program body);
  static Program while_loop(Nat guard, Program body);
  static Program const_assign(Nat target, Nat value);
  static Program copy_assign(Nat target, Nat source);
  static Program if_zero(Nat guard, Program then_branch, Program else_branch);
  static Program skip();

  // Canonical fold of a statement list into Seq nodes: split at the
  // midpoint, recurse. Parsing uses the same rule, so every tree built
  // through seq_of round-trips through pretty/parse structurally.
  // An empty list folds to skip().
  static Program seq_of(std::vector<Program> stmts);

  NodeKind kind() const { return node_->kind; }

  // Valid for AddAssign/SubAssign/ConstAssign/CopyAssign (target) and
  // Loop/While/If (guard).
  const Nat& var() const { return node_->a; }
  const Nat& source() const { return node_->b; }   // AddAssign/SubAssign/CopyAssign
  const Nat& constant() const { return node_->c; } // AddAssign/SubAssign/ConstAssign

  Program first() const { return Program(node_->left); }    // Seq
  Program second() const { return Program(node_->right); }  // Seq
  Program body() const { return Program(node_->left); }     // Loop/While
  Program then_branch() const { return Program(node_->left); }   // If
  Program else_branch() const { return Program(node_->right); }  // If

  bool operator==(const Program& other) const;
  bool operator!=(const Program& other) const { return !(*this == other); }

 private:
  struct Node {
    NodeKind kind;
    Nat a, b, c;
    std::shared_ptr<const Node> left, right;
  };

  explicit Program(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Structural queries.
bool is_kernel(const Program& p);
bool is_for(const Program& p);
bool contains_while(const Program& p);
Nat max_var(const Program& p);
Nat count_while(const Program& p);
Nat count_loop(const Program& p);
Nat nesting_depth(const Program& p);

// Flattens nested Seq nodes (any association) into a statement list.
std::vector<Program> flatten_seq(const Program& p);

}  // namespace lw
