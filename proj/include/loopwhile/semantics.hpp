#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopwhile/ast.hpp"

namespace lw {

// Total map from variable index to natural; absent means 0. Zero writes
// are erased so equal states compare equal regardless of history.
class State {
 public:
  State() = default;

  const Nat& get(const Nat& var) const;
  void set(const Nat& var, Nat value);

  // In-place updates equivalent to set(var, get(var) + delta) and
  // set(var, monus(get(var), delta)). They avoid copying the stored
  // value, which matters when the interpreter runs self-referential
  // programs whose variables hold multi-megabit naturals.
  void add_in_place(const Nat& var, const Nat& delta);
  void sub_in_place(const Nat& var, const Nat& delta);

  bool operator==(const State& other) const { return bindings_ == other.bindings_; }
  bool operator!=(const State& other) const { return !(*this == other); }

  const std::map<Nat, Nat>& bindings() const { return bindings_; }

 private:
  std::map<Nat, Nat> bindings_;
};

struct Outcome {
  bool halted;
  State state;
  Nat steps;
};

struct TraceEvent {
  Nat step;          // step counter after this cost unit (or unit block)
  std::string stmt;  // statement description
  std::vector<std::pair<Nat, Nat>> writes;  // (variable, new value)
};

// Serializes one event as a JSON object: {"step":n,"stmt":"…","writes":{"x0":…}}.
std::string trace_event_json(const TraceEvent& event);

// Cost model: AddAssign/SubAssign (and their sugar forms ConstAssign/
// CopyAssign) cost 1; every While guard evaluation costs 1 including the
// final failing one; Loop costs 1 at entry; Seq and Skip cost 0; If
// costs what its desugared kernel form costs (5 + 2 * guard value, plus
// the taken branch).
//
// Inputs bind x1..xn; everything else starts at 0. With no fuel the run
// may diverge, so fuel may be omitted only for While-free programs
// unless allow_unbounded is set; otherwise std::invalid_argument.
Outcome run(const Program& p, const std::vector<Nat>& inputs,
            const std::optional<Nat>& fuel = std::nullopt, bool allow_unbounded = false);

// x0 of the halted state, or nullopt on fuel exhaustion.
std::optional<Nat> eval_fn(const Program& p, const std::vector<Nat>& inputs,
                           const std::optional<Nat>& fuel = std::nullopt,
                           bool allow_unbounded = false);

// Events for the first `limit` cost units; prefix-consistent with run.
std::vector<TraceEvent> trace(const Program& p, const std::vector<Nat>& inputs,
                              const Nat& limit);

}  // namespace lw
