#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopwhile/ast.hpp"

namespace lw {

// Step count of a halting run under the standard cost model; nullopt on
// fuel exhaustion.
std::optional<Nat> steps(const Program& p, const std::vector<Nat>& inputs,
                         const std::optional<Nat>& fuel = std::nullopt);

struct GrowthRow {
  Nat n;                     // the diagonal input value
  std::optional<Nat> steps;  // absent when the fuel ran out
  std::optional<Nat> output;
};

struct GrowthProfile {
  unsigned arity = 0;
  std::vector<GrowthRow> rows;
};

// Runs p on (n, n, ..., n) for n = 0..max_n. Fuel is per row.
GrowthProfile growth_profile(const Program& p, unsigned arity, unsigned max_n,
                             const std::optional<Nat>& fuel);

// "n,steps,output,exhausted" with empty value cells for exhausted rows.
std::string growth_csv(const GrowthProfile& g);
// JSON array of {"n":…,"steps":…,"output":…,"exhausted":…} with null
// values for exhausted rows.
std::string growth_json(const GrowthProfile& g);

// steps(U, [encode(p), x]) / steps(p, [x]) as an exact rational.
// nullopt if either run fails to halt within fuel (the universal run
// gets fuel, the direct run gets the steps the universal run took).
std::optional<mpq_class> universal_overhead(const Program& p, const Nat& x, const Nat& fuel);

}  // namespace lw
