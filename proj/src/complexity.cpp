#include "loopwhile/complexity.hpp"

#include <sstream>

#include "loopwhile/encoding.hpp"
#include "loopwhile/semantics.hpp"
#include "loopwhile/universal.hpp"

namespace lw {

std::optional<Nat> steps(const Program& p, const std::vector<Nat>& inputs,
                         const std::optional<Nat>& fuel) {
  Outcome out = run(p, inputs, fuel);
  if (!out.halted) return std::nullopt;
  return out.steps;
}

GrowthProfile growth_profile(const Program& p, unsigned arity, unsigned max_n,
                             const std::optional<Nat>& fuel) {
  GrowthProfile g;
  g.arity = arity;
  for (unsigned n = 0; n <= max_n; ++n) {
    std::vector<Nat> inputs(arity, Nat(n));
    Outcome out = run(p, inputs, fuel);
    GrowthRow row;
    row.n = n;
    if (out.halted) {
      row.steps = out.steps;
      row.output = out.state.get(0);
    }
    g.rows.push_back(std::move(row));
  }
  return g;
}

std::string growth_csv(const GrowthProfile& g) {
  std::ostringstream os;
  os << "n,steps,output,exhausted\n";
  for (const auto& row : g.rows) {
    os << row.n << ',';
    if (row.steps) os << *row.steps;
    os << ',';
    if (row.output) os << *row.output;
    os << ',' << (row.steps ? "false" : "true") << '\n';
  }
  return os.str();
}

std::string growth_json(const GrowthProfile& g) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < g.rows.size(); ++i) {
    const auto& row = g.rows[i];
    if (i) os << ',';
    os << "{\"n\":" << row.n << ",\"steps\":";
    if (row.steps) os << *row.steps; else os << "null";
    os << ",\"output\":";
    if (row.output) os << *row.output; else os << "null";
    os << ",\"exhausted\":" << (row.steps ? "false" : "true") << '}';
  }
  os << ']';
  return os.str();
}

std::optional<mpq_class> universal_overhead(const Program& p, const Nat& x, const Nat& fuel) {
  Outcome direct = run(p, {x}, fuel);
  if (!direct.halted || direct.steps == 0) return std::nullopt;
  Outcome simulated = run(build_universal(), {encode(p), x}, fuel);
  if (!simulated.halted) return std::nullopt;
  mpq_class ratio(simulated.steps, direct.steps);
  ratio.canonicalize();
  return ratio;
}

}  // namespace lw
