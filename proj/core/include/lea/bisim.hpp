// o-bisimulations (and plain []-bisimulations) on finite models.
//
// A o-bisimulation Z lives on a single carrier model. A pair (s, s') in Z
// must satisfy:
//   Inv      s and s' agree on every variable;
//   o-Forth  if sRt and (s, t) not in Z, then s'Rt' and tZt' for some t';
//   o-Back   if s'Rt' and (s', t') not in Z, then sRt and tZt' for some t.
// Cross-model questions are asked on the disjoint union, so Z may relate
// worlds inside one component as well as across components.

#ifndef LEA_BISIM_HPP
#define LEA_BISIM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "lea/kripke.hpp"

namespace lea {

using WorldPair = std::pair<WorldId, WorldId>;

struct BisimRelation {
  Model carrier;
  std::set<WorldPair> pairs;
};

struct BisimViolation {
  enum class Kind { Empty, Inv, Forth, Back };

  Kind kind;
  std::optional<WorldPair> pair;
  // Offending successor (Forth/Back) or variable (Inv).
  std::optional<std::string> witness;

  std::string describe() const;
};

// First violation in pair order, or nullopt when z is a o-bisimulation.
// Throws UnknownWorld if a pair names a world outside the carrier.
std::optional<BisimViolation> find_violation(const BisimRelation& z);
bool is_circ_bisimulation(const BisimRelation& z);

// Union of all o-bisimulations on m: start from every Inv-respecting pair and
// delete violating pairs (lexicographic sweeps) until none remain. Violations
// are antitone in Z, so no pair of any o-bisimulation is ever deleted.
BisimRelation largest_circ_bisimulation(const Model& m);

bool circ_bisimilar(const PointedModel& a, const PointedModel& b);

// Greatest []-bisimulation on the disjoint union by partition refinement.
bool box_bisimilar(const PointedModel& a, const PointedModel& b);

struct Quotient {
  Model model;
  std::map<WorldId, WorldId> class_of;
};

// o-bisimulation contraction. Class ids are "[<least member id>]"; classes
// appear in the order of their first member in m.
Quotient contract(const Model& m);

}  // namespace lea

#endif  // LEA_BISIM_HPP
