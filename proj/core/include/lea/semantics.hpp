// Satisfaction, validity, frame definability and bounded o-equivalence.

#ifndef LEA_SEMANTICS_HPP
#define LEA_SEMANTICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lea/formula.hpp"
#include "lea/kripke.hpp"
#include "lea/world_set.hpp"

namespace lea {

// Variables without a valuation entry are false everywhere.
WorldSet extension(const Model& m, const Formula& f);
bool satisfies(const Model& m, const WorldId& s, const Formula& f);
bool satisfies_at(const Model& m, std::size_t s, const Formula& f);
bool valid_in_model(const Model& m, const Formula& f);

// True at every world under every valuation of f's variables; the frame's
// own valuation is ignored.
bool valid_on_frame(const Model& frame, const Formula& f);
// First falsifying (valuation, world) in ValuationEnumerator order.
std::optional<PointedModel> frame_countermodel(const Model& frame, const Formula& f);

struct DefinabilityVerdict {
  enum class Direction { PropertyButInvalid, ValidButNoProperty };

  FrameProperty property;
  Formula formula;
  std::size_t max_n;
  bool confirmed = true;
  // Set when refuted: the first frame (by size, then frame code) on which
  // "has property <=> formula frame-valid" fails.
  std::optional<Model> witness;
  std::optional<Direction> direction;

  std::string summary() const;
};

std::string to_string(DefinabilityVerdict::Direction d);

// Compares has_property and valid_on_frame on every frame with 1..max_n
// worlds. A confirmation is evidence up to max_n only.
DefinabilityVerdict check_definability(FrameProperty p, const Formula& f, std::size_t max_n);

// Partition of a model's worlds by the LEA formulas over `vars` of modal
// depth <= depth. level[k][w] is the block of world w at depth k; blocks are
// numbered by first occurrence.
struct DepthPartition {
  std::vector<std::vector<int>> level;
  std::vector<int> block_count;
};

DepthPartition lea_partition(const Model& m, const std::vector<std::string>& vars, int depth);

struct EquivalenceResult {
  bool equivalent = true;
  // Present iff !equivalent: true at a's point and false at b's point.
  std::optional<Formula> distinguishing;
};

EquivalenceResult bounded_equivalent(const PointedModel& a, const PointedModel& b,
                                     const std::vector<std::string>& vars, int depth);

// Layered formula enumeration deduplicated by extension on `carrier`.
// Layer 0 holds T, F and the literals over vars. Each further layer applies
// `modality` (Op::Ess or Op::Box) to every representative of the one-step
// boolean closure (~, &, |) of the layers below. The result is the closure of
// the last layer, one formula per distinct extension, in generation order.
std::vector<Formula> layered_formulas(const Model& carrier, const std::vector<std::string>& vars,
                                      int depth, Op modality = Op::Ess);

}  // namespace lea

#endif  // LEA_SEMANTICS_HPP
