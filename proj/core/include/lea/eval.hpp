// Bottom-up extension computation over compiled formulas.
//
// A CompiledFormula is the formula's subformula DAG in post-order with shared
// subterms merged. Evaluating it computes one world set per instruction, so a
// whole model is checked in O(|f| * (|S| + |R|)).

#ifndef LEA_EVAL_HPP
#define LEA_EVAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lea/formula.hpp"
#include "lea/kripke.hpp"
#include "lea/world_set.hpp"

namespace lea {

class CompiledFormula {
 public:
  struct Instr {
    Op op;
    int a = -1;
    int b = -1;
    int var = -1;  // index into vars() for Op::Var
  };

  explicit CompiledFormula(const Formula& f);

  const std::vector<Instr>& program() const { return program_; }
  // Sorted variable names; position = Instr::var.
  const std::vector<std::string>& vars() const { return vars_; }
  const Formula& source() const { return source_; }

 private:
  Formula source_;
  std::vector<Instr> program_;
  std::vector<std::string> vars_;
};

// Extension of the formula in m, variables read from m's valuation.
WorldSet evaluate(const CompiledFormula& cf, const Model& m);

// Frames with at most 64 worlds as successor bitmasks.
struct SmallFrame {
  std::size_t n = 0;
  std::vector<std::uint64_t> succ;

  explicit SmallFrame(const Model& m);
  SmallFrame(std::size_t worlds, std::uint64_t code);  // FrameEnumerator layout

  std::uint64_t full() const { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }
};

// Extension as a bitmask; var_masks[k] is the extension of cf.vars()[k].
std::uint64_t evaluate_small(const CompiledFormula& cf, const SmallFrame& frame,
                             std::span<const std::uint64_t> var_masks,
                             std::vector<std::uint64_t>& scratch);

}  // namespace lea

#endif  // LEA_EVAL_HPP
