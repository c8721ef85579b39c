// Satisfiability and validity over frame classes.
//
// Formulas are translated into ML (o f becomes t(f) -> []t(f)) and decided by
// a labelled tableau for K, D, T, KB, K4, S4 and S5. TB and B5 fall back to
// exhaustive search over small frames; a search that finds nothing answers
// "unknown", never "unsatisfiable".

#ifndef LEA_DECIDE_HPP
#define LEA_DECIDE_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "lea/formula.hpp"
#include "lea/kripke.hpp"

namespace lea {

enum class Mode { Sat, Valid };
enum class Method { Tableau, BoundedSearch };

std::string to_string(Mode m);
std::string to_string(Method m);  // "tableau", "bounded-search"

struct Query {
  Formula formula;
  FrameClass cls;
  Mode mode;
};

struct Verdict {
  Query query;
  // nullopt: bounded search found no model up to `bound`.
  std::optional<bool> answer;
  // Satisfying model when Sat holds, countermodel when Valid fails.
  std::optional<PointedModel> witness;
  Method method = Method::Tableau;
  std::optional<std::size_t> bound;
};

struct DecideOptions {
  // World bound for the search fallback.
  std::size_t search_bound = 3;
};

bool tableau_supports(FrameClass cls);

Verdict satisfiable(const Formula& f, FrameClass cls, const DecideOptions& opts = {});
Verdict valid(const Formula& f, FrameClass cls, const DecideOptions& opts = {});

// Translation used by the tableau. Agrees with to_ml on LEA formulas and keeps
// [] nodes as they are, so mixed formulas are accepted.
Formula ml_form(const Formula& f);

// First pointed model satisfying f whose frame lies in cls, over frames with
// 1..max_n worlds in enumeration order and valuations of f's variables.
std::optional<PointedModel> search_model(const Formula& f, FrameClass cls, std::size_t max_n);

// True when the witness frame is in the query's class and the witness
// confirms the verdict's answer at its point.
bool replay_witness(const Verdict& v);

struct CrosscheckReport {
  Verdict tableau;
  std::size_t max_n;
  std::optional<PointedModel> found;  // by exhaustive search
  bool witness_verified = true;
  bool hard_failure = false;
  // Tableau says satisfiable but nothing was found up to max_n.
  bool inconclusive = false;
  std::string note;
};

CrosscheckReport crosscheck(const Formula& f, FrameClass cls, std::size_t max_n);

}  // namespace lea

#endif  // LEA_DECIDE_HPP
