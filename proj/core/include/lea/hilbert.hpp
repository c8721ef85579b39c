// Hilbert systems for LEA: Ko and its extensions K4o, KBo, KB5o.
//
// Rules are TAUT, SUB, MP and
//   R: from f -> g infer (o f & f) -> o g.
// Derivations may cite premises; SUB and R are only applied to lines that do
// not depend on a premise.

#ifndef LEA_HILBERT_HPP
#define LEA_HILBERT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lea/formula.hpp"
#include "lea/kripke.hpp"

namespace lea {

enum class SystemName { K, K4, KB, KB5 };

struct AxiomSchema {
  std::string name;
  Formula schema;
};

struct System {
  SystemName name;
  std::vector<AxiomSchema> axioms;

  static System make(SystemName name);
  const AxiomSchema* find(std::string_view axiom) const;
};

std::string to_string(SystemName s);  // "Ko", "K4o", "KBo", "KB5o"
// Accepts "K"/"Ko", "K4"/"K4o", "KB"/"KBo", "KB5"/"KB5o", any case.
std::optional<SystemName> parse_system_name(std::string_view s);
// The class the system is sound and complete for: K, K4, KB, B5.
FrameClass home_class(SystemName s);

// Individual schemas, also used outside derivations.
const AxiomSchema& axiom_kw_top();
const AxiomSchema& axiom_equi_kw();
const AxiomSchema& axiom_kw_con();
const AxiomSchema& axiom_kw_tr();
const AxiomSchema& axiom_kw_b();
const AxiomSchema& axiom_kw_euc();
// ~p -> o(o~p -> p), valid on Euclidean frames; not an axiom of any system here.
Formula kw_euc_prime();

struct Justification {
  enum class Kind { Taut, Axiom, MP, Sub, R, Premise };

  Kind kind = Kind::Taut;
  std::string axiom;       // Axiom
  Substitution subst;      // Axiom, Sub
  std::size_t from = 0;    // MP (minor premise), Sub, R
  std::size_t major = 0;   // MP: the implication line

  static Justification taut() { return {Kind::Taut}; }
  static Justification premise() { return {Kind::Premise}; }
  static Justification by_axiom(std::string name, Substitution s = {}) {
    return {Kind::Axiom, std::move(name), std::move(s)};
  }
  static Justification mp(std::size_t minor, std::size_t implication) {
    return {Kind::MP, {}, {}, minor, implication};
  }
  static Justification sub(std::size_t line, Substitution s) {
    return {Kind::Sub, {}, std::move(s), line};
  }
  static Justification rule_r(std::size_t line) { return {Kind::R, {}, {}, line}; }

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct DerivationLine {
  std::size_t index;
  Formula formula;
  Justification just;
};

struct Derivation {
  std::vector<DerivationLine> lines;

  // Appends with the next index and returns it.
  std::size_t add(Formula f, Justification j);
  const Formula& conclusion() const { return lines.back().formula; }
};

struct CheckReport {
  struct Error {
    std::size_t line;
    std::string reason;
  };

  bool ok = true;
  std::optional<Error> first_error;
  // Formulas cited as premises, in order of first use.
  std::vector<Formula> premises;
};

// When `allowed_premises` is given, premise lines must be members of it.
CheckReport check_derivation(const System& sys, const Derivation& d,
                             const std::vector<Formula>* allowed_premises = nullptr);

// Propositional tautology check after abstracting maximal modal subformulas
// and variables into atoms.
bool is_tautology(const Formula& f);

// Matches f against `schema`, binding schema variables consistently.
// Identity bindings (p := p) are left out of the result.
std::optional<Substitution> match_schema(const Formula& schema, const Formula& f);

// First matching schema in declaration order.
std::optional<std::pair<std::string, Substitution>> is_axiom_instance(const System& sys,
                                                                      const Formula& f);

// Derivation in Ko of o p1 & ... & o pn -> o(p1 & ... & pn), conjunctions
// nested to the left. Variables are p, q, r, s, ... for n <= 10.
Derivation gen_conj_derivation(int n);
std::vector<std::string> conj_variables(int n);

struct SoundnessFailure {
  std::string axiom;
  Model frame;
  PointedModel countermodel;
};

struct SoundnessReport {
  SystemName system;
  FrameClass frame_class;
  std::size_t max_n;
  std::uint64_t frames_checked = 0;
  std::vector<SoundnessFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Frame validity of every axiom on every frame of `cls` with 1..max_n worlds.
SoundnessReport soundness_scan(const System& sys, FrameClass cls, std::size_t max_n);

class DerivationSyntaxError : public std::runtime_error {
 public:
  DerivationSyntaxError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

// Text format, one line each; blank lines and lines starting with '#' are
// skipped:
//   3. (o p & o q) -> o (p & q)   [axiom KwCon]
//   4. ...   [axiom EquiKw p:=q & r]  |  [mp 1 3]  |  [sub 2 p:=q & r, q:=s]
//         |  [r 5]  |  [taut]  |  [premise]
Derivation parse_derivation(std::string_view text);
std::string render_derivation(const Derivation& d);
std::string render_justification(const Justification& j);

}  // namespace lea

#endif  // LEA_HILBERT_HPP
