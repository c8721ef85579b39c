// JSON forms of models, relations and verdicts.
//
// Model:     {"worlds": ["s","t"], "rel": [["s","t"],["t","t"]], "val": {"p": ["s"]}, "point": "s"}
// Relation:  {"pairs": [["L:s","R:t"],...]}
// Verdict:   {"answer": true, "method": "tableau", "witness": {...model...}}
//
// Writers produce exactly these layouts. Readers reject unknown keys and
// world ids that are not declared in "worlds".

#ifndef LEA_IO_HPP
#define LEA_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lea/bisim.hpp"
#include "lea/decide.hpp"
#include "lea/kripke.hpp"

namespace lea {

class JsonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ModelDocument {
  Model model;
  std::optional<WorldId> point;
};

ModelDocument parse_model_json(std::string_view text);
std::string model_to_json(const Model& m, const std::optional<WorldId>& point = std::nullopt);

BisimRelation parse_relation_json(std::string_view text, const Model& carrier);
std::string relation_to_json(const BisimRelation& z);

// "answer" is null when a bounded search was inconclusive; "bound" is present
// for bounded search only.
std::string verdict_to_json(const Verdict& v);

// A JSON string literal with the needed escapes.
std::string json_quote(const std::string& s);

}  // namespace lea

#endif  // LEA_IO_HPP
