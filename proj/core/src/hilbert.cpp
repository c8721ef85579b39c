#include "lea/hilbert.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "lea/semantics.hpp"

namespace lea {

namespace {

const AxiomSchema& schema(const char* name, const char* text) {
  // Leaked on purpose: schemas live for the whole program.
  return *new AxiomSchema{name, parse(text)};
}

}  // namespace

const AxiomSchema& axiom_kw_top() {
  static const AxiomSchema& a = schema("KwTop", "o T");
  return a;
}
const AxiomSchema& axiom_equi_kw() {
  static const AxiomSchema& a = schema("EquiKw", "~p -> o p");
  return a;
}
const AxiomSchema& axiom_kw_con() {
  static const AxiomSchema& a = schema("KwCon", "(o p & o q) -> o (p & q)");
  return a;
}
const AxiomSchema& axiom_kw_tr() {
  static const AxiomSchema& a = schema("KwTr", "(o p & p) -> o o p");
  return a;
}
const AxiomSchema& axiom_kw_b() {
  static const AxiomSchema& a = schema("KwB", "p -> o (o ~p -> p)");
  return a;
}
const AxiomSchema& axiom_kw_euc() {
  static const AxiomSchema& a = schema("KwEuc", "~o ~p -> o (o ~p -> p)");
  return a;
}
Formula kw_euc_prime() { return parse("~p -> o (o ~p -> p)"); }

System System::make(SystemName name) {
  System s{name, {axiom_kw_top(), axiom_equi_kw(), axiom_kw_con()}};
  switch (name) {
    case SystemName::K: break;
    case SystemName::K4: s.axioms.push_back(axiom_kw_tr()); break;
    case SystemName::KB: s.axioms.push_back(axiom_kw_b()); break;
    case SystemName::KB5:
      s.axioms.push_back(axiom_kw_b());
      s.axioms.push_back(axiom_kw_euc());
      break;
  }
  return s;
}

const AxiomSchema* System::find(std::string_view axiom) const {
  for (const auto& a : axioms)
    if (a.name == axiom) return &a;
  return nullptr;
}

std::string to_string(SystemName s) {
  switch (s) {
    case SystemName::K: return "Ko";
    case SystemName::K4: return "K4o";
    case SystemName::KB: return "KBo";
    case SystemName::KB5: return "KB5o";
  }
  return "?";
}

std::optional<SystemName> parse_system_name(std::string_view s) {
  std::string n;
  for (char c : s) n += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (!n.empty() && n.back() == 'O') n.pop_back();
  if (n == "K") return SystemName::K;
  if (n == "K4") return SystemName::K4;
  if (n == "KB") return SystemName::KB;
  if (n == "KB5") return SystemName::KB5;
  return std::nullopt;
}

FrameClass home_class(SystemName s) {
  switch (s) {
    case SystemName::K: return FrameClass::K;
    case SystemName::K4: return FrameClass::K4;
    case SystemName::KB: return FrameClass::KB;
    case SystemName::KB5: return FrameClass::B5;
  }
  return FrameClass::K;
}

std::size_t Derivation::add(Formula f, Justification j) {
  const std::size_t idx = lines.size() + 1;
  lines.push_back({idx, std::move(f), std::move(j)});
  return idx;
}

namespace {

constexpr std::size_t kMaxTautAtoms = 24;

bool eval_abstract(const Formula& f, const std::unordered_map<Formula, std::size_t, FormulaHash>& atoms,
                   std::uint32_t assignment) {
  switch (f.op()) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !eval_abstract(f.arg(), atoms, assignment);
    case Op::And: return eval_abstract(f.lhs(), atoms, assignment) && eval_abstract(f.rhs(), atoms, assignment);
    case Op::Or: return eval_abstract(f.lhs(), atoms, assignment) || eval_abstract(f.rhs(), atoms, assignment);
    case Op::Implies:
      return !eval_abstract(f.lhs(), atoms, assignment) || eval_abstract(f.rhs(), atoms, assignment);
    case Op::Iff:
      return eval_abstract(f.lhs(), atoms, assignment) == eval_abstract(f.rhs(), atoms, assignment);
    case Op::Var:
    case Op::Ess:
    case Op::Box:
      return (assignment >> atoms.at(f)) & 1u;
  }
  return false;
}

void collect_atoms(const Formula& f, std::unordered_map<Formula, std::size_t, FormulaHash>& atoms) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
      return;
    case Op::Var:
    case Op::Ess:
    case Op::Box:
      atoms.try_emplace(f, atoms.size());
      return;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(i == 0 ? f.lhs() : f.rhs(), atoms);
  }
}

bool match_into(const Formula& pat, const Formula& f, Substitution& s) {
  if (pat.op() == Op::Var) {
    auto [it, inserted] = s.try_emplace(pat.name(), f);
    return inserted || it->second == f;
  }
  if (pat.op() != f.op()) return false;
  if (pat.arity() >= 1 && !match_into(pat.lhs(), f.lhs(), s)) return false;
  if (pat.arity() == 2 && !match_into(pat.rhs(), f.rhs(), s)) return false;
  return true;
}

std::string subst_text(const Substitution& s) {
  std::string out;
  for (const auto& [v, f] : s) {
    if (!out.empty()) out += ", ";
    out += v + ":=" + render(f);
  }
  return out;
}

}  // namespace

bool is_tautology(const Formula& f) {
  std::unordered_map<Formula, std::size_t, FormulaHash> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > kMaxTautAtoms)
    throw std::invalid_argument("tautology check: too many atoms (" + std::to_string(atoms.size()) + ")");
  const std::uint32_t count = std::uint32_t{1} << atoms.size();
  for (std::uint32_t a = 0; a < count; ++a)
    if (!eval_abstract(f, atoms, a)) return false;
  return true;
}

std::optional<Substitution> match_schema(const Formula& schema_f, const Formula& f) {
  Substitution s;
  if (!match_into(schema_f, f, s)) return std::nullopt;
  for (auto it = s.begin(); it != s.end();) {
    if (it->second.op() == Op::Var && it->second.name() == it->first)
      it = s.erase(it);
    else
      ++it;
  }
  return s;
}

std::optional<std::pair<std::string, Substitution>> is_axiom_instance(const System& sys,
                                                                      const Formula& f) {
  for (const auto& a : sys.axioms)
    if (auto s = match_schema(a.schema, f)) return std::make_pair(a.name, std::move(*s));
  return std::nullopt;
}

CheckReport check_derivation(const System& sys, const Derivation& d,
                             const std::vector<Formula>* allowed_premises) {
  CheckReport report;
  std::vector<bool> depends(d.lines.size() + 1, false);
  auto fail = [&](std::size_t line, std::string reason) {
    report.ok = false;
    report.first_error = CheckReport::Error{line, std::move(reason)};
    return report;
  };
  if (d.lines.empty()) return fail(0, "empty derivation");
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    const auto& ln = d.lines[k];
    const std::size_t idx = k + 1;
    if (ln.index != idx)
      return fail(ln.index, "expected line number " + std::to_string(idx));
    auto ref = [&](std::size_t r) -> const DerivationLine* {
      return r >= 1 && r < idx ? &d.lines[r - 1] : nullptr;
    };
    const auto& j = ln.just;
    switch (j.kind) {
      case Justification::Kind::Taut: {
        bool taut = false;
        try {
          taut = is_tautology(ln.formula);
        } catch (const std::invalid_argument& e) {
          return fail(idx, e.what());
        }
        if (!taut) return fail(idx, "not a propositional tautology");
        break;
      }
      case Justification::Kind::Axiom: {
        const AxiomSchema* a = sys.find(j.axiom);
        if (!a) return fail(idx, "axiom " + j.axiom + " is not part of " + to_string(sys.name));
        if (!(substitute(a->schema, j.subst) == ln.formula))
          return fail(idx, "formula is not the instance of " + j.axiom +
                               (j.subst.empty() ? std::string() : " under " + subst_text(j.subst)));
        break;
      }
      case Justification::Kind::MP: {
        const auto* minor = ref(j.from);
        const auto* major = ref(j.major);
        if (!minor || !major) return fail(idx, "mp cites a line that is not earlier");
        const Formula& imp = major->formula;
        if (imp.op() != Op::Implies) return fail(idx, "mp: line " + std::to_string(j.major) + " is not an implication");
        if (!(imp.lhs() == minor->formula))
          return fail(idx, "mp: antecedent of line " + std::to_string(j.major) + " differs from line " +
                               std::to_string(j.from));
        if (!(imp.rhs() == ln.formula)) return fail(idx, "mp: consequent does not match this line");
        depends[idx] = depends[j.from] || depends[j.major];
        break;
      }
      case Justification::Kind::Sub: {
        const auto* src = ref(j.from);
        if (!src) return fail(idx, "sub cites a line that is not earlier");
        if (depends[j.from]) return fail(idx, "sub applied to a line that depends on a premise");
        if (!(substitute(src->formula, j.subst) == ln.formula))
          return fail(idx, "sub: formula is not line " + std::to_string(j.from) + " under " + subst_text(j.subst));
        break;
      }
      case Justification::Kind::R: {
        const auto* src = ref(j.from);
        if (!src) return fail(idx, "r cites a line that is not earlier");
        if (depends[j.from]) return fail(idx, "r applied to a line that depends on a premise");
        const Formula& imp = src->formula;
        if (imp.op() != Op::Implies) return fail(idx, "r: line " + std::to_string(j.from) + " is not an implication");
        Formula expect = Formula::implies(Formula::conj(Formula::ess(imp.lhs()), imp.lhs()),
                                          Formula::ess(imp.rhs()));
        if (!(expect == ln.formula)) return fail(idx, "r: expected " + render(expect));
        break;
      }
      case Justification::Kind::Premise: {
        if (allowed_premises &&
            std::find(allowed_premises->begin(), allowed_premises->end(), ln.formula) == allowed_premises->end())
          return fail(idx, "not among the allowed premises");
        depends[idx] = true;
        if (std::find(report.premises.begin(), report.premises.end(), ln.formula) == report.premises.end())
          report.premises.push_back(ln.formula);
        break;
      }
    }
  }
  return report;
}

std::vector<std::string> conj_variables(int n) {
  static const char* letters[] = {"p", "q", "r", "s", "t", "u", "v", "x", "y", "z"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i)
    out.push_back(n <= 10 ? std::string(letters[i]) : "p" + std::to_string(i + 1));
  return out;
}

Derivation gen_conj_derivation(int n) {
  if (n < 2) throw std::invalid_argument("gen_conj_derivation needs n >= 2");
  const auto names = conj_variables(n);
  auto v = [&](int i) { return Formula::var(names[i]); };
  Derivation d;
  // Invariant: line `cur` proves ess_conj -> o plain_conj for the first k+1 variables.
  Formula plain = Formula::conj(v(0), v(1));
  Formula ess_conj = Formula::conj(Formula::ess(v(0)), Formula::ess(v(1)));
  Substitution base;
  if (names[0] != "p") base.emplace("p", v(0));
  if (names[1] != "q") base.emplace("q", v(1));
  std::size_t cur = d.add(substitute(axiom_kw_con().schema, base), Justification::by_axiom("KwCon", base));
  for (int k = 2; k < n; ++k) {
    Formula next_plain = Formula::conj(plain, v(k));
    Formula next_ess = Formula::conj(ess_conj, Formula::ess(v(k)));
    Substitution sigma{{"p", plain}, {"q", v(k)}};
    Formula con = substitute(axiom_kw_con().schema, sigma);
    std::size_t con_line = d.add(con, Justification::by_axiom("KwCon", sigma));
    // (A -> B) -> ((B & X -> Y) -> (A & X -> Y))
    Formula a_to_b = d.lines[cur - 1].formula;
    Formula chain = Formula::implies(
        con, Formula::implies(next_ess, Formula::ess(next_plain)));
    Formula taut = Formula::implies(a_to_b, chain);
    std::size_t taut_line = d.add(taut, Justification::taut());
    std::size_t mp1 = d.add(chain, Justification::mp(cur, taut_line));
    cur = d.add(Formula::implies(next_ess, Formula::ess(next_plain)), Justification::mp(con_line, mp1));
    plain = next_plain;
    ess_conj = next_ess;
  }
  return d;
}

SoundnessReport soundness_scan(const System& sys, FrameClass cls, std::size_t max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be at least 1");
  SoundnessReport rep{sys.name, cls, max_n};
  struct Chunk {
    std::uint64_t checked = 0;
    std::vector<SoundnessFailure> failures;
  };
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t n = 1; n <= max_n; ++n) {
    FrameEnumerator frames(n);
    // Contiguous code ranges, merged in range order: the report matches a
    // sequential scan exactly.
    const std::uint64_t total = frames.count();
    const std::size_t parts = static_cast<std::size_t>(std::min<std::uint64_t>(workers, total));
    std::vector<Chunk> chunks(parts);
    auto scan = [&](std::size_t part) {
      const std::uint64_t lo = total * part / parts, hi = total * (part + 1) / parts;
      Chunk& out = chunks[part];
      for (std::uint64_t code = lo; code < hi; ++code) {
        Model frame = frames.at(code);
        if (!in_class(frame, cls)) continue;
        ++out.checked;
        for (const auto& a : sys.axioms) {
          if (auto cm = frame_countermodel(frame, a.schema))
            out.failures.push_back({a.name, frame, std::move(*cm)});
        }
      }
    };
    if (parts == 1) {
      scan(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t part = 0; part < parts; ++part) pool.emplace_back(scan, part);
      for (auto& t : pool) t.join();
    }
    for (auto& c : chunks) {
      rep.frames_checked += c.checked;
      for (auto& f : c.failures) rep.failures.push_back(std::move(f));
    }
  }
  return rep;
}

std::string render_justification(const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::Taut: return "[taut]";
    case Justification::Kind::Premise: return "[premise]";
    case Justification::Kind::Axiom:
      return "[axiom " + j.axiom + (j.subst.empty() ? "" : " " + subst_text(j.subst)) + "]";
    case Justification::Kind::MP:
      return "[mp " + std::to_string(j.from) + " " + std::to_string(j.major) + "]";
    case Justification::Kind::Sub: return "[sub " + std::to_string(j.from) + " " + subst_text(j.subst) + "]";
    case Justification::Kind::R: return "[r " + std::to_string(j.from) + "]";
  }
  return "[?]";
}

std::string render_derivation(const Derivation& d) {
  std::string out;
  for (const auto& ln : d.lines)
    out += std::to_string(ln.index) + ". " + render(ln.formula) + "   " + render_justification(ln.just) + "\n";
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Formula parse_at(std::string_view text, std::size_t line_no) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw DerivationSyntaxError(line_no, e.what());
  }
}

std::size_t parse_index(std::string_view s, std::size_t line_no) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw DerivationSyntaxError(line_no, "expected a line number, got '" + std::string(s) + "'");
  return std::stoul(std::string(s));
}

Substitution parse_subst(std::string_view s, std::size_t line_no) {
  Substitution out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    auto comma = s.find(',');
    std::string_view item = trim(s.substr(0, comma));
    auto eq = item.find(":=");
    if (eq == std::string_view::npos) throw DerivationSyntaxError(line_no, "expected var:=formula");
    std::string var(trim(item.substr(0, eq)));
    if (!is_identifier(var)) throw DerivationSyntaxError(line_no, "bad variable '" + var + "'");
    if (!out.emplace(var, parse_at(item.substr(eq + 2), line_no)).second)
      throw DerivationSyntaxError(line_no, "variable bound twice: " + var);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

Justification parse_just(std::string_view body, std::size_t line_no) {
  body = trim(body);
  auto sp = body.find_first_of(" \t");
  std::string_view kw = body.substr(0, sp);
  std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(body.substr(sp));
  auto words = [](std::string_view r) {
    std::istringstream is{std::string(r)};
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
  };
  if (kw == "taut" && rest.empty()) return Justification::taut();
  if (kw == "premise" && rest.empty()) return Justification::premise();
  if (kw == "axiom") {
    auto sp2 = rest.find_first_of(" \t");
    std::string name(rest.substr(0, sp2));
    if (name.empty()) throw DerivationSyntaxError(line_no, "axiom needs a name");
    Substitution s = sp2 == std::string_view::npos ? Substitution{} : parse_subst(rest.substr(sp2), line_no);
    return Justification::by_axiom(name, std::move(s));
  }
  if (kw == "mp") {
    auto w = words(rest);
    if (w.size() != 2) throw DerivationSyntaxError(line_no, "mp needs two line numbers");
    return Justification::mp(parse_index(w[0], line_no), parse_index(w[1], line_no));
  }
  if (kw == "r") {
    auto w = words(rest);
    if (w.size() != 1) throw DerivationSyntaxError(line_no, "r needs one line number");
    return Justification::rule_r(parse_index(w[0], line_no));
  }
  if (kw == "sub") {
    auto sp2 = rest.find_first_of(" \t");
    if (sp2 == std::string_view::npos) throw DerivationSyntaxError(line_no, "sub needs a line and a substitution");
    return Justification::sub(parse_index(rest.substr(0, sp2), line_no), parse_subst(rest.substr(sp2), line_no));
  }
  throw DerivationSyntaxError(line_no, "unknown justification '" + std::string(body) + "'");
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto dot = line.find('.');
    if (dot == std::string_view::npos) throw DerivationSyntaxError(line_no, "expected '<n>.'");
    std::size_t idx = parse_index(line.substr(0, dot), line_no);
    std::string_view rest = line.substr(dot + 1);
    // Formulas only use '[' inside "[]", so the first other '[' opens the
    // justification.
    std::size_t open = std::string_view::npos;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == '[' && (i + 1 >= rest.size() || rest[i + 1] != ']')) {
        open = i;
        break;
      }
    }
    if (open == std::string_view::npos || rest.back() != ']')
      throw DerivationSyntaxError(line_no, "missing [justification]");
    Formula f = parse_at(trim(rest.substr(0, open)), line_no);
    Justification j = parse_just(rest.substr(open + 1, rest.size() - open - 2), line_no);
    d.lines.push_back({idx, std::move(f), std::move(j)});
  }
  return d;
}

}  // namespace lea
