#include "lea/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lea/bisim.hpp"
#include "lea/decide.hpp"
#include "lea/formula.hpp"
#include "lea/hilbert.hpp"
#include "lea/io.hpp"
#include "lea/kripke.hpp"
#include "lea/semantics.hpp"

namespace lea::cli {

namespace {

// Input problems detected after argument parsing; always exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula formula_arg(const std::string& text) {
  std::string src = text;
  if (!src.empty() && src.front() == '@') src = read_file(src.substr(1));
  try {
    return parse(src);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
}

ModelDocument model_arg(const std::string& path) {
  try {
    return parse_model_json(read_file(path));
  } catch (const JsonError& e) {
    throw InputError(path + ": " + e.what());
  }
}

PointedModel pointed_arg(const std::string& path, const std::string& point) {
  ModelDocument doc = model_arg(path);
  if (!doc.model.find(point)) throw InputError(path + ": no world \"" + point + "\"");
  return PointedModel(std::move(doc.model), point);
}

FrameClass class_arg(const std::string& s) {
  if (auto c = parse_frame_class(s)) return *c;
  throw InputError("unknown frame class: " + s);
}

SystemName system_arg(const std::string& s) {
  if (auto n = parse_system_name(s)) return *n;
  throw InputError("unknown system: " + s);
}

std::string pointed_json(const PointedModel& m) { return model_to_json(m.model, m.point); }

struct Globals {
  bool json = false;
  std::optional<std::size_t> max_n;
  std::optional<std::uint64_t> seed;
};

int report_verdict(const Verdict& v, const Globals& g, std::ostream& out) {
  const int code = v.answer == true ? kAffirmative : kNegative;
  if (g.json) {
    out << verdict_to_json(v) << "\n";
    return code;
  }
  const bool sat = v.query.mode == Mode::Sat;
  const std::string where = " over " + to_string(v.query.cls) + " (" + to_string(v.method) + ")";
  if (!v.answer) {
    out << "unknown: no " << (sat ? "model" : "countermodel") << " with at most " << *v.bound
        << " worlds" << where << "\n";
    return code;
  }
  if (sat)
    out << (*v.answer ? "satisfiable" : "unsatisfiable") << where << "\n";
  else
    out << (*v.answer ? "valid" : "invalid") << where << "\n";
  if (v.witness) out << (sat ? "model: " : "countermodel: ") << pointed_json(*v.witness) << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the logic of essence and accident", "lea"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  std::size_t max_n_raw = 0;
  std::uint64_t seed_raw = 0;
  app.add_flag("--json", g.json, "Print machine-readable JSON");
  auto* max_n_opt = app.add_option("--max-n", max_n_raw, "World bound for enumerations")->check(CLI::Range(1, 7));
  auto* seed_opt = app.add_option("--seed", seed_raw, "Seed for randomized harnesses");

  std::string model_a, model_b, point_a, point_b, formula_text, world, class_name, frame_file;
  std::string direction, property, system, derivation_file;
  int gen_n = 0;

  auto* check = app.add_subcommand("check", "Model check a formula at a world");
  check->add_option("model", model_a, "Model JSON file")->required();
  check->add_option("world", world, "World id")->required();
  check->add_option("formula", formula_text, "Formula or @file")->required();

  auto* valid_cmd = app.add_subcommand("valid", "Validity over a frame class or on one frame");
  valid_cmd->add_option("formula", formula_text, "Formula or @file")->required();
  auto* cls_opt = valid_cmd->add_option("--class", class_name, "Frame class");
  auto* frame_opt = valid_cmd->add_option("--frame", frame_file, "Frame JSON file (valuation ignored)");
  cls_opt->excludes(frame_opt);

  auto* sat = app.add_subcommand("sat", "Satisfiability over a frame class");
  sat->add_option("formula", formula_text, "Formula or @file")->required();
  sat->add_option("--class", class_name, "Frame class")->required();

  bool circ = false, box = false;
  auto* bisim = app.add_subcommand("bisim", "Bisimilarity of two pointed models");
  bisim->add_option("model_a", model_a)->required();
  bisim->add_option("point_a", point_a)->required();
  bisim->add_option("model_b", model_b)->required();
  bisim->add_option("point_b", point_b)->required();
  auto* circ_flag = bisim->add_flag("--circ", circ, "o-bisimulation (default)");
  bisim->add_flag("--box", box, "[]-bisimulation")->excludes(circ_flag);

  auto* contract_cmd = app.add_subcommand("contract", "o-bisimulation contraction of a model");
  contract_cmd->add_option("model", model_a, "Model JSON file")->required();

  auto* translate = app.add_subcommand("translate", "Translate between LEA and ML");
  translate->add_option("direction", direction, "ml (LEA to ML) or lea (ML to LEA)")
      ->required()
      ->check(CLI::IsMember({"ml", "lea"}));
  translate->add_option("formula", formula_text, "Formula or @file")->required();

  auto* define = app.add_subcommand("define", "Check that a formula defines a frame property");
  define->add_option("property", property, "Frame property")->required();
  define->add_option("formula", formula_text, "Formula or @file")->required();

  auto* prove = app.add_subcommand("prove", "Check a derivation file");
  prove->add_option("system", system, "Ko, K4o, KBo or KB5o")->required();
  prove->add_option("derivation", derivation_file, "Derivation file")->required();

  auto* scan = app.add_subcommand("scan", "Axiom soundness scan over a frame class");
  scan->add_option("system", system, "Ko, K4o, KBo or KB5o")->required();
  scan->add_option("class", class_name, "Frame class")->required();

  auto* gen = app.add_subcommand("gen-proof", "Print the derivation of o p1 & ... & o pn -> o(p1 & ... & pn)");
  gen->add_option("n", gen_n, "Number of conjuncts")->required()->check(CLI::Range(2, 1000));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAffirmative;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAffirmative;
  } catch (const CLI::ParseError& e) {
    err << "lea: " << e.what() << "\n";
    return kUsage;
  }
  if (*max_n_opt) g.max_n = max_n_raw;
  if (*seed_opt) g.seed = seed_raw;

  try {
    if (*check) {
      ModelDocument doc = model_arg(model_a);
      if (!doc.model.find(world)) throw InputError("no world \"" + world + "\" in " + model_a);
      const bool holds = satisfies(doc.model, world, formula_arg(formula_text));
      if (g.json)
        out << "{\"holds\": " << (holds ? "true" : "false") << "}\n";
      else
        out << (holds ? "holds" : "does not hold") << "\n";
      return holds ? kAffirmative : kNegative;
    }

    if (*valid_cmd) {
      Formula f = formula_arg(formula_text);
      if (!frame_file.empty()) {
        Model frame = model_arg(frame_file).model;
        auto cm = frame_countermodel(frame, f);
        if (g.json) {
          out << "{\"answer\": " << (cm ? "false" : "true") << ", \"method\": \"valuations\"";
          if (cm) out << ", \"witness\": " << pointed_json(*cm);
          out << "}\n";
        } else {
          out << (cm ? "invalid on frame" : "valid on frame") << "\n";
          if (cm) out << "countermodel: " << pointed_json(*cm) << "\n";
        }
        return cm ? kNegative : kAffirmative;
      }
      if (class_name.empty()) throw InputError("valid needs --class or --frame");
      DecideOptions opts;
      if (g.max_n) opts.search_bound = *g.max_n;
      return report_verdict(valid(f, class_arg(class_name), opts), g, out);
    }

    if (*sat) {
      DecideOptions opts;
      if (g.max_n) opts.search_bound = *g.max_n;
      return report_verdict(satisfiable(formula_arg(formula_text), class_arg(class_name), opts), g, out);
    }

    if (*bisim) {
      PointedModel a = pointed_arg(model_a, point_a);
      PointedModel b = pointed_arg(model_b, point_b);
      bool result;
      if (box) {
        result = box_bisimilar(a, b);
      } else {
        result = circ_bisimilar(a, b);
      }
      if (g.json) {
        out << "{\"bisimilar\": " << (result ? "true" : "false");
        if (!box) out << ", \"relation\": " << relation_to_json(largest_circ_bisimulation(disjoint_union(a.model, b.model)));
        out << "}\n";
      } else {
        out << (result ? "bisimilar" : "not bisimilar") << " (" << (box ? "[]" : "o") << ")\n";
      }
      return result ? kAffirmative : kNegative;
    }

    if (*contract_cmd) {
      ModelDocument doc = model_arg(model_a);
      Quotient q = contract(doc.model);
      std::optional<WorldId> point;
      if (doc.point) point = q.class_of.at(*doc.point);
      if (g.json) {
        out << "{\"model\": " << model_to_json(q.model, point) << ", \"class_of\": {";
        bool first = true;
        for (const auto& w : doc.model.worlds()) {
          out << (first ? "" : ", ") << json_quote(w) << ": " << json_quote(q.class_of.at(w));
          first = false;
        }
        out << "}}\n";
      } else {
        out << model_to_json(q.model, point) << "\n";
        for (const auto& w : doc.model.worlds()) out << w << " -> " << q.class_of.at(w) << "\n";
      }
      return kAffirmative;
    }

    if (*translate) {
      Formula f = formula_arg(formula_text);
      Formula t = direction == "ml" ? to_ml(f) : to_lea(f);
      if (g.json)
        out << "{\"formula\": " << json_quote(render(t)) << "}\n";
      else
        out << render(t) << "\n";
      return kAffirmative;
    }

    if (*define) {
      auto p = parse_frame_property(property);
      if (!p) throw InputError("unknown frame property: " + property);
      DefinabilityVerdict v = check_definability(*p, formula_arg(formula_text), g.max_n.value_or(4));
      if (g.json) {
        out << "{\"confirmed\": " << (v.confirmed ? "true" : "false") << ", \"max_n\": " << v.max_n;
        if (!v.confirmed)
          out << ", \"direction\": " << json_quote(to_string(*v.direction)) << ", \"witness\": " << model_to_json(*v.witness);
        out << "}\n";
      } else {
        out << v.summary() << "\n";
        if (!v.confirmed) out << "frame: " << model_to_json(*v.witness) << "\n";
      }
      return v.confirmed ? kAffirmative : kNegative;
    }

    if (*prove) {
      System sys = System::make(system_arg(system));
      Derivation d;
      try {
        d = parse_derivation(read_file(derivation_file));
      } catch (const DerivationSyntaxError& e) {
        throw InputError(derivation_file + ": " + e.what());
      }
      CheckReport r = check_derivation(sys, d);
      if (g.json) {
        out << "{\"ok\": " << (r.ok ? "true" : "false");
        if (!r.ok)
          out << ", \"line\": " << r.first_error->line << ", \"reason\": " << json_quote(r.first_error->reason);
        out << "}\n";
      } else if (r.ok) {
        out << "accepted in " << to_string(sys.name) << ": " << d.lines.size() << " lines, conclusion "
            << render(d.conclusion()) << "\n";
        if (!r.premises.empty()) out << "premises used: " << r.premises.size() << "\n";
      } else {
        out << "rejected at line " << r.first_error->line << ": " << r.first_error->reason << "\n";
      }
      return r.ok ? kAffirmative : kNegative;
    }

    if (*scan) {
      System sys = System::make(system_arg(system));
      SoundnessReport r = soundness_scan(sys, class_arg(class_name), g.max_n.value_or(4));
      if (g.json) {
        out << "{\"frames_checked\": " << r.frames_checked << ", \"failures\": [";
        for (std::size_t i = 0; i < r.failures.size(); ++i) {
          const auto& f = r.failures[i];
          out << (i ? ", " : "") << "{\"axiom\": " << json_quote(f.axiom) << ", \"countermodel\": " << pointed_json(f.countermodel)
              << "}";
        }
        out << "]}\n";
      } else {
        out << to_string(sys.name) << " over " << to_string(r.frame_class) << " up to n=" << r.max_n << ": "
            << r.frames_checked << " frames, " << r.failures.size() << " failures\n";
        for (const auto& f : r.failures) out << f.axiom << " fails: " << pointed_json(f.countermodel) << "\n";
      }
      return r.ok() ? kAffirmative : kNegative;
    }

    if (*gen) {
      out << render_derivation(gen_conj_derivation(gen_n));
      return kAffirmative;
    }
  } catch (const InputError& e) {
    err << "lea: " << e.what() << "\n";
    return kUsage;
  } catch (const FragmentError& e) {
    err << "lea: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "lea: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace lea::cli
