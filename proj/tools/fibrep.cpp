#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fibrep/corpus.hpp"
#include "fibrep/homology.hpp"
#include "fibrep/io.hpp"
#include "fibrep/theorem_b.hpp"

using namespace fibrep;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  int max_stage = 2;
  int max_dim = 1;
  std::string variant = "str";
  std::size_t budget = 200000;
  bool json = false;
  bool raw = false;
  bool dual = false;
  bool allow_loops = false;
  bool left = false;
  bool right = false;
  std::uint64_t seed = 1;
  int count = 50;
  int max_objects = 6;
  std::string output;
};

void emit(const RunConfig& cfg, const Json& j) {
  if (cfg.output.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw InputError(cfg.output + ": cannot write");
  out << j.dump(2) << "\n";
}

void print_failures(const CheckReport& r, const std::string& indent = "  ") {
  for (const auto& f : r.failures) std::cout << indent << f.law << ": " << f.witness << "\n";
  for (const auto& n : r.notes) std::cout << indent << "note: " << n << "\n";
}

int cmd_validate(const RunConfig& cfg) {
  bool all = true;
  Json out = Json::array();
  for (const auto& p : cfg.inputs) {
    const auto doc = load_document(p);
    CheckReport r;
    std::string kind;
    switch (doc.kind) {
      case DocumentKind::Category:
        kind = "category";
        r = validate_category(*doc.category);
        break;
      case DocumentKind::Functor:
        kind = "functor";
        r.absorb(validate_category(*doc.functor.source), "source");
        r.absorb(validate_category(*doc.functor.target), "target");
        if (r.passed()) r = validate_functor(doc.functor);
        break;
      case DocumentKind::NatTransformation:
        kind = "nat_transformation";
        r.absorb(validate_functor(doc.transformation.from), "from");
        r.absorb(validate_functor(doc.transformation.to), "to");
        if (r.passed()) r = validate_nat_trans(doc.transformation);
        break;
    }
    all = all && r.passed();
    if (cfg.json) {
      auto j = report_to_json(r);
      j["path"] = p;
      j["kind"] = kind;
      out.push_back(std::move(j));
    } else {
      std::cout << p << ": " << kind << " " << (r.passed() ? "passed" : "FAILED") << "\n";
      print_failures(r);
    }
  }
  if (cfg.json) emit(cfg, out);
  return all ? 0 : 1;
}

int cmd_homology(const RunConfig& cfg) {
  const auto c = load_category(cfg.inputs.front());
  auto v = validate_category(*c);
  if (!v.passed()) {
    std::cerr << "category is invalid: " << v.summary() << "\n";
    return 1;
  }
  const auto groups = homology(*c, cfg.max_dim);
  if (cfg.json) {
    emit(cfg, Json{{"check", "homology"},
                   {"target", cfg.inputs.front()},
                   {"degree_bound", cfg.max_dim},
                   {"loop_free", is_loop_free(*c)},
                   {"groups", homology_to_json(groups)}});
  } else {
    std::cout << to_string(groups);
    if (!is_loop_free(*c)) std::cout << "  (truncated at degree " << cfg.max_dim << ")";
    std::cout << "\n";
  }
  return 0;
}

Functor valid_functor(const RunConfig& cfg) {
  auto f = load_functor(cfg.inputs.front());
  CheckReport r;
  r.absorb(validate_category(*f.source), "source");
  r.absorb(validate_category(*f.target), "target");
  if (r.passed()) r = validate_functor(f);
  if (!r.passed()) throw CheckFailed("input functor is invalid", r);
  return f;
}

int cmd_replace(const RunConfig& cfg) {
  const auto f = valid_functor(cfg);
  const auto st = build_replacement(f, cfg.max_stage, parse_variant(cfg.variant), Budget{cfg.budget});
  const auto ids = check_replacement_identities(st);
  const auto& c = *st.category();
  if (cfg.json || !cfg.output.empty()) {
    auto j = replacement_to_json(st);
    j["identities"] = report_to_json(ids);
    emit(cfg, j);
  }
  if (!cfg.json) {
    std::cout << "stage " << cfg.max_stage << " (" << cfg.variant << "): " << c.num_objects() << " objects, "
              << c.num_morphisms() << " morphisms\n";
    std::cout << "q∘i = id, f_h∘i = f, pullback square: " << (ids.passed() ? "verified" : "FAILED") << "\n";
    print_failures(ids);
  }
  return ids.passed() ? 0 : 1;
}

void print_theorem_b(const TheoremBReport& r) {
  const auto& d = *r.f.target;
  for (const auto& e : r.entries) {
    std::cout << "  " << describe_morphism(d, e.v) << ": ";
    if (e.forced) {
      std::cout << "identity (forced pass)\n";
      continue;
    }
    std::cout << (e.quasi_iso.passed() ? "pass" : "FAIL") << " (" << e.source_objects << " -> " << e.target_objects
              << " objects)\n";
    print_failures(e.quasi_iso, "    ");
  }
}

int cmd_check_b(const RunConfig& cfg) {
  const auto f = valid_functor(cfg);
  const std::string target = cfg.inputs.front();
  if (cfg.raw) {
    TheoremBOptions opt;
    opt.degree = cfg.max_dim;
    opt.dual = cfg.dual;
    opt.allow_loops = cfg.allow_loops;
    opt.budget = Budget{cfg.budget};
    const auto r = check_theorem_b_hypothesis(f, opt);
    if (cfg.json) {
      emit(cfg, theorem_b_to_json(r, target));
    } else {
      std::cout << "Theorem B hypothesis" << (cfg.dual ? " (dual)" : "") << " for " << target
                << ", homology isomorphism through degree " << cfg.max_dim << ": " << (r.passed() ? "pass" : "FAIL")
                << "\n";
      print_theorem_b(r);
    }
    return r.passed() ? 0 : 1;
  }
  EvrardOptions opt;
  opt.max_stage = cfg.max_stage;
  opt.degree = cfg.max_dim;
  opt.variant = parse_variant(cfg.variant);
  opt.budget = Budget{cfg.budget};
  const auto r = verify_evrard_replacement(f, opt);
  if (cfg.json) {
    emit(cfg, evrard_to_json(r, target));
  } else {
    std::cout << "replacement of " << target << " at stage " << r.max_stage << " (" << cfg.variant << "): "
              << r.stage_objects << " objects, " << r.stage_morphisms << " morphisms\n";
    std::cout << "strict: " << (r.strict.passed() ? "pass" : "FAIL") << "\n";
    print_failures(r.strict);
    std::cout << "witnesses: " << (r.witnesses.passed() ? "pass" : "FAIL") << "\n";
    if (!r.witnesses.passed()) std::cout << "  " << r.witnesses.summary(8) << "\n";
    std::cout << "homological (through degree " << r.degree << "): "
              << (r.homological.report.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& a : r.homological.answers) std::cout << "  " << a << "\n";
    std::cout << "stability probe at N+1: " << (r.stability.passed() ? "agrees" : "DIFFERS") << "\n";
    print_failures(r.stability);
    std::cout << "verdict: " << to_string(r.verdict) << "\n";
  }
  return r.verdict == Verdict::Pass ? 0 : 1;
}

int cmd_adjoint(const RunConfig& cfg) {
  const auto f = valid_functor(cfg);
  const bool left = cfg.left;
  const auto r = left ? find_left_adjoint(f, Budget{cfg.budget}) : find_right_adjoint(f, Budget{cfg.budget});
  if (cfg.json) {
    emit(cfg, adjoint_to_json(r, f));
  } else if (r.found) {
    std::cout << (left ? "left" : "right") << " adjoint found\n";
    const auto& d = *f.target;
    const auto& c = *f.source;
    for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y)
      std::cout << "  " << d.object_id(y) << " |-> " << c.object_id(r.adjoint.obj(y)) << "  ("
                << (left ? "unit " : "counit ") << d.morphism_id(r.universal[y]) << ")\n";
    for (MorId g = 0; g < static_cast<MorId>(d.num_morphisms()); ++g)
      std::cout << "  " << d.morphism_id(g) << " |-> " << c.morphism_id(r.adjoint.mor(g)) << "\n";
    if (!r.report.passed()) {
      std::cout << "adjoint failed its own checks:\n";
      print_failures(r.report);
    }
  } else {
    std::cout << "no " << (left ? "left" : "right") << " adjoint: " << (left ? "the comma category " : "the comma category F\\")
              << f.target->object_id(r.witness) << (left ? "\\F has no initial object" : " has no terminal object")
              << "\n";
  }
  return r.found && r.report.passed() ? 0 : 1;
}

int cmd_generate(const RunConfig& cfg) {
  if (cfg.output.empty()) throw InputError("generate: --output directory is required");
  fs::create_directories(cfg.output);
  Corpus corpus(cfg.seed);
  for (int k = 0; k < cfg.count; ++k) {
    const auto c = corpus.poset(cfg.max_objects);
    std::ofstream out(fs::path(cfg.output) / ("poset_" + std::to_string(k) + ".json"));
    out << category_to_json(*c).dump(2) << "\n";
  }
  std::cout << "wrote " << cfg.count << " posets to " << cfg.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fibrep: finite categories, nerves and the fibrant replacement of a functor"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-stage", cfg.max_stage, "largest path length N")->check(CLI::PositiveNumber);
    sub->add_option("--max-dim", cfg.max_dim, "homology degree bound k")->check(CLI::NonNegativeNumber);
    sub->add_option("--variant", cfg.variant, "index category: str or le")->check(CLI::IsMember({"str", "le"}));
    sub->add_option("--budget", cfg.budget, "maximal number of enumerated morphisms")->check(CLI::PositiveNumber);
    sub->add_flag("--json", cfg.json, "JSON output");
    sub->add_option("-o,--output", cfg.output, "write JSON to this file");
  };

  auto* validate = app.add_subcommand("validate", "validate category, functor and transformation documents");
  validate->add_option("paths", cfg.inputs)->required()->check(CLI::ExistingFile);
  common(validate);

  auto* homology_cmd = app.add_subcommand("homology", "integral homology of the nerve");
  homology_cmd->add_option("path", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  common(homology_cmd);

  auto* replace = app.add_subcommand("replace", "build the fibrant replacement H(f) up to stage N");
  replace->add_option("functor", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  common(replace);

  auto* check_b = app.add_subcommand("check-b", "check the Theorem B hypothesis for f_h (or f with --raw)");
  check_b->add_option("functor", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  check_b->add_flag("--raw", cfg.raw, "check f itself instead of its replacement");
  check_b->add_flag("--dual", cfg.dual, "use [v_*]: f\\Y -> f\\Y' (with --raw)");
  check_b->add_flag("--allow-loops", cfg.allow_loops, "accept a target with non-identity cycles (with --raw)");
  common(check_b);

  auto* adjoint = app.add_subcommand("adjoint", "search for a left or right adjoint");
  adjoint->add_option("functor", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  auto* l = adjoint->add_flag("--left", cfg.left, "left adjoint");
  auto* r = adjoint->add_flag("--right", cfg.right, "right adjoint (default)");
  l->excludes(r);
  common(adjoint);

  auto* generate = app.add_subcommand("generate", "write a random poset corpus");
  generate->add_option("--seed", cfg.seed, "random seed");
  generate->add_option("--count", cfg.count, "number of posets")->check(CLI::PositiveNumber);
  generate->add_option("--max-objects", cfg.max_objects, "largest poset")->check(CLI::PositiveNumber);
  common(generate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*homology_cmd) return cmd_homology(cfg);
    if (*replace) return cmd_replace(cfg);
    if (*check_b) return cmd_check_b(cfg);
    if (*adjoint) return cmd_adjoint(cfg);
    if (*generate) return cmd_generate(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailed& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
