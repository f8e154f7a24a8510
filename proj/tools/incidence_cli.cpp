// incidence: invertibility preservers of incidence algebras from the command line.
//
// Exit codes: 0 all checks pass, 1 a check fails or a map is refuted,
// 2 usage, parse or gate error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "incidence/io.hpp"
#include "incidence/report.hpp"
#include "incidence/verifier.hpp"

using namespace incidence;

namespace {

struct Options {
  std::string poset;
  std::vector<std::string> field;
  std::string map_path;
  std::string spec_path;
  std::string out_path;
  bool json_output = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  bool gate_override = false;
  unsigned threads = 1;
  bool inverse_preservers = false;
  bool records = false;
  std::vector<std::string> example_ids;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string yn(const std::optional<bool>& b) {
  if (!b) return "n/a";
  return *b ? "yes" : "no";
}

MapContext context_for(const Options& o, const std::string& path) {
  MapContext ctx;
  if (!o.poset.empty()) ctx.poset = resolve_poset(o.poset);
  if (!o.field.empty()) {
    std::string joined;
    for (const auto& t : o.field) joined += (joined.empty() ? "" : " ") + t;
    ctx.field = parse_field(joined);
  }
  ctx.base_dir = std::filesystem::path(path).parent_path();
  return ctx;
}

PosetPtr require_poset(const Options& o) {
  if (o.poset.empty()) throw UsageError("--poset is required");
  return resolve_poset(o.poset);
}

FieldDesc require_field(const Options& o) {
  auto ctx = context_for(o, "");
  if (!ctx.field) throw UsageError("--field is required");
  return *ctx.field;
}

LinearMap load_map(const Options& o) {
  if (o.map_path.empty()) throw UsageError("--map is required");
  try {
    return parse_map(read_file(o.map_path), context_for(o, o.map_path));
  } catch (const ParseError& e) {
    throw ParseError(o.map_path + ": " + e.what());
  }
}

PreserverSpec load_spec(const Options& o) {
  if (o.spec_path.empty()) throw UsageError("--spec is required");
  try {
    return parse_spec(read_file(o.spec_path), context_for(o, o.spec_path));
  } catch (const ParseError& e) {
    throw ParseError(o.spec_path + ": " + e.what());
  }
}

CensusOptions census_options(const Options& o) {
  CensusOptions c;
  c.gates.override_gates = o.gate_override;
  c.threads = o.threads;
  c.poset_id = o.poset;
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw ParseError("cannot write " + o.out_path);
  out << text;
}

std::string verdict_lines(const std::vector<LemmaVerdict>& verdicts) {
  std::ostringstream ss;
  std::size_t failed = 0, applicable = 0;
  for (const auto& v : verdicts) {
    const char* status = !v.applicable ? "SKIP" : v.pass ? "PASS" : "FAIL";
    ss << status << "  " << v.lemma << "  [" << v.instance << "]";
    if (v.witness) ss << "\n      " << (v.pass ? "" : "witness: ") << *v.witness;
    ss << "\n";
    if (v.applicable) {
      ++applicable;
      if (!v.pass) ++failed;
    }
  }
  ss << applicable - failed << "/" << applicable << " applicable verdicts pass\n";
  return ss.str();
}

int finish_verdicts(const Options& o, const std::vector<LemmaVerdict>& verdicts) {
  emit(o, o.json_output ? verdicts_to_json(verdicts).dump(2) + "\n" : verdict_lines(verdicts));
  return all_pass(verdicts) ? 0 : 1;
}

std::string report_text(const LinearMap& phi, const ClassificationReport& r) {
  std::ostringstream ss;
  ss << "algebra: " << poset_literal(phi.poset()) << " over " << phi.field().literal() << "\n"
     << "unital: " << yn(r.unital) << "\npreserver: " << yn(r.preserver) << "\nstrong: " << yn(r.strong)
     << "\ninverse preserving: " << yn(r.inverse_preserving) << "\njordan: " << yn(r.jordan) << "\n";
  if (r.spec) {
    ss << "lambda: " << format_lambda(phi.poset(), r.spec->lambda) << "\npsi:\n";
    std::string spec_text = write_spec(*r.spec);
    ss << spec_text.substr(spec_text.find("psi:\n") + 5);
  }
  if (r.refuted_lemma) ss << "refuted by: " << *r.refuted_lemma << "\n";
  for (const auto& w : r.witnesses) ss << "witness: " << w << "\n";
  return ss.str();
}

int run_build(const Options& o) {
  const auto phi = build_preserver(load_spec(o));
  emit(o, o.json_output ? to_json(phi).dump(2) + "\n" : write_map(phi));
  return 0;
}

int run_classify(const Options& o, bool full_check) {
  const auto phi = load_map(o);
  GateOptions gates{o.gate_override};
  ClassificationReport r;
  if (full_check) {
    r = classification_report(phi, gates);
  } else {
    r.unital = is_unital(phi);
    try {
      r.spec = classify(phi);
      r.preserver = true;
      r.strong = std::visit([](const auto& l) { return is_injective(l); }, r.spec->lambda);
    } catch (const ClassificationError& e) {
      r.preserver = false;
      r.refuted_lemma = e.lemma();
      r.witnesses.push_back(e.what());
    }
  }
  emit(o, o.json_output ? to_json(r).dump(2) + "\n" : report_text(phi, r));
  return r.spec ? 0 : 1;
}

int run_census(const Options& o) {
  const auto poset = require_poset(o);
  const auto field = require_field(o);
  const auto report = enumerate_preservers(poset, field, census_options(o));
  if (o.json_output) {
    auto j = to_json(report);
    if (!o.records) j.erase("records");
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream ss;
    ss << "poset: " << report.poset_id << "\nfield: " << field.literal() << "\nmaps searched: " << report.maps_searched
       << "\noracle_count: " << report.oracle_count << "\ntheorem_count: " << report.theorem_count
       << "\nset equality with normal forms: " << (report.matches_normal_forms ? "yes" : "no")
       << "\nstrong: " << report.strong_count() << "\ninjective lambda: " << report.injective_lambda_count()
       << "\nbijective: " << report.bijective_count() << "\nelapsed: " << report.elapsed_seconds << " s\n";
    if (o.records)
      for (const auto& rec : report.records)
        ss << "#" << rec.index << "  lambda " << format_lambda(*poset, rec.spec.lambda)
           << (rec.strong ? "  strong" : "") << (rec.bijective ? "  bijective" : "") << "\n";
    emit(o, ss.str());
  }
  return report.consistent() ? 0 : 1;
}

int run_lemmas(const Options& o) {
  const auto poset = require_poset(o);
  const auto field = require_field(o);
  if (o.inverse_preservers) return finish_verdicts(o, verify_inverse_preserver_results(poset, field, census_options(o)));
  Sampling sampling = Sampling::all();
  if (o.trials || o.seed) sampling = Sampling::randomized(o.seed.value_or(0), o.trials.value_or(100));
  return finish_verdicts(o, verify_lemma_suite(poset, field, sampling, census_options(o)));
}

int run_examples(const Options& o) {
  auto ids = o.example_ids.empty() ? example_ids() : o.example_ids;
  std::vector<LemmaVerdict> verdicts;
  for (const auto& id : ids) {
    try {
      verdicts.push_back(reproduce_example(id));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return finish_verdicts(o, verdicts);
}

int run_criteria(const Options& o) {
  return finish_verdicts(o, verify_criteria(load_spec(o), GateOptions{o.gate_override}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invertibility preservers of incidence algebras"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json_output, "Emit JSON");
    sub->add_option("--out", o.out_path, "Write the report to a file");
    sub->add_flag("--gate-override", o.gate_override, "Run searches past their size limits");
  };
  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("--poset", o.poset, "chain:N, antichain:N, v, diamond, [a,b | a<b] or a poset file");
    sub->add_option("--field", o.field, "Fp P, FP, ZP or Q")->expected(1, 2);
  };

  auto* build = app.add_subcommand("build", "Build the map of a (lambda, psi) spec");
  add_common(build);
  add_algebra(build);
  build->add_option("--spec", o.spec_path, "Spec file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Decompose a map into its normal form");
  add_common(classify_cmd);
  add_algebra(classify_cmd);
  classify_cmd->add_option("--map", o.map_path, "Map file")->required();

  auto* check = app.add_subcommand("check", "Run every predicate on a map");
  add_common(check);
  add_algebra(check);
  check->add_option("--map", o.map_path, "Map file")->required();

  auto* census = app.add_subcommand("census", "Enumerate all linear maps and compare with the normal forms");
  add_common(census);
  add_algebra(census);
  census->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  census->add_flag("--records", o.records, "Include per-map records");

  auto* lemmas = app.add_subcommand("lemmas", "Check the lemma suite on every preserver (or on random ones)");
  add_common(lemmas);
  add_algebra(lemmas);
  lemmas->add_option("--seed", o.seed, "Seed for randomized mode");
  lemmas->add_option("--trials", o.trials, "Number of random normal forms");
  lemmas->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  lemmas->add_flag("--inverse-preservers", o.inverse_preservers, "Check the results on inverse preservers instead");

  auto* examples = app.add_subcommand("examples", "Reproduce the worked examples");
  add_common(examples);
  examples->add_option("ids", o.example_ids, "z2-nonseparating, diagonal-truncation, z2-not-jordan (default: all)");

  auto* criteria = app.add_subcommand("criteria", "Check the strongness and bijectivity criteria for a spec");
  add_common(criteria);
  add_algebra(criteria);
  criteria->add_option("--spec", o.spec_path, "Spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*build) return run_build(o);
    if (*classify_cmd) return run_classify(o, false);
    if (*check) return run_classify(o, true);
    if (*census) return run_census(o);
    if (*lemmas) return run_lemmas(o);
    if (*examples) return run_examples(o);
    if (*criteria) return run_criteria(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
