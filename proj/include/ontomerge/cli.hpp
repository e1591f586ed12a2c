// Copyright 2026 The Ontomerge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   ontomerge integrate --component F --component F ... --ontology F
//                       --out-component F --out-ontology F --report F
//                       [--tau X] [--merged-id ID] [--name N] [--verbose]
//   ontomerge align     --component F --component F ... --ontology F
//                       --report F [--out-ontology F] [--tau X] [--verbose]
//   ontomerge gen       --out-dir D [--spec F] [--concepts N] [--synonyms N]
//                       [--homonyms N] [--coverage X] [--seed S]
//   ontomerge eval      --report F --truth F [--out F]
//   ontomerge export-dot (--ontology F | --component F) [--out F]
//
// Exit codes: 0 success, 1 usage error, 2 parse/schema/IO error,
// 3 homonym cluster collision, 4 internal invariant violation.
// Outputs of one invocation are written all-or-nothing.

#ifndef ONTOMERGE_CLI_HPP_
#define ONTOMERGE_CLI_HPP_

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "ontomerge/errors.hpp"
#include "ontomerge/evalgen.hpp"
#include "ontomerge/integrator.hpp"
#include "ontomerge/model_io.hpp"
#include "ontomerge/rational.hpp"
#include "ontomerge/transform.hpp"

namespace ontomerge {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitCollision = 3,
  kExitInvariant = 4,
};

// Smallest threshold accepted on the command line.
inline constexpr Rational kMinCliTau(1, 2);

class UsageError : public Error {
 public:
  using Error::Error;
};

// Accepts "1", "3/4" or a decimal such as "0.75".
inline Rational ParseTau(const std::string& text) {
  try {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational::Parse(text);
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 ||
        frac.find_first_not_of("0123456789") != std::string::npos ||
        (!whole.empty() && whole.find_first_not_of("0123456789") != std::string::npos)) {
      throw UsageError("");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r(std::stoll(frac), scale);
    if (!whole.empty()) r = r + Rational(std::stoll(whole));
    return r;
  } catch (const std::exception&) {
    throw UsageError("invalid --tau value \"" + text + "\"");
  }
}

namespace internal {

struct IntegrateArgs {
  std::vector<std::string> components;
  std::string ontology;
  std::string out_component;
  std::string out_ontology;
  std::string report;
  std::string tau = "1";
  std::string merged_id = std::string(kDefaultMergedId);
  std::string name;
  bool verbose = false;
};

inline void CheckDistinct(const std::vector<std::string>& paths) {
  std::set<std::filesystem::path> seen;
  for (const auto& p : paths) {
    if (p.empty()) continue;
    auto key = std::filesystem::weakly_canonical(std::filesystem::absolute(p));
    if (!seen.insert(key).second) throw UsageError("output path given twice: " + p);
  }
}

inline Rational CliTau(const std::string& text) {
  Rational tau = ParseTau(text);
  if (tau < kMinCliTau || tau > Rational(1)) {
    throw UsageError("--tau must lie in [1/2, 1], got " + text);
  }
  return tau;
}

inline IntegrationResult RunPipeline(const IntegrateArgs& a) {
  std::vector<BusinessComponent> components;
  for (const auto& path : a.components) components.push_back(ParseComponent(path));
  Ontology od = ParseOntology(a.ontology);
  IntegrateOptions options;
  options.tau = CliTau(a.tau);
  options.merged_id = a.merged_id;
  options.name = a.name;
  return Integrate(std::move(components), std::move(od), options);
}

inline void Summarize(const IntegrationResult& r, bool verbose, std::ostream& out,
                      std::ostream& err) {
  std::size_t conflicts = 0;
  for (const auto& c : r.report.correspondences) {
    if (c.verdict == Verdict::kSynonym || c.verdict == Verdict::kHomonym) ++conflicts;
  }
  out << r.report.correspondences.size() << " pairs scored, " << conflicts
      << " naming conflicts, " << r.report.enrichments.size() << " enrichments, "
      << r.report.clusters.size() << " clusters\n";
  if (verbose) {
    for (const auto& w : r.report.warnings) err << "warning: " << w << "\n";
  }
}

inline void AddComponentInputs(CLI::App& sub, IntegrateArgs& a) {
  sub.add_option("--component", a.components, "Business component JSON (repeat, at least 2)")
      ->required()
      ->expected(1)
      ->take_all()
      ->check(CLI::ExistingFile);
  sub.add_option("--ontology", a.ontology, "Support ontology JSON")->required();
  sub.add_option("--tau", a.tau, "Identical-verdict threshold in [1/2, 1] (default 1)");
  sub.add_flag("--verbose", a.verbose, "Print warnings");
}

}  // namespace internal

// `args` excludes the program name.
inline int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrate business components through a support ontology", "ontomerge"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help and exit");

  internal::IntegrateArgs integrate_args;
  auto* integrate = app.add_subcommand("integrate", "Align, merge and write CM_r, O_d and report");
  integrate->set_help_flag("--help", "Print this help and exit");
  internal::AddComponentInputs(*integrate, integrate_args);
  integrate->add_option("--out-component", integrate_args.out_component)->required();
  integrate->add_option("--out-ontology", integrate_args.out_ontology)->required();
  integrate->add_option("--report", integrate_args.report)->required();
  integrate->add_option("--merged-id", integrate_args.merged_id);
  integrate->add_option("--name", integrate_args.name);

  internal::IntegrateArgs align_args;
  auto* align = app.add_subcommand("align", "Score and report naming conflicts only");
  align->set_help_flag("--help", "Print this help and exit");
  internal::AddComponentInputs(*align, align_args);
  align->add_option("--report", align_args.report)->required();
  align->add_option("--out-ontology", align_args.out_ontology);

  ScenarioSpec spec;
  std::string spec_path, out_dir;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic scenario with ground truth");
  gen->set_help_flag("--help", "Print this help and exit");
  gen->add_option("--spec", spec_path, "Scenario spec JSON")->check(CLI::ExistingFile);
  auto* concepts_opt = gen->add_option("--concepts", spec.concept_count);
  auto* synonyms_opt = gen->add_option("--synonyms", spec.synonym_pairs);
  auto* homonyms_opt = gen->add_option("--homonyms", spec.homonym_pairs);
  auto* coverage_opt = gen->add_option("--coverage", spec.od_coverage);
  auto* seed_opt = gen->add_option("--seed", spec.rng_seed);
  gen->add_option("--out-dir", out_dir)->required();

  std::string report_path, truth_path, metrics_path;
  auto* eval = app.add_subcommand("eval", "Score a report against ground truth");
  eval->set_help_flag("--help", "Print this help and exit");
  eval->add_option("--report", report_path)->required();
  eval->add_option("--truth", truth_path)->required();
  eval->add_option("--out", metrics_path);

  std::string dot_ontology, dot_component, dot_out;
  auto* dot = app.add_subcommand("export-dot", "Write an ontology or component as Graphviz DOT");
  dot->set_help_flag("--help", "Print this help and exit");
  auto* dot_o = dot->add_option("--ontology", dot_ontology);
  auto* dot_c = dot->add_option("--component", dot_component);
  dot_o->excludes(dot_c);
  dot->add_option("--out", dot_out);

  std::vector<std::string> argv_storage{"ontomerge"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  auto usage = [&](const std::string& message) {
    err << "error: " << message << "\n";
    CLI::App* shown = &app;
    for (auto* sub : {integrate, align, gen, eval, dot}) {
      if (sub->parsed()) shown = sub;
    }
    err << shown->help();
    return kExitUsage;
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    CLI::App* shown = &app;
    for (auto* sub : {integrate, align, gen, eval, dot}) {
      if (sub->parsed()) shown = sub;
    }
    out << shown->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  try {
    if (integrate->parsed()) {
      const auto& a = integrate_args;
      internal::CheckDistinct({a.out_component, a.out_ontology, a.report});
      IntegrationResult r = internal::RunPipeline(a);
      WriteFilesAtomically({{a.out_component, SerializeComponent(r.component)},
                            {a.out_ontology, SerializeOntology(r.enriched_od)},
                            {a.report, SerializeReport(r.report)}});
      internal::Summarize(r, a.verbose, out, err);
    } else if (align->parsed()) {
      const auto& a = align_args;
      internal::CheckDistinct({a.out_ontology, a.report});
      IntegrationResult r = internal::RunPipeline(a);
      std::vector<std::pair<std::filesystem::path, std::string>> files{
          {a.report, SerializeReport(r.report)}};
      if (!a.out_ontology.empty()) files.emplace_back(a.out_ontology, SerializeOntology(r.enriched_od));
      WriteFilesAtomically(files);
      internal::Summarize(r, a.verbose, out, err);
    } else if (gen->parsed()) {
      if (!spec_path.empty()) {
        ScenarioSpec from_file = ParseScenarioSpecText(ReadFile(spec_path), spec_path);
        if (!*concepts_opt) spec.concept_count = from_file.concept_count;
        if (!*synonyms_opt) spec.synonym_pairs = from_file.synonym_pairs;
        if (!*homonyms_opt) spec.homonym_pairs = from_file.homonym_pairs;
        if (!*coverage_opt) spec.od_coverage = from_file.od_coverage;
        if (!*seed_opt) spec.rng_seed = from_file.rng_seed;
      }
      Scenario s = GenerateScenario(spec);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
      const std::filesystem::path dir(out_dir);
      WriteFilesAtomically({{dir / "cm1.json", SerializeComponent(s.components[0])},
                            {dir / "cm2.json", SerializeComponent(s.components[1])},
                            {dir / "od.json", SerializeOntology(s.od)},
                            {dir / "truth.json", SerializeGroundTruth(s.truth)}});
      out << "scenario written to " << out_dir << " (" << s.truth.withheld.size()
          << " withheld relations)\n";
    } else if (eval->parsed()) {
      Metrics m = Evaluate(ParseReport(report_path), ParseGroundTruth(truth_path));
      std::string text = SerializeMetrics(m);
      if (metrics_path.empty()) {
        out << text;
      } else {
        WriteFilesAtomically({{metrics_path, text}});
      }
    } else if (dot->parsed()) {
      if (dot_ontology.empty() == dot_component.empty()) {
        return usage("export-dot needs exactly one of --ontology or --component");
      }
      Ontology o = dot_ontology.empty() ? ComponentToOntology(ParseComponent(dot_component))
                                        : ParseOntology(dot_ontology);
      std::string text = ExportDot(o);
      if (dot_out.empty()) {
        out << text;
      } else {
        WriteFilesAtomically({{dot_out, text}});
      }
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const InfeasibleSpec& e) {
    return usage(e.what());
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  } catch (const HomonymClusterCollision& e) {
    err << "error: " << e.what() << "\n";
    return kExitCollision;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace ontomerge

#endif  // ONTOMERGE_CLI_HPP_
