#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tame/tame.hpp"

namespace {

using namespace tame;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct Config {
  std::string presentation;
  std::string presentation_file;
  std::vector<std::string> subgroup_words;
  std::string subgroup_file;
  std::string corpus;
  std::optional<int> removal_radius;
  std::string radii;
  std::optional<std::size_t> window;
  std::optional<int> margin;
  std::string engine = "auto";
  std::string format;
  std::size_t max_cosets = ToddCoxeterLimits{}.max_cosets;
  std::string out;
  std::string what;
};

void add_options(CLI::App* app, Config& cfg) {
  app->add_option("--presentation", cfg.presentation,
                  "presentation text, e.g. \"<a,b|[a,b]>\"");
  app->add_option("--presentation-file", cfg.presentation_file,
                  "file holding the presentation text");
  app->add_option("--subgroup-words", cfg.subgroup_words,
                  "comma-separated subgroup generators (repeatable)");
  app->add_option("--subgroup-file", cfg.subgroup_file,
                  "file with one subgroup generator per line");
  app->add_option("--corpus", cfg.corpus, "built-in corpus case");
  app->add_option("-c,--removal-radius", cfg.removal_radius,
                  "radius of the removed ball around the basepoint")
      ->check(CLI::NonNegativeNumber);
  app->add_option("-r,--radii", cfg.radii,
                  "truncation radii: a:b, a comma list, or one value");
  app->add_option("--window", cfg.window, "sweep steps used by the verdict")
      ->check(CLI::PositiveNumber);
  app->add_option("--margin", cfg.margin,
                  "depth margin excluded from interior cycles")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--engine", cfg.engine,
                  "auto, free, abelian, freeproduct or todd-coxeter");
  app->add_option("--format", cfg.format, "json, dot or text")
      ->check(CLI::IsMember({"json", "dot", "text"}));
  app->add_option("--max-cosets", cfg.max_cosets,
                  "coset limit for Todd-Coxeter enumeration")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", cfg.out, "write output to this file");
}

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read " + path);
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int to_int(std::string const& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (std::exception const&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw Error("bad radius '" + s + "'");
  }
  return v;
}

std::vector<int> parse_radii(std::string const& text) {
  std::vector<int> out;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    int const a = to_int(text.substr(0, colon));
    int const b = to_int(text.substr(colon + 1));
    if (b < a) {
      throw Error("empty radius range " + text);
    }
    for (int r = a; r <= b; ++r) {
      out.push_back(r);
    }
    return out;
  }
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    out.push_back(to_int(part));
  }
  if (out.empty()) {
    throw Error("no radii given");
  }
  return out;
}

std::optional<std::vector<int>> radii_of(Config const& cfg) {
  if (cfg.radii.empty()) {
    return std::nullopt;
  }
  return parse_radii(cfg.radii);
}

std::optional<std::vector<Word>> subgroup_of(
    Config const& cfg, GroupPresentation const& p) {
  if (cfg.subgroup_words.empty() && cfg.subgroup_file.empty()) {
    return std::nullopt;
  }
  std::vector<Word> out;
  for (auto const& w : cfg.subgroup_words) {
    for (Word& x : parse_word_list(w, p.generators)) {
      out.push_back(std::move(x));
    }
  }
  if (!cfg.subgroup_file.empty()) {
    for (Word& x :
         parse_subgroup_file(read_file(cfg.subgroup_file), p.generators)) {
      out.push_back(std::move(x));
    }
  }
  return out;
}

BallSourceOptions limits_of(Config const& cfg) {
  BallSourceOptions o;
  o.limits.max_cosets = cfg.max_cosets;
  return o;
}

GroupPresentation custom_presentation(Config const& cfg) {
  if (!cfg.presentation.empty() && !cfg.presentation_file.empty()) {
    throw Error("give either --presentation or --presentation-file");
  }
  if (!cfg.presentation.empty()) {
    return parse_presentation(cfg.presentation);
  }
  if (!cfg.presentation_file.empty()) {
    return parse_presentation(read_file(cfg.presentation_file));
  }
  throw Error("no input: give --corpus, --presentation or --presentation-file");
}

/// Group and subgroup for a run: a corpus case with overrides, or a custom
/// presentation resolved with the requested engine.
CaseSetup setup_of(Config const& cfg, EngineChoice custom_default) {
  if (!cfg.corpus.empty()) {
    if (!cfg.presentation.empty() || !cfg.presentation_file.empty()) {
      throw Error("--corpus cannot be combined with a presentation");
    }
    CorpusCase const& c = corpus_case(cfg.corpus);
    CorpusRun run;
    run.subgroup_words =
        subgroup_of(cfg, parse_presentation(c.presentation));
    return setup_case(c, run);
  }
  GroupPresentation p = custom_presentation(cfg);
  EngineChoice choice = parse_engine_choice(cfg.engine);
  if (choice == EngineChoice::Auto) {
    choice = custom_default;
  }
  CaseSetup s;
  ToddCoxeterLimits limits;
  limits.max_cosets = cfg.max_cosets;
  auto words = subgroup_of(cfg, p);
  s.group = resolve_engine(std::move(p), choice, limits);
  if (words) {
    s.subgroup.generators = std::move(*words);
  }
  return s;
}

void emit(Config const& cfg, std::string const& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + cfg.out);
  }
  out << text;
  if (!out) {
    throw Error("write to " + cfg.out + " failed");
  }
}

int cmd_analyze(Config const& cfg) {
  std::string const format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "dot") {
    throw Error("dot output is only available for export");
  }
  CaseSetup const s = setup_of(cfg, EngineChoice::Auto);
  RemovalSpec rm{0, 1};
  std::vector<int> radii{4, 5, 6, 7, 8};
  int margin = 2;
  std::size_t window = 3;
  std::optional<bool> agreement;
  std::optional<Expectation> expectation;
  if (!cfg.corpus.empty()) {
    CorpusCase const& c = corpus_case(cfg.corpus);
    rm = c.removal;
    radii = c.radii;
    margin = c.margin;
    window = c.window;
    expectation = c.expectation;
  }
  rm.radius = cfg.removal_radius.value_or(rm.radius);
  radii = radii_of(cfg).value_or(radii);
  margin = cfg.margin.value_or(margin);
  window = cfg.window.value_or(window);

  SweepReport const rep = radius_sweep(
      make_ball_source(s.group, s.subgroup, limits_of(cfg)), rm, radii,
      margin);
  Verdict const v = classify_growth(rep, window);
  if (expectation) {
    agreement = agrees(*expectation, v);
  }
  if (format == "text") {
    emit(cfg, v.text() + "\n");
  } else {
    emit(cfg, sweep_json(rep, v, cfg.corpus.empty() ? "custom" : cfg.corpus,
                         agreement)
                      .dump(2) +
                  "\n");
  }
  return v.kind == Verdict::Kind::Inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_decompose(Config const& cfg) {
  std::string const format = cfg.format.empty() ? "text" : cfg.format;
  if (format == "dot") {
    throw Error("dot output is only available for export");
  }
  if (cfg.corpus.empty()) {
    EngineChoice const choice = parse_engine_choice(cfg.engine);
    if (choice != EngineChoice::Auto && choice != EngineChoice::FreeProduct) {
      throw Error("decompose needs the freeproduct engine");
    }
  }
  CaseSetup const s = setup_of(cfg, EngineChoice::FreeProduct);
  std::vector<int> radii{4};
  std::optional<bool> agreement;
  std::optional<Expectation> expectation;
  if (!cfg.corpus.empty()) {
    CorpusCase const& c = corpus_case(cfg.corpus);
    if (!c.decomposition_radii.empty()) {
      radii = c.decomposition_radii;
    }
    expectation = c.expectation;
  }
  radii = radii_of(cfg).value_or(radii);
  auto const reports = decompose_case(s, radii, limits_of(cfg));
  if (expectation) {
    agreement = agrees(*expectation, reports);
  }
  if (format == "text") {
    std::string text;
    for (auto const& r : reports) {
      text += decomposition_text(r);
    }
    emit(cfg, text);
  } else {
    emit(cfg, decomposition_json(reports,
                                 cfg.corpus.empty() ? "custom" : cfg.corpus,
                                 agreement)
                      .dump(2) +
                  "\n");
  }
  return kExitOk;
}

int cmd_export(Config const& cfg) {
  bool const complex = cfg.what == "complex";
  std::string const format =
      cfg.format.empty() ? (complex ? "json" : "dot") : cfg.format;
  if (format == "text") {
    throw Error("export writes dot or json");
  }
  CaseSetup const s = setup_of(cfg, EngineChoice::Auto);
  int radius = 3;
  if (auto radii = radii_of(cfg)) {
    radius = radii->back();
  }
  BallSource const src = make_ball_source(s.group, s.subgroup, limits_of(cfg));
  CosetGraph const g = src.ball(radius);
  if (!complex) {
    emit(cfg, format == "dot" ? graph_dot(g) : graph_json(g).dump(2) + "\n");
    return kExitOk;
  }
  TwoComplex const c = attach_relator_cells(g, src.relators);
  emit(cfg, format == "dot" ? graph_dot(g, c.face_count())
                            : complex_json(c).dump(2) + "\n");
  return kExitOk;
}

int cmd_corpus(Config const& cfg) {
  std::string text;
  for (auto const& c : corpus()) {
    text += c.name + ": expected " + to_string(c.expectation) + ", " +
            c.expected_verdict + "; " + c.citation + "\n";
  }
  emit(cfg, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale tameness analysis of coset 2-complexes"};
  app.require_subcommand(1);
  Config cfg;
  auto* analyze = app.add_subcommand(
      "analyze", "sweep truncation radii and classify complement growth");
  auto* decompose = app.add_subcommand(
      "decompose", "split a free product complex into factor components");
  auto* exporter =
      app.add_subcommand("export", "write a coset graph or 2-complex");
  auto* list = app.add_subcommand("corpus", "list the built-in cases");
  add_options(analyze, cfg);
  add_options(decompose, cfg);
  add_options(exporter, cfg);
  add_options(list, cfg);
  exporter->add_option("what", cfg.what, "graph or complex")
      ->required()
      ->check(CLI::IsMember({"graph", "complex"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (decompose->parsed()) return cmd_decompose(cfg);
    if (exporter->parsed()) return cmd_export(cfg);
    return cmd_corpus(cfg);
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (MembershipUnknown const& e) {
    std::cerr << "membership unknown: " << e.what() << "\n";
  } catch (LimitExceeded const& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
  } catch (MixedRelator const& e) {
    std::cerr << "mixed relator: " << e.what() << "\n";
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
