#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "qapnet/builders.h"
#include "qapnet/contacts.h"
#include "qapnet/correlation.h"
#include "qapnet/csv.h"
#include "qapnet/descriptives.h"
#include "qapnet/error.h"
#include "qapnet/io.h"
#include "qapnet/panel.h"
#include "qapnet/qap.h"
#include "qapnet/selection.h"
#include "qapnet/synth.h"
#include "qapnet/terms.h"

namespace qapnet::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kDataDirEnv = "QAPNET_DATA_DIR";

class InputError : public Error {
 public:
  using Error::Error;
};

// Relative input paths resolve against $QAPNET_DATA_DIR when it is set.
fs::path ResolveInput(const std::string& path) {
  fs::path p(path);
  const char* dir = std::getenv(kDataDirEnv);
  if (p.is_relative() && dir != nullptr && *dir != '\0') return fs::path(dir) / p;
  return p;
}

std::ifstream OpenInput(const std::string& path) {
  const fs::path resolved = ResolveInput(path);
  std::ifstream in(resolved, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", resolved.string()));
  return in;
}

// Renders into memory first so a failed command never leaves half a file.
void WriteOutput(const std::string& path, std::ostream& stdout_stream,
                 const std::function<void(std::ostream&)>& render) {
  std::ostringstream buffer;
  render(buffer);
  if (path == "-") {
    stdout_stream << buffer.str();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError(fmt::format("cannot write '{}'", path));
  file << buffer.str();
  file.close();
  if (!file) throw InputError(fmt::format("failed writing '{}'", path));
}

void ReportIssues(const std::vector<RowIssue>& issues, const std::string& file,
                  std::ostream& err) {
  std::size_t errors = 0;
  for (const auto& issue : issues) {
    err << file << ": " << FormatIssue(issue) << '\n';
    if (issue.severity == Severity::kError) ++errors;
  }
  if (errors > 0) throw InputError(fmt::format("{}: {} row(s) rejected", file, errors));
}

// Effective configuration of a subcommand, echoed into output headers.
Provenance Describe(const CLI::App& command) {
  Provenance p = {{"qapnet", QAPNET_VERSION}, {"command", command.get_name()}};
  for (const CLI::Option* opt : command.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      value = fmt::format("{}", fmt::join(opt->results(), ";"));
    } else {
      value = opt->get_default_str();
    }
    p.emplace_back(name, value);
  }
  if (const char* dir = std::getenv(kDataDirEnv); dir != nullptr && *dir != '\0')
    p.emplace_back(kDataDirEnv, dir);
  return p;
}

NodePanel LoadPanel(const std::string& path, const std::vector<std::string>& categorical) {
  auto in = OpenInput(path);
  AttributeReadOptions options;
  options.categorical.insert(categorical.begin(), categorical.end());
  return ReadAttributes(in, options);
}

std::optional<std::vector<std::uint8_t>> LoadRespondents(const std::string& path,
                                                         const NodeSet& nodes) {
  if (path.empty()) return std::nullopt;
  auto in = OpenInput(path);
  return ReadRespondents(in, nodes);
}

// Parses repeated `name=path` arguments.
std::vector<std::pair<std::string, std::string>> NamedPaths(
    const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      throw InputError(fmt::format("expected name=path, got '{}'", s));
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  return out;
}

void LoadNetworks(const std::vector<std::string>& specs, const std::string& respondents_path,
                  Dataset& data, std::ostream& err) {
  const auto respondents = LoadRespondents(respondents_path, data.nodes());
  for (const auto& [name, path] : NamedPaths(specs)) {
    auto in = OpenInput(path);
    auto result = ReadNominations(in, data.nodes(), respondents);
    ReportIssues(result.issues, path, err);
    data.networks[name] = std::move(result.network);
  }
}

void LoadDyadic(const std::string& path, Dataset& data) {
  auto in = OpenInput(path);
  for (auto& [name, m] : ReadDyadColumns(in, data.nodes())) data.dyadic[name] = std::move(m);
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string contacts;
  std::string attributes;
  std::vector<std::string> categorical;
  std::int64_t merge_gap = kDefaultMergeGap;
  bool no_merge = false;
  bool sum_subdurations = false;
  double window = 0;
  std::string group_rule = "component";
  std::string out = "durations.csv";
  std::string exposures = "exposures.csv";
};

void AddIngest(CLI::App& app, IngestArgs& a) {
  auto* cmd = app.add_subcommand("ingest", "Contact events to dyadic durations and exposures");
  cmd->add_option("--contacts", a.contacts, "Contact CSV (sample_id,node_a,node_b,t_start,t_end)")
      ->required();
  cmd->add_option("--attributes", a.attributes,
                  "Attribute CSV fixing the node set; contacts with unknown nodes are rejected");
  cmd->add_option("--categorical", a.categorical, "Attribute columns to read as categorical")
      ->delimiter(',');
  cmd->add_option("--merge-gap", a.merge_gap, "Fuse events of a dyad separated by <= this many seconds")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-merge", a.no_merge, "Keep raw contact events");
  cmd->add_flag("--sum-subdurations", a.sum_subdurations,
                "Count only observed seconds inside merged events");
  cmd->add_option("--window", a.window,
                  "Normalization window in seconds (default: each sample's first-to-last contact span)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--group-rule", a.group_rule, "Group co-presence rule")
      ->capture_default_str()
      ->check(CLI::IsMember({"component", "clique"}));
  cmd->add_option("--out", a.out, "Durations CSV")->capture_default_str();
  cmd->add_option("--exposures", a.exposures, "Exposure report CSV")->capture_default_str();
}

void RunIngest(const CLI::App& cmd, const IngestArgs& a, std::ostream& out, std::ostream& err) {
  NodeSet nodes;
  const bool fixed_nodes = !a.attributes.empty();
  if (fixed_nodes) nodes = LoadPanel(a.attributes, a.categorical).nodes();

  auto in = OpenInput(a.contacts);
  auto parsed = ParseContacts(in, nodes, {.add_unknown_nodes = !fixed_nodes});
  ReportIssues(parsed.issues, a.contacts, err);

  const auto& raw = parsed.events;
  const std::vector<ContactEvent> events = a.no_merge ? raw : MergeEvents(raw, a.merge_gap);
  const DurationMode mode = a.sum_subdurations ? DurationMode::kCovered : DurationMode::kSpan;
  DyadicMatrix seconds = AggregateDurations(events, nodes.size(), mode);
  seconds.set_label("seconds");

  const std::size_t samples = nodes.samples().size();
  std::vector<double> windows(samples, a.window);
  if (a.window <= 0) {
    const auto spans = SampleWindows(raw, samples);
    for (std::size_t s = 0; s < samples; ++s) windows[s] = static_cast<double>(spans[s]);
  }
  DyadicMatrix per_hour = NormalizePerHour(seconds, nodes.groups(), windows);
  per_hour.set_label("seconds_per_hour");

  const GroupRule rule = a.group_rule == "clique" ? GroupRule::kClique : GroupRule::kComponent;
  const auto copresence = ClassifyCopresence(events, nodes.size(), rule);

  Provenance provenance = Describe(cmd);
  for (std::size_t s = 0; s < samples; ++s)
    provenance.emplace_back(fmt::format("window[{}]", nodes.samples()[s]),
                            fmt::format("{}", windows[s]));
  WriteOutput(a.out, out, [&](std::ostream& o) {
    WriteDyadColumns(o, nodes, {&seconds, &per_hour}, provenance);
  });
  WriteOutput(a.exposures, out, [&](std::ostream& o) {
    WriteProvenance(o, provenance);
    WriteExposureReport(o, copresence.exposures, nodes);
  });

  std::size_t dyads = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (seconds.value(i, j) > 0) ++dyads;
  err << fmt::format("ingest: {} nodes in {} sample(s), {} contact rows, {} events{}, {} dyads "
                     "with contact\n",
                     nodes.size(), samples, raw.size(), events.size(),
                     a.no_merge ? " (unmerged)" : fmt::format(" after merging at {} s", a.merge_gap),
                     dyads);
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string spec;
  std::string durations;
  std::string attributes;
  std::vector<std::string> categorical;
  std::vector<std::string> nominations;
  std::string respondents;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  std::string per_sample;
  std::string transform;
  unsigned threads = 0;
  std::string out = "-";
  std::string json;
};

struct FitOptions {
  CLI::Option* permutations = nullptr;
  CLI::Option* seed = nullptr;
};

FitOptions AddFit(CLI::App& app, FitArgs& a) {
  auto* cmd = app.add_subcommand("fit", "Multi-group MRQAP regression");
  cmd->add_option("--spec", a.spec, "Model spec JSON")->required();
  cmd->add_option("--durations", a.durations, "Dyad CSV holding the dependent column")->required();
  cmd->add_option("--attributes", a.attributes, "Attribute CSV")->required();
  cmd->add_option("--categorical", a.categorical, "Attribute columns to read as categorical")
      ->delimiter(',');
  cmd->add_option("--nominations", a.nominations, "Nomination network as name=path (repeatable)");
  cmd->add_option("--respondents", a.respondents,
                  "Respondent list; without it every node counts as having answered");
  FitOptions o;
  o.permutations = cmd->add_option("--permutations", a.permutations,
                                   "Y-permutations (overrides the model file)")
                       ->check(CLI::PositiveNumber);
  o.seed = cmd->add_option("--seed", a.seed, "Master seed (overrides the model file)");
  cmd->add_option("--per-sample", a.per_sample, "Fit a single sample's block");
  cmd->add_option("--transform", a.transform, "none | log | log:<offset> (overrides the model file)");
  cmd->add_option("--threads", a.threads, "Worker threads; 0 = hardware concurrency")
      ->capture_default_str();
  cmd->add_option("--out", a.out, "Results CSV ('-' for stdout)")->capture_default_str();
  cmd->add_option("--json", a.json, "Also write results as JSON");
  return o;
}

void RunFit(const CLI::App& cmd, const FitArgs& a, const FitOptions& o, std::ostream& out,
            std::ostream& err) {
  QapModelSpec spec;
  {
    auto in = OpenInput(a.spec);
    spec = ReadModelSpec(in);
  }
  if (o.permutations->count() > 0) spec.permutations = a.permutations;
  if (o.seed->count() > 0) spec.seed = a.seed;
  if (!a.transform.empty()) spec.transform = Transform::Parse(a.transform);

  Dataset data;
  data.panel = LoadPanel(a.attributes, a.categorical);
  LoadNetworks(a.nominations, a.respondents, data, err);
  LoadDyadic(a.durations, data);

  ModelFitOptions options;
  options.threads = a.threads;
  if (!a.per_sample.empty()) {
    data = data.RestrictToSample(a.per_sample);
    options.drop_constant_terms = true;
  }
  const QapFit fit = FitModel(spec, data, options);

  Provenance provenance = Describe(cmd);
  provenance.emplace_back("dependent", spec.dependent);
  provenance.emplace_back("effective_permutations", std::to_string(spec.permutations));
  provenance.emplace_back("effective_seed", std::to_string(spec.seed));
  provenance.emplace_back("effective_transform", spec.transform.ToString());
  WriteOutput(a.out, out, [&](std::ostream& s) { WriteResultsCsv(s, fit, provenance); });
  if (!a.json.empty())
    WriteOutput(a.json, out, [&](std::ostream& s) { WriteResultsJson(s, fit, provenance); });
  for (const auto& t : fit.terms)
    if (t.dropped) err << fmt::format("fit: '{}' is constant here and was dropped\n", t.label);
  if (fit.failed_replicates > 0)
    err << fmt::format("fit: {} of {} replicates failed and were excluded\n",
                       fit.failed_replicates, fit.permutations);
}

// ---------------------------------------------------------------- descriptives

struct DescriptivesArgs {
  std::string attributes;
  std::string durations;
  std::string dependent = "seconds_per_hour";
  std::vector<std::string> categorical;
  std::vector<std::string> nominations;
  std::string friends;
  std::string respondents;
  std::string exposures;
  std::vector<std::string> tests;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  std::string out = "-";
};

void AddDescriptives(CLI::App& app, DescriptivesArgs& a) {
  auto* cmd = app.add_subcommand("descriptives", "Node-level aggregates and correlation table");
  cmd->add_option("--attributes", a.attributes, "Attribute CSV")->required();
  cmd->add_option("--durations", a.durations, "Dyad CSV")->required();
  cmd->add_option("--dependent", a.dependent, "Duration column to aggregate")
      ->capture_default_str();
  cmd->add_option("--categorical", a.categorical, "Attribute columns to read as categorical")
      ->delimiter(',');
  cmd->add_option("--nominations", a.nominations, "Nomination network as name=path (repeatable)");
  cmd->add_option("--friends", a.friends, "Network used for friend aggregates (default: the first)");
  cmd->add_option("--respondents", a.respondents, "Respondent list");
  cmd->add_option("--exposures", a.exposures, "Exposure report from `ingest`");
  cmd->add_option("--test", a.tests,
                  "Node-permutation correlation test x:y (repeatable), e.g. depression:ratio_dyadic");
  cmd->add_option("--permutations", a.permutations, "Permutations per test")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "Seed for the tests")->capture_default_str();
  cmd->add_option("--out", a.out, "Output CSV ('-' for stdout)")->capture_default_str();
}

void RunDescriptives(const CLI::App& cmd, const DescriptivesArgs& a, std::ostream& out,
                     std::ostream& err) {
  Dataset data;
  data.panel = LoadPanel(a.attributes, a.categorical);
  LoadNetworks(a.nominations, a.respondents, data, err);
  LoadDyadic(a.durations, data);
  auto dep = data.dyadic.find(a.dependent);
  if (dep == data.dyadic.end())
    throw InputError(fmt::format("'{}' has no column '{}'", a.durations, a.dependent));

  const NominationNetwork* friends = nullptr;
  if (!a.friends.empty()) {
    auto it = data.networks.find(a.friends);
    if (it == data.networks.end())
      throw InputError(fmt::format("no nomination network named '{}'", a.friends));
    friends = &it->second;
  } else if (!a.nominations.empty()) {
    friends = &data.networks.at(NamedPaths(a.nominations).front().first);
  }
  std::vector<NodeExposure> exposures;
  if (!a.exposures.empty()) {
    auto in = OpenInput(a.exposures);
    exposures = ReadExposureReport(in, data.nodes());
  }

  std::vector<NodeVariable> vars = AttributeVariables(data.panel);
  for (auto& v : InteractionAggregates(dep->second, data.nodes().groups(), friends, exposures))
    vars.push_back(std::move(v));
  const CorrelationTable table = BuildCorrelationTable(vars);

  std::vector<std::string> rows;
  for (const auto& test : a.tests) {
    const auto colon = test.find(':');
    if (colon == std::string::npos) throw InputError(fmt::format("expected x:y, got '{}'", test));
    auto find = [&](const std::string& name) -> const NodeValues& {
      for (const auto& v : vars)
        if (v.name == name) return v.values;
      throw InputError(fmt::format("unknown variable '{}'", name));
    };
    const std::string x = test.substr(0, colon), y = test.substr(colon + 1);
    const auto r = NodePermutationCorrelation(find(x), find(y), a.permutations, a.seed);
    rows.push_back(fmt::format("{},{},{},{:.6f},{:.6g},{:.6g},{},{}", x, y, r.n, r.r, r.p.one,
                               r.p.two, r.permutations, a.seed));
  }

  WriteOutput(a.out, out, [&](std::ostream& s) {
    WriteProvenance(s, Describe(cmd));
    WriteCorrelationTable(s, table);
    if (!rows.empty()) {
      s << "\nvar_a,var_b,n,r,p_one,p_two,permutations,seed\n";
      for (const auto& row : rows) s << row << '\n';
    }
  });
}

// ---------------------------------------------------------------- selection

struct SelectionArgs {
  std::string coeffs;
  std::string range = "0:36";
  std::string out = "-";
  std::string ppm;
  int ppm_scale = 8;
};

void AddSelection(CLI::App& app, SelectionArgs& a) {
  auto* cmd = app.add_subcommand("selection", "Fitted seconds-per-hour grid over score pairs");
  cmd->add_option("--coeffs", a.coeffs, "b0,b1,b2,b3: intercept, mean, similarity, interaction")
      ->required();
  cmd->add_option("--range", a.range, "Score range lo:hi")->capture_default_str();
  cmd->add_option("--out", a.out, "Grid CSV ('-' for stdout)")->capture_default_str();
  cmd->add_option("--ppm", a.ppm, "Also write a PPM raster");
  cmd->add_option("--ppm-scale", a.ppm_scale, "Pixels per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void RunSelection(const SelectionArgs& a, std::ostream& out) {
  const auto coeffs = SelectionCoefficients::Parse(a.coeffs);
  const auto colon = a.range.find(':');
  std::optional<std::int64_t> lo, hi;
  if (colon != std::string::npos) {
    lo = csv::ParseInt(a.range.substr(0, colon));
    hi = csv::ParseInt(a.range.substr(colon + 1));
  }
  if (!lo || !hi) throw InputError(fmt::format("expected --range lo:hi, got '{}'", a.range));
  const SelectionGrid grid(static_cast<int>(*lo), static_cast<int>(*hi), coeffs);
  WriteOutput(a.out, out, [&](std::ostream& s) { WriteSelectionCsv(s, grid); });
  if (!a.ppm.empty())
    WriteOutput(a.ppm, out, [&](std::ostream& s) { WriteSelectionPpm(s, grid, a.ppm_scale); });
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string out_dir;
  std::uint64_t seed = 1;
  std::vector<std::size_t> samples = {30, 30};
  double sigma = 1.0;
  double target_r2 = 0;
  double offset = 0;
  double density = 0.05;
  double reciprocity = 0.5;
  double nonresponse = 0;
  bool no_big_five = false;
  bool no_fragment = false;
  std::int64_t window = 36 * 3600;
  std::size_t permutations = kDefaultPermutations;
};

void AddSynth(CLI::App& app, SynthArgs& a) {
  auto* cmd = app.add_subcommand("synth", "Synthetic dataset with planted coefficients");
  cmd->add_option("--out-dir", a.out_dir, "Directory for the generated files")->required();
  cmd->add_option("--seed", a.seed, "Seed")->capture_default_str();
  cmd->add_option("--samples", a.samples, "Nodes per sample")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--sigma", a.sigma, "Noise SD on the log scale")->capture_default_str();
  cmd->add_option("--target-r2", a.target_r2, "Calibrate sigma to this model R^2 instead")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--offset", a.offset, "Durations are exp(y) - offset, floored at 0")
      ->capture_default_str();
  cmd->add_option("--density", a.density, "Probability that a within-sample pair has a tie")
      ->capture_default_str();
  cmd->add_option("--reciprocity", a.reciprocity, "Probability that a tie is mutual")
      ->capture_default_str();
  cmd->add_option("--nonresponse", a.nonresponse, "Probability that a node skipped the survey")
      ->capture_default_str();
  cmd->add_flag("--no-big-five", a.no_big_five, "Omit Big Five trait columns");
  cmd->add_flag("--no-fragment", a.no_fragment, "One contact event per dyad");
  cmd->add_option("--window", a.window, "Observation window in seconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--permutations", a.permutations, "Permutations written to model.json")
      ->capture_default_str();
}

void RunSynth(const CLI::App& cmd, const SynthArgs& a, std::ostream& err) {
  SynthConfig cfg;
  cfg.sample_sizes = a.samples;
  cfg.seed = a.seed;
  cfg.sigma = a.sigma;
  cfg.offset = a.offset;
  cfg.nomination_density = a.density;
  cfg.reciprocity = a.reciprocity;
  cfg.nonresponse = a.nonresponse;
  cfg.big_five = !a.no_big_five;
  cfg.terms = PublishedModelTerms(cfg.sample_sizes.size());
  if (a.target_r2 > 0) cfg.sigma = CalibrateSigma(cfg, a.target_r2);
  const SynthDataset d = GenerateDataset(cfg);
  const NodeSet& nodes = d.data.nodes();

  DyadicMatrix seconds = PerHourToSeconds(d.durations, static_cast<double>(a.window));
  ContactStreamOptions stream;
  stream.fragment = !a.no_fragment;
  stream.window = a.window;
  stream.seed = a.seed;
  const auto events = GenerateContactStream(seconds, nodes.groups(), stream);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  auto path = [&](const char* name) { return (dir / name).string(); };
  Provenance provenance = Describe(cmd);
  provenance.emplace_back("effective_sigma", fmt::format("{}", cfg.sigma));
  std::ostringstream sink;

  WriteOutput(path("contacts.csv"), sink, [&](std::ostream& s) { WriteContacts(s, events, nodes); });
  WriteOutput(path("attributes.csv"), sink,
              [&](std::ostream& s) { WriteAttributes(s, d.data.panel); });
  const auto& friendship = d.data.networks.at("friendship");
  WriteOutput(path("nominations.csv"), sink,
              [&](std::ostream& s) { WriteNominations(s, friendship, nodes); });
  WriteOutput(path("respondents.csv"), sink,
              [&](std::ostream& s) { WriteRespondents(s, friendship, nodes); });
  DyadicMatrix per_hour = d.durations;
  per_hour.set_label("seconds_per_hour");
  WriteOutput(path("durations.csv"), sink, [&](std::ostream& s) {
    WriteDyadColumns(s, nodes, {&seconds, &per_hour}, provenance);
  });
  QapModelSpec spec = PlantedModelSpec(cfg);
  spec.permutations = a.permutations;
  WriteOutput(path("model.json"), sink, [&](std::ostream& s) { WriteModelSpec(s, spec); });
  WriteOutput(path("truth.csv"), sink, [&](std::ostream& s) {
    WriteProvenance(s, provenance);
    s << "term,expression,beta\n";
    s << fmt::format("(intercept),,{}\n", cfg.intercept);
    for (const auto& t : cfg.terms)
      s << fmt::format("{},{},{}\n", csv::Escape(t.label), csv::Escape(t.expression), t.beta);
  });
  err << fmt::format("synth: {} nodes, {} contact events, sigma {:.4g}, files in {}\n",
                     nodes.size(), events.size(), cfg.sigma, a.out_dir);
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("qapnet: contact durations, network covariates and multi-group MRQAP", "qapnet");
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.set_version_flag("--version", QAPNET_VERSION);
  app.require_subcommand(1);

  IngestArgs ingest;
  FitArgs fit;
  DescriptivesArgs descriptives;
  SelectionArgs selection;
  SynthArgs synth;
  AddIngest(app, ingest);
  const FitOptions fit_options = AddFit(app, fit);
  AddDescriptives(app, descriptives);
  AddSelection(app, selection);
  AddSynth(app, synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (const auto* cmd = app.get_subcommand("ingest"); cmd->parsed()) {
      RunIngest(*cmd, ingest, out, err);
    } else if (cmd = app.get_subcommand("fit"); cmd->parsed()) {
      RunFit(*cmd, fit, fit_options, out, err);
    } else if (cmd = app.get_subcommand("descriptives"); cmd->parsed()) {
      RunDescriptives(*cmd, descriptives, out, err);
    } else if (cmd = app.get_subcommand("selection"); cmd->parsed()) {
      RunSelection(selection, out);
    } else if (cmd = app.get_subcommand("synth"); cmd->parsed()) {
      RunSynth(*cmd, synth, err);
    }
  } catch (const RankDeficientError& e) {
    err << "error: " << e.what() << '\n';
    return kEstimationError;
  } catch (const ReplicateFailureError& e) {
    err << "error: " << e.what() << '\n';
    return kEstimationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}

}  // namespace qapnet::cli
