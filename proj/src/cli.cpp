#include "roc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "roc/alignment.hpp"
#include "roc/casebase.hpp"
#include "roc/dot.hpp"
#include "roc/dsl.hpp"
#include "roc/goals.hpp"
#include "roc/interchange.hpp"
#include "roc/net.hpp"
#include "roc/report.hpp"

namespace roc {

namespace {

namespace fs = std::filesystem;

struct UsageError : Error {
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string extension(const std::string& path) { return fs::path(path).extension().string(); }

ProcessModel load_process(const std::string& path) { return parse_process(read_text(path), path); }
GoalGraph load_goals(const std::string& path) { return parse_goals(read_text(path), path); }

SimilarityWeights parse_weights(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--weights expects four numbers g,p,s,c; got '" + text + "'");
    }
  }
  if (parts.size() != 4) throw UsageError("--weights expects four numbers g,p,s,c; got '" + text + "'");
  SimilarityWeights w{parts[0], parts[1], parts[2], parts[3]};
  try {
    w.normalized();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return w;
}

fs::path casebase_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ROC_CASEBASE"); env != nullptr && *env != '\0') return env;
  throw UsageError("no case base: pass --casebase DIR or set ROC_CASEBASE");
}

int report_violations(const std::string& file, const std::vector<Violation>& violations, std::ostream& out,
                      std::ostream& err) {
  if (violations.empty()) {
    out << file << ": ok\n";
    return kExitOk;
  }
  for (const auto& v : violations) err << file << ": " << to_string(v) << "\n";
  return kExitFindings;
}

int validate_file(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string ext = extension(path);
  std::string text = read_text(path);
  if (ext == ".proc") return report_violations(path, validate_net(parse_process_unchecked(text, path)), out, err);
  if (ext == ".goals") return report_violations(path, validate_graph(parse_goals_unchecked(text, path)), out, err);
  if (ext == ".case") return report_violations(path, validate_scenario(parse_scenario_json(text, path)), out, err);
  if (ext == ".problems") {
    parse_registry(text, path);
  } else if (ext == ".cmap") {
    parse_components(text, path);
  } else if (ext == ".corr") {
    parse_correspondence(text, path);
  } else if (ext == ".refine") {
    parse_refinement(text, path);
  } else {
    throw UsageError("cannot tell the kind of " + path + " from its extension");
  }
  out << path << ": ok\n";
  return kExitOk;
}

struct Options {
  std::vector<std::string> validate_files;

  std::string model;
  std::size_t bound = kDefaultBound;

  std::string as_is, to_be, corr, problems, format = "plain";

  std::string cmap;

  std::string goals;
  std::vector<std::string> to_be_models;
  std::string node;

  std::string tree;

  std::string casebase;
  std::string id, name, query;
  std::vector<std::string> meta;
  bool overwrite = false;
  std::size_t k = 1;
  std::string weights = "1,1,1,1";
  std::string vocabulary;

  std::string input, output;
};

int cmd_align(const Options& o, std::ostream& out) {
  ReportFormat format = parse_report_format(o.format);
  ProcessModel as_is = load_process(o.as_is);
  ProcessModel to_be = load_process(o.to_be);
  PlaceCorrespondence corr =
      o.corr.empty() ? identity_correspondence(as_is, to_be) : parse_correspondence(read_text(o.corr), o.corr);
  std::vector<Problem> registry;
  if (!o.problems.empty()) registry = parse_registry(read_text(o.problems), o.problems);
  AlignmentReport report = align(as_is, to_be, corr, registry);
  out << render_report(report, format, &as_is, &to_be);
  return report.uncovered.empty() ? kExitOk : kExitFindings;
}

Scenario build_query(const Options& o) {
  if (!o.query.empty()) return parse_scenario_json(read_text(o.query), o.query);
  if (o.goals.empty() && o.as_is.empty() && o.to_be.empty() && o.cmap.empty()) {
    throw UsageError("retrieve needs --query FILE or at least one of --goals, --asis, --tobe, --cmap");
  }
  Scenario q;
  q.id = "query";
  q.name = "query";
  q.to_be.kind = ModelKind::kToBe;
  if (!o.goals.empty()) q.goals = load_goals(o.goals);
  if (!o.as_is.empty()) q.as_is = load_process(o.as_is);
  if (!o.to_be.empty()) q.to_be = load_process(o.to_be);
  if (!o.cmap.empty()) q.component_map = parse_components(read_text(o.cmap), o.cmap);
  return q;
}

int cmd_retain(const Options& o, std::ostream& out) {
  ProcessModel as_is = load_process(o.as_is);
  ProcessModel to_be = load_process(o.to_be);
  PlaceCorrespondence corr =
      o.corr.empty() ? identity_correspondence(as_is, to_be) : parse_correspondence(read_text(o.corr), o.corr);
  std::vector<Problem> registry;
  if (!o.problems.empty()) registry = parse_registry(read_text(o.problems), o.problems);
  ComponentMap cmap;
  if (!o.cmap.empty()) cmap = parse_components(read_text(o.cmap), o.cmap);
  std::map<std::string, std::string> metadata;
  for (const auto& kv : o.meta) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--meta expects key=value; got '" + kv + "'");
    metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  Scenario s = make_scenario(o.id, o.name.empty() ? o.id : o.name, load_goals(o.goals), std::move(as_is),
                             std::move(to_be), std::move(corr), std::move(registry), std::move(cmap),
                             std::move(metadata));
  fs::path dir = casebase_dir(o.casebase);
  CaseBase cb = CaseBase::load(dir).retain(s, o.overwrite);
  out << "retained " << s.id << " (" << cb.size() << " scenario" << (cb.size() == 1 ? "" : "s") << " in "
      << dir.string() << ")\n";
  return kExitOk;
}

int cmd_reuse(const Options& o, std::ostream& out, std::ostream& err) {
  CaseBase cb = CaseBase::load(casebase_dir(o.casebase));
  const Scenario* s = cb.find(o.id);
  if (s == nullptr) throw UnknownNode("no scenario " + o.id + " in the case base");
  PlaceCorrespondence corr;
  if (o.corr.empty()) {
    for (const auto& p : s->to_be.places) corr.pairs[p.id] = p.id;
  } else {
    corr = parse_correspondence(read_text(o.corr), o.corr);
  }
  std::vector<Place> vocabulary;
  if (!o.vocabulary.empty()) vocabulary = load_process(o.vocabulary).places;
  ReuseDraft draft = reuse(*s, corr, vocabulary);
  for (const auto& id : draft.review_places) {
    const Place* p = draft.model.find_place(id);
    err << "review: place " << id << " (" << (p ? p->label : "") << ") has no correspondence\n";
  }
  err << "review: goal graph of " << s->id << " copied verbatim\n";
  std::string text = serialize(draft.model);
  if (o.output.empty()) {
    out << text;
  } else {
    write_text(o.output, text);
  }
  return kExitOk;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  std::string ext = extension(o.input);
  std::string dot;
  if (ext == ".proc") {
    dot = export_dot(load_process(o.input));
  } else if (ext == ".goals") {
    dot = export_dot(load_goals(o.input));
  } else {
    throw UsageError("export-dot takes a .proc or .goals file; got " + o.input);
  }
  if (o.output.empty()) {
    out << dot;
  } else {
    write_text(o.output, dot);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model, align and reuse strategy-labeled process nets", "roc"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check models and other inputs for well-formedness");
  validate->add_option("files", o.validate_files, "Input files")->required();

  auto* fulfil = app.add_subcommand("fulfil", "Check that a model can reach its exit");
  fulfil->add_option("model", o.model, ".proc file")->required();
  fulfil->add_option("--bound", o.bound, "Maximum explored markings")->check(CLI::PositiveNumber);

  auto* align_cmd = app.add_subcommand("align", "Compare an As-Is and a To-Be model");
  align_cmd->add_option("asis", o.as_is, "As-Is .proc")->required();
  align_cmd->add_option("tobe", o.to_be, "To-Be .proc")->required();
  align_cmd->add_option("--corr", o.corr, "Place correspondence .corr");
  align_cmd->add_option("--problems", o.problems, "Problem registry .problems");
  align_cmd->add_option("--format", o.format, "plain or structured");

  auto* components = app.add_subcommand("components", "Fragment to component table");
  components->add_option("tobe", o.to_be, "To-Be .proc")->required();
  components->add_option("map", o.cmap, "Component map .cmap")->required();
  components->add_option("--format", o.format, "plain or structured");

  auto* goals_check = app.add_subcommand("goals-check", "Check that ERP goals support enterprise goals");
  goals_check->add_option("goals", o.goals, ".goals file")->required();
  goals_check->add_option("tobe", o.to_be_models, "To-Be .proc files")->required();

  auto* trace_cmd = app.add_subcommand("trace", "Trace a goal up to needs and down to fragments");
  trace_cmd->add_option("goals", o.goals, ".goals file")->required();
  trace_cmd->add_option("node", o.node, "Node id")->required();

  auto* refine_check = app.add_subcommand("refine-check", "Validate a refinement tree against a model");
  refine_check->add_option("model", o.model, ".proc file")->required();
  refine_check->add_option("tree", o.tree, ".refine file")->required();

  auto* export_cmd = app.add_subcommand("export-dot", "Render a model or goal graph as DOT");
  export_cmd->add_option("input", o.input, ".proc or .goals file")->required();
  export_cmd->add_option("-o,--output", o.output, "Output file (default: standard output)");

  auto* case_cmd = app.add_subcommand("case", "Case base operations");
  case_cmd->require_subcommand(1);
  auto add_casebase = [&](CLI::App* cmd) {
    cmd->add_option("--casebase", o.casebase, "Case-base directory (default: $ROC_CASEBASE)");
  };

  auto* retain_cmd = case_cmd->add_subcommand("retain", "Store a completed scenario");
  retain_cmd->add_option("--id", o.id, "Scenario id")->required();
  retain_cmd->add_option("--name", o.name, "Scenario name");
  retain_cmd->add_option("--goals", o.goals, ".goals file")->required();
  retain_cmd->add_option("--asis", o.as_is, "As-Is .proc")->required();
  retain_cmd->add_option("--tobe", o.to_be, "To-Be .proc")->required();
  retain_cmd->add_option("--corr", o.corr, "Place correspondence .corr");
  retain_cmd->add_option("--problems", o.problems, "Problem registry .problems");
  retain_cmd->add_option("--cmap", o.cmap, "Component map .cmap");
  retain_cmd->add_option("--meta", o.meta, "Metadata key=value (repeatable)");
  retain_cmd->add_flag("--overwrite", o.overwrite, "Replace a scenario with the same id");
  add_casebase(retain_cmd);

  auto* retrieve_cmd = case_cmd->add_subcommand("retrieve", "Rank stored scenarios by similarity");
  retrieve_cmd->add_option("--query", o.query, "Query scenario .case");
  retrieve_cmd->add_option("--goals", o.goals, "Query .goals");
  retrieve_cmd->add_option("--asis", o.as_is, "Query As-Is .proc");
  retrieve_cmd->add_option("--tobe", o.to_be, "Query To-Be .proc");
  retrieve_cmd->add_option("--cmap", o.cmap, "Query component map .cmap");
  retrieve_cmd->add_option("--k", o.k, "Number of results")->check(CLI::PositiveNumber);
  retrieve_cmd->add_option("--weights", o.weights, "Weights g,p,s,c");
  add_casebase(retrieve_cmd);

  auto* reuse_cmd = case_cmd->add_subcommand("reuse", "Draft a To-Be model from a stored scenario");
  reuse_cmd->add_option("id", o.id, "Scenario id")->required();
  reuse_cmd->add_option("--corr", o.corr, "Retrieved place -> new place .corr");
  reuse_cmd->add_option("--vocabulary", o.vocabulary, ".proc whose places supply new labels");
  reuse_cmd->add_option("-o,--output", o.output, "Output file (default: standard output)");
  add_casebase(reuse_cmd);

  std::vector<const char*> argv{"roc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) {
      int worst = kExitOk;
      for (const auto& f : o.validate_files) {
        int code = kExitOk;
        try {
          code = validate_file(f, out, err);
        } catch (const ParseError& e) {
          err << e.what() << "\n";
          code = kExitUsage;
        } catch (const UsageError& e) {
          err << "error: " << e.what() << "\n";
          code = kExitUsage;
        }
        worst = std::max(worst, code);
      }
      return worst;
    }
    if (*fulfil) {
      FulfilmentReport r = check_fulfilment(load_process(o.model), o.bound);
      out << render_fulfilment(r);
      if (r.bound_hit) err << "warning: exploration stopped at " << o.bound << " markings; results are partial\n";
      return r.exit_reachable && r.dead_fragments.empty() ? kExitOk : kExitFindings;
    }
    if (*align_cmd) return cmd_align(o, out);
    if (*components) {
      ReportFormat format = parse_report_format(o.format);
      ComponentTable table = component_table(load_process(o.to_be), parse_components(read_text(o.cmap), o.cmap));
      out << render_components(table, format);
      return kExitOk;
    }
    if (*goals_check) {
      GoalGraph g = load_goals(o.goals);
      std::vector<ProcessModel> models;
      for (const auto& f : o.to_be_models) models.push_back(load_process(f));
      SupportReport r = support_check(g, models);
      out << render_support(r, g);
      return r.unsupported.empty() ? kExitOk : kExitFindings;
    }
    if (*trace_cmd) {
      out << render_trace(trace(load_goals(o.goals), o.node));
      return kExitOk;
    }
    if (*refine_check) {
      ProcessModel model = load_process(o.model);
      RefinementTree tree = parse_refinement(read_text(o.tree), o.tree);
      return report_violations(o.tree, validate_refinement(model, tree), out, err);
    }
    if (*export_cmd) return cmd_export_dot(o, out);
    if (*retain_cmd) return cmd_retain(o, out);
    if (*retrieve_cmd) {
      SimilarityWeights w = parse_weights(o.weights);
      Scenario q = build_query(o);
      CaseBase cb = CaseBase::load(casebase_dir(o.casebase));
      out << render_hits(retrieve(cb, q, o.k, w));
      return kExitOk;
    }
    if (*reuse_cmd) return cmd_reuse(o, out, err);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownFormat& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StorageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations) err << "error: " << to_string(v) << "\n";
    return kExitFindings;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFindings;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace roc
