#include "rfl/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/chrono.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "rfl/experiments.hpp"
#include "rfl/svg.hpp"
#include "rfl/tree_io.hpp"
#include "rfl/verify.hpp"

namespace rfl::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::uint64_t> schedule = default_schedule().ratios();
  std::optional<int> depth;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::size_t threads = 0;
  std::string out = "rfl-out";
  std::vector<std::string> formats = {"csv", "json"};
  std::size_t trials = 100;
  std::size_t points = 1050;
  std::size_t samples = 2000;
  std::size_t growth_samples = 10000;
  double c0 = 0.01;
  std::string tree_file;

  bool wants(const std::string& f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }

  json to_json() const {
    return {{"schedule", schedule}, {"depth", depth ? json(*depth) : json(nullptr)},
            {"seed", seed},         {"tol", tol},
            {"out", out},           {"format", formats},
            {"trials", trials},     {"points", points},
            {"samples", samples},   {"growth_samples", growth_samples},
            {"c0", c0}};
  }
};

void load_config_file(const std::string& path, RunConfig& c) {
  std::ifstream f(path);
  if (!f) throw ConfigError(fmt::format("cannot read config file {}", path));
  json j;
  try {
    f >> j;
    if (j.contains("schedule")) c.schedule = j["schedule"].get<std::vector<std::uint64_t>>();
    if (j.contains("depth")) c.depth = j["depth"].get<int>();
    c.seed = j.value("seed", c.seed);
    c.tol = j.value("tol", c.tol);
    c.threads = j.value("threads", c.threads);
    c.out = j.value("out", c.out);
    if (j.contains("format")) c.formats = j["format"].get<std::vector<std::string>>();
    c.trials = j.value("trials", c.trials);
    c.points = j.value("points", c.points);
    c.samples = j.value("samples", c.samples);
    c.growth_samples = j.value("growth_samples", c.growth_samples);
    c.c0 = j.value("c0", c.c0);
    c.tree_file = j.value("tree", c.tree_file);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config file {}: {}", path, e.what()));
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::uint64_t> parse_ratios(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::string body = s;
  std::erase_if(body, [](char ch) { return ch == '[' || ch == ']' || ch == ' '; });
  for (const auto& part : split(body, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.front() == '-') throw ConfigError(fmt::format("schedule entry '{}' is not a positive integer", part));
    out.push_back(v);
  }
  return out;
}

Point parse_point(const std::string& s) {
  const auto parts = split(s, ',');
  try {
    if (parts.size() == 1) return {std::stod(parts[0]), 0.0};
    if (parts.size() == 2) return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("cannot parse point '{}' (expected re,im)", s));
}

struct Context {
  RunConfig config;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;

  RadiiSchedule schedule() const { return RadiiSchedule::from_ratios(config.schedule); }

  int depth() const { return config.depth.value_or(static_cast<int>(config.schedule.size())); }

  ConstructionTree tree() const {
    if (!config.tree_file.empty()) {
      std::ifstream f(config.tree_file);
      if (!f) throw ConfigError(fmt::format("cannot read tree file {}", config.tree_file));
      return import_tree(f);
    }
    return ConstructionTree::build(schedule(), depth());
  }

  void write_meta(const fs::path& artifact) const {
    json meta;
    meta["artifact"] = artifact.filename().string();
    meta["command"] = argv;
    meta["config"] = config.to_json();
    meta["threads"] = config.threads;
    meta["tool_version"] = "0.1.0";
    meta["created_utc"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
    std::ofstream f(artifact.string() + ".meta.json");
    f << meta.dump(2) << "\n";
  }

  void emit(const ExperimentReport& rep) const {
    const auto paths = write_report(rep, config.out, config.wants("csv"), config.wants("json"));
    for (const auto& p : paths) {
      write_meta(p);
      fmt::print(out, "wrote {}\n", p.string());
    }
    fmt::print(out, "{}: {}\n", rep.name, rep.pass ? "pass" : "FAIL");
  }
};

int cmd_build(Context& ctx) {
  const ConstructionTree tree = ctx.tree();
  for (int n = 0; n <= tree.depth(); ++n) fmt::print(ctx.out, "level {}: {} nodes\n", n, tree.count(n));
  const auto report = verify_separation(tree);
  fmt::print(ctx.out, "{}", summarize(report));
  fs::create_directories(ctx.config.out);
  const fs::path path = fs::path(ctx.config.out) / "tree.json";
  {
    std::ofstream f(path, std::ios::binary);
    export_tree(tree, f);
  }
  ctx.write_meta(path);
  fmt::print(ctx.out, "wrote {}\n", path.string());
  return report.pass() ? ok : failed;
}

int cmd_verify(Context& ctx) {
  const ConstructionTree tree = ctx.tree();
  VerifyOptions o;
  o.seed = ctx.config.seed;
  const auto report = verify_separation(tree, o);
  fmt::print(ctx.out, "{}", summarize(report));
  fmt::print(ctx.out, "separation: {}\n", report.pass() ? "pass" : "FAIL");
  return report.pass() ? ok : failed;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"reflectionless", "oracle-equivalence", "compute-ctilde", "measure",
                                                 "boundedness",    "pv-failure",         "density-decay"};
  return names;
}

int cmd_experiment(Context& ctx, const std::string& which, const std::string& placement) {
  const auto& c = ctx.config;
  std::vector<std::string> run = {which};
  if (which == "all") run = experiment_names();
  bool pass = true;
  std::optional<ConstructionTree> tree;
  const auto get_tree = [&]() -> const ConstructionTree& {
    if (!tree) tree = ctx.tree();
    return *tree;
  };
  for (const auto& name : run) {
    ExperimentReport rep;
    if (name == "reflectionless") {
      rep = check_reflectionless(c.trials, c.seed, KernelKind::conj_over_square, c.threads);
    } else if (name == "oracle-equivalence") {
      rep = check_oracle_equivalence(c.trials, c.seed, c.threads);
    } else if (name == "compute-ctilde") {
      rep = ctilde_report(std::min(c.tol, 1e-8));
    } else if (name == "measure") {
      rep = check_measure(get_tree(), {c.growth_samples, c.seed, c.threads});
    } else if (name == "boundedness") {
      BoundednessOptions o;
      o.points = c.points;
      o.seed = c.seed;
      o.fast_tol = c.tol;
      o.threads = c.threads;
      rep = boundedness_sweep(get_tree(), o);
    } else if (name == "pv-failure") {
      PvOptions o;
      o.trials = c.trials;
      o.seed = c.seed;
      o.c0 = c.c0;
      o.threads = c.threads;
      if (placement == "interior")
        o.placement = BoundaryPlacement::interior;
      else if (placement != "boundary")
        throw ConfigError(fmt::format("unknown placement '{}' (boundary, interior)", placement));
      rep = pv_failure(get_tree(), get_tree().depth(), o);
    } else if (name == "density-decay") {
      rep = density_decay(get_tree(), get_tree().depth(), {c.samples, c.seed, c.threads});
    } else {
      throw ConfigError(fmt::format("unknown experiment '{}' (known: {}, all)", name, fmt::join(experiment_names(), ", ")));
    }
    ctx.emit(rep);
    pass = pass && rep.pass;
  }
  return pass ? ok : failed;
}

int cmd_eval(Context& ctx, const std::vector<std::string>& points, bool fast) {
  if (points.empty()) throw ConfigError("eval needs at least one --z re,im");
  const ConstructionTree tree = ctx.tree();
  const LevelMeasure m(tree, tree.depth());
  std::optional<FastEvaluator> fe;
  if (fast) fe.emplace(m);
  for (const auto& s : points) {
    const Point z = parse_point(s);
    const IntegralResult r = fast ? fe->evaluate(z, ctx.config.tol) : t1_exact(m, z);
    fmt::print(ctx.out, "z = ({:.17g}, {:.17g}) depth {}: T1 = ({:.17g}, {:.17g}) error_bound {:.3g} [{}]\n", z.real(),
               z.imag(), tree.depth(), r.value.real(), r.value.imag(), r.error_bound, fast ? "t1_fast" : "t1_exact");
  }
  return ok;
}

int cmd_render(Context& ctx, const std::string& node, const std::string& oscillation_at) {
  const ConstructionTree tree = ctx.tree();
  fs::create_directories(ctx.config.out);
  const auto save = [&](const std::string& file, const std::string& body) {
    const fs::path p = fs::path(ctx.config.out) / file;
    std::ofstream f(p, std::ios::binary);
    f << body;
    ctx.write_meta(p);
    fmt::print(ctx.out, "wrote {}\n", p.string());
  };
  const auto parts = split(node, ',');
  if (parts.size() != 2) throw ConfigError("--node expects level,index");
  const int n = std::stoi(parts[0]);
  const std::size_t j = std::stoull(parts[1]);
  if (n < 0 || n >= tree.depth() || j >= tree.count(n))
    throw ConfigError(fmt::format("node {},{} must be an internal node of the tree", n, j));
  save(fmt::format("node_{}_{}.svg", n, j), render_node_svg(tree, n, j));

  if (!oscillation_at.empty()) {
    const auto q = split(oscillation_at, ',');
    if (q.size() != 2) throw ConfigError("--oscillation expects level,index");
    const int ln = std::stoi(q[0]);
    const std::size_t lj = std::stoull(q[1]);
    if (ln < 1 || ln >= tree.depth() || lj >= tree.count(ln))
      throw ConfigError("--oscillation node must lie strictly between the root and the leaves");
    const LevelMeasure m(tree, tree.depth());
    const Point z = tree.centers(ln)[lj] + tree.radius(ln);
    const auto prof = truncation_profile(m, z, tree.radius(tree.depth()), 2.0, 80);
    PlotSeries re{"Re", "#1f5fa0", {}}, im{"Im", "#c03030", {}};
    for (auto [rho, v] : prof) {
      re.points.emplace_back(rho, v.real());
      im.points.emplace_back(rho, v.imag());
    }
    save(fmt::format("oscillation_{}_{}.svg", ln, lj),
         render_logx_plot_svg(fmt::format("truncated T1 at the boundary of disc ({}, {})", ln, lj), "rho", {re, im}));
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rfl: hierarchy builder and experiment runner"};
  app.require_subcommand(1);

  std::string config_path, schedule, format;
  std::optional<int> depth;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> threads, trials, points, samples;
  std::optional<double> c0;
  std::string out_dir, tree_file;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--schedule", schedule, "successive integer ratios, e.g. 128,128,128");
  app.add_option("--depth", depth, "tree depth");
  app.add_option("--seed", seed, "sampling seed");
  app.add_option("--tol", tol, "tolerance (fast evaluator, oracle)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker cap (0 = all cores)");
  app.add_option("--format", format, "comma list of csv,json,svg");
  app.add_option("--tree", tree_file, "load the tree from a JSON export");
  app.add_option("--trials", trials, "random trials per check");
  app.add_option("--points", points, "boundedness grid size per level");
  app.add_option("--samples", samples, "density samples per level");
  app.add_option("--c0", c0, "boundary band constant");

  auto* build = app.add_subcommand("build", "build a tree, report separation, export it");
  auto* verify = app.add_subcommand("verify", "check separation properties (a)(b)(c)");
  auto* experiment = app.add_subcommand("experiment", "run an experiment");
  std::string experiment_name;
  experiment->add_option("name", experiment_name, "experiment name or 'all'")->required();
  std::string placement = "boundary";
  experiment->add_option("--placement", placement, "pv-failure evaluation points: boundary or interior");
  auto* eval = app.add_subcommand("eval", "evaluate T1 at points");
  std::vector<std::string> points_in;
  bool fast = false;
  eval->add_option("--z", points_in, "point re,im (repeatable)");
  eval->add_flag("--fast", fast, "use the hierarchical evaluator with --tol");
  auto* render = app.add_subcommand("render", "SVG figures");
  std::string node = "0,0", oscillation;
  render->add_option("--node", node, "internal node level,index");
  render->add_option("--oscillation", oscillation, "plot truncated T1 at the boundary of node level,index");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }

  Context ctx{RunConfig{}, out, err, args};
  try {
    if (!config_path.empty()) load_config_file(config_path, ctx.config);
    auto& c = ctx.config;
    if (!schedule.empty()) c.schedule = parse_ratios(schedule);
    if (depth) c.depth = *depth;
    if (seed) c.seed = *seed;
    if (tol) c.tol = *tol;
    if (threads) c.threads = *threads;
    if (trials) c.trials = *trials;
    if (points) c.points = *points;
    if (samples) c.samples = *samples;
    if (c0) c.c0 = *c0;
    if (!out_dir.empty()) c.out = out_dir;
    if (!tree_file.empty()) c.tree_file = tree_file;
    if (!format.empty()) c.formats = split(format, ',');
    for (const auto& f : c.formats)
      if (f != "csv" && f != "json" && f != "svg") throw ConfigError(fmt::format("unknown format '{}'", f));
    if (!(c.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (!(c.c0 > 0.0 && c.c0 < 1.0)) throw ConfigError("--c0 must lie in (0, 1)");
    (void)ctx.schedule();  // validates
    if (c.depth && (*c.depth < 0 || *c.depth > static_cast<int>(c.schedule.size())))
      throw ConfigError(fmt::format("depth {} outside 0..{} (schedule length)", *c.depth, c.schedule.size()));

    if (*build) return cmd_build(ctx);
    if (*verify) return cmd_verify(ctx);
    if (*experiment) return cmd_experiment(ctx, experiment_name, placement);
    if (*eval) return cmd_eval(ctx, points_in, fast);
    if (*render) return cmd_render(ctx, node, oscillation);
  } catch (const ScheduleError& e) {
    fmt::print(err, "invalid schedule: {}\n", e.what());
    return config_error;
  } catch (const ConfigError& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return config_error;
  } catch (const OnSupportError& e) {
    fmt::print(err, "evaluation point on the support: {}\n", e.what());
    return on_support;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return failed;
  }
  return failed;
}

}  // namespace rfl::cli
