// locinfer: command-line front end for corpus synthesis, seed refinement,
// target ranking, the coverage bound and the evaluation harness.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "locinfer/locinfer.hpp"

namespace fs = std::filesystem;
using namespace locinfer;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- synth config fields, shared by the config file, flags and manifest ----

struct SynthField {
  const char* name;
  double SynthConfig::*real = nullptr;
  std::uint64_t SynthConfig::*count = nullptr;
};

const std::vector<SynthField>& synth_fields() {
  static const std::vector<SynthField> f{
      {"n_inside", nullptr, &SynthConfig::n_inside},
      {"n_outside", nullptr, &SynthConfig::n_outside},
      {"d_m", &SynthConfig::mutual_degree},
      {"outside_d_m", &SynthConfig::outside_mutual_degree},
      {"boundary_frac", &SynthConfig::boundary_frac},
      {"boundary_d_m", &SynthConfig::boundary_mutual_degree},
      {"extra_follow_in", &SynthConfig::extra_follow_in},
      {"p_cross", &SynthConfig::p_cross},
      {"cross_reciprocity", &SynthConfig::cross_reciprocity},
      {"celebrity_frac", &SynthConfig::celebrity_frac},
      {"celebrity_indeg_mult", &SynthConfig::celebrity_indeg_mult},
      {"q_interact", &SynthConfig::q_interact},
      {"cross_interact_factor", &SynthConfig::cross_interact_factor},
      {"interact_offnet", &SynthConfig::interact_offnet},
      {"mean_weight", &SynthConfig::mean_weight},
      {"disclose_frac", &SynthConfig::disclose_frac},
  };
  return f;
}

const SynthField& synth_field(const std::string& key) {
  for (const auto& f : synth_fields())
    if (key == f.name) return f;
  throw UsageError("unknown synth parameter '" + key + "'");
}

void set_field(SynthConfig& cfg, const SynthField& f, const std::string& value) {
  std::size_t used = 0;
  try {
    if (f.real) {
      cfg.*f.real = std::stod(value, &used);
    } else {
      if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
      cfg.*f.count = std::stoull(value, &used);
    }
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw UsageError(std::string("bad value for ") + f.name + ": '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// "key = value" per line, '#' comments.
void apply_config_file(SynthConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key == "seed") throw UsageError(path + ": the seed is given with --seed only");
    set_field(cfg, synth_field(key), trim(line.substr(eq + 1)));
  }
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- corpus inputs ----

struct CorpusPaths {
  std::string dir, edges, profiles, gazetteer;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--corpus", dir, "directory holding edges.txt, profiles.txt, gazetteer.txt");
    cmd->add_option("--edges", edges, "edge file (overrides --corpus)");
    cmd->add_option("--profiles", profiles, "profile file (overrides --corpus)");
    cmd->add_option("--gazetteer", gazetteer, "gazetteer file (overrides --corpus)");
  }

  std::string pick(const std::string& explicit_path, const char* file) const {
    if (!explicit_path.empty()) return explicit_path;
    if (dir.empty()) throw UsageError(std::string("missing input: give --corpus or the ") + file + " path");
    return (fs::path(dir) / file).string();
  }

  LabeledGraph load() const {
    auto gaz = load_gazetteer(pick(gazetteer, "gazetteer.txt"));
    return LabeledGraph{load_graph(pick(edges, "edges.txt")), load_profiles(pick(profiles, "profiles.txt")),
                        std::move(gaz)};
  }
};

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// ---- commands ----

int cmd_synth(const SynthConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  std::cerr << "generating corpus: " << cfg.n_inside << " inside, " << cfg.n_outside << " outside users\n";
  const auto gl = generate(cfg);

  std::ostringstream edges, profiles, gazetteer;
  write_graph(edges, gl.graph);
  write_profiles(profiles, gl.profiles);
  write_gazetteer(gazetteer, gl.gazetteer);
  std::uint64_t h = fnv1a(edges.str());
  h = fnv1a(profiles.str(), h);
  h = fnv1a(gazetteer.str(), h);

  std::ostringstream manifest;
  for (const auto& f : synth_fields()) {
    manifest << f.name << ' ';
    if (f.real) {
      // Shortest text that parses back to the same double.
      char buf[32];
      manifest << std::string_view(buf, std::to_chars(buf, buf + sizeof buf, cfg.*f.real).ptr);
    }
    else manifest << cfg.*f.count;
    manifest << '\n';
  }
  manifest << "seed " << cfg.rng_seed << '\n'
           << "follow_edges " << gl.graph.follow_edge_count() << '\n'
           << "interaction_edges " << gl.graph.interaction_edge_count() << '\n'
           << "users " << gl.profiles.size() << '\n'
           << "files edges.txt profiles.txt gazetteer.txt\n"
           << "checksum_fnv1a64 " << hex64(h) << '\n';

  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "edges.txt", edges.str());
  write_file(fs::path(out_dir) / "profiles.txt", profiles.str());
  write_file(fs::path(out_dir) / "gazetteer.txt", gazetteer.str());
  write_file(fs::path(out_dir) / "manifest.txt", manifest.str());
  std::cout << "checksum " << hex64(h) << '\n';
  return 0;
}

int cmd_seeds(const CorpusPaths& in) {
  const auto profiles = load_profiles(in.pick(in.profiles, "profiles.txt"));
  const auto gaz = load_gazetteer(in.pick(in.gazetteer, "gazetteer.txt"));
  const auto seeds = refine_seeds(profiles, gaz);
  std::cerr << seeds.size() << " of " << profiles.size() << " profiles match the gazetteer\n";
  for (UserId u : sorted_ids(seeds)) std::cout << u << '\n';
  return 0;
}

struct InferOptions {
  unsigned t = 1;
  std::string tau = "all";
  std::uint64_t population = 0;
  double share = 0.151;
  std::string kind = "followee";
  std::string out;
};

int cmd_infer(const CorpusPaths& in, const InferOptions& o) {
  const auto kind = LocalityKind::parse(o.kind);
  const auto g = load_graph(in.pick(in.edges, "edges.txt"));
  const auto profiles = load_profiles(in.pick(in.profiles, "profiles.txt"));
  const auto gaz = load_gazetteer(in.pick(in.gazetteer, "gazetteer.txt"));
  const auto seeds = refine_seeds(profiles, gaz);
  if (seeds.empty()) {
    std::cerr << "error: no seed users: 0 of " << profiles.size() << " profiles match any of "
              << gaz.names().size() << " gazetteer names\n";
    return 1;
  }
  const auto cands = build_candidates(g, seeds, o.t);
  std::size_t tau = 0;
  if (o.population > 0) {
    tau = tau_from_population(o.population, o.share);
  } else if (o.tau == "all") {
    tau = seeds.size() + cands.members.size();
  } else if (o.tau == "seeds") {
    tau = seeds.size();
  } else {
    auto v = detail::parse_uint(o.tau);
    if (!v) throw UsageError("--tau must be an integer, 'seeds' or 'all'");
    tau = *v;
  }
  if (tau < seeds.size()) throw UsageError("tau " + std::to_string(tau) + " is below the seed count " +
                                           std::to_string(seeds.size()));
  const auto ranked = rank_targets(g, seeds, cands, tau, kind);
  std::cerr << seeds.size() << " seeds, " << cands.members.size() << " candidates, " << ranked.discovered.size()
            << " discovered" << (ranked.truncated ? " (queue emptied before tau)" : "") << '\n';

  std::ostringstream os;
  os << "# kind " << kind.name() << " t " << o.t << " tau " << tau << " seeds " << seeds.size() << " candidates "
     << cands.members.size() << " truncated " << (ranked.truncated ? 1 : 0) << '\n'
     << "# id\tscore\trole\n";
  for (UserId s : sorted_ids(seeds)) os << s << "\t-\tseed\n";
  os << std::setprecision(6) << std::fixed;
  for (std::size_t i = 0; i < ranked.discovered.size(); ++i)
    os << ranked.discovered[i] << '\t' << ranked.scores[i] << "\tfound\n";
  if (o.out.empty()) std::cout << os.str();
  else write_file(o.out, os.str());
  return 0;
}

struct BoundOptions {
  double alpha = 0.2;
  double dm = 15.0;
  unsigned t = 1;
  std::uint64_t n = 1000000;
};

int cmd_bound(const BoundOptions& o) {
  CoverageBoundParams limit{std::nullopt, o.alpha, o.dm, o.t};
  CoverageBoundParams exact{o.n, o.alpha, o.dm, o.t};
  const auto l = coverage_lower_bound(limit, BoundForm::Limit);
  const auto e = coverage_lower_bound(exact, BoundForm::ExactBinomial);
  std::cout << "alpha " << o.alpha << " d_m " << o.dm << " t " << o.t << '\n'
            << "limit rho " << fmt4(l.rho) << " coverage " << fmt4(l.coverage_lb) << '\n'
            << "exact n " << o.n << " rho " << fmt4(e.rho) << " coverage " << fmt4(e.coverage_lb) << '\n';
  return 0;
}

struct McOptions {
  BoundOptions b{0.2, 15.0, 1, 5000};
  std::size_t trials = 40;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

int cmd_mc_bound(const McOptions& o) {
  const auto mc = mc_coverage(o.b.n, o.b.alpha, o.b.dm, o.b.t, o.trials, o.seed, o.jobs);
  const auto e = coverage_lower_bound({o.b.n, o.b.alpha, o.b.dm, o.b.t}, BoundForm::ExactBinomial);
  std::cout << std::setprecision(6) << std::fixed << "n " << o.b.n << " alpha " << o.b.alpha << " d_m " << o.b.dm
            << " t " << o.b.t << " seed " << o.seed << '\n'
            << "trials " << mc.trials << "\nmean " << mc.mean << "\nstderr " << mc.std_error << "\nexact "
            << e.coverage_lb << '\n';
  return 0;
}

struct EvalOptions {
  double alpha = 0.159;
  double beta = 0.159;
  unsigned t = 1;
  std::string tau = "seeds";
  std::string kinds = "follower,followee,initiator,max,weighted";
  std::size_t bins = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t camouflage_k = 0;
  std::string direction = "out";
  std::string out;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "seed-subset fraction")->capture_default_str();
    cmd->add_option("--beta", beta, "negative-sample fraction")->capture_default_str();
    cmd->add_option("--t", t, "candidate threshold")->capture_default_str();
    cmd->add_option("--tau", tau, "integer, subset, seeds, cand or all")->capture_default_str();
    cmd->add_option("--kinds", kinds, "comma-separated locality kinds")->capture_default_str();
    cmd->add_option("--bins", bins, "accuracy bins")->capture_default_str();
    cmd->add_option("--seed", seed, "rng seed")->required();
    cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    cmd->add_option("--direction", direction, "camouflage direction: out, in or both")->capture_default_str();
  }

  EvalConfig config() const {
    EvalConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.t = t;
    cfg.tau = TauPolicy::parse(tau);
    cfg.kinds.clear();
    for (const auto& k : split_list(kinds)) cfg.kinds.push_back(LocalityKind::parse(k));
    cfg.bins = bins;
    cfg.rng_seed = seed;
    cfg.jobs = jobs;
    cfg.validate();
    return cfg;
  }
};

int cmd_eval(const CorpusPaths& in, const EvalOptions& o) {
  const auto cfg = o.config();
  const auto dir = parse_direction(o.direction);
  const auto gl = in.load();
  auto ts = build_testing_graph(gl, cfg);
  if (o.camouflage_k > 0) ts.graph = camouflage(ts.graph, ts.test, ts.negatives, o.camouflage_k, dir, cfg.rng_seed);
  std::cerr << "testing graph: " << ts.positives.size() << " positives, " << ts.negatives.size() << " negatives\n";
  const auto rep = run_eval(ts, cfg);
  std::ostringstream os;
  os << "camouflage_k " << o.camouflage_k << "\ndirection " << o.direction << '\n';
  write_report(os, rep);
  if (o.out.empty()) std::cout << os.str();
  else write_file(o.out, os.str());
  return 0;
}

int cmd_sweep(const CorpusPaths& in, const EvalOptions& o, const std::string& param, const std::string& values,
              const std::string& csv) {
  const auto cfg = o.config();
  const auto p = parse_sweep_param(param);
  const auto dir = parse_direction(o.direction);
  const auto vals = split_list(values);
  if (vals.empty()) throw UsageError("--values is empty");
  const auto gl = in.load();
  const auto pts = sweep(gl, p, vals, cfg, dir);
  std::ostringstream os;
  os << std::setprecision(6);
  write_curve_csv(os, pts);
  if (csv.empty()) std::cout << os.str();
  else write_file(csv, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locinfer: locality-driven target-user inference"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
  std::string synth_config, synth_out;
  std::uint64_t synth_seed = 0;
  std::map<std::string, std::string> synth_flags;
  synth->add_option("--config", synth_config, "key = value parameter file");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--seed", synth_seed, "rng seed")->required();
  for (const auto& f : synth_fields()) {
    std::string flag = std::string("--") + f.name;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    synth->add_option(flag, synth_flags[f.name], "overrides the config file");
  }

  // seeds
  auto* seeds = app.add_subcommand("seeds", "list users whose profile matches the gazetteer");
  CorpusPaths seeds_in;
  seeds_in.add_to(seeds);

  // infer
  auto* infer = app.add_subcommand("infer", "rank target users from refined seeds");
  CorpusPaths infer_in;
  InferOptions infer_opt;
  infer_in.add_to(infer);
  infer->add_option("--t", infer_opt.t, "candidate threshold")->capture_default_str();
  infer->add_option("--tau", infer_opt.tau, "target count incl. seeds: integer, seeds or all")->capture_default_str();
  infer->add_option("--population", infer_opt.population, "derive tau from the area population");
  infer->add_option("--share", infer_opt.share, "platform share used with --population")->capture_default_str();
  infer->add_option("--kind", infer_opt.kind, "follower, followee, initiator, max or weighted")->capture_default_str();
  infer->add_option("--out", infer_opt.out, "output file (default stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "seed coverage lower bound");
  BoundOptions bound_opt;
  bound->add_option("--alpha", bound_opt.alpha, "seed fraction")->required();
  bound->add_option("--dm", bound_opt.dm, "average mutual followers")->required();
  bound->add_option("--t", bound_opt.t, "threshold")->capture_default_str();
  bound->add_option("--n", bound_opt.n, "area population for the exact form")->capture_default_str();

  // mc-bound
  auto* mc = app.add_subcommand("mc-bound", "Monte-Carlo coverage on the random mutual-follower graph");
  McOptions mc_opt;
  mc->add_option("--alpha", mc_opt.b.alpha, "seed fraction")->required();
  mc->add_option("--dm", mc_opt.b.dm, "average mutual followers")->required();
  mc->add_option("--t", mc_opt.b.t, "threshold")->capture_default_str();
  mc->add_option("--n", mc_opt.b.n, "graph size")->capture_default_str();
  mc->add_option("--trials", mc_opt.trials, "trials")->capture_default_str();
  mc->add_option("--seed", mc_opt.seed, "rng seed")->required();
  mc->add_option("--jobs", mc_opt.jobs, "worker threads")->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "coverage and accuracy on a labeled corpus");
  CorpusPaths eval_in;
  EvalOptions eval_opt;
  eval_in.add_to(eval);
  eval_opt.add_to(eval);
  eval->add_option("--camouflage-k", eval_opt.camouflage_k, "camouflage edges per test user")->capture_default_str();
  eval->add_option("--out", eval_opt.out, "report file (default stdout)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "evaluate over a list of parameter values");
  CorpusPaths sweep_in;
  EvalOptions sweep_opt;
  std::string sweep_param, sweep_values, sweep_csv;
  sweep_in.add_to(sw);
  sweep_opt.add_to(sw);
  sw->add_option("--param", sweep_param, "alpha, t, tau or camouflage_k")->required();
  sw->add_option("--values", sweep_values, "comma-separated values")->required();
  sw->add_option("--csv", sweep_csv, "curve file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*synth) {
      SynthConfig cfg;
      if (!synth_config.empty()) apply_config_file(cfg, synth_config);
      for (const auto& f : synth_fields()) {
        std::string flag = std::string("--") + f.name;
        std::replace(flag.begin() + 2, flag.end(), '_', '-');
        if (synth->count(flag) > 0) set_field(cfg, f, synth_flags[f.name]);
      }
      cfg.rng_seed = synth_seed;
      return cmd_synth(cfg, synth_out);
    }
    if (*seeds) return cmd_seeds(seeds_in);
    if (*infer) return cmd_infer(infer_in, infer_opt);
    if (*bound) return cmd_bound(bound_opt);
    if (*mc) return cmd_mc_bound(mc_opt);
    if (*eval) return cmd_eval(eval_in, eval_opt);
    if (*sw) return cmd_sweep(sweep_in, sweep_opt, sweep_param, sweep_values, sweep_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
