#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "locinfer/ingest.hpp"
#include "locinfer/locality.hpp"
#include "locinfer/multigraph.hpp"
#include "locinfer/pipeline.hpp"
#include "locinfer/random.hpp"
#include "locinfer/synth.hpp"

namespace locinfer {

/// How tau (target size of U, seeds included) is picked for a run.
struct TauPolicy {
  enum class Mode { Fixed, SeedSubset, SeedSet, CandidateCount, AllCandidates };
  Mode mode = Mode::SeedSet;
  std::size_t count = 0;

  static TauPolicy fixed(std::size_t n) { return {Mode::Fixed, n}; }

  /// "subset" = |S-bar|, "seeds" = |S|, "cand" = |C|, "all" = |S-bar| + |C|, or an integer.
  static TauPolicy parse(const std::string& s) {
    if (s == "subset") return {Mode::SeedSubset, 0};
    if (s == "seeds") return {Mode::SeedSet, 0};
    if (s == "cand") return {Mode::CandidateCount, 0};
    if (s == "all") return {Mode::AllCandidates, 0};
    auto v = detail::parse_uint(s);
    if (!v || *v == 0) throw std::invalid_argument("bad tau '" + s + "'");
    return fixed(*v);
  }

  std::string name() const {
    switch (mode) {
      case Mode::Fixed: return std::to_string(count);
      case Mode::SeedSubset: return "subset";
      case Mode::SeedSet: return "seeds";
      case Mode::CandidateCount: return "cand";
      case Mode::AllCandidates: return "all";
    }
    return "?";
  }

  /// Never below |S-bar|, the floor the ranking accepts.
  std::size_t resolve(std::size_t subset, std::size_t seeds, std::size_t candidates) const {
    std::size_t v = 0;
    switch (mode) {
      case Mode::Fixed: v = count; break;
      case Mode::SeedSubset: v = subset; break;
      case Mode::SeedSet: v = seeds; break;
      case Mode::CandidateCount: v = candidates; break;
      case Mode::AllCandidates: v = subset + candidates; break;
    }
    return std::max(v, subset);
  }
};

inline std::vector<LocalityKind> all_kinds() {
  const auto a = LocalityKind::all();
  return {a.begin(), a.end()};
}

struct EvalConfig {
  double alpha = 0.159;
  double beta = 0.159;
  unsigned t = 1;
  TauPolicy tau{};
  std::vector<LocalityKind> kinds = all_kinds();
  std::size_t bins = 100;
  std::uint64_t rng_seed = 1;
  unsigned jobs = 1;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0,1]");
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    if (kinds.empty()) throw std::invalid_argument("no locality kinds");
  }
};

/// The testing multigraph: induced on S and the sampled negatives.
struct TestingSet {
  Multigraph graph;
  UserSet positives;    // S
  UserSet seed_subset;  // S-bar
  UserSet test;         // T
  UserSet negatives;    // Theta
};

/// Splits the refined seeds into S-bar / T and samples the negatives Theta
/// from the outside-labeled followers and followees of S.
inline TestingSet build_testing_graph(const LabeledGraph& gl, const EvalConfig& cfg) {
  cfg.validate();
  TestingSet ts;
  ts.positives = refine_seeds(gl.profiles, gl.gazetteer);
  if (ts.positives.empty()) throw std::invalid_argument("no seed users after refinement");
  Rng rng = stream_rng(cfg.rng_seed, 0);

  auto order = sorted_ids(ts.positives);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_subset = static_cast<std::size_t>(std::llround(cfg.alpha * static_cast<double>(order.size())));
  for (std::size_t i = 0; i < order.size(); ++i) (i < n_subset ? ts.seed_subset : ts.test).insert(order[i]);

  UserSet outside;
  for (const auto& p : gl.profiles)
    if (p.truth == AreaLabel::Outside) outside.insert(p.id);
  UserSet pool_set;
  for (UserId s : ts.positives) {
    for (UserId v : gl.graph.followers(s))
      if (outside.count(v)) pool_set.insert(v);
    for (UserId v : gl.graph.followees(s))
      if (outside.count(v)) pool_set.insert(v);
  }
  if (pool_set.empty()) throw std::invalid_argument("seed users have no outside-labeled follow neighbors");
  auto pool = sorted_ids(pool_set);
  const auto n_neg = static_cast<std::size_t>(std::llround(cfg.beta * static_cast<double>(pool.size())));
  for (auto i : sample_without_replacement(pool.size(), n_neg, rng)) ts.negatives.insert(pool[i]);

  UserSet keep = ts.positives;
  keep.insert(ts.negatives.begin(), ts.negatives.end());
  ts.graph = gl.graph.induced(keep);
  return ts;
}

/// Share of truth members in each of `bins` consecutive slices of `discovered`;
/// the remainder of an uneven split lands in the last bin.
inline std::vector<double> bin_accuracy(const std::vector<UserId>& discovered, const UserSet& truth, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  if (discovered.size() < bins) throw std::invalid_argument("fewer discovered users than bins");
  const std::size_t width = discovered.size() / bins;
  std::vector<double> out(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * width;
    const std::size_t hi = b + 1 == bins ? discovered.size() : lo + width;
    std::size_t hits = 0;
    for (std::size_t i = lo; i < hi; ++i) hits += truth.count(discovered[i]);
    out[b] = static_cast<double>(hits) / static_cast<double>(hi - lo);
  }
  return out;
}

struct KindReport {
  std::string kind;
  std::size_t tau = 0;
  std::size_t targets = 0;     // |U|
  std::size_t discovered = 0;  // |U'|
  std::size_t hits = 0;        // |U ∩ S|
  double coverage = 0.0;       // |U ∩ S| / |S|
  double accuracy = 0.0;       // |U ∩ S| / tau; tau = |U| unless truncated
  double realized_accuracy = 0.0;  // |U ∩ S| / |U|
  double discovered_accuracy = 0.0;  // |U' ∩ T| / |U'|
  std::vector<double> bin_accuracy;  // empty when |U'| < bins
  bool truncated = false;
  RankedTargets ranking;
};

struct EvalReport {
  double alpha = 0.0;
  double beta = 0.0;
  unsigned t = 0;
  std::string tau_policy;
  std::uint64_t rng_seed = 0;
  std::size_t positives = 0;
  std::size_t seed_subset = 0;
  std::size_t test = 0;
  std::size_t negatives = 0;
  std::size_t candidates = 0;
  std::size_t candidates_inside = 0;
  std::vector<KindReport> kinds;

  const KindReport& at(const std::string& kind) const {
    for (const auto& k : kinds)
      if (k.kind == kind) return k;
    throw std::out_of_range("no report for kind " + kind);
  }
};

/// Candidates from S-bar, then one ranking per configured locality kind.
inline EvalReport run_eval(const TestingSet& ts, const EvalConfig& cfg) {
  cfg.validate();
  EvalReport rep;
  rep.alpha = cfg.alpha;
  rep.beta = cfg.beta;
  rep.t = cfg.t;
  rep.tau_policy = cfg.tau.name();
  rep.rng_seed = cfg.rng_seed;
  rep.positives = ts.positives.size();
  rep.seed_subset = ts.seed_subset.size();
  rep.test = ts.test.size();
  rep.negatives = ts.negatives.size();
  if (ts.seed_subset.empty()) throw std::invalid_argument("empty seed subset");

  const auto cand = build_candidates(ts.graph, ts.seed_subset, cfg.t);
  rep.candidates = cand.members.size();
  for (UserId u : cand.members) rep.candidates_inside += ts.positives.count(u);
  const std::size_t tau = cfg.tau.resolve(ts.seed_subset.size(), ts.positives.size(), cand.members.size());

  rep.kinds.resize(cfg.kinds.size());
  auto one = [&](std::size_t k) {
    KindReport& r = rep.kinds[k];
    r.kind = cfg.kinds[k].name();
    r.tau = tau;
    r.ranking = rank_targets(ts.graph, ts.seed_subset, cand, tau, cfg.kinds[k]);
    r.truncated = r.ranking.truncated;
    r.targets = r.ranking.all_targets.size();
    r.discovered = r.ranking.discovered.size();
    std::size_t found = 0;
    for (UserId u : r.ranking.discovered) found += ts.positives.count(u);
    r.hits = ts.seed_subset.size() + found;
    r.coverage = static_cast<double>(r.hits) / static_cast<double>(ts.positives.size());
    r.accuracy = static_cast<double>(r.hits) / static_cast<double>(tau);
    r.realized_accuracy = static_cast<double>(r.hits) / static_cast<double>(r.targets);
    r.discovered_accuracy = r.discovered ? static_cast<double>(found) / static_cast<double>(r.discovered) : 0.0;
    if (r.discovered >= cfg.bins) r.bin_accuracy = bin_accuracy(r.ranking.discovered, ts.positives, cfg.bins);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.kinds.size())));
  if (jobs == 1) {
    for (std::size_t k = 0; k < cfg.kinds.size(); ++k) one(k);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < cfg.kinds.size(); k += jobs) one(k);
      });
  }
  return rep;
}

enum class CamouflageDirection { Out, In, Both };

inline CamouflageDirection parse_direction(const std::string& s) {
  if (s == "out") return CamouflageDirection::Out;
  if (s == "in") return CamouflageDirection::In;
  if (s == "both") return CamouflageDirection::Both;
  throw std::invalid_argument("direction must be out|in|both");
}

/// Copy of `g` where every test user additionally follows (out), is followed
/// by (in), or both, k distinct negatives it was not yet linked with that way.
/// Partners are drawn independently per test user.
inline Multigraph camouflage(const Multigraph& g, const UserSet& test, const UserSet& negatives, std::size_t k,
                             CamouflageDirection dir, std::uint64_t rng_seed) {
  if (k > negatives.size()) throw std::invalid_argument("camouflage: k exceeds |Theta|");
  Multigraph out = g;
  if (k == 0) return out;
  const auto pool = sorted_ids(negatives);
  const auto users = sorted_ids(test);
  for (std::size_t i = 0; i < users.size(); ++i) {
    const UserId u = users[i];
    Rng rng = stream_rng(rng_seed, i + 1);
    auto link = [&](bool outward) {
      std::vector<UserId> open;
      for (UserId v : pool) {
        if (v == u) continue;
        if (outward ? g.follows(u, v) : g.follows(v, u)) continue;
        open.push_back(v);
      }
      const std::size_t take = std::min(k, open.size());
      for (auto j : sample_without_replacement(open.size(), take, rng)) {
        if (outward) out.add_follow(u, open[j]);
        else out.add_follow(open[j], u);
      }
    };
    if (dir != CamouflageDirection::In) link(true);
    if (dir != CamouflageDirection::Out) link(false);
  }
  return out;
}

enum class SweepParam { Alpha, T, Tau, CamouflageK };

inline SweepParam parse_sweep_param(const std::string& s) {
  if (s == "alpha") return SweepParam::Alpha;
  if (s == "t") return SweepParam::T;
  if (s == "tau") return SweepParam::Tau;
  if (s == "camouflage_k" || s == "k") return SweepParam::CamouflageK;
  throw std::invalid_argument("sweep parameter must be alpha|t|tau|camouflage_k");
}

struct SweepPoint {
  std::string value;
  EvalReport report;
};

/// One evaluation per value over the same corpus and rng_seed. Camouflage
/// edges are added to the testing graph with direction `dir`.
inline std::vector<SweepPoint> sweep(const LabeledGraph& gl, SweepParam param, const std::vector<std::string>& values,
                                     const EvalConfig& base,
                                     CamouflageDirection dir = CamouflageDirection::Out) {
  if (values.empty()) throw std::invalid_argument("sweep: no values");
  std::vector<SweepPoint> out;
  const TestingSet shared = param == SweepParam::Alpha ? TestingSet{} : build_testing_graph(gl, base);
  for (const auto& v : values) {
    EvalConfig cfg = base;
    SweepPoint pt{v, {}};
    switch (param) {
      case SweepParam::Alpha: {
        cfg.alpha = std::stod(v);
        pt.report = run_eval(build_testing_graph(gl, cfg), cfg);
        break;
      }
      case SweepParam::T: {
        auto t = detail::parse_uint(v);
        if (!t || *t == 0) throw std::invalid_argument("bad t '" + v + "'");
        cfg.t = static_cast<unsigned>(*t);
        pt.report = run_eval(shared, cfg);
        break;
      }
      case SweepParam::Tau: {
        cfg.tau = TauPolicy::parse(v);
        pt.report = run_eval(shared, cfg);
        break;
      }
      case SweepParam::CamouflageK: {
        auto k = detail::parse_uint(v);
        if (!k) throw std::invalid_argument("bad k '" + v + "'");
        TestingSet ts = shared;
        ts.graph = camouflage(shared.graph, shared.test, shared.negatives, *k, dir, base.rng_seed);
        pt.report = run_eval(ts, cfg);
        break;
      }
    }
    out.push_back(std::move(pt));
  }
  return out;
}

/// Curve rows: param_value,kind,coverage,accuracy.
inline void write_curve_csv(std::ostream& os, const std::vector<SweepPoint>& pts) {
  os << "param_value,kind,coverage,accuracy\n";
  for (const auto& pt : pts)
    for (const auto& k : pt.report.kinds) os << pt.value << ',' << k.kind << ',' << k.coverage << ',' << k.accuracy << '\n';
}

/// Plain "key value" report; bin accuracies on one line.
inline void write_report(std::ostream& os, const EvalReport& r) {
  os << "alpha " << r.alpha << "\nbeta " << r.beta << "\nt " << r.t << "\ntau_policy " << r.tau_policy
     << "\nrng_seed " << r.rng_seed << "\npositives " << r.positives << "\nseed_subset " << r.seed_subset
     << "\ntest " << r.test << "\nnegatives " << r.negatives << "\ncandidates " << r.candidates
     << "\ncandidates_inside " << r.candidates_inside << '\n';
  for (const auto& k : r.kinds) {
    os << "[kind " << k.kind << "]\ntau " << k.tau << "\ntargets " << k.targets << "\ndiscovered " << k.discovered
       << "\nhits " << k.hits << "\ncoverage " << k.coverage << "\naccuracy " << k.accuracy
       << "\nrealized_accuracy " << k.realized_accuracy << "\ndiscovered_accuracy " << k.discovered_accuracy << "\ntruncated " << (k.truncated ? 1 : 0) << '\n';
    if (!k.bin_accuracy.empty()) {
      os << "bin_accuracy";
      for (double b : k.bin_accuracy) os << ' ' << b;
      os << '\n';
    }
  }
}

}  // namespace locinfer
