#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "locinfer/indexed_heap.hpp"
#include "locinfer/locality.hpp"
#include "locinfer/multigraph.hpp"

namespace locinfer {

/// Users outside the seed set with at least `t` followers and `t` followees
/// in it. `members` is sorted.
struct CandidateSet {
  std::vector<UserId> members;
  unsigned t = 1;
};

/// Counter sweep over the seeds' follower and followee lists; never touches
/// users that are not adjacent to a seed.
inline CandidateSet build_candidates(const Multigraph& g, const UserSet& seeds, unsigned t) {
  if (t < 1) throw std::invalid_argument("build_candidates: t must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("build_candidates: empty seed set");
  // seed_followees[u]: seeds that u follows; seed_followers[u]: seeds following u.
  std::unordered_map<UserId, unsigned> seed_followees;
  std::unordered_map<UserId, unsigned> seed_followers;
  for (UserId s : seeds) {
    for (UserId u : g.followers(s))
      if (!seeds.count(u)) ++seed_followees[u];
    for (UserId u : g.followees(s))
      if (!seeds.count(u)) ++seed_followers[u];
  }
  CandidateSet c;
  c.t = t;
  for (const auto& [u, n_out] : seed_followees) {
    if (n_out < t) continue;
    auto it = seed_followers.find(u);
    if (it != seed_followers.end() && it->second >= t) c.members.push_back(u);
  }
  std::sort(c.members.begin(), c.members.end());
  return c;
}

/// Output of the iterative ranking.
struct RankedTargets {
  /// U: initial seeds (ascending) followed by discovered users in extraction order.
  std::vector<UserId> all_targets;
  /// U' = U minus the initial seeds, in extraction order.
  std::vector<UserId> discovered;
  /// Queue key of each discovered user at the moment it was extracted.
  std::vector<double> scores;
  std::size_t tau = 0;
  /// The queue emptied before |U| reached tau.
  bool truncated = false;
  HeapCounters ops;
  /// Candidate score recomputations triggered by new seeds.
  std::size_t touched = 0;
};

/// Greedy expansion: repeatedly promote the candidate with the highest
/// locality to a seed, then raise the affected candidates' keys in place.
///
/// When u* joins the seeds:
///  - followee ratio of each candidate in N^F_I(u*) gains 1/|N^F_O(u)|
///  - follower ratio of each candidate in N^F_O(u*) gains 1/|N^F_I(u)|
///  - initiator ratio of each candidate in N^I_I(u*) gains w(u,u*)/w(N^I_O(u))
/// Only the ratios the kind reads are maintained. Ties go to the smaller id.
inline RankedTargets rank_targets(const Multigraph& g, const UserSet& seeds, const CandidateSet& candidates,
                                  std::size_t tau, const LocalityKind& kind) {
  if (tau < seeds.size()) throw std::invalid_argument("rank_targets: tau smaller than the seed set");
  RankedTargets out;
  out.tau = tau;
  out.all_targets = sorted_ids(seeds);

  std::unordered_map<UserId, LocalityComponents> comp;
  comp.reserve(candidates.members.size());
  IndexedMaxHeap<UserId, double> queue;
  for (UserId u : candidates.members) {
    if (seeds.count(u)) throw std::invalid_argument("rank_targets: candidate " + std::to_string(u) + " is a seed");
    auto c = user_components(g, u, seeds);
    queue.insert(u, combine(kind, c));
    comp.emplace(u, c);
  }

  auto bump = [&](UserId u, Ratio LocalityComponents::*which, std::uint64_t amount) {
    if (!queue.contains(u)) return;
    auto& c = comp.at(u);
    (c.*which).hits += amount;
    ++out.touched;
    const double key = combine(kind, c);
    if (key > queue.key(u)) queue.increase_key(u, key);
  };

  while (out.all_targets.size() < tau) {
    if (queue.empty()) {
      out.truncated = true;
      break;
    }
    auto best = queue.extract_max();
    const UserId star = best.id;
    out.all_targets.push_back(star);
    out.discovered.push_back(star);
    out.scores.push_back(best.key);
    if (kind.uses_followee())
      for (UserId u : g.followers(star)) bump(u, &LocalityComponents::followee, 1);
    if (kind.uses_follower())
      for (UserId u : g.followees(star)) bump(u, &LocalityComponents::follower, 1);
    if (kind.uses_initiator())
      for (const auto& [u, w] : g.responders(star)) bump(u, &LocalityComponents::initiator, w);
  }
  out.ops = queue.counters();
  return out;
}

/// Recomputes from scratch the score each extracted user had against the
/// seeds plus everything extracted before it.
inline std::vector<double> replay_scores(const Multigraph& g, const UserSet& seeds,
                                         const std::vector<UserId>& extraction_order, const LocalityKind& kind) {
  std::vector<double> out;
  out.reserve(extraction_order.size());
  UserSet current = seeds;
  for (UserId u : extraction_order) {
    out.push_back(user_locality(g, u, current, kind));
    current.insert(u);
  }
  return out;
}

/// Fixed-size threshold: tau is just the requested count.
inline std::size_t tau_fixed(std::size_t count) { return count; }

/// Threshold from an estimated share of the area's population on the
/// platform (about 15.1% for U.S. areas).
inline std::size_t tau_from_population(std::uint64_t population, double platform_share = 0.151) {
  if (!(platform_share > 0.0 && platform_share <= 1.0))
    throw std::invalid_argument("platform share must lie in (0,1]");
  return static_cast<std::size_t>(std::llround(static_cast<double>(population) * platform_share));
}

}  // namespace locinfer
