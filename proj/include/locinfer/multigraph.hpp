#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace locinfer {

using UserId = std::uint64_t;
using Weight = std::uint64_t;
using UserSet = std::unordered_set<UserId>;
using AdjSet = std::unordered_set<UserId>;
using WeightMap = std::unordered_map<UserId, Weight>;

class SelfLoopError : public std::invalid_argument {
 public:
  explicit SelfLoopError(UserId u)
      : std::invalid_argument("self-loop on user " + std::to_string(u)) {}
};

inline std::vector<UserId> sorted_ids(const UserSet& s) {
  std::vector<UserId> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Directed multigraph with two edge layers over user ids.
///
/// The following layer holds unweighted edges `src -> dst` ("src follows
/// dst"); duplicates collapse. The interacting layer holds positive integer
/// weights that accumulate across repeated insertions. Both layers store the
/// forward and the transposed adjacency so in/out queries are O(1) lookups.
/// Users exist implicitly through their edges; querying an unknown id yields
/// an empty neighborhood.
class Multigraph {
 public:
  void add_follow(UserId src, UserId dst) {
    if (src == dst) throw SelfLoopError(src);
    if (follow_out_[src].insert(dst).second) {
      follow_in_[dst].insert(src);
      ++follow_edges_;
    }
  }

  void add_interaction(UserId src, UserId dst, Weight count) {
    if (src == dst) throw SelfLoopError(src);
    if (count == 0) throw std::invalid_argument("interaction weight must be >= 1");
    auto [it, fresh] = interact_out_[src].try_emplace(dst, 0);
    it->second += count;
    interact_in_[dst][src] += count;
    out_weight_[src] += count;
    if (fresh) ++interact_edges_;
  }

  /// N^F_O(u): users that u follows.
  const AdjSet& followees(UserId u) const { return lookup(follow_out_, u, empty_set_); }
  /// N^F_I(u): users following u.
  const AdjSet& followers(UserId u) const { return lookup(follow_in_, u, empty_set_); }
  /// N^I_O(u): users u retweeted, replied to or mentioned, with weights.
  const WeightMap& initiators(UserId u) const { return lookup(interact_out_, u, empty_map_); }
  /// N^I_I(u): users who interacted with u, with weights.
  const WeightMap& responders(UserId u) const { return lookup(interact_in_, u, empty_map_); }

  std::size_t follower_count(UserId u) const { return followers(u).size(); }
  std::size_t followee_count(UserId u) const { return followees(u).size(); }

  /// Total weight of u's outgoing interacting edges, w(N^I_O(u)).
  Weight out_interaction_weight(UserId u) const {
    auto it = out_weight_.find(u);
    return it == out_weight_.end() ? 0 : it->second;
  }

  bool follows(UserId src, UserId dst) const { return followees(src).count(dst) != 0; }

  Weight interaction_weight(UserId src, UserId dst) const {
    const auto& m = initiators(src);
    auto it = m.find(dst);
    return it == m.end() ? 0 : it->second;
  }

  std::size_t follow_edge_count() const { return follow_edges_; }
  std::size_t interaction_edge_count() const { return interact_edges_; }

  /// N(u): union of followers, followees, responders and initiators, sorted.
  std::vector<UserId> neighbors(UserId u) const {
    UserSet acc(followers(u).begin(), followers(u).end());
    acc.insert(followees(u).begin(), followees(u).end());
    for (const auto& [v, w] : initiators(u)) acc.insert(v);
    for (const auto& [v, w] : responders(u)) acc.insert(v);
    return sorted_ids(acc);
  }

  /// Users that follow u and are followed by u, optionally restricted.
  std::vector<UserId> mutual_followers(UserId u, const UserSet* restrict = nullptr) const {
    const auto& out = followees(u);
    const auto& in = followers(u);
    const auto& small = out.size() <= in.size() ? out : in;
    const auto& large = out.size() <= in.size() ? in : out;
    std::vector<UserId> res;
    for (UserId v : small) {
      if (large.count(v) && (!restrict || restrict->count(v))) res.push_back(v);
    }
    std::sort(res.begin(), res.end());
    return res;
  }

  /// Every user incident to at least one edge, sorted.
  std::vector<UserId> users() const {
    UserSet acc;
    for (const auto& [u, _] : follow_out_) acc.insert(u);
    for (const auto& [u, _] : follow_in_) acc.insert(u);
    for (const auto& [u, _] : interact_out_) acc.insert(u);
    for (const auto& [u, _] : interact_in_) acc.insert(u);
    return sorted_ids(acc);
  }

  /// Sub-multigraph keeping both edge layers between members of `keep`.
  Multigraph induced(const UserSet& keep) const {
    Multigraph sub;
    for (UserId u : sorted_ids(keep)) {
      auto fo = follow_out_.find(u);
      if (fo != follow_out_.end()) {
        for (UserId v : fo->second)
          if (keep.count(v)) sub.add_follow(u, v);
      }
      auto io = interact_out_.find(u);
      if (io != interact_out_.end()) {
        for (const auto& [v, w] : io->second)
          if (keep.count(v)) sub.add_interaction(u, v, w);
      }
    }
    return sub;
  }

  /// Follow edges as sorted (src, dst) pairs.
  std::vector<std::pair<UserId, UserId>> follow_edges() const {
    std::vector<std::pair<UserId, UserId>> out;
    out.reserve(follow_edges_);
    for (const auto& [u, adj] : follow_out_)
      for (UserId v : adj) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
  }

  struct InteractionEdge {
    UserId src;
    UserId dst;
    Weight weight;
    bool operator==(const InteractionEdge&) const = default;
  };

  /// Interacting edges sorted by (src, dst).
  std::vector<InteractionEdge> interaction_edges() const {
    std::vector<InteractionEdge> out;
    out.reserve(interact_edges_);
    for (const auto& [u, adj] : interact_out_)
      for (const auto& [v, w] : adj) out.push_back({u, v, w});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    return out;
  }

 private:
  template <class Map, class Value>
  static const Value& lookup(const Map& m, UserId u, const Value& fallback) {
    auto it = m.find(u);
    return it == m.end() ? fallback : it->second;
  }

  std::unordered_map<UserId, AdjSet> follow_out_;
  std::unordered_map<UserId, AdjSet> follow_in_;
  std::unordered_map<UserId, WeightMap> interact_out_;
  std::unordered_map<UserId, WeightMap> interact_in_;
  std::unordered_map<UserId, Weight> out_weight_;
  std::size_t follow_edges_ = 0;
  std::size_t interact_edges_ = 0;

  inline static const AdjSet empty_set_{};
  inline static const WeightMap empty_map_{};
};

/// d_m: mean number of mutual followers each member has inside `subset`.
inline double avg_mutual_degree(const Multigraph& g, const UserSet& subset) {
  if (subset.empty()) throw std::invalid_argument("avg_mutual_degree: empty subset");
  std::size_t total = 0;
  for (UserId u : subset) total += g.mutual_followers(u, &subset).size();
  return static_cast<double>(total) / static_cast<double>(subset.size());
}

}  // namespace locinfer
