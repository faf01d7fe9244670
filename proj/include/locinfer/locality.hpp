#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "locinfer/multigraph.hpp"

namespace locinfer {

/// Which neighborhood a set-level locality ratio is taken over.
enum class NeighborRole { Follower, Followee, Initiator };

/// Scoring rule for a candidate user.
class LocalityKind {
 public:
  enum class Variant { Follower, Followee, Initiator, MaxOfThree, Weighted };

  static LocalityKind follower() { return LocalityKind(Variant::Follower); }
  static LocalityKind followee() { return LocalityKind(Variant::Followee); }
  static LocalityKind initiator() { return LocalityKind(Variant::Initiator); }
  static LocalityKind max_of_three() { return LocalityKind(Variant::MaxOfThree); }
  static LocalityKind weighted(double follower_w = 1.0 / 3, double followee_w = 1.0 / 3,
                               double initiator_w = 1.0 / 3) {
    const std::array<double, 3> eps{follower_w, followee_w, initiator_w};
    for (double e : eps)
      if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("locality weight outside [0,1]");
    if (std::abs(eps[0] + eps[1] + eps[2] - 1.0) > 1e-9)
      throw std::invalid_argument("locality weights must sum to 1");
    LocalityKind k(Variant::Weighted);
    k.eps_ = eps;
    return k;
  }

  /// The five kinds the pipeline is evaluated with, weighted at 1/3 each.
  static std::array<LocalityKind, 5> all() {
    return {follower(), followee(), initiator(), max_of_three(), weighted()};
  }

  /// Accepts follower|followee|initiator|max|weighted.
  static LocalityKind parse(std::string_view name) {
    if (name == "follower") return follower();
    if (name == "followee") return followee();
    if (name == "initiator") return initiator();
    if (name == "max") return max_of_three();
    if (name == "weighted") return weighted();
    throw std::invalid_argument("unknown locality kind '" + std::string(name) + "'");
  }

  Variant variant() const { return variant_; }
  const std::array<double, 3>& weights() const { return eps_; }

  std::string name() const {
    switch (variant_) {
      case Variant::Follower: return "follower";
      case Variant::Followee: return "followee";
      case Variant::Initiator: return "initiator";
      case Variant::MaxOfThree: return "max";
      case Variant::Weighted: return "weighted";
    }
    return "?";
  }

  bool uses_follower() const { return variant_ == Variant::Follower || combined(); }
  bool uses_followee() const { return variant_ == Variant::Followee || combined(); }
  bool uses_initiator() const { return variant_ == Variant::Initiator || combined(); }

  bool operator==(const LocalityKind&) const = default;

 private:
  explicit LocalityKind(Variant v) : variant_(v) {}
  bool combined() const { return variant_ == Variant::MaxOfThree || variant_ == Variant::Weighted; }

  Variant variant_;
  std::array<double, 3> eps_{1.0 / 3, 1.0 / 3, 1.0 / 3};
};

/// A ratio hits/total over a fixed denominator. Zero total scores 0.
struct Ratio {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

/// The three per-user locality ratios. Each is kept as an integer count over
/// a denominator fixed by the graph so repeated evaluation is bit-stable.
struct LocalityComponents {
  Ratio follower;
  Ratio followee;
  Ratio initiator;
};

inline double combine(const LocalityKind& kind, const LocalityComponents& c) {
  const double fr = c.follower.value();
  const double fe = c.followee.value();
  const double in = c.initiator.value();
  switch (kind.variant()) {
    case LocalityKind::Variant::Follower: return fr;
    case LocalityKind::Variant::Followee: return fe;
    case LocalityKind::Variant::Initiator: return in;
    case LocalityKind::Variant::MaxOfThree: return std::max({fr, fe, in});
    case LocalityKind::Variant::Weighted: {
      const auto& e = kind.weights();
      return e[0] * fr + e[1] * fe + e[2] * in;
    }
  }
  return 0.0;
}

inline LocalityComponents user_components(const Multigraph& g, UserId u, const UserSet& seeds) {
  LocalityComponents c;
  const auto& in = g.followers(u);
  c.follower.total = in.size();
  for (UserId v : in) c.follower.hits += seeds.count(v);
  const auto& out = g.followees(u);
  c.followee.total = out.size();
  for (UserId v : out) c.followee.hits += seeds.count(v);
  c.initiator.total = g.out_interaction_weight(u);
  for (const auto& [v, w] : g.initiators(u))
    if (seeds.count(v)) c.initiator.hits += w;
  return c;
}

/// l(u) for a non-seed candidate against the seed set.
inline double user_locality(const Multigraph& g, UserId u, const UserSet& seeds, const LocalityKind& kind) {
  if (seeds.count(u)) throw std::invalid_argument("user_locality: user " + std::to_string(u) + " is a seed");
  return combine(kind, user_components(g, u, seeds));
}

/// Set-level locality of V': share of V's follower/followee neighborhood
/// (or outgoing interaction weight) that falls back inside V'.
inline double set_locality(const Multigraph& g, const UserSet& subset, NeighborRole role) {
  if (subset.empty()) throw std::invalid_argument("set_locality: empty subset");
  if (role == NeighborRole::Initiator) {
    Ratio r;
    for (UserId u : subset) {
      for (const auto& [v, w] : g.initiators(u)) {
        r.total += w;
        if (subset.count(v)) r.hits += w;
      }
    }
    return r.value();
  }
  UserSet hood;
  for (UserId u : subset) {
    const auto& adj = role == NeighborRole::Follower ? g.followers(u) : g.followees(u);
    hood.insert(adj.begin(), adj.end());
  }
  Ratio r{0, hood.size()};
  for (UserId v : hood) r.hits += subset.count(v);
  return r.value();
}

/// Fraction of V's interaction targets that are also follow-neighbors of V'.
inline double interaction_overlap(const Multigraph& g, const UserSet& subset) {
  if (subset.empty()) throw std::invalid_argument("interaction_overlap: empty subset");
  UserSet follow_hood;
  UserSet targets;
  for (UserId u : subset) {
    follow_hood.insert(g.followers(u).begin(), g.followers(u).end());
    follow_hood.insert(g.followees(u).begin(), g.followees(u).end());
    for (const auto& [v, w] : g.initiators(u)) targets.insert(v);
  }
  Ratio r{0, targets.size()};
  for (UserId v : targets) r.hits += follow_hood.count(v);
  return r.value();
}

}  // namespace locinfer
