#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "locinfer/ingest.hpp"
#include "locinfer/locality.hpp"
#include "locinfer/multigraph.hpp"
#include "locinfer/random.hpp"

namespace locinfer {

/// Dials of the planted-area generator.
///
/// Three blocks: the area (inside), a boundary ring of outside users who are
/// the only ones with cross-boundary edges, and a far background. Inside and
/// all outside users each form an Erdos-Renyi mutual-follow core (mean mutual
/// degree `mutual_degree` and `outside_mutual_degree`); the ring gets an extra
/// core of its own (`boundary_mutual_degree`). Directed cross edges between
/// inside and ring users, a few heavily followed "celebrities" and
/// interactions layered on follow edges complete the picture.
///
/// The defaults are the desk-scale corpus: the inside core is dense enough
/// that the disclosing users (the seeds) keep about 12 mutual followers among
/// themselves, which is the regime the coverage bound talks about.
struct SynthConfig {
  std::uint64_t n_inside = 5000;
  std::uint64_t n_outside = 100000;
  double mutual_degree = 12.0 / 0.159;
  double outside_mutual_degree = 12.0;
  double boundary_frac = 0.1;
  double boundary_mutual_degree = 60.0;
  double extra_follow_in = 0.0;
  double p_cross = 0.003;
  double cross_reciprocity = 0.5;
  double celebrity_frac = 0.0;
  double celebrity_indeg_mult = 1.0;
  double q_interact = 0.1;
  double cross_interact_factor = 0.3;
  double interact_offnet = 0.038;
  double mean_weight = 2.0;
  double disclose_frac = 0.159;
  std::uint64_t rng_seed = 1;

  std::uint64_t boundary_size() const {
    return static_cast<std::uint64_t>(std::llround(boundary_frac * static_cast<double>(n_outside)));
  }

  void validate() const {
    auto prob = [](double v, const char* name, bool closed_top) {
      if (!(v >= 0.0 && (closed_top ? v <= 1.0 : v < 1.0)))
        throw std::invalid_argument(std::string(name) + " out of range");
    };
    if (n_inside < 2) throw std::invalid_argument("n_inside must be >= 2");
    if (!(mutual_degree > 0.0 && mutual_degree < static_cast<double>(n_inside - 1)))
      throw std::invalid_argument("d_m must lie in (0, n_inside - 1)");
    if (!(outside_mutual_degree >= 0.0) ||
        (n_outside > 1 && outside_mutual_degree >= static_cast<double>(n_outside - 1)))
      throw std::invalid_argument("outside d_m must lie in [0, n_outside - 1)");
    if (!(boundary_frac > 0.0 && boundary_frac <= 1.0)) throw std::invalid_argument("boundary_frac must lie in (0,1]");
    if (!(boundary_mutual_degree >= 0.0) ||
        (boundary_size() > 1 && boundary_mutual_degree >= static_cast<double>(boundary_size() - 1)))
      throw std::invalid_argument("boundary d_m must lie in [0, ring size - 1)");
    if (!(extra_follow_in >= 0.0)) throw std::invalid_argument("extra_follow_in must be >= 0");
    prob(p_cross, "p_cross", false);
    prob(cross_reciprocity, "cross_reciprocity", true);
    prob(celebrity_frac, "celebrity_frac", false);
    if (!(celebrity_indeg_mult >= 1.0)) throw std::invalid_argument("celebrity_indeg_mult must be >= 1");
    prob(q_interact, "q_interact", true);
    prob(cross_interact_factor, "cross_interact_factor", true);
    prob(interact_offnet, "interact_offnet", false);
    if (!(mean_weight >= 1.0)) throw std::invalid_argument("mean_weight must be >= 1");
    if (!(disclose_frac > 0.0 && disclose_frac <= 1.0)) throw std::invalid_argument("disclose_frac must lie in (0,1]");
  }
};

/// Generated corpus with its ground truth.
struct LabeledGraph {
  Multigraph graph;
  std::vector<UserProfile> profiles;
  Gazetteer gazetteer;

  UserSet with_label(AreaLabel label) const {
    UserSet out;
    for (const auto& p : profiles)
      if (p.truth == label) out.insert(p.id);
    return out;
  }
};

namespace synth_detail {

inline const std::vector<std::string>& area_cities() {
  static const std::vector<std::string> v{"Pittsburgh",   "Bethel Park",  "Mount Lebanon", "Monroeville",
                                          "Cranberry Township", "Wexford", "McKeesport",  "Sewickley"};
  return v;
}

inline const std::vector<std::string>& elsewhere_cities() {
  static const std::vector<std::string> v{"Chicago, IL", "Los Angeles, CA", "Tucson, AZ", "Denver, CO",
                                          "Atlanta, GA", "Seattle, WA",     "Boston, MA", "Austin, TX"};
  return v;
}

inline const std::vector<std::string>& noise_locations() {
  static const std::vector<std::string> v{"", "somewhere you're not", "earth", "", "worldwide", "in my head", ""};
  return v;
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace synth_detail

/// Builds the corpus. Identical configs (including rng_seed) give identical output.
inline LabeledGraph generate(const SynthConfig& cfg) {
  cfg.validate();
  using namespace synth_detail;
  Rng rng(cfg.rng_seed);
  const std::uint64_t total = cfg.n_inside + cfg.n_outside;

  // Slot k < n_inside is inside; ids are a shuffled 1..total so they carry no label.
  std::vector<UserId> id_of(total);
  for (std::uint64_t k = 0; k < total; ++k) id_of[k] = k + 1;
  std::shuffle(id_of.begin(), id_of.end(), rng);

  Multigraph g;
  auto mutual = [&](UserId a, UserId b) {
    g.add_follow(a, b);
    g.add_follow(b, a);
  };
  sample_gnp(cfg.n_inside, cfg.mutual_degree / static_cast<double>(cfg.n_inside - 1), rng,
             [&](std::uint64_t v, std::uint64_t w) { mutual(id_of[v], id_of[w]); });
  if (cfg.n_outside > 1 && cfg.outside_mutual_degree > 0.0) {
    sample_gnp(cfg.n_outside, cfg.outside_mutual_degree / static_cast<double>(cfg.n_outside - 1), rng,
               [&](std::uint64_t v, std::uint64_t w) { mutual(id_of[cfg.n_inside + v], id_of[cfg.n_inside + w]); });
  }

  const std::uint64_t ring = cfg.boundary_size();
  if (ring > 1 && cfg.boundary_mutual_degree > 0.0) {
    sample_gnp(ring, cfg.boundary_mutual_degree / static_cast<double>(ring - 1), rng,
               [&](std::uint64_t v, std::uint64_t w) { mutual(id_of[cfg.n_inside + v], id_of[cfg.n_inside + w]); });
  }

  const auto extra = static_cast<std::uint64_t>(std::llround(cfg.extra_follow_in * static_cast<double>(cfg.n_inside)));
  std::uniform_int_distribution<std::uint64_t> inside_slot(0, cfg.n_inside - 1);
  for (std::uint64_t added = 0, attempts = 0; added < extra && attempts < 50 * extra + 100; ++attempts) {
    UserId a = id_of[inside_slot(rng)];
    UserId b = id_of[inside_slot(rng)];
    if (a == b || g.follows(a, b)) continue;
    g.add_follow(a, b);
    ++added;
  }

  auto cross = [&](UserId a, UserId b) {
    g.add_follow(a, b);
    if (cfg.cross_reciprocity > 0.0 && uniform01(rng) < cfg.cross_reciprocity) g.add_follow(b, a);
  };
  sample_bernoulli_grid(cfg.n_inside, ring, cfg.p_cross, rng, [&](std::uint64_t i, std::uint64_t o) {
    cross(id_of[i], id_of[cfg.n_inside + o]);
  });
  sample_bernoulli_grid(ring, cfg.n_inside, cfg.p_cross, rng, [&](std::uint64_t o, std::uint64_t i) {
    cross(id_of[cfg.n_inside + o], id_of[i]);
  });

  const auto n_celeb = static_cast<std::uint64_t>(std::llround(cfg.celebrity_frac * static_cast<double>(total)));
  if (n_celeb > 0 && cfg.celebrity_indeg_mult > 1.0) {
    std::uniform_int_distribution<std::uint64_t> any_slot(0, total - 1);
    for (auto slot : sample_without_replacement(total, n_celeb, rng)) {
      const UserId c = id_of[slot];
      const auto want = static_cast<std::uint64_t>(
          std::llround((cfg.celebrity_indeg_mult - 1.0) * static_cast<double>(g.follower_count(c))));
      for (std::uint64_t added = 0, attempts = 0; added < want && attempts < 50 * want + 100; ++attempts) {
        UserId f = id_of[any_slot(rng)];
        if (f == c || g.follows(f, c)) continue;
        g.add_follow(f, c);
        ++added;
      }
    }
  }

  std::poisson_distribution<std::uint64_t> extra_weight(std::max(cfg.mean_weight - 1.0, 1e-12));
  auto draw_weight = [&] { return cfg.mean_weight > 1.0 ? 1 + extra_weight(rng) : Weight{1}; };
  std::vector<char> inside_id(total + 1, 0);
  for (std::uint64_t k = 0; k < cfg.n_inside; ++k) inside_id[id_of[k]] = 1;
  std::uint64_t on_network = 0;
  if (cfg.q_interact > 0.0) {
    for (const auto& [a, b] : g.follow_edges()) {
      const double q = inside_id[a] == inside_id[b] ? cfg.q_interact : cfg.q_interact * cfg.cross_interact_factor;
      if (uniform01(rng) < q) {
        g.add_interaction(a, b, draw_weight());
        ++on_network;
      }
    }
  }
  if (cfg.interact_offnet > 0.0) {
    const auto want = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(on_network) * cfg.interact_offnet / (1.0 - cfg.interact_offnet)));
    std::uniform_int_distribution<std::uint64_t> any_slot(0, total - 1);
    for (std::uint64_t added = 0, attempts = 0; added < want && attempts < 50 * want + 100; ++attempts) {
      UserId a = id_of[any_slot(rng)];
      UserId b = id_of[any_slot(rng)];
      if (a == b || g.follows(a, b) || g.follows(b, a) || g.interaction_weight(a, b) > 0) continue;
      g.add_interaction(a, b, draw_weight());
      ++added;
    }
  }

  std::vector<UserProfile> profiles;
  profiles.reserve(total);
  for (std::uint64_t k = 0; k < total; ++k) {
    UserProfile p;
    p.id = id_of[k];
    if (k < cfg.n_inside) {
      p.truth = AreaLabel::Inside;
      if (uniform01(rng) < cfg.disclose_frac) {
        p.location_text = pick(area_cities(), rng) + ", PA";
      } else {
        p.location_text = pick(noise_locations(), rng);
      }
    } else {
      p.truth = AreaLabel::Outside;
      p.location_text = pick(elsewhere_cities(), rng);
    }
    profiles.push_back(std::move(p));
  }
  std::sort(profiles.begin(), profiles.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  return LabeledGraph{std::move(g), std::move(profiles), Gazetteer(area_cities())};
}

/// Structural measurements of a corpus, inside set versus a random set.
struct StructuralSummary {
  std::size_t inside_users = 0;
  std::size_t follow_edges = 0;
  std::size_t interaction_edges = 0;
  /// follower, followee, initiator set locality.
  std::array<double, 3> inside_locality{};
  std::array<double, 3> random_locality{};
  double inside_mutual_degree = 0.0;
  double inside_interaction_overlap = 0.0;
  double mean_followers = 0.0;
  double mean_followees = 0.0;
  double mean_initiators = 0.0;
};

inline StructuralSummary measure(const LabeledGraph& gl, std::uint64_t rng_seed = 7) {
  StructuralSummary m;
  const auto inside = gl.with_label(AreaLabel::Inside);
  m.inside_users = inside.size();
  m.follow_edges = gl.graph.follow_edge_count();
  m.interaction_edges = gl.graph.interaction_edge_count();
  if (inside.empty()) return m;

  std::vector<UserId> everyone;
  everyone.reserve(gl.profiles.size());
  for (const auto& p : gl.profiles) everyone.push_back(p.id);
  Rng rng(rng_seed);
  UserSet random_set;
  for (auto i : sample_without_replacement(everyone.size(), std::min(inside.size(), everyone.size()), rng))
    random_set.insert(everyone[i]);

  constexpr std::array<NeighborRole, 3> roles{NeighborRole::Follower, NeighborRole::Followee, NeighborRole::Initiator};
  for (std::size_t r = 0; r < roles.size(); ++r) {
    m.inside_locality[r] = set_locality(gl.graph, inside, roles[r]);
    m.random_locality[r] = set_locality(gl.graph, random_set, roles[r]);
  }
  m.inside_mutual_degree = avg_mutual_degree(gl.graph, inside);
  m.inside_interaction_overlap = interaction_overlap(gl.graph, inside);
  for (UserId u : inside) {
    m.mean_followers += static_cast<double>(gl.graph.follower_count(u));
    m.mean_followees += static_cast<double>(gl.graph.followee_count(u));
    m.mean_initiators += static_cast<double>(gl.graph.initiators(u).size());
  }
  const auto n = static_cast<double>(inside.size());
  m.mean_followers /= n;
  m.mean_followees /= n;
  m.mean_initiators /= n;
  return m;
}

}  // namespace locinfer
