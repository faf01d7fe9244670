#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace locinfer;
using testsupport::g0;

namespace {

std::vector<UserId> sorted(const AdjSet& s) {
  std::vector<UserId> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Multigraph, AddFollowSingleEdge) {
  Multigraph g;
  g.add_follow(1, 2);
  EXPECT_EQ(sorted(g.followers(2)), (std::vector<UserId>{1}));
  EXPECT_EQ(sorted(g.followees(1)), (std::vector<UserId>{2}));
}

TEST(Multigraph, AddFollowIsIdempotent) {
  Multigraph g;
  g.add_follow(1, 2);
  g.add_follow(1, 2);
  EXPECT_EQ(g.followers(2).size(), 1u);
  EXPECT_EQ(g.follow_edge_count(), 1u);
}

TEST(Multigraph, SelfLoopsRejected) {
  Multigraph g;
  EXPECT_THROW(g.add_follow(3, 3), SelfLoopError);
  EXPECT_THROW(g.add_interaction(4, 4, 1), SelfLoopError);
  EXPECT_EQ(g.follow_edge_count(), 0u);
  EXPECT_EQ(g.interaction_edge_count(), 0u);
}

TEST(Multigraph, InteractionWeightsAccumulate) {
  Multigraph g;
  g.add_interaction(1, 2, 3);
  EXPECT_EQ(g.interaction_weight(1, 2), 3u);
  g.add_interaction(1, 2, 1);
  EXPECT_EQ(g.interaction_weight(1, 2), 4u);
  EXPECT_EQ(g.responders(2).at(1), 4u);
  EXPECT_EQ(g.out_interaction_weight(1), 4u);
  EXPECT_EQ(g.interaction_edge_count(), 1u);
}

TEST(Multigraph, ZeroInteractionCountRejected) {
  Multigraph g;
  EXPECT_THROW(g.add_interaction(1, 2, 0), std::invalid_argument);
  EXPECT_EQ(g.interaction_weight(1, 2), 0u);
}

TEST(Multigraph, NeighborsOnG0) {
  const auto g = g0();
  EXPECT_EQ(g.neighbors(5), (std::vector<UserId>{4}));
  EXPECT_EQ(g.neighbors(1), (std::vector<UserId>{2, 3, 4}));
  EXPECT_TRUE(Multigraph{}.neighbors(9).empty());
}

TEST(Multigraph, MutualFollowersOnG0) {
  const auto g = g0();
  EXPECT_EQ(g.mutual_followers(1), (std::vector<UserId>{2, 3}));
  EXPECT_TRUE(g.mutual_followers(5).empty());
  const UserSet restrict{2};
  EXPECT_EQ(g.mutual_followers(1, &restrict), (std::vector<UserId>{2}));
}

TEST(Multigraph, AvgMutualDegree) {
  const auto g = g0();
  EXPECT_DOUBLE_EQ(avg_mutual_degree(g, {1, 2, 3}), 2.0);
  EXPECT_DOUBLE_EQ(avg_mutual_degree(g, {5}), 0.0);
  EXPECT_THROW(avg_mutual_degree(g, {}), std::invalid_argument);
}

TEST(Multigraph, UnknownUsersHaveEmptyNeighborhoods) {
  const auto g = g0();
  EXPECT_TRUE(g.followers(42).empty());
  EXPECT_TRUE(g.followees(42).empty());
  EXPECT_TRUE(g.initiators(42).empty());
  EXPECT_TRUE(g.responders(42).empty());
  EXPECT_EQ(g.out_interaction_weight(42), 0u);
}

TEST(Multigraph, InducedKeepsBothLayers) {
  const auto g = g0();
  const auto sub = g.induced({1, 2, 4});
  EXPECT_EQ(sub.follow_edge_count(), 5u);  // 1-2, 2-1, 4-1, 4-2, 2-4
  EXPECT_EQ(sub.interaction_weight(1, 2), 3u);
  EXPECT_EQ(sub.interaction_weight(4, 1), 2u);
  EXPECT_EQ(sub.interaction_weight(3, 2), 0u);
}

TEST(MultigraphProperty, TransposesAndNeighborsMatchEdgeScan) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    const UserId n = 2 + rep % 25;
    const auto e = testsupport::random_edges(rng, n, 0.15, 0.1);
    const auto g = e.build();
    EXPECT_EQ(g.follow_edge_count(), e.follows.size());
    EXPECT_EQ(g.interaction_edge_count(), e.interactions.size());
    for (UserId u = 1; u <= n + 1; ++u) {
      const auto nb = g.neighbors(u);
      const auto want = testsupport::naive_neighbors(e, u);
      EXPECT_EQ(std::set<UserId>(nb.begin(), nb.end()), want);
      EXPECT_EQ(std::set<UserId>(g.followers(u).begin(), g.followers(u).end()), testsupport::naive_followers(e, u));
      for (UserId v : g.followees(u)) EXPECT_TRUE(g.followers(v).count(u));
      for (const auto& [v, w] : g.initiators(u)) {
        EXPECT_GE(w, 1u);
        EXPECT_EQ(g.responders(v).at(u), w);
      }
    }
  }
}
