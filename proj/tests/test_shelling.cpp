#include <doctest.h>

#include <algorithm>
#include <set>

#include "mchom/families.hpp"
#include "mchom/partitions.hpp"
#include "mchom/shelling.hpp"

using namespace mchom;

namespace {

// Singleton-free partitions of [n] with >= 2 blocks, as faces per dimension.
std::map<int, std::set<Face>> singleton_free_partitions(int n) {
  std::vector<int> ground;
  for (int i = 1; i <= n; ++i) ground.push_back(i);
  SetPartitionConstraints c;
  c.min_block_size = 2;
  c.forbid_full_block = true;
  std::map<int, std::set<Face>> out;
  for (const SetPartition& sp : set_partitions(ground, c)) {
    Face f = Face::from_set_partition(sp);
    out[f.dimension()].insert(f);
  }
  return out;
}

}  // namespace

TEST_CASE("singleton order starts at the discrete partition") {
  Complex X = build_X(4);
  ShellingOrder order = singleton_shelling_order(X);
  CHECK(order.facet_order.size() == 14);
  CHECK(X.facets()[static_cast<std::size_t>(order.facet_order[0])] ==
        Face::parse("1|2|3|4"));
  // Singleton counts never increase along the order.
  auto singles = [&](int idx) {
    int c = 0;
    for (Block b : X.facets()[static_cast<std::size_t>(idx)].blocks())
      if (b.size() == 1) ++c;
    return c;
  };
  for (std::size_t t = 1; t < order.facet_order.size(); ++t)
    CHECK(singles(order.facet_order[t - 1]) >= singles(order.facet_order[t]));
}

TEST_CASE("singleton order shells X(n) under all tie-breaks") {
  for (int n = 3; n <= 6; ++n) {
    Complex X = build_X(n);
    for (TieBreak tb : {TieBreak::LexAsc, TieBreak::LexDesc, TieBreak::Seeded}) {
      for (std::uint64_t seed : {0ull, 7ull}) {
        ShellingOrder order = singleton_shelling_order(X, tb, seed);
        CHECK(check_shelling(X, order).is_shelling);
        if (tb != TieBreak::Seeded) break;
      }
    }
  }
}

TEST_CASE("restriction sets of X(4) under the default order") {
  Complex X = build_X(4);
  ShellingOrder order = singleton_shelling_order(X);
  // First facet: empty restriction.
  RestrictionSet r0 = restriction_set(X, order, 0);
  CHECK(r0.facet == Face::parse("1|2|3|4"));
  CHECK(r0.restriction.empty());
  // A two-singleton facet drops to the earlier discrete partition only by
  // removing its pair block.
  for (int t = 1; t <= 6; ++t) {
    RestrictionSet r = restriction_set(X, order, t);
    REQUIRE(r.restriction.size() == 1);
    CHECK(r.restriction[0].size() == 2);
  }
  // The pair-pair facets restrict to themselves: homology facets.
  std::map<int, std::vector<Face>> hf = homology_facets(X, order);
  REQUIRE(hf.count(1) == 1);
  std::set<Face> got(hf[1].begin(), hf[1].end());
  std::set<Face> want = {Face::parse("1,2|3,4"), Face::parse("1,3|2,4"),
                         Face::parse("1,4|2,3")};
  CHECK(got == want);
  CHECK(hf.size() == 1);  // nothing in other dimensions
}

TEST_CASE("homology facets are the singleton-free partitions") {
  for (int n = 3; n <= 7; ++n) {
    Complex X = build_X(n);
    std::map<int, std::set<Face>> expected = singleton_free_partitions(n);
    for (TieBreak tb : {TieBreak::LexAsc, TieBreak::LexDesc, TieBreak::Seeded}) {
      std::map<int, std::vector<Face>> hf =
          homology_facets(X, singleton_shelling_order(X, tb, 42));
      std::map<int, std::set<Face>> got;
      for (const auto& [d, faces] : hf)
        got[d] = std::set<Face>(faces.begin(), faces.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("shelling ranks equal beta") {
  for (int n = 3; n <= 7; ++n) {
    Complex X = build_X(n);
    std::map<int, long> ranks =
        homology_ranks_from_shelling(X, singleton_shelling_order(X));
    for (int q = 0; q <= X.dimension(); ++q) {
      long r = ranks.count(q) ? ranks.at(q) : 0;
      CHECK(Int(r) == beta(n, q));
    }
  }
}

TEST_CASE("a bad order is rejected with a witness") {
  Complex X = build_X(4);
  ShellingOrder order = singleton_shelling_order(X);
  std::reverse(order.facet_order.begin(), order.facet_order.end());
  ShellingCheckResult res = check_shelling(X, order);
  CHECK_FALSE(res.is_shelling);
  REQUIRE(res.violation.has_value());
  CHECK(res.violation->position > 0);
  CHECK((res.violation->reason == "impure-intersection" ||
         res.violation->reason == "empty-intersection"));
  CHECK_THROWS_AS(homology_facets(X, order), std::invalid_argument);
}

TEST_CASE("orders on non-partition facet sets are refused") {
  // M(K_4) facets are perfect matchings, hence partitions of [4]; they are
  // accepted.  M(K_5) facets leave one vertex uncovered and are refused.
  Complex m4 = matching_complex(complete_graph(4));
  CHECK(singleton_shelling_order(m4).facet_order.size() == 3);
  Complex m5 = matching_complex(complete_graph(5));
  CHECK_THROWS_AS(singleton_shelling_order(m5), std::invalid_argument);
}

TEST_CASE("restriction sets require the condition to hold up to t") {
  Complex X = build_X(4);
  ShellingOrder order = singleton_shelling_order(X);
  std::reverse(order.facet_order.begin(), order.facet_order.end());
  CHECK_THROWS_AS(restriction_set(X, order, static_cast<int>(order.facet_order.size()) - 1),
                  std::invalid_argument);
}
