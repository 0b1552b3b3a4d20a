#include <gtest/gtest.h>

#include <random>
#include <set>

#include "finitetop/invlimit.hpp"

using namespace finitetop;

TEST(Bonding, Examples) {
  EXPECT_EQ(bonding(NatSubset{1, 2}, NatSubset{1, 2, 3}, NatSubset{1, 3}), (NatSubset{1, 2}));
  EXPECT_EQ(bonding(NatSubset{1, 2}, NatSubset{1, 2, 3}, NatSubset{2}), (NatSubset{2}));
  EXPECT_EQ(bonding(NatSubset{1, 2}, NatSubset{1, 2, 3}, NatSubset{3}), (NatSubset{1, 2}));
  EXPECT_THROW(bonding(NatSubset{1, 4}, NatSubset{1, 2, 3}, NatSubset{1}), DomainError);
  EXPECT_THROW(bonding(NatSubset{1}, NatSubset{1, 2}, NatSubset{5}), DomainError);
}

TEST(Bonding, Sequence) {
  EXPECT_EQ(bonding_seq(2, NatSubset{1, 3}), (NatSubset{1, 2}));
  EXPECT_EQ(bonding_seq(2, NatSubset{2}), (NatSubset{2}));
  EXPECT_EQ(bonding_seq(1, NatSubset{2}), (NatSubset{1}));
  EXPECT_THROW(bonding_seq(2, NatSubset{4}), DomainError);
  EXPECT_THROW(bonding_seq(0, NatSubset{1}), DomainError);
}

TEST(Bonding, MapsAreContinuous) {
  const InverseSystem sys(DirectedIndex::all_subsets(NatSubset{1, 2, 3}));
  const auto& idx = sys.index();
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (idx[i].is_subset_of(idx[j])) {
        EXPECT_TRUE(is_continuous(sys.bonding_map(i, j)));
      }
  EXPECT_THROW(sys.bonding_map(idx.position(NatSubset{1, 2}).value(), idx.position(NatSubset{3}).value()),
               DomainError);
}

// p_{C,C''} = p_{C,C'} ∘ p_{C',C''} for every chain C ⊆ C' ⊆ C'' with |C''| <= 6.
TEST(Bonding, Functorial) {
  const auto subsets = stage_points(initial_segment(6));
  for (const auto& c2 : subsets) {
    for (const auto& c1 : stage_points(c2)) {
      for (const auto& c0 : stage_points(c1))
        for (const auto& d : stage_points(c2))
          ASSERT_EQ(bonding(c0, c2, d), bonding(c0, c1, bonding(c1, c2, d)));
    }
    if (c2.size() > 4) continue;  // identity law checked on the smaller ones
    for (const auto& d : stage_points(c2)) ASSERT_EQ(bonding(c2, c2, d), d);
  }
}

TEST(DirectedIndex, UnionClosure) {
  const auto idx = DirectedIndex::close({NatSubset{1}, NatSubset{2}});
  EXPECT_FALSE(idx.was_closed());
  EXPECT_EQ(idx.size(), 3u);
  EXPECT_TRUE(idx.position(NatSubset{1, 2}).has_value());
  EXPECT_EQ(idx[*idx.maximum()], (NatSubset{1, 2}));
  EXPECT_TRUE(DirectedIndex::chain(4).was_closed());
  EXPECT_THROW(DirectedIndex::close({}), DomainError);
}

TEST(InverseLimit, ThreadsOfFinitePoints) {
  const auto idx = DirectedIndex::chain(3);
  const auto t = thread_of(NatSubset{1, 3}, idx);
  EXPECT_FALSE(t.is_top());
  EXPECT_EQ(t.components, (std::vector<NatSubset>{{1}, {1, 2}, {1, 3}}));
  EXPECT_EQ(thread_of(NatSubset{2}, idx).components, (std::vector<NatSubset>{{1}, {2}, {2}}));
  const auto top = thread_of(ExtendedPoint::top(), idx);
  EXPECT_TRUE(top.is_top());
  EXPECT_EQ(top.components, (std::vector<NatSubset>{{1}, {1, 2}, {1, 2, 3}}));
}

TEST(InverseLimit, IsThread) {
  const InverseSystem sys(DirectedIndex::chain(3));
  EXPECT_TRUE(is_thread({NatSubset{1}, NatSubset{2}, NatSubset{2}}, sys));
  EXPECT_FALSE(is_thread({NatSubset{1}, NatSubset{2}, NatSubset{3}}, sys));
  EXPECT_THROW(is_thread({NatSubset{1}, NatSubset{2}}, sys), DomainError);
  EXPECT_THROW(is_thread({NatSubset{2}, NatSubset{2}, NatSubset{2}}, sys), DomainError);
}

TEST(InverseLimit, EnumerationCounts) {
  EXPECT_EQ(enumerate_limit(InverseSystem(DirectedIndex::chain(2))).size(), 3u);
  EXPECT_EQ(enumerate_limit(InverseSystem(DirectedIndex::chain(3))).size(), 7u);
  EXPECT_EQ(enumerate_limit(InverseSystem(DirectedIndex::close({NatSubset{1}}))).size(), 1u);
  EXPECT_EQ(enumerate_limit(InverseSystem(DirectedIndex::all_subsets(NatSubset{1, 2, 3}))).size(), 7u);
}

TEST(InverseLimit, ThreadsAreExactlyTheImagesOfH) {
  const NatSubset top{1, 2, 4};
  const InverseSystem sys(DirectedIndex::all_subsets(top));
  const auto limit = enumerate_limit(sys);
  std::set<std::vector<NatSubset>> expected;
  for (const auto& d : stage_points(top)) expected.insert(thread_of(d, sys.index()).components);
  EXPECT_EQ(std::set<std::vector<NatSubset>>(limit.begin(), limit.end()), expected);
  for (const auto& t : limit) EXPECT_TRUE(is_thread(t, sys));
}

TEST(InverseLimit, EnumerationGuard) {
  EXPECT_THROW(enumerate_limit(InverseSystem(DirectedIndex::chain(7))), ResourceError);
}

TEST(SequenceThreads, Examples) {
  EXPECT_EQ(sequence_thread(NatSubset{1, 3}, 3), (std::vector<NatSubset>{{1}, {1, 2}, {1, 3}}));
  EXPECT_EQ(sequence_thread(NatSubset{2}, 3), (std::vector<NatSubset>{{1}, {2}, {2}}));
  EXPECT_EQ(sequence_top_thread(3), (std::vector<NatSubset>{{1}, {1, 2}, {1, 2, 3}}));
}

TEST(HBijection, PassesForSmallN) {
  for (std::uint64_t n = 1; n <= 8; ++n) {
    const auto r = verify_h_bijection(n);
    EXPECT_TRUE(r.all_pass()) << "n = " << n;
    EXPECT_EQ(r.top_thread, sequence_top_thread(n));
  }
  EXPECT_THROW(verify_h_bijection(0), DomainError);
  EXPECT_THROW(verify_h_bijection(13), ResourceError);
}

TEST(HBijection, SequenceThreadsMatchLimitOfChain) {
  const std::uint64_t n = 4;
  const auto limit = enumerate_limit(InverseSystem(DirectedIndex::chain(n)));
  std::set<std::vector<NatSubset>> images;
  for (const auto& d : stage_points(initial_segment(n))) images.insert(sequence_thread(d, n));
  EXPECT_EQ(std::set<std::vector<NatSubset>>(limit.begin(), limit.end()), images);
}

TEST(HBijection, OpennessCertificate) {
  for (std::uint64_t n = 1; n <= 5; ++n) EXPECT_TRUE(openness_certificate(n)) << "n = " << n;
  EXPECT_THROW(openness_certificate(6), ResourceError);
}

TEST(Unrolling, TableShape) {
  const auto t = unrolling_table(3);
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 9);
  EXPECT_NE(t.find("{1,2,3}   <- h(N)"), std::string::npos);
  EXPECT_EQ(t.substr(0, t.find('\n')), "2^{1}   2^{1,2}   2^{1,2,3}");
  EXPECT_THROW(unrolling_table(6), DomainError);
}

TEST(Unrolling, DotEdgesFollowBonding) {
  const auto dot = unrolling_dot(2);
  EXPECT_NE(dot.find("\"2:{2}\" -> \"1:{1}\""), std::string::npos);
  EXPECT_NE(dot.find("\"2:{1,2}\" -> \"1:{1}\""), std::string::npos);
}
