#include <gtest/gtest.h>

#include <set>

#include "gen.hpp"
#include "gseq/error.hpp"
#include "gseq/ordinal.hpp"
#include "gseq/ordinal_set.hpp"

namespace gseq {
namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

TEST(Ordinal, CompareExamples) {
  EXPECT_EQ(ord_compare(Ordinal::finite(3), Ordinal::finite(3)), Order::Equal);
  EXPECT_EQ(ord_compare(O("w+3"), O("w*2")), Order::Less);
  EXPECT_EQ(ord_compare(O("w^2"), O("w*5+9")), Order::Greater);
}

TEST(Ordinal, ParsePrintRoundTrip) {
  for (const char* s : {"0", "7", "w", "w+1", "w*2+3", "w^2", "w^3*4+w+1"}) {
    EXPECT_EQ(O(s).to_string(), s);
  }
  EXPECT_THROW(O("w+"), ParseError);
  EXPECT_THROW(O("x"), ParseError);
}

TEST(Ordinal, NextLimitExamples) {
  EXPECT_EQ(next_limit(Ordinal::finite(0)), Ordinal::omega());
  EXPECT_EQ(next_limit(Ordinal::finite(5)), Ordinal::omega());
  EXPECT_EQ(next_limit(Ordinal::omega()), O("w*2"));
  EXPECT_EQ(next_limit(O("w^2+w*3+4")), O("w^2+w*4"));
}

TEST(Ordinal, Successor) {
  EXPECT_EQ(Ordinal::omega().successor(), O("w+1"));
  EXPECT_TRUE(O("w*2").is_limit());
  EXPECT_TRUE(O("w*2+1").is_successor());
  EXPECT_FALSE(Ordinal::finite(0).is_limit());
}

std::vector<Ordinal> sample_ordinals(testing::Rng& rng, std::size_t count) {
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<CnfTerm> terms;
    std::uint32_t e = static_cast<std::uint32_t>(rng.below(4));
    while (true) {
      terms.push_back({e, 1 + rng.below(3)});
      if (e == 0 || rng.coin(0.4)) break;
      e = static_cast<std::uint32_t>(rng.below(e));
    }
    out.push_back(Ordinal::from_terms(terms));
  }
  return out;
}

TEST(OrdinalProperty, ReflexiveAndTransitive) {
  testing::Rng rng(11);
  auto xs = sample_ordinals(rng, 300);
  for (const auto& a : xs) EXPECT_EQ(ord_compare(a, a), Order::Equal);
  for (std::size_t i = 0; i + 2 < xs.size(); i += 3) {
    std::vector<Ordinal> t{xs[i], xs[i + 1], xs[i + 2]};
    std::sort(t.begin(), t.end());
    EXPECT_TRUE(t[0] <= t[1] && t[1] <= t[2] && t[0] <= t[2]);
    if (t[0] < t[1] && t[1] < t[2]) EXPECT_EQ(ord_compare(t[0], t[2]), Order::Less);
  }
}

TEST(OrdinalProperty, NextLimitIsLeastLimitAbove) {
  testing::Rng rng(12);
  for (const auto& a : sample_ordinals(rng, 200)) {
    Ordinal l = next_limit(a);
    EXPECT_TRUE(l.is_limit());
    EXPECT_LT(a, l);
    // Only the finite tail separates a candidate below l from a.
    EXPECT_EQ(l.limit_part(), l);
    EXPECT_LE(a.limit_part(), l);
    auto terms = l.terms();
    ASSERT_FALSE(terms.empty());
    EXPECT_GE(terms.back().exponent, 1u);
  }
}

TEST(GodelPair, Examples) {
  EXPECT_EQ(godel_pair(0, 0), 0u);
  EXPECT_EQ(godel_pair(1, 1), 3u);
  EXPECT_EQ(godel_unpair(godel_pair(4, 7)), (std::pair<std::uint64_t, std::uint64_t>(4, 7)));
}

TEST(GodelPair, MatchesEnumerationOrder) {
  // Index pairs by listing them max first, then lexicographically.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
  for (std::uint64_t m = 0; m < 20; ++m) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> block;
    for (std::uint64_t a = 0; a <= m; ++a) {
      for (std::uint64_t b = 0; b <= m; ++b) {
        if (std::max(a, b) == m) block.emplace_back(a, b);
      }
    }
    std::sort(block.begin(), block.end());
    order.insert(order.end(), block.begin(), block.end());
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(godel_pair(order[i].first, order[i].second), i);
  }
}

TEST(GodelPair, InjectiveOnGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 200; ++a) {
    for (std::uint64_t b = 0; b < 200; ++b) {
      auto c = godel_pair(a, b);
      EXPECT_TRUE(seen.insert(c).second);
      EXPECT_EQ(godel_unpair(c), std::make_pair(a, b));
    }
  }
}

TEST(OrdinalSet, Examples) {
  auto s = OrdinalSet::of_naturals({1, 3});
  EXPECT_EQ(set_complement(s, Ordinal::omega()), OrdinalSet(Polarity::Cofinite, {Ordinal::finite(1), Ordinal::finite(3)}));
  EXPECT_FALSE(set_member(OrdinalSet::parse("co{0}"), Ordinal::finite(0), Ordinal::omega()));
  EXPECT_EQ(set_complement(set_complement(s, Ordinal::omega()), Ordinal::omega()), s);
  EXPECT_EQ(OrdinalSet::parse("co{2,0}").to_string(), "co{0,2}");
  EXPECT_EQ(OrdinalSet::parse("{}"), OrdinalSet::empty());
}

TEST(OrdinalSet, FiniteKappaNormalizes) {
  auto k = Ordinal::finite(4);
  EXPECT_EQ(OrdinalSet::parse("co{1}").normalized(k), OrdinalSet::of_naturals({0, 2, 3}));
  EXPECT_THROW(OrdinalSet::of_naturals({5}).normalized(k), Error);
}

TEST(OrdinalSetProperty, ComplementSweep) {
  testing::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t a = 0; a < 64; ++a) {
      if (rng.coin(0.2)) v.push_back(a);
    }
    OrdinalSet s = OrdinalSet::of_naturals(v);
    if (rng.coin()) s = s.complement();
    OrdinalSet c = set_complement(s, Ordinal::omega());
    EXPECT_EQ(set_complement(c, Ordinal::omega()), s);
    for (std::uint64_t a = 0; a < 64; ++a) {
      EXPECT_NE(set_member(c, Ordinal::finite(a), Ordinal::omega()), set_member(s, Ordinal::finite(a), Ordinal::omega()));
    }
  }
}

TEST(OrdinalSetProperty, AlgebraMatchesPointwise) {
  testing::Rng rng(14);
  auto draw = [&] {
    std::vector<std::uint64_t> v;
    for (std::uint64_t a = 0; a < 16; ++a) {
      if (rng.coin(0.3)) v.push_back(a);
    }
    OrdinalSet s = OrdinalSet::of_naturals(v);
    return rng.coin() ? s.complement() : s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    OrdinalSet a = draw(), b = draw();
    for (std::uint64_t x = 0; x < 20; ++x) {
      Ordinal o = Ordinal::finite(x);
      EXPECT_EQ(a.unite(b).contains(o), a.contains(o) || b.contains(o));
      EXPECT_EQ(a.intersect(b).contains(o), a.contains(o) && b.contains(o));
      EXPECT_EQ(a.minus(b).contains(o), a.contains(o) && !b.contains(o));
      EXPECT_EQ(a.symmetric_difference(b).contains(o), a.contains(o) != b.contains(o));
    }
  }
}

}  // namespace
}  // namespace gseq
