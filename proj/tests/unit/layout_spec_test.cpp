#include <gtest/gtest.h>

#include "cobtree/errors.hpp"
#include "cobtree/layout_spec.hpp"

using namespace cobtree;

TEST(NamedSpec, TableEntries) {
  const auto pre_veb = named_spec("pre-veb");
  EXPECT_EQ(pre_veb.outer, Orientation::PreOrder);
  EXPECT_EQ(pre_veb.first_inorder, FirstInOrder::Never);
  EXPECT_EQ(pre_veb.cut.kind(), CutPolicy::Kind::Half);
  EXPECT_FALSE(pre_veb.alternating);

  const auto minwep = named_spec("minwep");
  EXPECT_EQ(minwep.outer, Orientation::InOrder);
  EXPECT_EQ(minwep.first_inorder, FirstInOrder::Two);
  EXPECT_EQ(minwep.cut.kind(), CutPolicy::Kind::Opt);
  EXPECT_TRUE(minwep.alternating);

  const auto in_order = named_spec("in-order");
  EXPECT_EQ(in_order.outer, Orientation::InOrder);
  EXPECT_EQ(in_order.first_inorder, FirstInOrder::One);
  EXPECT_EQ(in_order.cut, CutPolicy::constant(1));

  EXPECT_EQ(named_spec("in-breadth").cut.kind(), CutPolicy::Kind::HeightMinusOne);
  EXPECT_EQ(named_spec("in-breadth").first_inorder, FirstInOrder::Any);
  EXPECT_EQ(named_spec("MinWEP"), minwep);
  EXPECT_THROW(named_spec("max-wep"), LookupError);
  EXPECT_EQ(layout_names().size(), 13u);
}

TEST(SpecString, RoundTrip) {
  for (const auto& name : layout_names()) {
    const auto spec = named_spec(name);
    EXPECT_EQ(parse_spec(spec.to_string()), spec) << name << " " << spec.to_string();
  }
  EXPECT_EQ(named_spec("minwep").to_string(), "~I^opt_2");
  EXPECT_EQ(named_spec("pre-veb").to_string(), "P^half_inf");
  EXPECT_EQ(named_spec("in-breadth").to_string(), "I^h-1_*");
  EXPECT_EQ(parse_spec("P^3_1").cut, CutPolicy::constant(3));
  EXPECT_EQ(resolve_layout("~I^optn_2").cut.kind(), CutPolicy::Kind::OptNormalized);
}

TEST(SpecString, Malformed) {
  for (const char* bad : {"", "~", "X^1_1", "I1_1", "I^1", "I^_1", "I^half_3", "I^sqrt_2", "I^99999_1"}) {
    EXPECT_THROW(parse_spec(bad), LookupError) << bad;
  }
  EXPECT_THROW(resolve_layout("in-vebb"), LookupError);
}

TEST(CutPolicy, Formulas) {
  EXPECT_EQ(CutPolicy::half()(Orientation::InOrder, 6), 3);
  EXPECT_EQ(CutPolicy::height_minus_one()(Orientation::PreOrder, 6), 5);
  EXPECT_EQ(CutPolicy::opt()(Orientation::PreOrder, 7), 3);
  EXPECT_EQ(CutPolicy::opt()(Orientation::InOrder, 6), 2);
  EXPECT_EQ(CutPolicy::opt()(Orientation::PreOrder, 5), 1);
  EXPECT_EQ(CutPolicy::opt()(Orientation::InOrder, 2), 1);
  EXPECT_EQ(CutPolicy::opt_normalized()(Orientation::InOrder, 10), 1);
  EXPECT_EQ(CutPolicy::opt_normalized()(Orientation::PreOrder, 10), 4);
  // Bottom subtrees of height 2^ceil(log2(h/2)).
  const int bender[] = {0, 0, 1, 1, 2, 1, 2, 3, 4, 1, 2};
  for (int h = 2; h <= 10; ++h) EXPECT_EQ(bender_cut(h), bender[h]) << h;
  EXPECT_EQ(bender_cut(16), 8);
  EXPECT_EQ(bender_cut(17), 1);
}

TEST(CutPolicy, OptInorderMatchesPreorderRecurrence) {
  for (int h = 4; h <= 48; ++h) EXPECT_EQ(opt_inorder_cut(h), opt_preorder_cut(h - 1) + 1) << h;
  EXPECT_EQ(opt_inorder_cut(2), 1);
  EXPECT_EQ(opt_inorder_cut(3), 1);
}

TEST(CutPolicy, CheckedEvaluation) {
  EXPECT_THROW(CutPolicy::half()(Orientation::InOrder, 1), DomainError);
  EXPECT_THROW(CutPolicy::constant(5)(Orientation::InOrder, 4), DomainError);
  const auto t = CutPolicy::table({{{Orientation::InOrder, 3}, 1}});
  EXPECT_EQ(t(Orientation::InOrder, 3), 1);
  EXPECT_THROW(t(Orientation::PreOrder, 3), DomainError);
  EXPECT_FALSE(t.raw(Orientation::PreOrder, 3).has_value());
}

TEST(ValidateSpec, Examples) {
  EXPECT_TRUE(validate_spec(named_spec("minwep"), 32).valid);

  LayoutSpec c5 = named_spec("in-order");
  c5.cut = CutPolicy::constant(5);
  const auto r = validate_spec(c5, 4);
  EXPECT_FALSE(r.valid);
  ASSERT_FALSE(r.problems.empty());
  EXPECT_NE(r.problems[0].find("1 <= g < 4"), std::string::npos) << r.problems[0];

  CutPolicy::TableMap table;
  for (int m = 2; m <= 8; ++m) {
    if (m == 7) continue;
    table[{Orientation::InOrder, m}] = 1;
    table[{Orientation::PreOrder, m}] = 1;
  }
  LayoutSpec gap{Orientation::InOrder, FirstInOrder::Two, CutPolicy::table(table), false};
  const auto g = validate_spec(gap, 8);
  EXPECT_FALSE(g.valid);
  EXPECT_NE(g.summary().find("restriction (g) incomplete"), std::string::npos) << g.summary();
}

TEST(ValidateSpec, OnlyReachableHeightsMatter) {
  // Const(2) fails once the recursion reaches a height-2 subtree.
  LayoutSpec c2 = named_spec("pre-order");
  c2.cut = CutPolicy::constant(2);
  EXPECT_FALSE(validate_spec(c2, 3).valid);
  EXPECT_FALSE(validate_spec(c2, 4).valid);
  EXPECT_TRUE(validate_spec(c2, 1).valid);

  // In-order with k = 1 never creates pre-order subtrees, so a table without
  // pre-order entries is complete.
  CutPolicy::TableMap in_only;
  for (int m = 2; m <= 10; ++m) in_only[{Orientation::InOrder, m}] = m / 2;
  EXPECT_TRUE(validate_spec({Orientation::InOrder, FirstInOrder::One, CutPolicy::table(in_only), false}, 10).valid);
  EXPECT_FALSE(validate_spec({Orientation::InOrder, FirstInOrder::Two, CutPolicy::table(in_only), false}, 10).valid);
}

TEST(ValidateSpec, HeightRange) {
  EXPECT_FALSE(validate_spec(named_spec("minwep"), 0).valid);
  EXPECT_FALSE(validate_spec(named_spec("minwep"), 49).valid);
  EXPECT_TRUE(validate_spec(named_spec("minwep"), 48).valid);
}

TEST(Alternate, SetsFlagOnly) {
  const auto a = alternate(named_spec("in-veb"));
  EXPECT_EQ(a, named_spec("in-veba"));
  EXPECT_EQ(alternate(named_spec("pre-veb")), named_spec("pre-veba"));
  EXPECT_EQ(alternate(a), a);
}
