#include <gtest/gtest.h>

#include "random_descriptor.hpp"
#include "susp5/invariants.hpp"

using namespace susp5;
using susp5::testing::with_invariants;
using EC = ElementaryComplex;

namespace {

FgAbGroup G(std::string_view s) { return parse_group(s); }

}  // namespace

TEST(KGroup, ClosedFormExamples) {
  EXPECT_EQ(k_group(with_invariants(1, 1, "0", "0", true, {})), G("Z^2"));
  EXPECT_EQ(k_group(with_invariants(1, 1, "Z/5 + Z/7", "0", true, {})), G("Z^2 + Z/5 + Z/5 + Z/7 + Z/7"));
  EXPECT_EQ(k_group(with_invariants(3, 2, "Z/9", "Z/8", true, {})), G("Z^5 + Z/9 + Z/9"));
}

TEST(KOGroup, ClosedFormExamples) {
  EXPECT_EQ(ko_group(with_invariants(1, 1, "0", "0", true, {})), G("Z + Z/2 + Z/2"));
  EXPECT_EQ(ko_group(with_invariants(2, 1, "0", "Z/2 + Z/4 + Z/8", true, {})), G("Z^2") + FgAbGroup::cyclic(2).power(6));
}

TEST(KGroups, IndependentOfCaseAndInvariants) {
  // every completion of l = 2, d = 2, H = Z/5, T = Z/2 + Z/4 + Z/3
  const FgAbGroup k = G("Z^4 + Z/5 + Z/5");
  const FgAbGroup ko = G("Z^2") + FgAbGroup::cyclic(2).power(6);
  int seen = 0;
  for (int c1 = 0; c1 <= 2; ++c1)
    for (int c2 = 0; c2 <= std::min(2 - c1, 2); ++c2)
      for (bool spin : {true, false})
        for (bool smooth : {true, false})
          for (AttachCase a : {AttachCase::null(), AttachCase::eta_top(), AttachCase::tilde_eta_top(1, 0),
                               AttachCase::ip_tilde_eta_top(0, 0), AttachCase::eta_sq_top(),
                               AttachCase::i_eta_sq_top(1, 0)}) {
            auto m = with_invariants(2, 2, "Z/5", "Z/2 + Z/4 + Z/3", spin, {c1, c2, {}, a}, smooth);
            if (!validate(m, SuspensionMode::Single).ok()) continue;
            ++seen;
            EXPECT_EQ(k_group(m), k);
            EXPECT_EQ(ko_group(m), ko);
          }
  EXPECT_GT(seen, 20);
}

TEST(KGroups, TableEntries) {
  EXPECT_EQ(k_entry(EC::moore(6, 2, 3)).group, G("Z/8"));
  EXPECT_TRUE(k_entry(EC::moore(5, 5, 1)).group.is_trivial());
  EXPECT_EQ(k_entry(EC::chang_eta(6)).group, G("Z^2"));
  EXPECT_EQ(k_entry(EC::s_eta_sq(7)).source, "derived");
  EXPECT_EQ(ko2_entry(EC::chang_eta(6)).group, G("Z + Z/2"));
  EXPECT_EQ(ko2_entry(EC::chang_r(6, 2)).group, G("Z + Z/2"));
  EXPECT_EQ(ko2_entry(EC::a_eps_sq(7, 2)).group, G("Z/2"));
  EXPECT_EQ(ko_sphere(8), G("Z"));
  EXPECT_EQ(ko_sphere(1), G("Z/2"));
  EXPECT_TRUE(ko_sphere(3).is_trivial());
  EXPECT_THROW(k_entry(EC::chang_r(5, 1)), UnsupportedError);
}

TEST(Pi3, ClosedFormExamples) {
  EXPECT_EQ(pi3(with_invariants(1, 1, "0", "0", true, {})), G("Z + Z/2 + Z/2"));
  EXPECT_EQ(pi3(with_invariants(1, 1, "0", "0", false, {1, 0, {}, AttachCase::eta_top()})), G("Z"));
  FgAbGroup ip = pi3(with_invariants(2, 2, "0", "Z/2 + Z/4", false, {0, 1, std::vector<int>{1}, AttachCase::ip_tilde_eta_top(1, 0)}));
  EXPECT_EQ(ip, G("Z^2 + Z/2 + Z/2 + Z/4"));
  FgAbGroup lift = pi3(with_invariants(1, 1, "0", "Z/2 + Z/8", false, {0, 0, {}, AttachCase::tilde_eta_top(1, 0)}));
  EXPECT_EQ(lift, G("Z + Z/2 + Z/2 + Z/4"));
  FgAbGroup chang = pi3(with_invariants(2, 1, "Z/5", "Z/4 + Z/9", true, {0, 1, {}, {}}));
  EXPECT_EQ(chang, G("Z + Z/2 + Z/2 + Z/9 + Z/8"));
}

TEST(Pi3, PoincareCasesAreUnsupported) {
  auto m = with_invariants(1, 1, "0", "0", true, {0, 0, {}, AttachCase::eta_sq_top()}, false);
  EXPECT_THROW(pi3(m), UnsupportedError);
  EXPECT_THROW(pi4_sigma_crosscheck(m), UnsupportedError);
}

TEST(Crosscheck, SummandwiseEntries) {
  SummandwiseResult s = pi4_sigma_summandwise(with_invariants(1, 1, "0", "0", true, {}));
  EXPECT_EQ(s.total, G("Z + Z/2 + Z/2"));
  s = pi4_sigma_summandwise(with_invariants(1, 1, "0", "Z/2", true, {0, 1, {}, {}}));
  bool found = false;
  for (const auto& t : s.terms)
    if (t.summand == EC::chang_r(5, 1)) {
      EXPECT_EQ(t.entry.group, G("Z/4"));
      found = true;
    }
  EXPECT_TRUE(found);
  s = pi4_sigma_summandwise(with_invariants(1, 1, "0", "Z/2", false, {0, 0, {}, AttachCase::tilde_eta_top(0, 0)}));
  for (const auto& t : s.terms)
    if (t.summand == EC::a_tilde(6, 1)) {
      EXPECT_TRUE(t.entry.group.is_trivial());
    }
}

TEST(Crosscheck, AgreesWithClosedFormOnRandomDescriptors) {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    ManifoldDescriptor m = susp5::testing::random_descriptor(rng);
    Resolved res = resolve(m, SuspensionMode::Single);
    if (res.attach.kind == AttachCase::Kind::EtaSqTop || res.attach.kind == AttachCase::Kind::IEtaSqTop) continue;
    ASSERT_EQ(pi4_sigma_crosscheck(m), pi3(m)) << suspension_decomposition(m).to_string();
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Hurewicz, DegreesOneAndFive) {
  auto m = with_invariants(3, 1, "Z/5", "0", true, {});
  EXPECT_EQ(hurewicz_cohomotopy(m, 1), G("Z^3"));
  EXPECT_EQ(hurewicz_cohomotopy(m, 5), G("Z"));
  EXPECT_THROW(hurewicz_cohomotopy(m, 4), UnsupportedError);
}
