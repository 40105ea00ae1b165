#include <gtest/gtest.h>

#include "pantsflat/pieces.hpp"

using namespace pantsflat;
using namespace pantsflat::pieces;

namespace {

Slope S(const char* text) { return Slope::parse(text); }

constexpr auto kSphere = PieceKind::FourHoledSphere;

void expect_clean(const SuiteReport& rep) {
    EXPECT_GT(rep.checked, 0);
    EXPECT_TRUE(rep.ok()) << rep.name << ": " << (rep.failures.empty() ? "" : rep.failures.front());
}

}  // namespace

TEST(Pieces, Projection) {
    EXPECT_EQ(project(PieceObject::seam(S("2/3"), 1)), S("2/3"));
    EXPECT_EQ(project(PieceObject::wave(S("2/3"), 1)), S("2/3"));
    EXPECT_EQ(project(PieceObject::torus_arc(S("1/0"))), S("1/0"));
    EXPECT_TRUE(project(std::vector<PieceObject>{}).empty());
    const auto both = project(std::vector<PieceObject>{PieceObject::seam(S("0/1"), 0), PieceObject::seam(S("0/1"), 2),
                                                       PieceObject::curve(kSphere, S("1/1"))});
    EXPECT_EQ(both, (std::set<Slope>{S("0/1"), S("1/1")}));
}

TEST(Pieces, AssociatedSeam) {
    const auto c = PieceObject::curve(kSphere, S("0/1"));
    EXPECT_EQ(associated_seam(c), PieceObject::seam(S("0/1"), 0));
    // A seam on the {0,1} side of the curve picks the seam on the other side.
    const auto ref = PieceObject::seam(S("0/1"), 0);
    EXPECT_EQ(associated_seam(c, ref), PieceObject::seam(S("0/1"), 2));
    EXPECT_EQ(associated_seam(PieceObject::wave(S("1/1"), 1)), PieceObject::seam(S("1/1"), 2));
    EXPECT_THROW(associated_seam(PieceObject::torus_arc(S("1/1"))), std::invalid_argument);
    for (const Slope& u : slopes_up_to(6)) {
        const auto cu = PieceObject::curve(kSphere, u);
        EXPECT_EQ(project(associated_seam(cu)), u);
        EXPECT_EQ(orbifold::intersection_number(associated_seam(cu), cu), 0);
    }
}

TEST(Pieces, IntersectionIdentityExhaustive) { expect_clean(sweep_int(6)); }

TEST(Pieces, SpecialCouples) {
    const auto s = PieceObject::seam(S("0/1"), 0);
    EXPECT_TRUE(is_special_couple(s, PieceObject::curve(kSphere, S("2/1"))));
    EXPECT_FALSE(is_special_couple(s, PieceObject::curve(kSphere, S("1/1"))));
    EXPECT_EQ(projection_distance(S("0/1"), S("2/1"), kSphere), 2);
    EXPECT_THROW(is_special_couple(s, s), std::invalid_argument);
}

TEST(Pieces, LinkingSweep) { expect_clean(sweep_lk(6)); }

TEST(Pieces, DisjointSeamSuite) { expect_clean(suite_prs(200, 7)); }

TEST(Pieces, TorusMoveSuite) { expect_clean(suite_prt(120, 7)); }

TEST(Pieces, SphereMoveSuite) { expect_clean(suite_ml(120, 7)); }

TEST(Pieces, SecondSeamSuite) { expect_clean(suite_sc(200, 7)); }

TEST(Pieces, SuitesAreSeeded) {
    const auto a = suite_prs(40, 11), b = suite_prs(40, 11);
    EXPECT_EQ(a.tallies, b.tallies);
}
