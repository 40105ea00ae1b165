#include <gtest/gtest.h>

#include "pantsflat/boundary.hpp"
#include "pantsflat/farey.hpp"

using namespace pantsflat;
using namespace pantsflat::orbifold;

namespace {

Slope S(const char* text) { return Slope::parse(text); }

constexpr auto kTorus = PieceKind::OneHoledTorus;
constexpr auto kSphere = PieceKind::FourHoledSphere;

std::vector<PieceObject> essential(const std::vector<BoundaryComponent>& parts) {
    std::vector<PieceObject> out;
    for (const auto& p : parts)
        if (p.object) out.push_back(*p.object);
    return out;
}

}  // namespace

TEST(Boundary, SeamWithItsFarLabelGivesTheWave) {
    for (const char* slope : {"0/1", "1/0", "2/3", "-3/2"}) {
        const auto s = PieceObject::seam(S(slope), 0);
        const Configuration config{kSphere, {{s}}};
        const auto parts = neighborhood_boundary(config, {0}, {s.endpoints[1]});
        ASSERT_EQ(parts.size(), 1u) << slope;
        ASSERT_TRUE(parts[0].object);
        EXPECT_EQ(*parts[0].object, PieceObject::wave(S(slope), s.endpoints[0]));
        EXPECT_EQ(parts[0].object->stored_seam(), s);
    }
}

TEST(Boundary, BareSeamGivesTwoParallelCopies) {
    const auto s = PieceObject::seam(S("1/2"), 1);
    const auto parts = neighborhood_boundary(Configuration{kSphere, {{s}}}, {0});
    EXPECT_EQ(essential(parts), (std::vector<PieceObject>{s, s}));
}

TEST(Boundary, CurveGivesTwoParallelCopies) {
    for (auto piece : {kTorus, kSphere}) {
        const auto c = PieceObject::curve(piece, S("3/5"));
        const auto parts = neighborhood_boundary(Configuration{piece, {{c}}}, {0});
        EXPECT_EQ(essential(parts), (std::vector<PieceObject>{c, c}));
    }
}

TEST(Boundary, TorusArcsCrossingOnce) {
    const Slope a = S("0/1"), b = S("2/1");
    const Configuration config{kTorus, {{PieceObject::torus_arc(a)}, {PieceObject::torus_arc(b)}}};
    ASSERT_EQ(intersection_number(config.entries[0].object, config.entries[1].object), 1);
    const auto parts = neighborhood_boundary(config, {0, 1});
    ASSERT_EQ(parts.size(), 4u);
    std::set<Slope> classes;
    for (const auto& p : parts) {
        EXPECT_TRUE(p.is_arc);
        if (!p.object) continue;
        classes.insert(p.object->slope);
        EXPECT_TRUE(adjacent(p.object->slope, a));
        EXPECT_TRUE(adjacent(p.object->slope, b));
    }
    EXPECT_GE(classes.size(), 1u);
    EXPECT_LE(classes.size(), 2u);
}

TEST(Boundary, ComponentsMissTheUnion) {
    const Configuration config{kSphere,
                               {{PieceObject::seam(S("0/1"), 0)}, {PieceObject::seam(S("1/1"), 0)},
                                {PieceObject::curve(kSphere, S("1/2"))}}};
    for (const std::vector<std::size_t>& members : {std::vector<std::size_t>{0, 2}, std::vector<std::size_t>{1, 2}}) {
        for (const auto& obj : essential(neighborhood_boundary(config, members)))
            for (std::size_t m : members) EXPECT_EQ(intersection_number(obj, config.entries[m].object), 0) << obj.str();
    }
}

TEST(Boundary, RejectsDisconnectedUnion) {
    const Configuration config{kSphere, {{PieceObject::seam(S("0/1"), 0)}, {PieceObject::seam(S("0/1"), 2)}}};
    EXPECT_THROW(neighborhood_boundary(config, {0, 1}), std::invalid_argument);
    EXPECT_THROW(neighborhood_boundary(config, {0}, {3}), std::invalid_argument);
}
