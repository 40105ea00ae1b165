#include <gtest/gtest.h>

#include <random>

#include "pantsflat/shadows.hpp"

using namespace pantsflat;
using namespace pantsflat::shadows;

namespace {

Slope S(const char* text) { return Slope::parse(text); }

constexpr auto kTorus = PieceKind::OneHoledTorus;
constexpr auto kSphere = PieceKind::FourHoledSphere;

HandleSystem two_spheres() { return HandleSystem::with_pieces({7, 0}, {kSphere, kSphere}); }

}  // namespace

TEST(Shadows, HandleSystemBounds) {
    EXPECT_THROW(HandleSystem::with_pieces({2, 0}, {kTorus}), std::invalid_argument);
    EXPECT_THROW(HandleSystem::with_pieces({2, 0}, {kTorus, kTorus, kTorus}), std::invalid_argument);
    const auto h = HandleSystem::with_pieces({2, 0}, {kTorus, kTorus});
    EXPECT_EQ(h.multicurve_size(), 1);
}

TEST(Shadows, ProjectionExamples) {
    const auto h = two_spheres();
    const auto v = in_graph(h, {S("2/3"), S("1/0")});
    EXPECT_EQ(project_shadow(v, h), (std::set<ProductVertex>{{S("2/3"), S("1/0")}}));

    VertexShadow empty{{{}, {}}, false};
    EXPECT_EQ(project_shadow(empty, h), (std::set<ProductVertex>{h.base}));

    VertexShadow two{{{PieceObject::seam(S("1/3"), 0), PieceObject::seam(S("1/1"), 0)}, {}}, false};
    EXPECT_EQ(project_shadow(two, h).size(), 2u);

    VertexShadow bad{{{PieceObject::seam(S("0/1"), 0), PieceObject::curve(kSphere, S("1/1"))}, {}}, false};
    EXPECT_THROW(project_shadow(bad, h), std::invalid_argument);
    VertexShadow flagged{{{PieceObject::seam(S("0/1"), 0)}, {}}, true};
    EXPECT_THROW(project_shadow(flagged, h), std::invalid_argument);
}

TEST(Shadows, InGraphProjectionIsItsTuple) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto f = orthogonality_fixture(rng);
        EXPECT_EQ(project_shadow(f.v0, f.system), std::set<ProductVertex>{f.v0.tuple()});
    }
}

TEST(Shadows, Orthogonality) {
    const auto h = two_spheres();
    const auto v0 = in_graph(h, {S("0/1"), S("2/5")});
    VertexShadow v1 = v0;
    v1.in_pq = false;
    const auto arc = PieceObject::seam(S("0/1"), 2);
    v1.traces[0].push_back(arc);
    EXPECT_TRUE(orthogonality_check(v0, v1, Move{MoveKind::First, {{0, {}, {arc}}}}, h));

    VertexShadow miss = v0;
    miss.in_pq = false;
    EXPECT_TRUE(orthogonality_check(v0, miss, Move{MoveKind::First, {}}, h));

    VertexShadow crossing = v0;
    crossing.in_pq = false;
    const auto wrong = PieceObject::seam(S("1/1"), 0);
    crossing.traces[0].push_back(wrong);
    EXPECT_THROW(orthogonality_check(v0, crossing, Move{MoveKind::First, {{0, {}, {wrong}}}}, h),
                 std::invalid_argument);
    EXPECT_THROW(orthogonality_check(v1, v0, Move{MoveKind::First, {{0, {arc}, {}}}}, h), std::invalid_argument);
}

TEST(Shadows, OrthogonalityRandom) {
    std::mt19937_64 rng(17);
    int hits = 0;
    for (int i = 0; i < 100; ++i) {
        const auto f = orthogonality_fixture(rng);
        hits += !f.move.exchanges.empty();
        EXPECT_TRUE(orthogonality_check(f.v0, f.v1, f.move, f.system));
    }
    EXPECT_GT(hits, 50);
}

TEST(Shadows, StepValidation) {
    const auto h = two_spheres();
    const auto v0 = in_graph(h, {S("0/1"), S("0/1")});
    const auto v1 = in_graph(h, {S("2/1"), S("0/1")});
    // Curves at determinant 2 cross four times in a four-holed sphere.
    const Move m{MoveKind::Second, {{0, {v0.traces[0][0]}, {v1.traces[0][0]}}}};
    EXPECT_THROW(validate_step(v0, v1, m, h), std::invalid_argument);
    const auto v2 = in_graph(h, {S("1/1"), S("0/1")});
    EXPECT_NO_THROW(validate_step(v0, v2, Move{MoveKind::Second, {{0, {v0.traces[0][0]}, {v2.traces[0][0]}}}}, h));
    EXPECT_THROW(validate_step(v0, v2, Move{MoveKind::Second, {}}, h), std::invalid_argument);
}

TEST(Shadows, SpecialCouples) {
    const auto f = figure2_scenario();
    ASSERT_EQ(f.specials.size(), 1u);
    EXPECT_EQ(f.specials[0].edge, 0u);
    EXPECT_EQ(f.specials[0].piece, 0u);

    const auto h = two_spheres();
    const auto v0 = in_graph(h, {S("0/1"), S("0/1")});
    const auto v1 = in_graph(h, {S("1/1"), S("0/1")});
    const PathShadow flip{h, {v0, v1}, {Move{MoveKind::Second, {{0, {v0.traces[0][0]}, {v1.traces[0][0]}}}}}};
    EXPECT_TRUE(detect_special_couples(flip).empty());
}

TEST(Shadows, Figure2) {
    const auto f = figure2_scenario();
    EXPECT_EQ(f.min_distance, 2);
    EXPECT_EQ(f.all_distances, (std::vector<int>{2, 2, 4, 4}));
    EXPECT_EQ(f.audit.best, 2);
    EXPECT_FALSE(f.audit.pass);
    EXPECT_EQ(figure2_scenario(false).min_distance, 2);
    EXPECT_LE(figure2_scenario(true, true).min_distance, 1);
}

TEST(Shadows, AuditRandomPaths) {
    std::mt19937_64 rng(23);
    int specials = 0;
    for (int i = 0; i < 60; ++i) {
        const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        const auto p = random_path(rng, len, n);
        const auto a = audit_projection_bound(p);
        EXPECT_TRUE(a.pass) << a.best << " > " << a.length;
        specials += static_cast<int>(detect_special_couples(p).size());
    }
    EXPECT_GT(specials, 0);
}

TEST(Shadows, ConstantPathAudit) {
    const auto h = two_spheres();
    const auto v = in_graph(h, {S("0/1"), S("3/4")});
    const auto a = audit_projection_bound(PathShadow{h, {v}, {}});
    EXPECT_EQ(a.best, 0);
    EXPECT_TRUE(a.pass);
}

TEST(Shadows, LemmaLFProbe) {
    const auto h = two_spheres();
    const auto s = PieceObject::seam(S("0/1"), 0);
    const auto beta = PieceObject::curve(kSphere, S("2/1"));
    const auto s2 = PieceObject::seam(S("4/3"), 0);  // beta's twist of s
    const auto q = PieceObject::seam(S("1/3"), 0);
    auto at = [&](std::vector<PieceObject> t) { return VertexShadow{{std::move(t), {q}}, false}; };
    const PathShadow chain{h,
                           {at({s}), at({beta}), at({s2})},
                           {Move{MoveKind::Second, {{0, {s}, {beta}}}}, Move{MoveKind::Second, {{0, {beta}, {s2}}}}}};
    const auto probe = lemma_LF_probe(chain);
    ASSERT_EQ(probe.size(), 2u);
    EXPECT_EQ(probe[0].after_side, 1);
    EXPECT_TRUE(probe[0].pass);

    const PathShadow back{h,
                          {at({beta}), at({s}), at({beta})},
                          {Move{MoveKind::Second, {{0, {beta}, {s}}}}, Move{MoveKind::Second, {{0, {s}, {beta}}}}}};
    const auto flagged = lemma_LF_probe(back);
    ASSERT_FALSE(flagged.empty());
    EXPECT_TRUE(flagged[1].repeated);
    EXPECT_FALSE(flagged[1].pass);

    const PathShadow plain{h, {in_graph(h, {S("0/1"), S("0/1")})}, {}};
    EXPECT_TRUE(lemma_LF_probe(plain).empty());
}
