#include <gtest/gtest.h>

#include <random>

#include "pantsflat/flats.hpp"
#include "support.hpp"

using namespace pantsflat;
using namespace pantsflat::flats;

namespace {

Slope S(const char* text) { return Slope::parse(text); }

}  // namespace

TEST(Rank, MaxHandlesAndTemplate) {
    EXPECT_EQ(max_handles({7, 0}), 9);
    EXPECT_EQ(max_handles({2, 0}), 2);
    EXPECT_EQ(max_handles({0, 5}), 1);
    EXPECT_THROW(max_handles({1, 0}), std::invalid_argument);
    EXPECT_EQ(decompose_template({2, 0}).pieces(), 2);
    EXPECT_EQ(decompose_template({2, 0}).one_holed_tori, 2);
    EXPECT_EQ(decompose_template({1, 3}).pieces(), 2);
    EXPECT_EQ(decompose_template({7, 0}).pieces(), 9);
    EXPECT_TRUE(decompose_template({7, 0}).has_pants);
}

TEST(Rank, TemplateCountsAgree) {
    for (std::int64_t g = 0; g <= 12; ++g)
        for (std::int64_t r = 0; r <= 12; ++r) {
            const SurfaceDesc s{g, r};
            if (s.complexity() <= 0) continue;
            const auto t = decompose_template(s);
            EXPECT_EQ(t.pieces(), (s.complexity() + 1) / 2) << g << "," << r;
            EXPECT_EQ(t.pieces(), max_handles(s));
            // Euler characteristic: tori -1, spheres -2, pants -1.
            EXPECT_EQ(-t.one_holed_tori - 2 * t.four_holed_spheres - (t.has_pants ? 1 : 0), 2 - 2 * g - r);
        }
}

TEST(Product, DistanceExamples) {
    EXPECT_EQ(product_distance({S("0/1"), S("0/1")}, {S("1/0"), S("1/0")}), 2);
    EXPECT_EQ(product_distance({S("2/3"), S("5/7")}, {S("2/3"), S("5/7")}), 0);
    EXPECT_EQ(product_distance({S("0/1"), S("-1/1")}, {S("1/0"), S("1/1")}), 3);
    EXPECT_THROW(product_distance({S("0/1")}, {S("0/1"), S("0/1")}), std::invalid_argument);
}

TEST(Product, MatchesBfsInTruncatedBall) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        const ProductVertex c{gen::random_slope(rng, 3), gen::random_slope(rng, 3)};
        const ProductBall ball(c, 3, 6);
        const auto dist = ball.bfs(*ball.index_of(c));
        for (int v = 0; v < static_cast<int>(ball.size()); v += 7) {
            const int d = dist[static_cast<std::size_t>(v)];
            ASSERT_GE(d, 0);
            // Truncation can only lengthen paths.
            EXPECT_LE(product_distance(c, ball.vertex(v)), d);
            if (d <= 2) {
                EXPECT_EQ(product_distance(c, ball.vertex(v)), d) << str(ball.vertex(v));
            }
        }
    }
}

TEST(Flats, SearchedGeodesicIsGeodesic) {
    const Line g = search_geodesic(5);
    EXPECT_TRUE(g.covers(-5, 5));
    EXPECT_FALSE(geodesic_defect(g, -5, 5));
    const farey::HeightGraph oracle(140);
    for (std::int64_t i = -5; i <= 5; ++i) {
        const auto dist = oracle.bfs(*oracle.index_of(g.at(i)));
        for (std::int64_t j = i; j <= 5; ++j) EXPECT_EQ(dist[static_cast<std::size_t>(*oracle.index_of(g.at(j)))], j - i);
    }
}

TEST(Flats, CertifyWindows) {
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto cert = certify_flat(default_embedding(n, 5), 5);
        EXPECT_TRUE(cert.pass) << n;
        EXPECT_FALSE(cert.witness);
    }
}

TEST(Flats, IntegerRayFailsAtGapThree) {
    auto e = default_embedding(2, 4);
    Line ray{-4, {}};
    for (int k = -4; k <= 4; ++k) ray.slopes.push_back(Slope::integer(k));
    e.lines[1] = ray;
    const auto cert = certify_flat(e, 4);
    ASSERT_FALSE(cert.pass);
    ASSERT_TRUE(cert.witness);
    EXPECT_EQ(cert.witness->gap, 3);
    EXPECT_EQ(cert.witness->distance, 2);
    EXPECT_EQ(geodesic_defect(ray, -4, 4), (std::pair<std::int64_t, std::int64_t>{-4, -1}));
}

TEST(Flats, RejectsBrokenLines) {
    auto e = default_embedding(1, 3);
    EXPECT_THROW(certify_flat(e, 4), std::invalid_argument);
    e.lines[0].slopes[2] = S("7/3");
    EXPECT_THROW(certify_flat(e, 3), std::invalid_argument);
}

TEST(Flats, FactorSubgraphsAreTotallyGeodesic) {
    const ProductBall ball({S("0/1"), S("1/0")}, 3, 5);
    EXPECT_TRUE(subproduct_total_geodesy(ball, 2).holds);
    const auto one = subproduct_total_geodesy(ball, 1);
    EXPECT_TRUE(one.holds);
    EXPECT_GT(one.pairs_checked, 0);
    const auto diag = diagonal_control(ProductBall({S("0/1"), S("0/1")}, 3, 5));
    ASSERT_FALSE(diag.holds);
    ASSERT_TRUE(diag.witness);
    EXPECT_EQ(diag.witness->length, 2);
}

TEST(Flats, WeightedRescale) {
    const auto e = default_embedding(2, 2);
    const auto w = wp_rescale(e, {PieceKind::OneHoledTorus, PieceKind::FourHoledSphere});
    EXPECT_EQ(w.weights, (std::vector<int>{1, 2}));
    EXPECT_EQ(w.distance(e.at({0, 0}), e.at({0, 1})), 2);
    EXPECT_EQ(w.distance(e.at({0, 0}), e.at({1, 0})), 1);
    EXPECT_EQ(wp_rescale(e, {PieceKind::OneHoledTorus, PieceKind::OneHoledTorus}).weights, (std::vector<int>{1, 1}));
}
