#include <gtest/gtest.h>

#include <algorithm>

#include "hyperdepth/geometry.hpp"
#include "hyperdepth/instance.hpp"
#include "test_support.hpp"

using namespace hyperdepth;
using namespace hyperdepth::testing;

TEST(Canonicalize, RemovesCommonFactor) {
    Hyperplane h(V({"2", "0"}), R("4"));
    EXPECT_EQ(h.normal(), V({"1", "0"}));
    EXPECT_EQ(h.offset(), R("2"));
}

TEST(Canonicalize, NormalizesSign) {
    Hyperplane h(V({"-1", "0"}), R("-2"));
    EXPECT_EQ(h.normal(), V({"1", "0"}));
    EXPECT_EQ(h.offset(), R("2"));
}

TEST(Canonicalize, ClearsDenominators) {
    Hyperplane h(V({"1/2", "-1/3"}), R("5/6"));
    EXPECT_EQ(h.normal(), V({"3", "-2"}));
    EXPECT_EQ(h.offset(), R("5"));
}

TEST(Canonicalize, RejectsZeroNormal) {
    EXPECT_THROW(Hyperplane(V({"0", "0"}), R("1")), InvalidHyperplane);
}

TEST(Canonicalize, RejectsNegativeWeight) {
    EXPECT_THROW(Hyperplane(V({"1", "0"}), R("1"), R("-1")), InvalidHyperplane);
}

TEST(Canonicalize, IsIdempotentOnRandomInput) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Vector n = rng.point(3, 50, 7);
        if (isZero(n)) continue;
        Hyperplane h(n, rng.rational(50, 3));
        EXPECT_EQ(canonicalize(h), h);
        EXPECT_EQ(Hyperplane(h.normal(), h.offset()), h);
    }
}

TEST(Canonicalize, ScaledCopiesCompareEqual) {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        Vector n = rng.point(2, 20, 3);
        if (isZero(n)) continue;
        Rational b = rng.rational(20, 5);
        Rational c = rng.rational(5, 7);
        if (c == 0) continue;
        EXPECT_EQ(Hyperplane(n, b), Hyperplane(scale(n, c), b * c));
    }
}

TEST(Evaluate, AxisAlignedClosestPoint) {
    Arrangement a(2, {H({"1", "0"}, "1")});
    auto ev = evaluate(a, V({"0", "0"}));
    EXPECT_EQ(ev.residuals[0], R("-1"));
    EXPECT_EQ(ev.dualPoints[0], V({"1", "0"}));
    EXPECT_TRUE(ev.onSet.empty());
}

TEST(Evaluate, PointOnHyperplane) {
    Arrangement a(2, {H({"1", "0"}, "1")});
    Vector q = V({"1", "5"});
    auto ev = evaluate(a, q);
    EXPECT_EQ(ev.residuals[0], 0);
    EXPECT_EQ(ev.dualPoints[0], q);
    EXPECT_EQ(ev.onSet, std::vector<std::size_t>{0});
}

TEST(Evaluate, DiagonalProjection) {
    Arrangement a(2, {H({"1", "1"}, "1")});
    auto ev = evaluate(a, V({"0", "0"}));
    EXPECT_EQ(ev.residuals[0], R("-1"));
    EXPECT_EQ(ev.dualPoints[0], V({"1/2", "1/2"}));
    EXPECT_EQ(dot(a[0].normal(), ev.dualPoints[0]), a[0].offset());
}

TEST(Evaluate, RejectsDimensionMismatch) {
    EXPECT_THROW(evaluate(triangle(), V({"1", "2", "3"})), DimensionError);
}

TEST(Evaluate, DualPointsLieOnHyperplaneAndAreOrthogonalFeet) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const std::size_t d = 2 + seed % 3;
        Arrangement a = generateInstance(seed, d, 6, "uniform");
        Rng rng(seed * 31);
        Vector q = rng.point(d, 100, 9);
        auto ev = evaluate(a, q);
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(dot(a[i].normal(), ev.dualPoints[i]), a[i].offset());
            Matrix pair{subtract(q, ev.dualPoints[i]), a[i].normal()};
            EXPECT_LE(rank(pair), 1u);
            EXPECT_EQ(ev.residuals[i] == 0, ev.dualPoints[i] == q);
        }
    }
}

TEST(Evaluate, PermutationEquivariant) {
    Arrangement a = generateInstance(5, 3, 7, "uniform");
    std::vector<std::size_t> perm{6, 2, 0, 5, 1, 4, 3};
    Arrangement b = a.subset(perm);
    Vector q = V({"3/7", "-2", "11/5"});
    auto ea = evaluate(a, q);
    auto eb = evaluate(b, q);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        EXPECT_EQ(eb.residuals[i], ea.residuals[perm[i]]);
        EXPECT_EQ(eb.dualPoints[i], ea.dualPoints[perm[i]]);
    }
}

TEST(GeneralPosition, TriangleIsGeneric) { EXPECT_TRUE(isGeneralPosition(triangle())); }

TEST(GeneralPosition, ConcurrentLinesAreNot) {
    Arrangement a(2, {H({"1", "0"}, "0"), H({"0", "1"}, "0"), H({"1", "1"}, "0")});
    auto rep = generalPositionReport(a);
    EXPECT_FALSE(rep.generic());
    EXPECT_FALSE(rep.noCommonPoint);
    EXPECT_TRUE(rep.normalsIndependent);
}

TEST(GeneralPosition, ParallelPairIsRankDeficient) {
    Arrangement a(2, {H({"1", "0"}, "0"), H({"1", "0"}, "1"), H({"0", "1"}, "0")});
    auto rep = generalPositionReport(a);
    EXPECT_FALSE(rep.generic());
    EXPECT_FALSE(rep.normalsIndependent);
    EXPECT_TRUE(rep.noCommonPoint);
    EXPECT_NE(rep.failure.find("dependent normals {0,1}"), std::string::npos);
}

TEST(GeneralPosition, CoincidentHyperplanes) {
    Arrangement a(2, {H({"1", "2"}, "3"), H({"2", "4"}, "6")});
    auto rep = generalPositionReport(a);
    EXPECT_FALSE(rep.distinct);
}

TEST(Generator, IsDeterministic) {
    auto a = generateInstance(1, 2, 3, "generic");
    auto b = generateInstance(1, 2, 3, "generic");
    EXPECT_EQ(toJson(a).dump(), toJson(b).dump());
}

TEST(Generator, IsSeedSensitive) {
    auto a = generateInstance(1, 2, 3, "generic");
    auto b = generateInstance(2, 2, 3, "generic");
    EXPECT_NE(toJson(a).dump(), toJson(b).dump());
}

TEST(Generator, GenericProfileIsInGeneralPosition) {
    EXPECT_TRUE(isGeneralPosition(generateInstance(7, 3, 8, "generic")));
}

TEST(Generator, CoordinatesStayInRange) {
    auto a = generateInstance(3, 3, 10, "uniform");
    for (const auto& h : a) {
        for (const auto& x : h.normal()) EXPECT_LE(absValue(x), 1000);
        EXPECT_LE(absValue(h.offset()), 1000);
    }
}

TEST(Generator, WeightedProfileHasPositiveRationalWeights) {
    auto a = generateInstance(4, 2, 8, "weighted");
    EXPECT_TRUE(isGeneralPosition(a));
    for (const auto& h : a) EXPECT_GT(h.weight(), 0);
    EXPECT_FALSE(a.unitWeights());
}

TEST(Generator, RejectsUnknownProfile) { EXPECT_THROW(generateInstance(1, 2, 3, "banana"), InputError); }

TEST(Json, RoundTripPreservesExactValues) {
    Arrangement a(2, {H({"1/3", "2"}, "-7/5", "3/2"), H({"0", "1"}, "1")});
    Arrangement b = parseArrangement(toJson(a).dump());
    ASSERT_EQ(b.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Json, AcceptsIntegersAndDefaultsWeight) {
    auto a = parseArrangement(R"({"d": 2, "hyperplanes": [{"normal": [1, "0"], "offset": 2}]})");
    EXPECT_EQ(a[0].weight(), 1);
    EXPECT_EQ(a[0].offset(), 2);
}

TEST(Json, RejectsMalformedInput) {
    EXPECT_THROW(parseArrangement("{"), ParseError);
    EXPECT_THROW(parseArrangement(R"({"d": 2})"), ParseError);
    EXPECT_THROW(parseArrangement(R"({"d": 2, "hyperplanes": [{"normal": ["1"], "offset": "0"}]})"), DimensionError);
    EXPECT_THROW(parseArrangement(R"({"d": 2, "hyperplanes": [{"normal": ["1/0", "1"], "offset": "0"}]})"),
                 ParseError);
}

TEST(Rationals, ParseFormats) {
    EXPECT_EQ(parseRational("-0.25"), R("-1/4"));
    EXPECT_EQ(parseRational(" 6/8 "), R("3/4"));
    EXPECT_EQ(formatRational(R("4/2")), "2");
    EXPECT_THROW(parseRational("abc"), ParseError);
}

TEST(MinimalFaces, TriangleVertices) {
    auto v = minimalFacePoints(triangle());
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0], V({"0", "0"}));
    EXPECT_EQ(v[1], V({"0", "1"}));
    EXPECT_EQ(v[2], V({"1", "0"}));
}

TEST(MinimalFaces, ParallelLinesGiveOnePointPerLine) {
    Arrangement a(2, {H({"0", "1"}, "1"), H({"0", "1"}, "2")});
    auto v = minimalFacePoints(a);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0], V({"0", "1"}));
    EXPECT_EQ(v[1], V({"0", "2"}));
}
