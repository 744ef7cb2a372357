#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "csd/error.hpp"

using namespace csd;

namespace {

using W = std::vector<MorseEvent>;
MorseEvent L(int s) { return MorseEvent::left(s); }
MorseEvent R(int s) { return MorseEvent::right(s); }
MorseEvent X(int s) { return MorseEvent::cross(s); }

FrontDiagram word(W w) { return FrontDiagram::from_word(std::move(w)); }

void check_same_except(const AbstractLinkData &before, const AbstractLinkData &after, int c) {
    for (int i = 0; i < before.size(); ++i) {
        if (i == c)
            continue;
        CHECK(after.tb[i] == before.tb[i]);
        CHECK(after.rot[i] == before.rot[i]);
    }
    CHECK(after.lk == before.lk);
}

} // namespace

TEST_CASE("component decomposition") {
    CHECK(validate(word({L(1), R(1)})).component_count == 1);
    CHECK(validate(word({L(1), L(2), R(1), R(1)})).component_count == 1);
    CHECK(validate(word({L(1), R(1), L(1), R(1)})).component_count == 2);
    CHECK(validate(word({L(1), L(3), R(1), R(1)})).component_count == 2);
    CHECK(validate(word({})).component_count == 0);
    CHECK(count_components({L(1), L(1), R(1), R(1)}) == 2);
}

TEST_CASE("invalid fronts") {
    CHECK_THROWS_AS(validate(word({L(1), R(2)})), ValidationError);
    CHECK_THROWS_AS(validate(word({L(1)})), ValidationError);
    CHECK_THROWS_AS(validate(word({L(0), R(1)})), ValidationError);
    CHECK_THROWS_AS(validate(word({L(2), R(1)})), ValidationError);
    CHECK_THROWS_AS(validate(word({L(1), X(1), X(2), R(1)})), ValidationError);
    FrontDiagram bad = word({L(1), R(1)});
    bad.orientation_seeds = {true, false};
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = word({L(1), R(1)});
    bad.labels = {std::string("a"), std::string("b")};
    CHECK_THROWS_AS(validate(bad), ValidationError);
    try {
        validate(word({L(1), R(2)}));
    } catch (const ValidationError &e) {
        CHECK(e.reason() == "invalid-front");
    }
}

TEST_CASE("tb, rot and writhe of small fronts") {
    const FrontDiagram unknot = word({L(1), R(1)});
    CHECK(thurston_bennequin(unknot, 0) == -1);
    CHECK(rotation(unknot, 0) == 0);
    CHECK(writhe(unknot, 0) == 0);
    FrontDiagram reversed = reverse_orientation(unknot, 0);
    CHECK(rotation(reversed, 0) == 0);

    const FrontDiagram fig1 = word({L(1), L(2), R(1), R(1)});
    CHECK(thurston_bennequin(fig1, 0) == -2);
    CHECK(writhe(fig1, 0) == 0);
    CHECK(abs(rotation(fig1, 0)) == 1);
    CHECK(cusp_count(fig1, 0) == 4);

    // the shark with its catalog orientation
    CHECK(thurston_bennequin(shark(), 0) == -2);
    CHECK(rotation(shark(), 0) == 1);

    // split unknots
    const FrontDiagram two = word({L(1), R(1), L(1), R(1)});
    CHECK(linking_number(two, 0, 1) == 0);
}

TEST_CASE("K_k: tb = 1 - k^2, rot = k - 2") {
    for (int k = 2; k <= 8; ++k) {
        CAPTURE(k);
        const FrontDiagram K = knot_K(k);
        CHECK(validate(K).component_count == 1);
        CHECK(thurston_bennequin(K, 0) == 1 - k * k);
        CHECK(rotation(K, 0) == k - 2);
        CHECK(writhe(K, 0) - Integer(cusp_count(K, 0) / 2) == 1 - k * k);
    }
    CHECK(thurston_bennequin(knot_K(3), 0) == -8);
    CHECK(rotation(knot_K(4), 0) == 2);
    CHECK_THROWS_AS(knot_K(1), std::invalid_argument);
}

TEST_CASE("crossing convention regression: the mirror convention breaks tb(K_k)") {
    for (int k = 2; k <= 8; ++k) {
        const FrontDiagram K = knot_K(k);
        const Integer flipped = thurston_bennequin(K, 0, CrossingConvention::LargerSlopeOver);
        CHECK(flipped != 1 - k * k);
        CHECK(thurston_bennequin(K, 0, CrossingConvention::SmallerSlopeOver) == 1 - k * k);
    }
}

TEST_CASE("catalog two-component fronts") {
    SUBCASE("xi_minus") {
        const AbstractLinkData a = catalog("xi_minus").abstract();
        CHECK(a.tb == std::vector<Integer>{-4, -2});
        CHECK(a.rot == std::vector<Integer>{1, -1});
        CHECK(a.lk(0, 1) == -2);
    }
    SUBCASE("xi_k") {
        for (int k = 2; k <= 8; ++k) {
            CAPTURE(k);
            const ContactSurgeryDiagram d = catalog("xi_k", k);
            const AbstractLinkData a = d.abstract();
            CHECK(a.tb == std::vector<Integer>{-2, 1 - k * k});
            CHECK(a.rot == std::vector<Integer>{1, k - 2});
            CHECK(a.lk(0, 1) == k);
            // the rotated front may number its components differently;
            // match them by label
            const AbstractLinkData m = mirror_rotate180(d).abstract();
            const int k1 = m.labels[0] == std::optional<std::string>("K1") ? 0 : 1;
            const int k2 = 1 - k1;
            CHECK(m.labels[k2] == std::optional<std::string>("K2"));
            CHECK(m.rot[k1] == -1);
            CHECK(m.rot[k2] == -(k - 2));
            CHECK(m.tb[k1] == -2);
            CHECK(m.tb[k2] == 1 - k * k);
            CHECK(m.lk(0, 1) == k);
            const AbstractLinkData mk = catalog("xi_minus_k", k).abstract();
            CHECK(mk.rot == std::vector<Integer>{-1, -(k - 2)});
            CHECK(mk.tb == a.tb);
            CHECK(mk.lk(0, 1) == k);
        }
    }
}

TEST_CASE("stabilization") {
    const FrontDiagram unknot = standard_unknot();
    const FrontDiagram down = stabilize(unknot, 0, Zigzag::Down);
    CHECK(thurston_bennequin(down, 0) == -2);
    CHECK(rotation(down, 0) == 1);
    const FrontDiagram both = stabilize(down, 0, Zigzag::Up);
    CHECK(thurston_bennequin(both, 0) == -3);
    CHECK(rotation(both, 0) == 0);
    CHECK(rotation(stabilize(unknot, 0, Zigzag::Up), 0) == -1);
}

TEST_CASE("push-off") {
    const FrontDiagram p = push_off(standard_unknot(), 0);
    CHECK(validate(p).component_count == 2);
    CHECK(thurston_bennequin(p, 1) == -1);
    CHECK(rotation(p, 1) == 0);
    CHECK(linking_number(p, 0, 1) == -1);
    CHECK(linking_number(push_off(shark(), 0), 0, 1) == -2);

    // double push-off: all pairwise linking numbers equal tb
    const FrontDiagram k3 = knot_K(3);
    const FrontDiagram twice = push_off(push_off(k3, 0), 1);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            CHECK(linking_number(twice, a, b) == -8);
}

TEST_CASE("random fronts: operations change invariants as stated") {
    oracle::Rng rng(424242);
    for (int trial = 0; trial < 150; ++trial) {
        const FrontDiagram f = oracle::random_front(rng, static_cast<int>(oracle::uniform(rng, 2, 24)));
        const AbstractLinkData a = to_abstract(f);
        const int n = a.size();
        CAPTURE(trial);
        REQUIRE(n >= 1);
        CHECK(a.lk.is_symmetric());
        const int c = static_cast<int>(oracle::uniform(rng, 0, n - 1));

        for (Zigzag z : {Zigzag::Down, Zigzag::Up}) {
            const FrontDiagram s = stabilize(f, c, z);
            const AbstractLinkData sa = to_abstract(s);
            CHECK(sa.tb[c] == a.tb[c] - 1);
            CHECK(sa.rot[c] == a.rot[c] + (z == Zigzag::Down ? 1 : -1));
            check_same_except(a, sa, c);
            CHECK(sa == stabilize(a, c, z));
        }

        const FrontDiagram p = push_off(f, c);
        const AbstractLinkData pa = to_abstract(p);
        REQUIRE(pa.size() == n + 1);
        CHECK(pa.tb[c + 1] == a.tb[c]);
        CHECK(pa.rot[c + 1] == a.rot[c]);
        CHECK(pa.lk(c, c + 1) == a.tb[c]);
        for (int j = 0; j < n; ++j) {
            const int jj = j > c ? j + 1 : j;
            if (j != c)
                CHECK(pa.lk(c + 1, jj) == a.lk(c, j));
        }
        AbstractLinkData pa_unlabeled = pa;
        pa_unlabeled.labels.clear();
        AbstractLinkData expected = push_off(a, c);
        expected.labels.clear();
        CHECK(pa_unlabeled == expected);

        const FrontDiagram r = reverse_orientation(f, c);
        const AbstractLinkData ra = to_abstract(r);
        CHECK(ra.rot[c] == -a.rot[c]);
        CHECK(ra.tb == a.tb);
        for (int j = 0; j < n; ++j)
            if (j != c)
                CHECK(ra.lk(c, j) == -a.lk(c, j));
        CHECK(ra == reverse_orientation(a, c));
        CHECK(to_abstract(reverse_orientation(r, c)) == a);

        std::vector<int> idx;
        const FrontDiagram m = mirror_rotate180(f, &idx);
        const AbstractLinkData ma = to_abstract(m);
        REQUIRE(static_cast<int>(idx.size()) == n);
        for (int i = 0; i < n; ++i) {
            CHECK(ma.tb[idx[i]] == a.tb[i]);
            CHECK(ma.rot[idx[i]] == -a.rot[i]);
            for (int j = 0; j < n; ++j)
                CHECK(ma.lk(idx[i], idx[j]) == a.lk(i, j));
        }

        const FrontDiagram g = oracle::random_front(rng, 6);
        const AbstractLinkData ga = to_abstract(g);
        const AbstractLinkData u = to_abstract(disjoint_union(f, g));
        CHECK(u.size() == n + ga.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < ga.size(); ++j)
                CHECK(u.lk(i, n + j) == 0);
        CHECK(u == disjoint_union(a, ga));
    }
}

TEST_CASE("clasp linking sign follows the arc directions") {
    FrontDiagram up = standard_unknot(), down = standard_unknot();
    down.orientation_seeds = {false};
    for (int t = 1; t <= 4; ++t) {
        CHECK(linking_number(clasp(up, up, t), 0, 1) == -t);
        CHECK(abs(linking_number(clasp(up, down, t), 0, 1)) == t);
        CHECK(linking_number(clasp(up, down, t), 0, 1) ==
              -linking_number(clasp(up, up, t), 0, 1));
    }
}

TEST_CASE("add_loop keeps tb and rot") {
    const FrontDiagram f = add_loop(shark(), 0);
    CHECK(thurston_bennequin(f, 0) == -2);
    CHECK(rotation(f, 0) == 1);
    CHECK(cusp_count(f, 0) == 6);
}

TEST_CASE("abstract data checks") {
    IntMatrix lk{{0, 1}, {2, 0}};
    CHECK_THROWS_AS(make_abstract({-1, -1}, {0, 0}, lk), ValidationError);
    CHECK_THROWS_AS(make_abstract({-1}, {0, 0}, IntMatrix(1, 1)), ValidationError);
    const AbstractLinkData a = make_abstract({-1}, {0}, IntMatrix{{5}});
    CHECK(a.lk(0, 0) == 0);
}
