#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "csd/error.hpp"

#include <set>

using namespace csd;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

ContactSurgeryDiagram single(FrontDiagram f, Rational r) {
    return ContactSurgeryDiagram(std::move(f), {SurgeryCoefficient(r)});
}

// Unknot with tb = t <= -1, stabilized in alternating directions.
FrontDiagram unknot_with_tb(long t) {
    FrontDiagram f = standard_unknot();
    for (long s = 0; s < -1 - t; ++s)
        f = stabilize(f, 0, s % 2 ? Zigzag::Up : Zigzag::Down);
    return f;
}

// |H_1| of rational surgery on a link: rows scaled by the denominators.
Integer rational_surgery_order(const AbstractLinkData &a, const std::vector<Rational> &r) {
    const std::size_t n = a.tb.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational top = Rational(a.tb[i]) + r[i];
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = i == j ? top.num() : top.den() * a.lk(i, j);
    }
    return abs(oracle::leibniz_det(m));
}

IntMatrix reduced_matrix(const ContactSurgeryDiagram &d) {
    const AbstractLinkData a = d.abstract();
    IntMatrix m = a.lk;
    for (int i = 0; i < a.size(); ++i)
        m(i, i) = a.tb[i] + (d.coefficients[i].is_plus_one() ? 1 : -1);
    return m;
}

} // namespace

TEST_CASE("surgery coefficients") {
    CHECK_THROWS_AS(SurgeryCoefficient(Rational(0)), MathError);
    try {
        SurgeryCoefficient c(Rational(0));
    } catch (const MathError &e) {
        CHECK(e.reason() == "zero-coefficient");
        CHECK(std::string(e.what()).find("0-surgery excluded") != std::string::npos);
    }
    CHECK(SurgeryCoefficient(1).to_string() == "+1");
    CHECK(SurgeryCoefficient(-1).to_string() == "-1");
    CHECK(SurgeryCoefficient(q(-5, 3)).to_string() == "-5/3");
    CHECK(SurgeryCoefficient::infinity().to_string() == "inf");
    CHECK(SurgeryCoefficient::parse("+1") == SurgeryCoefficient(1));
    CHECK(SurgeryCoefficient::parse("inf").is_infinite());
    CHECK(SurgeryCoefficient::parse("3/2") == SurgeryCoefficient(q(3, 2)));
    CHECK_THROWS_AS(SurgeryCoefficient::infinity().value(), MathError);
}

TEST_CASE("negative continued fractions: examples") {
    CHECK(neg_continued_fraction(q(-5, 3)).terms == std::vector<Integer>{-3, -3});
    CHECK(neg_continued_fraction(q(-1)).terms == std::vector<Integer>{-2});
    CHECK(neg_continued_fraction(q(-7, 2)).terms == std::vector<Integer>{-5, -2});
    CHECK(eval_continued_fraction({{-3, -3}}) == q(-5, 3));
    CHECK(eval_continued_fraction({{-2}}) == q(-1));
    CHECK(eval_continued_fraction({{-5, -2}}) == q(-7, 2));
    CHECK_THROWS_AS(neg_continued_fraction(q(1, 2)), MathError);
    CHECK_THROWS_AS(eval_continued_fraction({{}}), std::invalid_argument);
    CHECK_THROWS_AS(eval_continued_fraction({{-1}}), std::invalid_argument);
}

TEST_CASE("negative continued fractions: 500 random round trips") {
    oracle::Rng rng(500);
    int done = 0;
    while (done < 500) {
        const long p = oracle::uniform(rng, -400, -1);
        const long d = oracle::uniform(rng, 1, 97);
        const Rational r = q(p, d);
        const ContinuedFraction cf = neg_continued_fraction(r);
        CAPTURE(r);
        for (const Integer &t : cf.terms)
            CHECK(t <= -2);
        CHECK(oracle::eval_terms(cf.terms) == r.raw());
        CHECK(eval_continued_fraction(cf) == r);
        ++done;
    }
}

TEST_CASE("contact to topological framing") {
    CHECK(contact_to_topological(SurgeryCoefficient(1), -2) == q(-1));
    CHECK(contact_to_topological(SurgeryCoefficient(1), -1) == q(0));
    CHECK(contact_to_topological(SurgeryCoefficient(-1), -4) == q(-5));
}

TEST_CASE("expand_negative") {
    SUBCASE("-1 is already reduced") {
        const ContactSurgeryDiagram d = single(shark(), q(-1));
        const ContactSurgeryDiagram e = expand_negative(d, 0);
        CHECK(e.abstract() == d.abstract());
        CHECK(e.coefficients == d.coefficients);
    }
    SUBCASE("-5/3") {
        const ContactSurgeryDiagram e = expand_negative(single(standard_unknot(), q(-5, 3)), 0);
        const AbstractLinkData a = e.abstract();
        CHECK(a.tb == std::vector<Integer>{-2, -3});
        CHECK(a.lk(0, 1) == -2);
        CHECK(e.coefficients == std::vector<SurgeryCoefficient>{-1, -1});
        CHECK(e.origins()[1].depth == 1);
    }
    SUBCASE("-2 on the unknot") {
        const ContactSurgeryDiagram e = expand_negative(single(standard_unknot(), q(-2)), 0);
        CHECK(e.size() == 1);
        CHECK(e.abstract().tb[0] == -2);
        CHECK(abs(determinant(reduced_matrix(e))) == 3);
    }
    SUBCASE("explicit splits") {
        const ContactSurgeryDiagram d = single(standard_unknot(), q(-5, 3));
        const ContactSurgeryDiagram e = expand_negative(d, 0, {{1, 0}, {0, 1}});
        CHECK(e.abstract().rot == std::vector<Integer>{-1, 0});
        CHECK_THROWS_AS(expand_negative(d, 0, {{1, 1}, {0, 1}}), std::invalid_argument);
        CHECK_THROWS_AS(expand_negative(single(standard_unknot(), q(2)), 0), MathError);
    }
}

TEST_CASE("expand_positive") {
    SUBCASE("+1 unchanged") {
        const ContactSurgeryDiagram d = single(shark(), q(1));
        CHECK(expand_positive(d, 0).size() == 1);
    }
    SUBCASE("r = 2") {
        const ContactSurgeryDiagram e = expand_positive(single(standard_unknot(), q(2)), 0);
        CHECK(e.coefficients == std::vector<SurgeryCoefficient>{1, SurgeryCoefficient(q(-2))});
        CHECK(e.abstract().lk(0, 1) == -1);
    }
    SUBCASE("r = 3/2") {
        const ContactSurgeryDiagram d = single(standard_unknot(), q(3, 2));
        const ContactSurgeryDiagram e = expand_positive(d, 0);
        CHECK(e.coefficients == std::vector<SurgeryCoefficient>{1, SurgeryCoefficient(q(-3))});
        const ContactSurgeryDiagram full = expand_all(d);
        CHECK(full.size() == 2);
        CHECK(full.abstract().tb == std::vector<Integer>{-1, -3});
        CHECK(full.is_reduced());
    }
    SUBCASE("explicit k") {
        const ContactSurgeryDiagram d = single(standard_unknot(), q(2));
        const ContactSurgeryDiagram e = expand_positive(d, 0, Integer(3));
        CHECK(e.coefficients ==
              std::vector<SurgeryCoefficient>{1, 1, 1, SurgeryCoefficient(q(-2, 5))});
        CHECK_THROWS_AS(expand_positive(single(standard_unknot(), q(1, 2)), 0, Integer(1)),
                        MathError);
        CHECK_THROWS_AS(expand_positive(single(standard_unknot(), q(-2)), 0), MathError);
    }
}

TEST_CASE("enumerating expansions") {
    const ContactSurgeryDiagram d = single(standard_unknot(), q(-5, 3));
    const std::vector<ContactSurgeryDiagram> all = enumerate_expansions(d);
    REQUIRE(all.size() == 4);
    CHECK(expansion_count(d) == 4);
    std::set<std::pair<std::string, std::string>> rots;
    for (const ContactSurgeryDiagram &v : all) {
        CHECK(v.size() == 2);
        CHECK(v.coefficients == std::vector<SurgeryCoefficient>{-1, -1});
        const AbstractLinkData a = v.abstract();
        CHECK(a.tb == std::vector<Integer>{-2, -3});
        rots.emplace(a.rot[0].get_str(), a.rot[1].get_str());
    }
    CHECK(rots.size() == 4);
    // lexicographic in the number of up zigzags per term: (0,0), (0,1), (1,0), (1,1)
    CHECK(all[0].abstract().rot == std::vector<Integer>{1, 2});
    CHECK(all[3].abstract().rot == std::vector<Integer>{-1, -2});

    CHECK(enumerate_expansions(single(standard_unknot(), q(-2))).size() == 2);
    CHECK(enumerate_expansions(single(standard_unknot(), q(1))).size() == 1);
    CHECK(enumerate_expansions(catalog("xi_minus")).size() == 1);
}

TEST_CASE("determinant oracle |det L| = |p + q tb| on 200 random cases") {
    oracle::Rng rng(9);
    int done = 0;
    while (done < 200) {
        const long p = oracle::uniform(rng, -20, 20);
        const long d = oracle::uniform(rng, 1, 9);
        const long t = oracle::uniform(rng, -6, -1);
        if (p == 0 || std::gcd(p, d) != 1)
            continue;
        ++done;
        const ContactSurgeryDiagram e = expand_all(single(unknot_with_tb(t), q(p, d)));
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(t);
        REQUIRE(e.is_reduced());
        CHECK(abs(determinant(reduced_matrix(e))) == oracle::lens_order(p, d, t));
    }
}

TEST_CASE("expansion preserves |H_1| of rational surgeries on links") {
    oracle::Rng rng(77);
    const std::vector<ContactSurgeryDiagram> bases{catalog("xi_minus"), catalog("xi_k", 2),
                                                   catalog("xi_k", 3)};
    for (int trial = 0; trial < 60; ++trial) {
        const ContactSurgeryDiagram &base = bases[trial % bases.size()];
        std::vector<Rational> r;
        for (int i = 0; i < base.size(); ++i) {
            long p = 0;
            while (p == 0)
                p = oracle::uniform(rng, -9, 9);
            r.push_back(q(p, oracle::uniform(rng, 1, 4)));
        }
        ContactSurgeryDiagram d = base;
        for (int i = 0; i < base.size(); ++i)
            d.coefficients[i] = SurgeryCoefficient(r[i]);
        const ContactSurgeryDiagram e =
            expand_all(d, {trial % 2 ? Zigzag::Up : Zigzag::Down, std::nullopt});
        CAPTURE(trial);
        CHECK(abs(determinant(reduced_matrix(e))) == rational_surgery_order(base.abstract(), r));
    }
}

TEST_CASE("infinite coefficients are rejected by expansion") {
    const ContactSurgeryDiagram d(standard_unknot(), {SurgeryCoefficient::infinity()});
    CHECK_THROWS_AS(expand_all(d), MathError);
    CHECK_THROWS_AS(expansion_count(d), MathError);
}

TEST_CASE("disjoint union and rotation of diagrams") {
    const ContactSurgeryDiagram empty;
    CHECK(disjoint_union(empty, catalog("xi_plus")).abstract() == catalog("xi_plus").abstract());
    const ContactSurgeryDiagram u = disjoint_union(catalog("tight_s1s2"), catalog("xi_plus"));
    CHECK(u.size() == 2);
    CHECK(u.coefficients == std::vector<SurgeryCoefficient>{1, 1});
    const ContactSurgeryDiagram m = mirror_rotate180(catalog("xi_minus"));
    CHECK(m.size() == 2);
    // each coefficient stays with its knot
    const AbstractLinkData a = m.abstract();
    for (int i = 0; i < 2; ++i)
        CHECK(m.coefficients[i] == (a.tb[i] == -4 ? SurgeryCoefficient(-1) : SurgeryCoefficient(1)));
}
