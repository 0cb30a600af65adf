#include "claims.hpp"
#include "oracle.hpp"

#include "pluri/errors.hpp"
#include "pluri/threefold.hpp"

#include <gtest/gtest.h>

using namespace pluri;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

Bound ge(const RealExpr& v) { return {v, false}; }
Bound gt(const RealExpr& v) { return {v, true}; }

oracle::Kind okind(BirKind k)
{
    switch (k) {
    case BirKind::map4:
        return oracle::Kind::map4;
    case BirKind::map3:
        return oracle::Kind::map3;
    case BirKind::map2:
        return oracle::Kind::map2;
    default:
        return oracle::Kind::general;
    }
}

} // namespace

TEST(CombineMax, Examples)
{
    const Bound a = combine_max({ge(RealExpr(3)), ge(RealExpr(6))});
    EXPECT_EQ(a.value.rational(), 6);
    EXPECT_FALSE(a.strict);

    const RealExpr v = sqrt(q(5)) + 1;
    EXPECT_TRUE(combine_max({ge(v), gt(v)}).strict);
    EXPECT_TRUE(combine_max({gt(v), ge(v)}).strict);

    const RealExpr b = sqrt(q(37));
    const Bound c = combine_max({ge(RealExpr(861)), gt((3 * b + 6) / (b / 3 - 2))});
    EXPECT_TRUE(c.strict);
    EXPECT_EQ(min_lattice(c, RealExpr(1)), 879);
    EXPECT_THROW((void)combine_max({}), DomainError);
}

TEST(MinLattice, Examples)
{
    EXPECT_EQ(min_lattice(ge(RealExpr(432 * 3 - 3)), RealExpr(1)), 1293);
    EXPECT_EQ(min_lattice(ge(RealExpr(0)), RealExpr(1)), 0);
    EXPECT_EQ(min_lattice(gt(RealExpr(0)), RealExpr(1)), 1);
    EXPECT_EQ(min_lattice(ge(RealExpr(q(7, 2))), RealExpr(1)), 4);
    EXPECT_EQ(approached_lattice(gt(RealExpr(27)), RealExpr(1)), 27);
    EXPECT_EQ(min_lattice(gt(RealExpr(27)), RealExpr(1)), 28);

    // (biralpha1) at l=5, g=9, m=2 is about 117.3 cbrt2.
    const auto c = bir_conditions(BirQuery{9, 5, BirKind::general}, 2, Integer(0));
    const auto a1 = select_bound(c, "(biralpha1)").bounds.at(0).bound;
    EXPECT_EQ(min_lattice(a1, cbrt2()), 118);
    // 3 cbrt2 * 39 exactly: the lattice value is the coefficient.
    EXPECT_EQ(min_lattice(ge(3 * cbrt2() * 39), cbrt2()), 117);
    EXPECT_EQ(min_lattice(gt(3 * cbrt2() * 39), cbrt2()), 118);
}

TEST(Satisfies, StrictAndWeak)
{
    EXPECT_TRUE(satisfies(RealExpr(6), ge(RealExpr(6))));
    EXPECT_FALSE(satisfies(RealExpr(6), gt(RealExpr(6))));
    EXPECT_TRUE(satisfies(RealExpr(2), gt(sqrt(q(3)))));
    EXPECT_FALSE(satisfies(sqrt(q(3)), gt(sqrt(q(3)))));
}

TEST(Optimizer, Examples)
{
    const auto r = nv_threshold(NvQuery{2, 1});
    EXPECT_EQ(r.m_star, 36);
    EXPECT_EQ(r.lattice_value, 879);
    EXPECT_EQ(r.attained_by, "(a2)");
    EXPECT_TRUE(r.infimum.strict);
    EXPECT_EQ(r.m_min, 36);

    const auto t3 = bir_threshold(BirQuery{11, 0, BirKind::map4});
    EXPECT_EQ(t3.m_star, 5);
    EXPECT_EQ(t3.lattice_value, 237);

    const auto s = nv_threshold(NvQuery{10, 305});
    EXPECT_EQ(s.m_star, 4);
    EXPECT_EQ(s.lattice_value, 18354);
}

TEST(Optimizer, MMin)
{
    // b = 1/3 at g=2: m+1 > 36.
    EXPECT_EQ(find_m_min(nv_family(NvQuery{2, 1})), 36);
    // b = 3/5 at g=3: m+1 > 100/9.
    EXPECT_EQ(find_m_min(nv_family(NvQuery{3, 1})), 11);
}

TEST(Optimizer, CeilingAndEmptyFamilies)
{
    BranchFamily f;
    f.generator = [](long) {
        ConditionSet c;
        c.bounds.push_back({"(c)", ge(RealExpr(1))});
        return c;
    };
    f.monotone_id = "(c)"; // never grows, so the stop rule never fires
    f.scan_ceiling = 100;
    EXPECT_THROW((void)minimize_over_m(f), DomainError);

    BranchFamily none;
    none.generator = [](long m) {
        ConditionSet c;
        c.admissibility.push_back({"(never)", RealExpr(0), RealExpr(m)});
        return c;
    };
    none.monotone_id = "(c)";
    none.scan_ceiling = 10;
    EXPECT_THROW((void)minimize_over_m(none), NoAdmissibleBranch);
}

TEST(Optimizer, ExhaustiveScanEquivalenceNv)
{
    for (long g = 2; g <= 50; ++g) {
        for (long n = 1; n <= 50; ++n) {
            const auto r = nv_threshold(NvQuery{g, n});
            const auto o = oracle::nv(g, n);
            ASSERT_EQ(r.lattice_value, o.lattice) << "g=" << g << " n=" << n;
            ASSERT_EQ(r.m_star, o.m_star) << "g=" << g << " n=" << n;
        }
    }
}

TEST(Optimizer, ExhaustiveScanEquivalenceBir)
{
    for (long g = 2; g <= 50; ++g) {
        const long t = oracle::trican(g).lattice;
        for (long l = 5; l <= 20; ++l) {
            const auto r = bir_threshold(BirQuery{g, l, BirKind::general});
            const auto o = oracle::bir(g, l, oracle::Kind::general, t);
            ASSERT_EQ(r.lattice_value, o.lattice) << "g=" << g << " l=" << l;
            ASSERT_EQ(r.m_star, o.m_star) << "g=" << g << " l=" << l;
        }
        for (BirKind k : {BirKind::map4, BirKind::map3, BirKind::map2}) {
            const BirQuery bq{g, 0, k};
            try {
                validate(bq);
            } catch (const DomainError&) {
                continue;
            }
            const auto r = bir_threshold(bq);
            const auto o = oracle::bir(g, 0, okind(k), t);
            ASSERT_EQ(r.lattice_value, o.lattice) << to_string(k) << " g=" << g;
            ASSERT_EQ(r.m_star, o.m_star) << to_string(k) << " g=" << g;
        }
    }
}

TEST(Optimizer, TricanAgainstOracle)
{
    for (long g = 2; g <= 50; ++g) {
        const auto r = trican_threshold(g);
        const auto o = oracle::trican(g);
        ASSERT_EQ(r.lattice_value, o.lattice) << g;
        ASSERT_EQ(r.m_star, o.m_star) << g;
    }
}

TEST(Optimizer, DominatesHeuristicBranch)
{
    for (long g = 2; g <= 50; ++g) {
        for (long n = 1; n <= 50; ++n) {
            const NvQuery nq{g, n};
            const long mh = nv_heuristic_m(nq);
            const auto c = nv_conditions(nq, mh);
            ASSERT_TRUE(admissible(c)) << g << " " << n;
            EXPECT_LE(nv_threshold(nq).lattice_value, branch_lattice(c, RealExpr(1))) << g << " " << n;
        }
        for (long l = 5; l <= 20; ++l) {
            const BirQuery bq{g, l, BirKind::general};
            const long k = floor_of(bir_beta_prime_sq(l, g)).get_si();
            const ConditionSet c = k >= 1 ? bir_conditions(bq, k) : bir_limit_conditions(bq);
            ASSERT_TRUE(admissible(c)) << g << " " << l;
            EXPECT_LE(bir_threshold(bq).lattice_value, branch_lattice(c, cbrt2())) << g << " " << l;
        }
    }
}

TEST(Optimizer, MonotoneInN)
{
    for (long g = 2; g <= 50; ++g) {
        Integer prev(0);
        for (long n = 1; n <= 50; ++n) {
            const Integer v = nv_threshold(NvQuery{g, n}).lattice_value;
            ASSERT_GE(v, prev) << g << " " << n;
            prev = v;
        }
    }
}

TEST(Optimizer, StrictnessSoundness)
{
    std::vector<ThresholdReport> reports;
    for (long g = 2; g <= 30; g += 2) {
        for (long n = 1; n <= 20; n += 3) {
            reports.push_back(nv_threshold(NvQuery{g, n}));
        }
        for (long l = 5; l <= 14; ++l) {
            reports.push_back(bir_threshold(BirQuery{g, l, BirKind::general}));
        }
        reports.push_back(trican_threshold(g));
    }
    reports.push_back(bir_threshold(BirQuery{8, 6, BirKind::general}));
    for (const auto& r : reports) {
        const RealExpr at = RealExpr(Rational(r.lattice_value)) * r.unit;
        const RealExpr below = RealExpr(Rational(r.lattice_value - 1)) * r.unit;
        bool all = true;
        bool some_fail = false;
        for (const auto& t : r.trace) {
            all = all && satisfies(at, t.bound);
            some_fail = some_fail || !satisfies(below, t.bound);
        }
        EXPECT_TRUE(all) << r.branch << " " << r.lattice_value;
        EXPECT_TRUE(some_fail) << r.branch << " " << r.lattice_value;
    }
}

TEST(Implies, Examples)
{
    std::vector<GridPoint> gs;
    for (long g = 2; g <= 100; ++g) {
        gs.push_back({{"g", g}, {"n", 1}, {"m", claims::nv_m_min(g)}});
    }
    const auto nv = claims::nv_memo();
    EXPECT_TRUE(implies(nv.select("(a3)"), nv.select("(a0)"), gs).holds);
    const auto bad = implies(nv.select("(a-1)"), nv.select("(a3)"), gs);
    EXPECT_FALSE(bad.holds);
    ASSERT_TRUE(bad.counterexample);
    EXPECT_EQ(bad.counterexample->at("g"), 2);
    EXPECT_THROW((void)nv.select("(zz)")(gs.front()), DomainError);
}

TEST(Implies, ClaimedChainsOnSmallGrid)
{
    for (const auto& c : claims::claimed_implications(claims::small_grid())) {
        EXPECT_TRUE(c.result.holds) << c.a << " => " << c.b << " fails at "
                                    << (c.result.counterexample ? to_string(*c.result.counterexample) : "");
        EXPECT_GT(c.result.points_checked, 0U) << c.a << " => " << c.b;
    }
}

TEST(ConditionSet, ValidateRejectsEmpty)
{
    ConditionSet c;
    EXPECT_THROW(c.validate(), DomainError);
}
