#include <map>
#include <random>

#include <gtest/gtest.h>

#include <maxsub/hahn.hpp>

using namespace maxsub;

namespace {

HahnSeries mono(long c, long num, long den = 1) { return HahnSeries::monomial(FieldElem(c), make_rat(num, den)); }

HahnSeries random_series(std::mt19937 &rng, bool allow_zero = false)
{
    std::uniform_int_distribution<int> coeff(-3, 3), num(0, 12), den(1, 4), len(allow_zero ? 0 : 1, 4);
    std::vector<Term> t;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        int c = coeff(rng);
        if (c == 0)
            c = 1;
        t.push_back({make_rat(num(rng), den(rng)), FieldElem(c)});
    }
    HahnSeries r = series_from_terms(t);
    return r.is_exact_zero() && !allow_zero ? random_series(rng) : r;
}

// Independent product: explicit double loop into an exponent map.
std::map<Rat, Rat> convolve(const HahnSeries &a, const HahnSeries &b)
{
    std::map<Rat, Rat> m;
    for (const auto &x : a.terms())
        for (const auto &y : b.terms())
            m[Rat(x.exp + y.exp)] += x.coeff.rational_value() * y.coeff.rational_value();
    for (auto it = m.begin(); it != m.end();)
        it = it->second == 0 ? m.erase(it) : std::next(it);
    return m;
}

std::map<Rat, Rat> as_map(const HahnSeries &a)
{
    std::map<Rat, Rat> m;
    for (const auto &t : a.terms())
        m[t.exp] = t.coeff.rational_value();
    return m;
}

} // namespace

TEST(Hahn, ValuationExamples)
{
    EXPECT_EQ(valuation(HahnSeries::constant(FieldElem(1))), 0);
    EXPECT_EQ(valuation(mono(1, 1, 2) + mono(1, 1)), make_rat(1, 2));
    HahnSeries p = (mono(1, 0) + mono(1, 1, 2)) * (mono(1, 0) - mono(1, 1, 2));
    EXPECT_EQ(valuation(p), 0);
}

TEST(Hahn, ValuationOfZero)
{
    try {
        valuation(HahnSeries());
        FAIL();
    } catch (const zero_or_undetermined &e) {
        EXPECT_TRUE(e.exact_zero());
    }
    try {
        valuation(HahnSeries({}, Precision(3)));
        FAIL();
    } catch (const zero_or_undetermined &e) {
        EXPECT_FALSE(e.exact_zero());
    }
}

TEST(Hahn, MulExamples)
{
    EXPECT_EQ(mono(1, 1, 2) * mono(1, 1, 2), mono(1, 1));
    EXPECT_EQ((mono(1, 0) + mono(1, 1, 2)) * (mono(1, 0) - mono(1, 1, 2)), mono(1, 0) - mono(1, 1));
    EXPECT_TRUE((mono(3, 2) * HahnSeries()).is_exact_zero());
}

TEST(Hahn, MulPrecision)
{
    // (1 + t + O(t^2)) * (t^3 + O(t^5)) is known below min(2 + 3, 5 + 0).
    HahnSeries a({{Rat(0), FieldElem(1)}, {Rat(1), FieldElem(1)}}, Precision(2));
    HahnSeries b({{Rat(3), FieldElem(1)}}, Precision(5));
    HahnSeries p = a * b;
    EXPECT_EQ(p.known_below(), Precision(5));
    EXPECT_EQ(p.terms().size(), 2u);
}

TEST(Hahn, ReciprocalExamples)
{
    HahnSeries r = reciprocal(mono(1, 0) - mono(1, 1), Rat(3));
    EXPECT_EQ(r, HahnSeries({{Rat(0), FieldElem(1)}, {Rat(1), FieldElem(1)}, {Rat(2), FieldElem(1)}}, Precision(3)));
    HahnSeries s = reciprocal(mono(1, 1, 2), Rat(5));
    ASSERT_EQ(s.terms().size(), 1u);
    EXPECT_EQ(s.terms()[0].exp, make_rat(-1, 2));
    HahnSeries u = mono(1, 0) + mono(1, 1);
    HahnSeries inv = reciprocal(u, Rat(3));
    EXPECT_EQ((u * inv).truncated(Precision(3)), HahnSeries({{Rat(0), FieldElem(1)}}, Precision(3)));
    EXPECT_EQ(inv.terms()[1].coeff, FieldElem(-1));
    EXPECT_THROW(reciprocal(HahnSeries(), Rat(2)), error);
}

TEST(Hahn, ReciprocalProperty)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        HahnSeries a = random_series(rng);
        Rat prec = make_rat(1 + static_cast<long>(rng() % 8), 1);
        HahnSeries r = reciprocal(a, prec);
        EXPECT_EQ(valuation(r), -valuation(a));
        HahnSeries p = a * r;
        HahnSeries one = HahnSeries::constant(FieldElem(1)).truncated(p.known_below());
        EXPECT_EQ(p, one);
        EXPECT_GE(p.known_below(), Precision(Rat(prec + valuation(a))));
    }
}

TEST(Hahn, CutoffExamples)
{
    HahnSeries a = mono(1, 1, 2) + mono(1, 1) + mono(1, 2);
    EXPECT_EQ(cutoff(a, Rat(1)).high, mono(1, 1) + mono(1, 2));
    EXPECT_EQ(cutoff(a, Rat(1)).low, mono(1, 1, 2));
    EXPECT_EQ(cutoff(a, Rat(0)).high, a);
    HahnSeries b = mono(1, 0) + mono(1, 1, 3) + mono(1, 2, 3);
    EXPECT_EQ(cutoff(b, make_rat(1, 2)).high, mono(1, 2, 3));
    EXPECT_THROW(cutoff(HahnSeries({}, Precision(1)), Rat(2)), error);
}

TEST(Hahn, CutoffOfStreamKeepsTailFiltered)
{
    HahnSeries s = HahnSeries::from_rule(std::make_shared<IntegersRule>(1));
    auto c = cutoff(s, Rat(3));
    EXPECT_EQ(c.low, mono(1, 1) + mono(1, 2));
    HahnSeries hi = c.high.extended(Precision(6));
    EXPECT_EQ(hi.terms().size(), 3u);
    EXPECT_EQ(hi.terms()[0].exp, 3);
}

TEST(Hahn, Streams)
{
    HahnSeries g = HahnSeries::from_rule(std::make_shared<GeometricGapRule>());
    EXPECT_EQ(valuation(g), make_rat(3, 2));
    HahnSeries e = g.extended(Precision(4));
    ASSERT_EQ(e.terms().size(), 3u);
    EXPECT_EQ(e.terms()[1].exp, make_rat(9, 4));
    EXPECT_EQ(e.terms()[2].exp, make_rat(25, 8));
    EXPECT_EQ(e.known_below(), Precision(make_rat(65, 16)));
}

TEST(Hahn, LimitOfPair)
{
    AdmissiblePair p;
    p.s = {Rat(1), Rat(2), Rat(3)};
    p.alpha = {HahnSeries(), mono(1, 1), mono(1, 1) + mono(1, 2)};
    p.continuation = std::make_shared<IntegersRule>(1);
    HahnSeries lim = limit_of_pair(p);
    EXPECT_TRUE(lim.has_tail());
    EXPECT_EQ(lim.extended(Precision(6)).terms().size(), 5u);

    AdmissiblePair z;
    z.s = {Rat(1), Rat(2)};
    z.alpha = {HahnSeries(), HahnSeries()};
    z.constant_extension = true;
    EXPECT_TRUE(limit_of_pair(z).is_exact_zero());

    AdmissiblePair h;
    h.s = {make_rat(1, 2), make_rat(3, 2)};
    h.alpha = {HahnSeries(), mono(1, 1, 2)};
    HahnSeries l = limit_of_pair(h);
    EXPECT_EQ(l.terms().size(), 1u);
    EXPECT_EQ(l.known_below(), Precision(make_rat(3, 2)));

    AdmissiblePair bad = h;
    bad.alpha[1] = mono(1, 2);
    EXPECT_THROW(limit_of_pair(bad), error);
    bad = h;
    bad.s = {Rat(2), Rat(1)};
    EXPECT_THROW(limit_of_pair(bad), error);
}

TEST(Hahn, LimitPrefixProperty)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        HahnSeries a = random_series(rng);
        AdmissiblePair p = pair_of_series(a, 1 + rng() % 5);
        HahnSeries lim = limit_of_pair(p);
        for (std::size_t i = 0; i < p.s.size(); ++i)
            EXPECT_EQ(lim.truncated(Precision(p.s[i])).terms(), p.alpha[i].terms());
    }
}

TEST(Hahn, ValuationIsAdditive)
{
    std::mt19937 rng(1);
    for (int i = 0; i < 500; ++i) {
        HahnSeries a = random_series(rng), b = random_series(rng);
        EXPECT_EQ(valuation(a * b), valuation(a) + valuation(b));
        EXPECT_EQ(as_map(a * b), convolve(a, b));
    }
}

TEST(Hahn, CutoffComplement)
{
    std::mt19937 rng(2);
    for (int i = 0; i < 200; ++i) {
        HahnSeries a = random_series(rng, true);
        Rat u = make_rat(static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 3));
        auto c = cutoff(a, u);
        EXPECT_EQ(c.high + c.low, a);
        for (const auto &t : c.high.terms())
            EXPECT_GE(t.exp, u);
        for (const auto &t : c.low.terms())
            EXPECT_LT(t.exp, u);
    }
}

TEST(Hahn, NoTermsAtOrBeyondPrecision)
{
    std::mt19937 rng(9);
    for (int i = 0; i < 200; ++i) {
        HahnSeries a = random_series(rng).truncated(Precision(make_rat(static_cast<long>(rng() % 10), 2)));
        HahnSeries b = random_series(rng).truncated(Precision(make_rat(static_cast<long>(rng() % 10), 3)));
        for (const HahnSeries &r : {a + b, a * b, a - b})
            for (const auto &t : r.terms())
                EXPECT_TRUE(t.exp < r.known_below());
    }
}

TEST(Hahn, Text)
{
    HahnSeries a = scale(mono(1, 1, 2), FieldElem(make_rat(3, 2))) + mono(1, 2) - mono(1, 7, 3);
    EXPECT_EQ(a.str(), "3/2*t^(1/2) + t^2 - t^(7/3)");
    EXPECT_EQ(HahnSeries().str(), "0");
    EXPECT_EQ((mono(-1, -1)).str("u"), "-u^(-1)");
}
