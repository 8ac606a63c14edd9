#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <pdef/algebra.hpp>
#include <pdef/combinatorics.hpp>
#include <pdef/linalg.hpp>

using namespace pdef;

namespace
{

Poly random_poly(std::mt19937_64 &rng, unsigned max_degree = 3, unsigned terms = 4)
{
    Poly out;
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m{};
        unsigned left = static_cast<unsigned>(rng() % (max_degree + 1));
        m.exps[0] = static_cast<unsigned>(rng() % (left + 1));
        left -= m.exps[0];
        m.exps[1] = static_cast<unsigned>(rng() % (left + 1));
        m.exps[2] = left - m.exps[1];
        out.add_term(m, make_rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1));
    }
    return out;
}

Poly mono(unsigned a, unsigned b, unsigned c)
{
    return Poly::term(Monomial{{a, b, c}}, 1);
}

} // namespace

TEST(Parse, SumOfSquares)
{
    const Poly p = parse_poly("x^2+y^2+z^2");
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p, mono(2, 0, 0) + mono(0, 2, 0) + mono(0, 0, 2));
}

TEST(Parse, CancellationGivesZero)
{
    EXPECT_TRUE(parse_poly("x - x").is_zero());
}

TEST(Parse, RationalCoefficients)
{
    const Poly p = parse_poly("3/2*x*y - z^5");
    EXPECT_EQ(p.coefficient(Monomial{{1, 1, 0}}), make_rational(3, 2));
    EXPECT_EQ(p.coefficient(Monomial{{0, 0, 5}}), Rational(-1));
    EXPECT_EQ(p.size(), 2u);
}

TEST(Parse, ParenthesesAndPowers)
{
    EXPECT_EQ(parse_poly("(x+y)^2"), parse_poly("x^2 + 2*x*y + y^2"));
    EXPECT_EQ(parse_poly("-(x - 1)"), parse_poly("1 - x"));
    EXPECT_EQ(parse_poly("  x *  y "), mono(1, 1, 0));
}

TEST(Parse, Errors)
{
    try {
        parse_poly("x + w");
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.kind(), error_kind::unknown_variable);
    }
    for (const char *bad : {"x +", "x^-1", "2x", "x**2", "1/0", "(x", "x^y", ""}) {
        try {
            parse_poly(bad);
            FAIL() << bad;
        } catch (const parse_error &e) {
            EXPECT_EQ(e.kind(), error_kind::syntax) << bad;
        }
    }
}

TEST(Parse, ErrorCarriesPosition)
{
    try {
        parse_poly("x + y + )");
        FAIL();
    } catch (const parse_error &e) {
        EXPECT_EQ(e.position(), 8u);
    }
}

TEST(Print, RoundTripOnRandomPolys)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const Poly p = random_poly(rng);
        const std::string text = to_string(p);
        EXPECT_EQ(parse_poly(text), p) << text;
        EXPECT_EQ(to_string(parse_poly(text)), text);
    }
}

TEST(Print, Formats)
{
    EXPECT_EQ(to_string(Poly{}), "0");
    EXPECT_EQ(to_string(parse_poly("-x")), "-x");
    EXPECT_EQ(to_string(parse_poly("3/2*x*y - z^5")), "-z^5 + 3/2*x*y");
}

TEST(Ring, AxiomsOnRandomPolys)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(pow(a, 3), a * a * a);
    }
}

TEST(Ring, ProductRuleForDerivatives)
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const Poly a = random_poly(rng), b = random_poly(rng);
        for (std::size_t v = 0; v < 3; ++v) {
            EXPECT_EQ(derivative(a * b, v), derivative(a, v) * b + a * derivative(b, v));
        }
    }
}

TEST(Weights, WeightedDegree)
{
    EXPECT_EQ(weighted_degree(parse_poly("x^2+y^3+z^5"), WeightSystem(15, 10, 6)), 30);
    EXPECT_EQ(weighted_degree(parse_poly("x^2+y^2+z^2"), WeightSystem(1, 1, 1)), 2);
    EXPECT_EQ(weighted_degree(parse_poly("x^2+y"), WeightSystem(1, 1, 1)), std::nullopt);
    EXPECT_THROW(weighted_degree(Poly{}, WeightSystem(1, 1, 1)), error);
}

TEST(Weights, ProductOfHomogeneousIsHomogeneous)
{
    const WeightSystem w(15, 10, 6);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        const int da = static_cast<int>(rng() % 40) + 6, db = static_cast<int>(rng() % 40) + 6;
        Poly a, b;
        for (const auto &m : monomials_of_weight(w, da)) {
            a.add_term(m, Rational(static_cast<long>(rng() % 5) + 1));
        }
        for (const auto &m : monomials_of_weight(w, db)) {
            b.add_term(m, Rational(static_cast<long>(rng() % 5) + 1));
        }
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        EXPECT_EQ(weighted_degree(a * b, w), da + db);
    }
}

TEST(Weights, MonomialsOfWeightAreExactlyTheSlice)
{
    const WeightSystem w(15, 10, 6);
    for (int deg = 0; deg <= 90; ++deg) {
        std::size_t brute = 0;
        for (unsigned a = 0; a <= 6; ++a) {
            for (unsigned b = 0; b <= 9; ++b) {
                for (unsigned c = 0; c <= 15; ++c) {
                    brute += (15 * a + 10 * b + 6 * c == static_cast<unsigned>(deg));
                }
            }
        }
        const auto ms = monomials_of_weight(w, deg);
        EXPECT_EQ(ms.size(), brute) << deg;
        for (const auto &m : ms) {
            EXPECT_EQ(w.of(m), deg);
        }
    }
    EXPECT_TRUE(monomials_of_weight(w, -1).empty());
}

TEST(Weights, Infer)
{
    EXPECT_EQ(infer_weights(parse_poly("x^2+y^3+z^5")), WeightSystem(15, 10, 6));
    EXPECT_EQ(infer_weights(parse_poly("x^2+y^2+z^2")), WeightSystem(1, 1, 1));
    EXPECT_EQ(infer_weights(parse_poly("x^2*y+y^3+z^4")), WeightSystem(4, 4, 3));
    try {
        infer_weights(parse_poly("x^2"));
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.kind(), error_kind::ambiguous_weights);
    }
    try {
        infer_weights(parse_poly("x^2 + x^3"));
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.kind(), error_kind::no_weights);
    }
}

TEST(Weights, InvalidSystems)
{
    EXPECT_THROW(WeightSystem(0, 1, 1), error);
    EXPECT_THROW(WeightSystem(2, 4, 6), error);
}

TEST(Euler, Formula)
{
    const Poly a = parse_poly("x^2+y^2+z^2");
    EXPECT_EQ(euler_apply(a, WeightSystem(1, 1, 1)), Rational(2) * a);
    const Poly b = parse_poly("x^2+y^3+z^5");
    EXPECT_EQ(euler_apply(b, WeightSystem(15, 10, 6)), Rational(30) * b);
    EXPECT_TRUE(euler_apply(Poly::constant(1), WeightSystem(3, 2, 1)).is_zero());
}

TEST(Euler, IsADerivation)
{
    const WeightSystem w(15, 10, 6);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const Poly p = random_poly(rng), q = random_poly(rng);
        EXPECT_EQ(euler_apply(p * q, w), p * euler_apply(q, w) + q * euler_apply(p, w));
    }
}

TEST(Rational, Canonical)
{
    const Rational r = make_rational(6, -4);
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_EQ(to_string(make_rational(-3, 2)), "-3/2");
}

TEST(Combinatorics, ShuffleCounts)
{
    EXPECT_EQ(shuffles(2, 1).size(), 3u);
    EXPECT_EQ(shuffles(0, 4).size(), 1u);
    EXPECT_EQ(shuffles(3, 3).size(), 20u);
    const auto s11 = shuffles(1, 1);
    ASSERT_EQ(s11.size(), 2u);
    EXPECT_EQ(s11[0], (Permutation{0, 1}));
    EXPECT_EQ(s11[1], (Permutation{1, 0}));
}

TEST(Combinatorics, ShufflesAreLexicographicAndValid)
{
    for (std::size_t i = 0; i <= 4; ++i) {
        for (std::size_t j = 0; j <= 4; ++j) {
            const auto all = shuffles(i, j);
            for (std::size_t k = 0; k < all.size(); ++k) {
                const auto &p = all[k];
                EXPECT_TRUE(std::is_sorted(p.begin(), p.begin() + static_cast<long>(i)));
                EXPECT_TRUE(std::is_sorted(p.begin() + static_cast<long>(i), p.end()));
                if (k > 0) {
                    EXPECT_LT(all[k - 1], p);
                }
            }
        }
    }
}

TEST(Combinatorics, KoszulExamples)
{
    EXPECT_EQ(koszul_chi({0, 1, 2}, {1, 0, 2}), 1);
    EXPECT_EQ(koszul_chi({1, 0}, {1, 1}), 1);
    EXPECT_EQ(koszul_chi({1, 0}, {1, 2}), -1);
    EXPECT_EQ(koszul_chi({1, 0}, {0, 0}), -1);
}

TEST(Combinatorics, KoszulIsMultiplicative)
{
    // chi(sigma tau; x) = chi(sigma; x) chi(tau; x_sigma), where
    // (sigma tau)[k] = sigma[tau[k]] and x_sigma[k] = x[sigma[k]].
    std::mt19937_64 rng(11);
    for (int it = 0; it < 500; ++it) {
        const std::size_t n = rng() % 6 + 1;
        Permutation s(n), t(n);
        std::iota(s.begin(), s.end(), 0);
        std::iota(t.begin(), t.end(), 0);
        std::shuffle(s.begin(), s.end(), rng);
        std::shuffle(t.begin(), t.end(), rng);
        std::vector<int> x(n);
        for (auto &d : x) {
            d = static_cast<int>(rng() % 5) - 1;
        }
        Permutation st(n);
        std::vector<int> xs(n);
        for (std::size_t k = 0; k < n; ++k) {
            st[k] = s[t[k]];
            xs[k] = x[s[k]];
        }
        EXPECT_EQ(koszul_chi(st, x), koszul_chi(s, x) * koszul_chi(t, xs));
    }
}

TEST(Linalg, EchelonTagsRecoverPreimages)
{
    std::mt19937_64 rng(12);
    for (int it = 0; it < 50; ++it) {
        EchelonBasis basis;
        std::vector<SparseVec> gens;
        for (std::size_t g = 0; g < 5; ++g) {
            SparseVec v;
            for (std::size_t c = 0; c < 6; ++c) {
                if (rng() % 2) {
                    v[c] = Rational(static_cast<long>(rng() % 7) - 3);
                }
            }
            std::erase_if(v, [](const auto &kv) { return kv.second == 0; });
            gens.push_back(v);
            basis.insert(v, SparseVec{{g, Rational(1)}});
        }
        // A combination of generators reduces to zero and its tag rebuilds it.
        SparseVec target;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            axpy(target, Rational(static_cast<long>(rng() % 5) - 2), gens[g]);
        }
        SparseVec work = target;
        const SparseVec tag = basis.reduce(work);
        EXPECT_TRUE(work.empty());
        SparseVec rebuilt;
        for (const auto &[g, c] : tag) {
            axpy(rebuilt, c, gens[g]);
        }
        EXPECT_EQ(rebuilt, target);
    }
}
