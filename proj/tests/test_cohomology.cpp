#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <pdef/cohomology.hpp>

using namespace pdef;

namespace
{

std::size_t dense_rank(std::vector<std::vector<Rational>> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows.size()) {
            continue;
        }
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][c] != 0) {
                const Rational f = rows[r][c] / rows[rank][c];
                for (std::size_t k = c; k < cols; ++k) {
                    rows[r][k] -= f * rows[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

// Monomial basis terms c*m*d_I of degree-k multivectors whose term weight is W,
// enumerated by brute force over exponents.
std::vector<MultiVec> brute_basis(int k, int W, const WeightSystem &w)
{
    std::vector<MultiVec> out;
    const std::size_t ncomp = k == 0 || k == 3 ? 1 : (k == 1 || k == 2 ? 3 : 0);
    for (std::size_t c = 0; c < ncomp; ++c) {
        for (unsigned a = 0; a < 40; ++a) {
            for (unsigned b = 0; b < 40; ++b) {
                for (unsigned e = 0; e < 40; ++e) {
                    const Monomial m{{a, b, e}};
                    if (term_weight(w, k, c, m) != W) {
                        continue;
                    }
                    MultiVec v(k);
                    v[c] = Poly::term(m, 1);
                    out.push_back(std::move(v));
                }
            }
        }
    }
    return out;
}

// Coordinates of p on the brute-force basis.
std::vector<Rational> coords(const MultiVec &p, const std::vector<MultiVec> &basis)
{
    std::vector<Rational> out(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t c = 0; c < basis[i].components().size(); ++c) {
            if (!basis[i][c].is_zero()) {
                out[i] = p[c].coefficient(basis[i][c].terms().begin()->first);
            }
        }
    }
    return out;
}

struct Sizes {
    std::size_t cocycles;
    std::size_t boundaries;
    std::size_t with_labels;
};

// Dimensions of Z, B and B + span(labels) in the (k, W) slice.
Sizes dense_sizes(const Cohomology &h, int k, int W)
{
    const auto &w = h.data().weights();
    const int shift = h.data().shift();
    const auto here = brute_basis(k, W, w);
    Sizes s{};
    if (k < 3) {
        const auto next = brute_basis(k + 1, W + shift, w);
        std::vector<std::vector<Rational>> rows;
        for (const auto &e : here) {
            rows.push_back(coords(coboundary(e, h.data().phi()), next));
        }
        s.cocycles = here.size() - dense_rank(rows);
    } else {
        s.cocycles = here.size();
    }
    std::vector<std::vector<Rational>> rows;
    if (k > 0) {
        for (const auto &e : brute_basis(k - 1, W - shift, w)) {
            rows.push_back(coords(coboundary(e, h.data().phi()), here));
        }
    }
    s.boundaries = rows.empty() ? 0 : dense_rank(rows);
    for (const auto &l : h.labels_of_weight(k, W)) {
        rows.push_back(coords(h.realize(l), here));
    }
    s.with_labels = rows.empty() ? 0 : dense_rank(rows);
    return s;
}

Poly random_poly(std::mt19937_64 &rng, unsigned max_degree, unsigned terms = 3)
{
    Poly out;
    for (unsigned t = 0; t < terms; ++t) {
        Monomial m{};
        unsigned left = static_cast<unsigned>(rng() % (max_degree + 1));
        m.exps[0] = static_cast<unsigned>(rng() % (left + 1));
        left -= m.exps[0];
        m.exps[1] = static_cast<unsigned>(rng() % (left + 1));
        m.exps[2] = left - m.exps[1];
        out.add_term(m, Rational(static_cast<long>(rng() % 7) - 3));
    }
    return out;
}

MultiVec random_mv(std::mt19937_64 &rng, int degree, unsigned max_degree = 3)
{
    MultiVec out(degree);
    for (std::size_t c = 0; c < out.components().size(); ++c) {
        out[c] = random_poly(rng, max_degree);
    }
    return out;
}

Cohomology make(const char *phi)
{
    return Cohomology(milnor_basis(parse_poly(phi)));
}

CohClass random_class(std::mt19937_64 &rng, const Cohomology &h, int g, int cap)
{
    const auto labels = h.enumerate_basis(g, cap);
    CohClass out(g);
    for (const auto &l : labels) {
        if (rng() % 2) {
            out.add(l, Rational(static_cast<long>(rng() % 7) - 3));
        }
    }
    return out;
}

} // namespace

TEST(Enumerate, SpecExamples)
{
    const auto gen = make("x^2+y^2+z^2");
    EXPECT_TRUE(gen.enumerate_basis(0, 100).empty());
    EXPECT_TRUE(gen.enumerate_basis(1, 100).empty());
    EXPECT_TRUE(gen.enumerate_basis(3, 100).empty());
    const auto special = make("x^3+y^3+z^3");
    EXPECT_EQ(special.enumerate_basis(0, 6), (std::vector<BasisLabel>{BasisLabel::eul(0), BasisLabel::eul(1)}));
    EXPECT_EQ(special.enumerate_basis(-1, 6),
              (std::vector<BasisLabel>{BasisLabel::cas(0), BasisLabel::cas(1), BasisLabel::cas(2)}));
}

TEST(Enumerate, CountsUnderCap)
{
    // x^2+y^3+z^5, cap 3d = 90: Top(i,s) has coefficient degree 30 i + w(u_s)
    // with w(u_s) in {0,6,10,12,16,18,22,28}.
    const auto h = make("x^2+y^3+z^5");
    std::size_t top = 0;
    for (int i = 0; i <= 3; ++i) {
        for (int ws : {0, 6, 10, 12, 16, 18, 22, 28}) {
            top += (30 * i + ws <= 90);
        }
    }
    EXPECT_EQ(h.enumerate_basis(2, 90).size(), top);
    EXPECT_EQ(h.enumerate_basis(-1, 90).size(), 4u);
    for (const auto &l : h.enumerate_basis(1, 90)) {
        EXPECT_NE(l.kind == label_kind::type_a && l.j == 0, true);
    }
}

TEST(Realize, SpecExamples)
{
    const auto h = make("x^2+y^3+z^5");
    EXPECT_EQ(h.f1(CohClass::of(BasisLabel::cas(0))), MultiVec::function(Poly::constant(1)));
    EXPECT_EQ(h.f1(CohClass::of(BasisLabel::b(2), Rational(3))),
              Rational(3) * poisson_from_potential(h.data().u(2)));
    EXPECT_EQ(h.f1(CohClass::of(BasisLabel::top(1, 3))), MultiVec::top(h.data().phi() * h.data().u(3)));
    EXPECT_EQ(h.realize(BasisLabel::a(1, 2)), (h.data().phi() * h.data().u(2)) * h.pi());
}

TEST(Realize, RepresentativesAreCocycles)
{
    for (const char *phi : {"x^2+y^2+z^2", "x^3+y^3+z^3", "x^2+y^3+z^5", "x^2*y+y^3+z^4"}) {
        const auto h = make(phi);
        const int cap = 3 * h.data().d();
        for (int g = -1; g <= 2; ++g) {
            for (const auto &l : h.enumerate_basis(g, cap)) {
                EXPECT_TRUE(h.differential(h.realize(l)).is_zero()) << phi << " " << to_string(l);
            }
        }
    }
}

TEST(Realize, LabelWeightMatchesRepresentative)
{
    for (const char *phi : {"x^3+y^3+z^3", "x^2+y^3+z^5"}) {
        const auto h = make(phi);
        for (int g = -1; g <= 2; ++g) {
            for (const auto &l : h.enumerate_basis(g, 2 * h.data().d())) {
                const auto parts = weight_parts(h.realize(l), h.data().weights());
                ASSERT_EQ(parts.size(), 1u) << to_string(l);
                EXPECT_EQ(parts.begin()->first, h.label_weight(l)) << to_string(l);
            }
        }
    }
}

TEST(Realize, InvalidLabels)
{
    const auto gen = make("x^2+y^3+z^5");
    for (const auto &l : {BasisLabel::eul(0), BasisLabel::a(0, 0), BasisLabel::b(0), BasisLabel::b(8),
                          BasisLabel::top(0, 8), BasisLabel::cas(-1)}) {
        try {
            gen.realize(l);
            FAIL() << to_string(l);
        } catch (const error &e) {
            EXPECT_EQ(e.kind(), error_kind::invalid_label);
        }
    }
    const auto special = make("x^3+y^3+z^3");
    EXPECT_NO_THROW(special.realize(BasisLabel::eul(2)));
    EXPECT_NO_THROW(special.realize(BasisLabel::a(0, 0)));
}

// The labels complete the coboundaries to a basis of the cocycles in every
// slice, checked against dense ranks computed here.
TEST(Basis, CompleteAndIndependentDenseOracle)
{
    for (const char *phi : {"x^2+y^2+z^2", "x^3+y^3+z^3", "x^2*y+y^3+z^4"}) {
        const auto h = make(phi);
        const int aw = h.data().weights().abs_weight();
        for (int k = 0; k <= 3; ++k) {
            for (int W = -aw; W <= 2 * h.data().d(); ++W) {
                const auto s = dense_sizes(h, k, W);
                const auto labels = h.labels_of_weight(k, W).size();
                EXPECT_EQ(s.with_labels, s.boundaries + labels) << phi << " k=" << k << " W=" << W;
                EXPECT_EQ(s.cocycles, s.boundaries + labels) << phi << " k=" << k << " W=" << W;
                const auto chk = h.check_slice(k, W);
                EXPECT_TRUE(chk.consistent());
                EXPECT_EQ(chk.cocycles, s.cocycles);
                EXPECT_EQ(chk.boundaries, s.boundaries);
            }
        }
    }
}

TEST(Basis, CompleteForWeightedPotential)
{
    const auto h = make("x^2+y^3+z^5");
    for (int k = 0; k <= 3; ++k) {
        for (int W = -31; W <= 60; ++W) {
            EXPECT_TRUE(h.check_slice(k, W).consistent()) << k << " " << W;
        }
    }
}

TEST(Project, InvertsF1)
{
    std::mt19937_64 rng(31);
    for (const char *phi : {"x^3+y^3+z^3", "x^2+y^3+z^5"}) {
        const auto h = make(phi);
        for (int g = -1; g <= 2; ++g) {
            for (int i = 0; i < 5; ++i) {
                const CohClass xi = random_class(rng, h, g, 2 * h.data().d());
                EXPECT_EQ(h.project(h.f1(xi)), xi) << phi << " " << to_string(xi);
            }
        }
    }
}

TEST(Project, KillsCoboundaries)
{
    std::mt19937_64 rng(32);
    for (const char *phi : {"x^3+y^3+z^3", "x^2+y^3+z^5"}) {
        const auto h = make(phi);
        for (int k = 0; k <= 2; ++k) {
            for (int i = 0; i < 5; ++i) {
                const MultiVec q = random_mv(rng, k);
                EXPECT_TRUE(h.project(h.differential(q)).is_zero());
            }
        }
    }
}

TEST(Project, TypeAPlusCoboundary)
{
    std::mt19937_64 rng(33);
    const auto h = make("x^2+y^3+z^5");
    for (int q = 1; q < h.data().mu(); ++q) {
        const MultiVec p = h.data().u(static_cast<std::size_t>(q)) * h.pi() + h.differential(random_mv(rng, 1));
        EXPECT_EQ(h.project(p), CohClass::of(BasisLabel::a(0, q)));
    }
}

TEST(Project, RejectsNonCocycles)
{
    const auto h = make("x^2+y^3+z^5");
    try {
        h.project(MultiVec::vector_field(Poly::variable(0), {}, {}));
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.kind(), error_kind::not_a_cocycle);
    }
}

TEST(SolveCoboundary, RoundTrip)
{
    std::mt19937_64 rng(34);
    for (const char *phi : {"x^3+y^3+z^3", "x^2+y^3+z^5"}) {
        const auto h = make(phi);
        EXPECT_TRUE(h.solve_coboundary(MultiVec(2)).is_zero());
        const MultiVec xdx = MultiVec::vector_field(Poly::variable(0), {}, {});
        EXPECT_EQ(h.differential(h.solve_coboundary(h.differential(xdx))), h.differential(xdx));
        for (int k = 0; k <= 2; ++k) {
            for (int i = 0; i < 5; ++i) {
                const MultiVec t = h.differential(random_mv(rng, k));
                EXPECT_EQ(h.differential(h.solve_coboundary(t)), t);
            }
        }
    }
}

TEST(SolveCoboundary, ClassesAreNotExact)
{
    const auto h = make("x^3+y^3+z^3");
    for (int r = 1; r < h.data().mu(); ++r) {
        try {
            h.solve_coboundary(h.realize(BasisLabel::b(r)));
            FAIL() << r;
        } catch (const error &e) {
            EXPECT_EQ(e.kind(), error_kind::not_a_coboundary);
        }
    }
}

TEST(Slices, CapIsEnforced)
{
    const Cohomology h(milnor_basis(parse_poly("x^2+y^2+z^2")), 10);
    EXPECT_EQ(h.weight_cap(), 10);
    EXPECT_NO_THROW(h.slice(2, 10));
    try {
        h.slice(2, 11);
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.kind(), error_kind::slice_cap_exceeded);
    }
}

TEST(Labels, ParseAndPrint)
{
    for (const auto &l : {BasisLabel::cas(2), BasisLabel::eul(0), BasisLabel::a(1, 3), BasisLabel::b(2),
                          BasisLabel::top(0, 5)}) {
        EXPECT_EQ(parse_label(to_string(l)), l);
    }
    EXPECT_EQ(to_string(BasisLabel::a(1, 3)), "A(1,3)");
    for (const char *bad : {"Cas", "Cas()", "Cas(1,2)", "Foo(1)", "B(-1)", "A(1)", "Top(1,x)"}) {
        try {
            parse_label(bad);
            FAIL() << bad;
        } catch (const error &e) {
            EXPECT_EQ(e.kind(), error_kind::invalid_label) << bad;
        }
    }
}

TEST(Classes, Arithmetic)
{
    CohClass a = CohClass::of(BasisLabel::b(1), Rational(2));
    a += CohClass::of(BasisLabel::a(0, 1));
    a -= CohClass::of(BasisLabel::b(1), Rational(2));
    EXPECT_EQ(a, CohClass::of(BasisLabel::a(0, 1)));
    a *= Rational(0);
    EXPECT_TRUE(a.is_zero());
    EXPECT_EQ(to_string(a), "0");
    EXPECT_EQ(to_string(CohClass::of(BasisLabel::top(0, 1), make_rational(-1, 2))), "-1/2*Top(0,1)");
}
