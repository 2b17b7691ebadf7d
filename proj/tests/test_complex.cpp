#include "doctest.h"
#include <stdexcept>
#include "sseq/complex.hpp"
#include "sseq/generator.hpp"

using namespace sseq;

namespace {

/* Two generators a (degree 1), b (degree 0), d(a) = b. */
GradedComplex two_cell(std::uint32_t p)
{
    return GradedComplex::disk(p, 1);
}

GradedComplex random_nonempty(std::uint64_t seed, std::uint32_t p)
{
    for (std::uint64_t probe = seed;; ++probe) {
        GradedComplex c = random_complex(probe, p, 6, -2, 4);
        if (!c.empty())
            return c;
    }
}

std::map<int, int> kunneth_dims(const GradedComplex& c, const GradedComplex& w)
{
    auto hc = homology_dims(c), hw = homology_dims(w);
    std::map<int, int> out;
    for (const auto& [i, di] : hc)
        for (const auto& [j, dj] : hw)
            out[i + j] += di * dj;
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

TEST_CASE("homology of basic complexes")
{
    GradedComplex s0 = GradedComplex::sphere(2, 0);
    CHECK(homology(s0, 0).dim == 1);
    CHECK(homology(s0, 1).dim == 0);

    GradedComplex acyclic = two_cell(2);
    CHECK(homology(acyclic, 0).dim == 0);
    CHECK(homology(acyclic, 1).dim == 0);

    GradedComplex zero(2);
    CHECK(homology_dims(zero).empty());
}

TEST_CASE("d*d != 0 is rejected")
{
    FpMatrix d2(2, 1, 1), d1(2, 1, 1);
    d2.set(0, 0, 1);
    d1.set(0, 0, 1);
    CHECK_THROWS_AS(GradedComplex(2, {{0, 1}, {1, 1}, {2, 1}}, {{2, d2}, {1, d1}}),
                    std::invalid_argument);
}

TEST_CASE("induced map on homology")
{
    GradedComplex s0 = GradedComplex::sphere(2, 0);
    CHECK(induced_on_homology(ComplexMap::identity(s0), 0) == FpMatrix::identity(2, 1));
    CHECK(induced_on_homology(ComplexMap::zero(s0, s0), 0).is_zero());

    // span{b} -> cone(a -> b): the target is acyclic, so H_0 vanishes.
    GradedComplex cn = two_cell(2);
    std::map<int, FpMatrix> comps;
    comps.emplace(0, FpMatrix::identity(2, 1));
    ComplexMap incl(GradedComplex::sphere(2, 0), cn, comps);
    FpMatrix h = induced_on_homology(incl, 0);
    CHECK(h.rows() == 0);
}

TEST_CASE("cone basics")
{
    GradedComplex s0 = GradedComplex::sphere(3, 0);
    Cone c_id = cone(ComplexMap::identity(s0));
    CHECK(homology_dims(c_id.complex).empty());

    GradedComplex c = random_nonempty(21, 3);
    Cone c_zero = cone(ComplexMap::zero(c, GradedComplex(3)));
    GradedComplex shifted = shift(c, 1);
    CHECK(homology_dims(c_zero.complex) == homology_dims(shifted));

    // cone of a degree-0 isomorphism is acyclic
    std::map<int, FpMatrix> comps;
    FpMatrix iso(3, 1, 1);
    iso.set(0, 0, 2);
    comps.emplace(0, iso);
    ComplexMap f(s0, GradedComplex::sphere(3, 0), comps);
    CHECK(homology_dims(cone(f).complex).empty());
}

TEST_CASE("cone long exact sequence by rank counting")
{
    // In an exact sequence, the ranks of the incoming and outgoing maps at
    // each node add up to the node's dimension.
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            GradedComplex a = random_nonempty(seed * 2, p);
            GradedComplex b = random_nonempty(seed * 2 + 1, p);
            ComplexMap f = random_chain_map(seed, a, b);
            Cone cn = cone(f);
            for (int n = cn.complex.min_degree() - 1; n <= cn.complex.max_degree() + 1; ++n) {
                // H_n(a) -> H_n(b) -> H_n(cone) -> H_{n-1}(a) -> H_{n-1}(b)
                FpMatrix hf = induced_on_homology(f, n);
                FpMatrix hi = induced_on_homology(cn.from_target, n);
                FpMatrix hd = induced_on_homology(cn.to_shifted_source, n);  // connecting
                FpMatrix hf1 = induced_on_homology(f, n - 1);
                CHECK(rank(hf) + rank(hi) == homology(b, n).dim);
                CHECK(rank(hi) + rank(hd) == homology(cn.complex, n).dim);
                CHECK(rank(hd) + rank(hf1) == homology(a, n - 1).dim);
            }
        }
    }
}

TEST_CASE("tensor: units, spheres, acyclic absorption, Kunneth")
{
    GradedComplex s0 = GradedComplex::sphere(2, 0);
    GradedComplex c = random_nonempty(31, 2);
    CHECK(homology_dims(tensor(c, s0)) == homology_dims(c));
    CHECK(tensor(c, s0).dims() == c.dims());

    GradedComplex s5 = tensor(GradedComplex::sphere(2, 2), GradedComplex::sphere(2, 3));
    CHECK(s5.dims() == GradedComplex::sphere(2, 5).dims());

    GradedComplex acyclic = two_cell(2);
    for (std::uint64_t seed = 40; seed < 44; ++seed) {
        GradedComplex w = random_nonempty(seed, 2);
        CHECK(homology_dims(tensor(acyclic, w)).empty());
        CHECK(homology_dims(tensor(w, acyclic)).empty());
    }

    for (std::uint32_t p : {2u, 3u})
        for (std::uint64_t seed = 50; seed < 56; ++seed) {
            GradedComplex x = random_nonempty(seed, p);
            GradedComplex w = random_nonempty(seed + 100, p);
            CHECK(homology_dims(tensor(x, w)) == kunneth_dims(x, w));
        }
}

TEST_CASE("dual: spheres, double dual, homology flip")
{
    CHECK(dual(GradedComplex::sphere(2, 0)).dims() == GradedComplex::sphere(2, 0).dims());
    CHECK(dual(GradedComplex::sphere(2, 3)).dims() == GradedComplex::sphere(2, -3).dims());
    for (std::uint32_t p : {2u, 3u})
        for (std::uint64_t seed = 60; seed < 66; ++seed) {
            GradedComplex w = random_nonempty(seed, p);
            CHECK(dual(dual(w)).dims() == w.dims());
            auto hw = homology_dims(w);
            auto hd = homology_dims(dual(w));
            std::map<int, int> flipped;
            for (const auto& [n, d] : hw)
                flipped[-n] = d;
            CHECK(hd == flipped);
        }
}

TEST_CASE("connectivity convention: bottom nonzero homology degree")
{
    CHECK(connectivity(GradedComplex::sphere(2, 0)) == 0);
    CHECK(connectivity(GradedComplex::sphere(3, 5)) == 5);
    CHECK_THROWS_AS(connectivity(two_cell(2)), std::domain_error);
    for (std::uint64_t seed = 70; seed < 76; ++seed) {
        GradedComplex c = random_nonempty(seed, 2);
        GradedComplex w = random_nonempty(seed + 10, 2);
        auto hc = homology_dims(c);
        auto hw = homology_dims(w);
        if (hc.empty() || hw.empty())
            continue;
        CHECK(connectivity(tensor(c, w)) == connectivity(c) + connectivity(w));
    }
}

TEST_CASE("homotopy classes: spheres, acyclic targets, Hom-on-homology oracle")
{
    GradedComplex s0 = GradedComplex::sphere(2, 0);
    auto table = homotopy_classes(s0, s0);
    CHECK(table == std::map<int, int>{{0, 1}});

    GradedComplex acyclic = two_cell(2);
    GradedComplex w = random_nonempty(80, 2);
    CHECK(homotopy_classes(w, acyclic).empty());

    // Independent oracle: sum over n of dim H_n(w) * dim H_{n+shift}(y).
    for (std::uint32_t p : {2u, 3u})
        for (std::uint64_t seed = 81; seed < 87; ++seed) {
            GradedComplex a = random_nonempty(seed, p);
            GradedComplex b = random_nonempty(seed + 7, p);
            auto ha = homology_dims(a), hb = homology_dims(b);
            std::map<int, int> expect;
            for (const auto& [n, dn] : ha)
                for (const auto& [m2, dm] : hb)
                    expect[m2 - n] += dn * dm;
            for (auto it = expect.begin(); it != expect.end();)
                it = it->second == 0 ? expect.erase(it) : std::next(it);
            CHECK(homotopy_classes(a, b) == expect);
        }
}

TEST_CASE("ghosts: zero map, identity, acyclic endpoints, homotopy perturbations")
{
    GradedComplex s0 = GradedComplex::sphere(2, 0);
    CHECK(is_ghost(ComplexMap::zero(s0, s0)));
    CHECK_FALSE(is_ghost(ComplexMap::identity(s0)));

    GradedComplex acyclic = two_cell(2);
    CHECK(is_ghost(ComplexMap::identity(acyclic)));

    // d h + h d maps are ghosts and null-homotopic; over a field, random
    // chain maps that are ghosts are null-homotopic as well.
    for (std::uint32_t p : {2u, 3u})
        for (std::uint64_t seed = 90; seed < 98; ++seed) {
            GradedComplex a = random_nonempty(seed, p);
            GradedComplex b = random_nonempty(seed + 5, p);
            ComplexMap g = random_ghost(seed, a, b);
            CHECK(is_ghost(g));
            CHECK(is_null_homotopic(g));
            ComplexMap f = random_chain_map(seed, a, b);
            CHECK(is_ghost(f) == is_null_homotopic(f));
        }
}

TEST_CASE("shift respects composition of maps")
{
    GradedComplex a = random_nonempty(99, 3);
    ComplexMap id = ComplexMap::identity(a);
    ComplexMap sh = shift_map(id, 2);
    CHECK(sh.source().dims() == shift(a, 2).dims());
}
