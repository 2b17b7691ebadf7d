#include "doctest.h"
#include <stdexcept>
#include "sseq/couple.hpp"
#include "sseq/generator.hpp"

using namespace sseq;

namespace {

Tower t1()
{
    FpMatrix d(2, 1, 1);
    d.set(0, 0, 1);
    return FilteredComplex(2, {{"a", 1, 0}, {"b", 0, 1}}, {{1, d}}).to_tower();
}

Tower sphere_tower(std::uint32_t p, int n)
{
    return Tower::make({GradedComplex::sphere(p, n)}, {});
}

}  // namespace

TEST_CASE("level-1 couples of the basic towers")
{
    ExactCouple zero = couple_from_tower(Tower::zero(2));
    CHECK(zero.D.dims.empty());
    CHECK(zero.E.dims.empty());

    ExactCouple s0 = couple_from_tower(sphere_tower(2, 0));
    CHECK(s0.E.dims == std::map<Bidegree, int>{{{0, 0}, 1}});
    CHECK(s0.D.dim({0, 0}) == 1);
    CHECK(s0.D.dim({1, 1}) == 0);
    CHECK(s0.D.dim({-2, -2}) == 1);  // levels below 0 carry H(F_0)

    ExactCouple c = couple_from_tower(t1());
    CHECK(c.E.dims == std::map<Bidegree, int>{{{0, 1}, 1}, {{1, 1}, 1}});
    CHECK(c.D.dims == std::map<Bidegree, int>{{{1, 1}, 1}});
    CHECK(verify_les(c).empty());
}

TEST_CASE("exactness of the level-1 couple and all derived couples")
{
    TowerParams params;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Tower t = random_tower(seed, params);
        ExactCouple c = couple_from_tower(t);
        for (int level = 1; level <= t.length() + 2; ++level) {
            CHECK(verify_les(c).empty());
            if (level <= t.length() + 1)
                c = derive(c);
        }
    }
}

TEST_CASE("a corrupted structure map is caught")
{
    ExactCouple c = couple_from_tower(t1());
    // kill the connecting map out of E^{0,1}
    REQUIRE(c.k.mats.count({0, 1}) == 1);
    c.k.mats.at({0, 1}).set(0, 0, 0);
    auto failures = verify_les(c);
    REQUIRE_FALSE(failures.empty());
    bool at_corrupted = false;
    for (const auto& f : failures)
        at_corrupted = at_corrupted || (f.at == Bidegree{0, 1});
    CHECK(at_corrupted);
    CHECK_THROWS_AS(derive(c), std::invalid_argument);
}

TEST_CASE("derivation: stabilization and the worked example")
{
    // i injective (single-level tower) leaves E unchanged dimensionwise
    ExactCouple s0 = couple_from_tower(sphere_tower(3, 2));
    ExactCouple s0d = derive(s0);
    CHECK(s0d.E.dims == s0.E.dims);

    ExactCouple c1 = couple_from_tower(t1());
    ExactCouple c2 = derive(c1);
    CHECK(c2.E.dims.empty());

    ExactCouple empty = derive(couple_from_tower(Tower::zero(2)));
    CHECK(empty.D.dims.empty());
    CHECK(empty.E.dims.empty());
}

TEST_CASE("pages of the worked example")
{
    Tower t = t1();
    Page p1 = page(t, 1);
    CHECK(p1.module.dims == std::map<Bidegree, int>{{{0, 1}, 1}, {{1, 1}, 1}});
    REQUIRE(p1.d.mats.count({0, 1}) == 1);
    CHECK(rank(p1.d.mats.at({0, 1})) == 1);
    CHECK(page(t, 2).module.dims.empty());

    for (int r = 1; r <= 5; ++r)
        CHECK(page(sphere_tower(2, 0), r).module.dims ==
              std::map<Bidegree, int>{{{0, 0}, 1}});
}

TEST_CASE("oracle page: worked example and identity at r = 1")
{
    Tower t = t1();
    CHECK(oracle_page(t, 2).dims.empty());
    CHECK(oracle_page(t, 1).dims == std::map<Bidegree, int>{{{0, 1}, 1}, {{1, 1}, 1}});
    CHECK(oracle_page(Tower::zero(3), 1).dims.empty());

    TowerParams params;
    for (std::uint64_t seed = 31; seed <= 36; ++seed) {
        Tower rt = random_tower(seed, params);
        BigradedModule o1 = oracle_page(rt, 1);
        std::map<Bidegree, int> hk;
        for (int s = 0; s <= rt.length(); ++s)
            for (const auto& [n, d] : homology_dims(rt.cofiber(s).complex))
                hk[{s, n + s}] = d;
        CHECK(o1.dims == hk);
    }
}

TEST_CASE("oracle equivalence on a small mixed corpus")
{
    for (std::uint32_t p : {2u, 3u}) {
        TowerParams params;
        params.p = p;
        for (std::uint64_t seed = 41; seed <= 52; ++seed) {
            Tower t = random_tower(seed, params);
            auto pages = pages_up_to(t, t.length() + 2);
            for (const auto& pg : pages)
                CHECK(pg.module.dims == oracle_page(t, pg.r).dims);
        }
    }
}

TEST_CASE("differentials square to zero and have the right bidegree")
{
    TowerParams params;
    params.p = 3;
    for (std::uint64_t seed = 61; seed <= 66; ++seed) {
        Tower t = random_tower(seed, params);
        auto pages = pages_up_to(t, t.length() + 2);
        for (const auto& pg : pages) {
            CHECK(pg.d.ds == pg.r);
            CHECK(pg.d.dt == pg.r - 1);
            for (const auto& [b, m] : pg.d.mats) {
                Bidegree tb{b.s + pg.r, b.t + pg.r - 1};
                auto next = pg.d.mats.find(tb);
                if (next != pg.d.mats.end())
                    CHECK((next->second * m).is_zero());
            }
        }
    }
}

TEST_CASE("pages_up_to agrees with page computed from scratch")
{
    TowerParams params;
    for (std::uint64_t seed = 91; seed <= 94; ++seed) {
        Tower t = random_tower(seed, params);
        auto pages = pages_up_to(t, t.length() + 3);
        for (const auto& pg : pages) {
            Page single = page(t, pg.r);
            CHECK(single.module.dims == pg.module.dims);
        }
    }
}

TEST_CASE("page monotonicity")
{
    TowerParams params;
    for (std::uint64_t seed = 71; seed <= 76; ++seed) {
        Tower t = random_tower(seed, params);
        auto pages = pages_up_to(t, t.length() + 2);
        for (std::size_t i = 1; i < pages.size(); ++i)
            for (const auto& [b, d] : pages[i].module.dims)
                CHECK(d <= pages[i - 1].module.dim(b));
    }
}

TEST_CASE("convergence: worked example, sphere, random corpus")
{
    Convergence t1c = e_infinity(t1());
    CHECK(t1c.limit.dims.empty());
    CHECK(t1c.page_matches);
    CHECK(t1c.totals_match);

    Convergence s0c = e_infinity(sphere_tower(2, 0));
    CHECK(s0c.limit.dims == std::map<Bidegree, int>{{{0, 0}, 1}});
    CHECK(s0c.page_matches);
    CHECK(s0c.totals_match);

    TowerParams params;
    for (std::uint64_t seed = 81; seed <= 88; ++seed) {
        Convergence c = e_infinity(random_tower(seed, params));
        CHECK(c.page_matches);
        CHECK(c.totals_match);
    }
}
