#ifndef SSEQ_GENERATOR_HPP
#define SSEQ_GENERATOR_HPP

#include <cstdint>
#include <random>

#include "sseq/tower.hpp"

namespace sseq {

/* Seeded stream; raw mt19937_64 output reduced by modulo so the values are
** identical across platforms (uniform_int_distribution is not). */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    int uniform(int lo, int hi)  // inclusive
    {
        if (hi < lo)
            throw std::invalid_argument("Rng::uniform: empty range");
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::uint32_t residue(std::uint32_t p) { return static_cast<std::uint32_t>(next() % p); }
    std::uint32_t nonzero_residue(std::uint32_t p)
    {
        return 1 + static_cast<std::uint32_t>(next() % (p - 1));
    }
    bool chance(int num, int den) { return uniform(1, den) <= num; }

private:
    std::mt19937_64 eng_;
};

struct TowerParams {
    std::uint32_t p = 2;
    int max_levels = 6;       // levels F_0..F_S, so S <= max_levels - 1
    int max_generators = 18;  // total generators of the filtered complex
    int degree_lo = -2;
    int degree_hi = 6;
    int mix_moves_per_gen = 3;  // elementary change-of-basis moves
};

/* Direct sum of spheres and disks with random degrees and filtrations,
** conjugated by a random degree- and filtration-preserving change of basis.
** The result is a valid strict filtration by construction, with nontrivial
** differentials across filtration levels. */
FilteredComplex random_filtered(std::uint64_t seed, const TowerParams& params);
Tower random_tower(std::uint64_t seed, const TowerParams& params);

GradedComplex random_complex(std::uint64_t seed, std::uint32_t p, int max_generators,
                             int degree_lo, int degree_hi);

/* Uniformly random element of the space of degree- and filtration-preserving
** chain maps x -> y, sampled by solving the chain-map equations. */
FilteredMap random_filtered_map(std::uint64_t seed, const FilteredComplex& x,
                                const FilteredComplex& y);

/* Random chain map between plain complexes (all filtrations zero). */
ComplexMap random_chain_map(std::uint64_t seed, const GradedComplex& c, const GradedComplex& d);

/* d h + h d for a random degree-raising h: null-homotopic by construction. */
ComplexMap random_ghost(std::uint64_t seed, const GradedComplex& c, const GradedComplex& d);

}  // namespace sseq

#endif
