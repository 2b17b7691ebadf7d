#ifndef SSEQ_TOWER_HPP
#define SSEQ_TOWER_HPP

#include <optional>
#include <string>
#include <vector>

#include "sseq/complex.hpp"

namespace sseq {

/* Strictly filtered bounded complex F_0 >= F_1 >= ... >= F_S >= 0, presented
** as levels with degreewise-injective structure maps g_s : F_{s+1} -> F_s.
** Levels above S are zero; levels below 0 are F_0 (with identity maps), so
** every quantifier over filtration indices reduces to a finite check.
** Cofibers K_s = cone(g_s) are computed on validation. */
class Tower {
public:
    static Tower make(std::vector<GradedComplex> levels, std::vector<ComplexMap> maps);
    static Tower zero(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    int length() const { return static_cast<int>(levels_.size()) - 1; }  // S

    /* Level with the boundary conventions: s < 0 gives F_0, s > S gives 0. */
    const GradedComplex& level(int s) const;
    const ComplexMap& structure_map(int s) const;  // g_s : F_{s+1} -> F_s, 0 <= s < S
    const Cone& cofiber(int s) const;              // K_s, 0 <= s <= S

    /* Composite F_from -> F_to of structure maps (from >= to), with the
    ** boundary conventions above; from == to gives the identity. */
    ComplexMap composite(int from, int to) const;

    Tower padded(int new_length) const;  // extend with zero levels

    /* Degree window covering every level's support (empty tower: nullopt). */
    std::optional<std::pair<int, int>> degree_window() const;

private:
    Tower() = default;
    std::uint32_t p_ = 2;
    std::vector<GradedComplex> levels_;
    std::vector<ComplexMap> maps_;
    std::vector<Cone> cofibers_;
    GradedComplex zero_level_{2};
};

/* Levelwise chain maps strictly commuting with the structure maps.
** Source and target are padded to a common length on construction. */
class TowerMap {
public:
    static TowerMap make(Tower source, Tower target, std::vector<ComplexMap> levels);
    static TowerMap zero(Tower source, Tower target);
    static TowerMap identity(Tower t);

    const Tower& source() const { return src_; }
    const Tower& target() const { return tgt_; }
    const ComplexMap& level(int s) const { return f_.at(s); }
    int length() const { return static_cast<int>(f_.size()) - 1; }

private:
    TowerMap(Tower src, Tower tgt, std::vector<ComplexMap> f)
        : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(f))
    {
    }
    Tower src_, tgt_;
    std::vector<ComplexMap> f_;
};

Tower smash(const Tower& t, const GradedComplex& w);
TowerMap smash_map(const TowerMap& f, const GradedComplex& w);

struct CofiberTower {
    Tower tower;               // levelwise cone(f_s)
    TowerMap include_target;   // Y -> Z
    Tower shifted_source;      // levelwise shift(X_s, 1)
    TowerMap project;          // Z -> shift(X, 1)
};

CofiberTower cofiber_tower(const TowerMap& f);

/* True iff j o i is levelwise chain-homotopic to the identity. */
bool is_retract(const TowerMap& i, const TowerMap& j);

/* H_n of the composite F_{s+r-1} -> F_s (r >= 1). */
FpMatrix composite_on_homology(const Tower& t, int s, int r, int n);
bool composite_zero_on_H(const Tower& t, int s, int r, int n);

/* True iff every chain map w -> F_{s+r-1} becomes null-homotopic in F_s;
** over a field this is H_n(composite) = 0 for every n with H_n(w) != 0. */
bool composite_null_from(const Tower& t, const GradedComplex& w, int s, int r);

/* Generator-level presentation: F_s is spanned by the generators with
** filtration >= s, and the differential may only raise filtration. */
class FilteredComplex {
public:
    struct Generator {
        std::string name;
        int degree = 0;
        int filtration = 0;
    };

    FilteredComplex(std::uint32_t p, std::vector<Generator> gens, std::map<int, FpMatrix> diffs);

    std::uint32_t p() const { return p_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const GradedComplex& total() const { return total_; }  // = F_0
    int max_filtration() const;

    /* Generators of one degree, in listed order; these index the basis of
    ** the total complex in that degree. */
    std::vector<int> degree_basis(int degree) const;

    /* Basis of the filtration->=s part of a degree inside the full degree. */
    FpMatrix level_inclusion(int degree, int s) const;

    Tower to_tower() const;

private:
    std::uint32_t p_;
    std::vector<Generator> gens_;
    std::map<int, FpMatrix> diffs_;  // on the total complex, keyed by degree
    GradedComplex total_;

    GradedComplex level_complex(int s, std::map<int, std::vector<int>>& indices) const;
};

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b);

/* Degree- and filtration-preserving chain map between filtered complexes.
** Holds non-owning pointers; the complexes must outlive the map. */
struct FilteredMap {
    const FilteredComplex* source;
    const FilteredComplex* target;
    std::map<int, FpMatrix> comps;  // on total complexes, keyed by degree

    FpMatrix comps_matrix(int degree) const;
    TowerMap to_tower_map() const;  // validates chain and filtration rules
};

FilteredMap filtered_sum_inclusion(const FilteredComplex& a, const FilteredComplex& b,
                                   const FilteredComplex& s, int which);
FilteredMap filtered_sum_projection(const FilteredComplex& a, const FilteredComplex& b,
                                    const FilteredComplex& s, int which);

}  // namespace sseq

#endif
