#ifndef SSEQ_COUPLE_HPP
#define SSEQ_COUPLE_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "sseq/tower.hpp"

namespace sseq {

struct Bidegree {
    int s = 0;
    int t = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

struct BigradedModule {
    std::uint32_t p = 2;
    std::map<Bidegree, int> dims;  // only nonzero entries

    int dim(Bidegree b) const
    {
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    bool operator==(const BigradedModule& rhs) const { return p == rhs.p && dims == rhs.dims; }
};

/* Bigraded map of fixed bidegree; matrices keyed by source bidegree. */
struct BigradedMap {
    int ds = 0;
    int dt = 0;
    std::map<Bidegree, FpMatrix> mats;
};

/* Exact couple of level r.  Map bidegrees: i : D^{s,t} -> D^{s-1,t-1},
** j : D^{s,t} -> E^{s+r-1,t+r-1}, k : E^{s,t} -> D^{s+1,t}.
**
** D entries are stored for s >= s_min; the tower extends below filtration 0
** by F_0 with identity maps, so entries at s <= -(r-1) repeat and the stored
** window determines everything.  E entries are complete as stored. */
struct ExactCouple {
    std::uint32_t p = 2;
    int r = 1;
    int s_min = 0;
    BigradedModule D, E;
    BigradedMap i, j, k;

    FpMatrix mat_i(Bidegree src) const;
    FpMatrix mat_j(Bidegree src) const;
    FpMatrix mat_k(Bidegree src) const;
};

ExactCouple couple_from_tower(const Tower& t);

/* The derived couple: D' = im(i), E' = ker(jk)/im(jk), induced maps.
** Throws if the input fails its exactness check. */
ExactCouple derive(const ExactCouple& c);

/* Page with differential d_r = j o k of bidegree (r, r-1). */
struct Page {
    std::uint32_t p = 2;
    int r = 1;
    BigradedModule module;
    BigradedMap d;
};

Page page_of_couple(const ExactCouple& c, int label_r);
Page page(const Tower& t, int r);
/* Pages 1..r_max computed along a single derivation chain. */
std::vector<Page> pages_up_to(const Tower& t, int r_max);

/* Independent check: the classical cycle/boundary description of the pages
** of a strictly filtered complex, computed inside F_0 with plain subspace
** arithmetic and no couple machinery. */
BigradedModule oracle_page(const Tower& t, int r);

struct LesFailure {
    Bidegree at;
    std::string node;  // which exactness statement failed
    int im_dim = 0;
    int ker_dim = 0;
};

/* Rank-counting exactness check of ... -> E^{s,t+1} -> D^{s+1,t+1} ->
** D^{s,t} -> E^{s+r-1,t+r-1} -> ... at every bidegree whose references lie
** in the stored window. */
std::vector<LesFailure> verify_les(const ExactCouple& c);

struct Convergence {
    BigradedModule limit;       // im(H(F_s) -> H(F_0)) / im(H(F_{s+1}) -> H(F_0))
    BigradedModule stable_page; // page at r = S+2
    std::map<int, int> h_total; // dim H_n(F_0)
    bool page_matches = true;   // stable_page == limit, entrywise
    bool totals_match = true;   // per degree, stable page sums to dim H_n(F_0)
};

Convergence e_infinity(const Tower& t);

}  // namespace sseq

#endif
