#ifndef SSEQ_LINES_HPP
#define SSEQ_LINES_HPP

#include <optional>
#include <string>
#include <vector>

#include "sseq/couple.hpp"
#include "sseq/rational.hpp"
#include "sseq/tower.hpp"

namespace sseq {

/* The region s >= m(t-s) + b at page r.  Membership is exact rational
** arithmetic; nothing here touches floating point. */
struct LineSpec {
    Rational m;
    Rational b;
    int r = 1;

    LineSpec() = default;
    LineSpec(Rational m_, Rational b_, int r_) : m(m_), b(b_), r(r_)
    {
        if (r_ < 1)
            throw std::invalid_argument("LineSpec: page index must be >= 1");
    }
    bool contains(int s, int t) const { return Rational(s) >= m * Rational(t - s) + b; }
};

struct Witness {
    int s = 0;
    int t = 0;
    int dim = 0;
    std::string note;
};

/* One candidate conclusion intercept for the shift rules whose statement and
** proof disagree; both are evaluated and recorded. */
struct CandidateOutcome {
    std::string label;
    std::optional<Rational> intercept;  // conclusion threshold; empty = -infinity
    bool holds = true;
};

struct VerificationReport {
    std::string condition;  // "1".."4", "lemma-a".."lemma-d", "cofiber", "retract", "ghost"
    std::vector<LineSpec> premises;
    std::optional<LineSpec> conclusion;
    bool holds = true;
    std::vector<Witness> witnesses;  // sorted lexicographically by (s, t)
    std::vector<CandidateOutcome> candidates;
    std::vector<std::string> notes;
};

/* Condition 1: the homology image D_r^{s,t} vanishes on the region.
** Filtration indices run over all integers (levels below 0 are F_0); the
** check is finite because entries repeat below s = -(r-1). */
VerificationReport check_cond1(const Tower& t, const LineSpec& spec);

/* Condition 2: the page entry E_r^{s,t} vanishes on the region. */
VerificationReport check_cond2(const Tower& t, const LineSpec& spec);

/* Condition 3: for each W in the family, with w the top degree of H(W)
** (= minus the connectivity of the dual), every composite
** W -> F_{s+r-1} -> F_s is null-homotopic once s >= m w + b. */
VerificationReport check_cond3(const Tower& t, const LineSpec& spec,
                               const std::vector<GradedComplex>& family);

/* Condition 4: for each W with w = connectivity(W), the smashed tower's
** page vanishes on the shifted region s >= m(t-s-w) + b. */
VerificationReport check_cond4(const Tower& t, const LineSpec& spec,
                               const std::vector<GradedComplex>& family);

enum class Flavor { D, E };

/* Largest value of s - m(t-s) over nonzero entries of D_r (resp. E_r);
** empty means no nonzero entries, and the condition holds for an intercept
** b exactly when b exceeds the returned bound. */
std::optional<Rational> min_intercept(const Tower& t, const Rational& m, int r, Flavor which);

/* Family-aware bounds for conditions 3 and 4, same "holds iff b > bound"
** convention. */
std::optional<Rational> min_intercept_cond3(const Tower& t, const Rational& m, int r,
                                            const std::vector<GradedComplex>& family);
std::optional<Rational> min_intercept_cond4(const Tower& t, const Rational& m, int r,
                                            const std::vector<GradedComplex>& family);

/* Pure shift arithmetic for the four implication rules between the
** conditions; returns the conclusion's condition id and region. */
std::pair<int, LineSpec> lemma_shift(char case_tag, const Rational& m, int r, const Rational& b);

/* Empirical check of the four shift rules at the minimal premise
** intercepts, for every r <= r_max.  Cases b and d evaluate both the
** stated intercept (b - m) and the reindexed one (b + m) and record the
** outcome of each. */
std::vector<VerificationReport> verify_lemma(const Tower& t, const Rational& m,
                                             const std::vector<GradedComplex>& family, int r_max);

/* Same check for several slopes at once; the tower- and family-dependent
** page computations are shared across the slopes. */
std::vector<VerificationReport> verify_lemma_slopes(const Tower& t,
                                                    const std::vector<Rational>& slopes,
                                                    const std::vector<GradedComplex>& family,
                                                    int r_max);

/* Two-out-of-three for cofibrations: with Z the levelwise cofiber of f and
** minimal condition-1 intercepts b = beta_X(r), b' = beta_Z(r'), condition 1
** must hold for the target at (r + r' - 1, max(b, b' - r + 1)).  All pairs
** r, r' <= r_max are checked.  r_max <= 0 selects the stable default S+2. */
VerificationReport verify_generic_cofiber(const TowerMap& f, const Rational& m, int r_max = 0);

/* Retract closure: if condition 1 holds for the big tower at the given
** region, it must hold for the retract.  i : Y -> X, j : X -> Y. */
VerificationReport verify_generic_retract(const TowerMap& i, const TowerMap& j, const Rational& m,
                                          const LineSpec& spec);

/* Slope-zero corollary with the ghost ideal: the (r-1)-fold composite
** F_{s+r-1} -> F_s is a ghost map for every s >= b. */
VerificationReport verify_ghost_corollary(const Tower& t, int r, const Rational& b);

std::vector<GradedComplex> sphere_family(std::uint32_t p, int lo, int hi);

/* Spheres across the tower's degree window plus a few fixed and seeded
** multi-generator complexes; every member has nonzero homology. */
std::vector<GradedComplex> default_family(const Tower& t);

}  // namespace sseq

#endif
