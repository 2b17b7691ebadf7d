#include "sseq/lines.hpp"

#include <algorithm>
#include <sstream>

#include "sseq/generator.hpp"

namespace sseq {

namespace {

std::string rational_or_neg_inf(const std::optional<Rational>& b)
{
    return b ? b->str() : "-inf";
}

/* Cached homology presentations of the levels and the induced maps of the
** structure maps, for fast D_r ranks across a window. */
class HomTables {
public:
    explicit HomTables(const Tower& t) : t_(t), S_(t.length())
    {
        auto w = t.degree_window();
        has_window_ = w.has_value();
        if (!has_window_)
            return;
        dlo_ = w->first - 1;
        dhi_ = w->second + 1;
        h_.resize(static_cast<std::size_t>(S_) + 1);
        for (int s = 0; s <= S_; ++s)
            for (int n = dlo_; n <= dhi_; ++n)
                h_[static_cast<std::size_t>(s)].emplace(n, homology(t.level(s), n));
        g_.resize(static_cast<std::size_t>(std::max(S_, 0)));
        for (int s = 0; s + 1 <= S_; ++s)
            for (int n = dlo_; n <= dhi_; ++n) {
                const HomologyData& src = h_[static_cast<std::size_t>(s) + 1].at(n);
                const HomologyData& dst = h_[static_cast<std::size_t>(s)].at(n);
                g_[static_cast<std::size_t>(s)].emplace(
                    n, dst.proj * t.structure_map(s).comp(n) * src.cycles);
            }
    }

    bool has_window() const { return has_window_; }
    int degree_lo() const { return dlo_; }
    int degree_hi() const { return dhi_; }
    int length() const { return S_; }

    int level_h_dim(int s, int n) const
    {
        if (s > S_ || n < dlo_ || n > dhi_)
            return 0;
        return h_[static_cast<std::size_t>(std::max(s, 0))].at(n).dim;
    }

    /* Matrix of H_n(F_{s+r-1} -> F_s), filtration indices clamped: levels
    ** below 0 are F_0 and levels above S are zero.  Degrees outside the
    ** tower's support carry nothing. */
    FpMatrix composite(int s, int r, int n) const
    {
        const std::uint32_t p = t_.p();
        int a = s + r - 1;
        int b = s;
        if (a > S_ || n < dlo_ || n > dhi_)
            return FpMatrix(p, level_h_dim(b, n), 0);
        FpMatrix m = FpMatrix::identity(p, level_h_dim(a, n));
        for (int s2 = std::min(a, S_) - 1; s2 >= std::max(b, 0); --s2)
            m = g_[static_cast<std::size_t>(s2)].at(n) * m;
        return m;
    }

    int rank_d(int s, int r, int n) const { return rank(composite(s, r, n)); }

private:
    const Tower& t_;
    int S_;
    bool has_window_ = false;
    int dlo_ = 0, dhi_ = -1;
    std::vector<std::map<int, HomologyData>> h_;
    std::vector<std::map<int, FpMatrix>> g_;
};

struct Entry {
    int s;
    int t;
    int dim;
};

std::vector<Entry> d_entries(const HomTables& tables, int r)
{
    std::vector<Entry> out;
    if (!tables.has_window())
        return out;
    for (int s = -(r - 1); s <= tables.length(); ++s)
        for (int n = tables.degree_lo(); n <= tables.degree_hi(); ++n) {
            int d = tables.rank_d(s, r, n);
            if (d > 0)
                out.push_back({s, n + s, d});
        }
    return out;
}

std::vector<Entry> page_entries(const Page& pg)
{
    std::vector<Entry> out;
    for (const auto& [b, d] : pg.module.dims)
        out.push_back({b.s, b.t, d});
    return out;
}

std::optional<Rational> beta_of(const std::vector<Entry>& entries, const Rational& m)
{
    std::optional<Rational> best;
    for (const auto& e : entries) {
        Rational v = Rational(e.s) - m * Rational(e.t - e.s);
        if (!best || v > *best)
            best = v;
    }
    return best;
}

/* Leading cycle responsible for a nonzero induced map, for witness notes. */
std::string composite_cycle_note(const Tower& t, int s, int r, int n)
{
    ComplexMap comp = t.composite(s + r - 1, s);
    HomologyData hs = homology(comp.source(), n);
    HomologyData ht = homology(comp.target(), n);
    FpMatrix induced = ht.proj * comp.comp(n) * hs.cycles;
    for (int c = 0; c < induced.cols(); ++c) {
        bool nonzero = false;
        for (int rr = 0; rr < induced.rows(); ++rr)
            if (induced.at(rr, c)) {
                nonzero = true;
                break;
            }
        if (!nonzero)
            continue;
        std::ostringstream os;
        os << "cycle=[";
        for (int rr = 0; rr < hs.cycles.rows(); ++rr)
            os << (rr ? "," : "") << hs.cycles.at(rr, c);
        os << "] in level " << s + r - 1 << " degree " << n;
        return os.str();
    }
    return {};
}

int top_homology_degree(const GradedComplex& w)
{
    // Equals -connectivity(dual(w)); computed through the dual on purpose.
    return -connectivity(dual(w));
}

void require_nonzero_homology(const std::vector<GradedComplex>& family)
{
    for (std::size_t i = 0; i < family.size(); ++i) {
        bool nonzero = false;
        for (const auto& [n, d] : family[i].dims())
            if (homology(family[i], n).dim > 0) {
                nonzero = true;
                break;
            }
        if (!nonzero)
            throw std::invalid_argument("W family member " + std::to_string(i) +
                                        " has zero homology");
    }
}

}  // namespace

VerificationReport check_cond1(const Tower& t, const LineSpec& spec)
{
    VerificationReport rep;
    rep.condition = "1";
    rep.premises = {spec};
    rep.conclusion = spec;
    HomTables tables(t);
    if (!tables.has_window()) {
        rep.holds = true;
        return rep;
    }
    for (int s = -(spec.r - 1); s <= tables.length(); ++s)
        for (int n = tables.degree_lo(); n <= tables.degree_hi(); ++n) {
            if (!spec.contains(s, n + s))
                continue;
            int d = tables.rank_d(s, spec.r, n);
            if (d > 0)
                rep.witnesses.push_back({s, n + s, d, composite_cycle_note(t, s, spec.r, n)});
        }
    rep.holds = rep.witnesses.empty();
    return rep;
}

VerificationReport check_cond2(const Tower& t, const LineSpec& spec)
{
    VerificationReport rep;
    rep.condition = "2";
    rep.premises = {spec};
    rep.conclusion = spec;
    Page pg = page(t, spec.r);
    for (const auto& [b, d] : pg.module.dims)
        if (spec.contains(b.s, b.t))
            rep.witnesses.push_back({b.s, b.t, d, ""});
    rep.holds = rep.witnesses.empty();
    return rep;
}

VerificationReport check_cond3(const Tower& t, const LineSpec& spec,
                               const std::vector<GradedComplex>& family)
{
    require_nonzero_homology(family);
    VerificationReport rep;
    rep.condition = "3";
    rep.premises = {spec};
    rep.conclusion = spec;
    HomTables tables(t);
    if (!tables.has_window())
        return rep;
    for (std::size_t wi = 0; wi < family.size(); ++wi) {
        const GradedComplex& w = family[wi];
        int top = top_homology_degree(w);
        auto hw = homology_dims(w);
        for (int s = -(spec.r - 1); s <= tables.length(); ++s) {
            if (!(Rational(s) >= spec.m * Rational(top) + spec.b))
                continue;
            if (composite_null_from(t, w, s, spec.r))
                continue;
            for (const auto& [n, hd] : hw) {
                int d = tables.rank_d(s, spec.r, n);
                if (d > 0)
                    rep.witnesses.push_back({s, n + s, d, "W=" + std::to_string(wi)});
            }
        }
    }
    std::stable_sort(rep.witnesses.begin(), rep.witnesses.end(),
                     [](const Witness& a, const Witness& b) {
                         return std::pair(a.s, a.t) < std::pair(b.s, b.t);
                     });
    rep.holds = rep.witnesses.empty();
    return rep;
}

VerificationReport check_cond4(const Tower& t, const LineSpec& spec,
                               const std::vector<GradedComplex>& family)
{
    require_nonzero_homology(family);
    VerificationReport rep;
    rep.condition = "4";
    rep.premises = {spec};
    rep.conclusion = spec;
    for (std::size_t wi = 0; wi < family.size(); ++wi) {
        const GradedComplex& w = family[wi];
        int conn = connectivity(w);
        Page pg = page(smash(t, w), spec.r);
        for (const auto& [b, d] : pg.module.dims)
            if (Rational(b.s) >= spec.m * Rational(b.t - b.s - conn) + spec.b)
                rep.witnesses.push_back({b.s, b.t, d, family.size() > 1 ? "W=" + std::to_string(wi) : ""});
    }
    std::stable_sort(rep.witnesses.begin(), rep.witnesses.end(),
                     [](const Witness& a, const Witness& b) {
                         return std::pair(a.s, a.t) < std::pair(b.s, b.t);
                     });
    rep.holds = rep.witnesses.empty();
    return rep;
}

std::optional<Rational> min_intercept(const Tower& t, const Rational& m, int r, Flavor which)
{
    if (r < 1)
        throw std::invalid_argument("min_intercept: needs r >= 1");
    if (which == Flavor::D) {
        HomTables tables(t);
        return beta_of(d_entries(tables, r), m);
    }
    return beta_of(page_entries(page(t, r)), m);
}

std::optional<Rational> min_intercept_cond3(const Tower& t, const Rational& m, int r,
                                            const std::vector<GradedComplex>& family)
{
    require_nonzero_homology(family);
    HomTables tables(t);
    std::optional<Rational> best;
    if (!tables.has_window())
        return best;
    for (const auto& w : family) {
        int top = top_homology_degree(w);
        auto hw = homology_dims(w);
        for (int s = -(r - 1); s <= tables.length(); ++s) {
            bool null = true;
            for (const auto& [n, hd] : hw)
                if (tables.rank_d(s, r, n) > 0) {
                    null = false;
                    break;
                }
            if (null)
                continue;
            Rational v = Rational(s) - m * Rational(top);
            if (!best || v > *best)
                best = v;
        }
    }
    return best;
}

std::optional<Rational> min_intercept_cond4(const Tower& t, const Rational& m, int r,
                                            const std::vector<GradedComplex>& family)
{
    require_nonzero_homology(family);
    std::optional<Rational> best;
    for (const auto& w : family) {
        int conn = connectivity(w);
        for (const auto& [b, d] : page(smash(t, w), r).module.dims) {
            Rational v = Rational(b.s) - m * Rational(b.t - b.s - conn);
            if (!best || v > *best)
                best = v;
        }
    }
    return best;
}

std::pair<int, LineSpec> lemma_shift(char case_tag, const Rational& m, int r, const Rational& b)
{
    if (r < 1)
        throw std::invalid_argument("lemma_shift: needs r >= 1");
    const Rational rr(r);
    switch (case_tag) {
    case 'a':
        return rr >= -m ? std::pair(2, LineSpec(m, b + Rational(r - 1), r))
                        : std::pair(2, LineSpec(m, b - m, r));
    case 'b':
        return rr >= Rational(1) - m ? std::pair(1, LineSpec(m, b - m, r))
                                     : std::pair(1, LineSpec(m, b - Rational(r - 1), r));
    case 'c':
        return rr >= -m ? std::pair(4, LineSpec(m, b + Rational(r - 1), r))
                        : std::pair(4, LineSpec(m, b - m, r));
    case 'd':
        return rr >= Rational(1) - m ? std::pair(3, LineSpec(m, b - m, r))
                                     : std::pair(3, LineSpec(m, b - Rational(r - 1), r));
    default:
        throw std::invalid_argument("lemma_shift: case must be one of a, b, c, d");
    }
}

namespace {

/* An implication "premise at intercepts b > beta_pre implies conclusion at
** b + shift" holds for every valid premise intercept exactly when
** beta_pre + shift >= beta_con, with -infinity below everything. */
bool shifted_bound_covers(const std::optional<Rational>& beta_pre, const Rational& shift,
                          const std::optional<Rational>& beta_con)
{
    if (!beta_con)
        return true;
    if (!beta_pre)
        return false;
    return *beta_pre + shift >= *beta_con;
}

void conclusion_witnesses(VerificationReport& rep, const std::vector<Entry>& entries,
                          const Rational& m, const std::optional<Rational>& beta_pre,
                          const Rational& shift)
{
    for (const auto& e : entries) {
        Rational v = Rational(e.s) - m * Rational(e.t - e.s);
        if (!beta_pre || v >= *beta_pre + shift)
            rep.witnesses.push_back({e.s, e.t, e.dim, ""});
    }
}

}  // namespace

std::vector<VerificationReport> verify_lemma_slopes(const Tower& t,
                                                    const std::vector<Rational>& slopes,
                                                    const std::vector<GradedComplex>& family,
                                                    int r_max)
{
    if (r_max < 1)
        throw std::invalid_argument("verify_lemma: needs r_max >= 1");
    require_nonzero_homology(family);
    HomTables tables(t);

    // Slope-independent data: page entries of the tower and of each smashed
    // tower, the D entries, and the per-family detection sets, pages
    // 1..r_max.
    auto pages = pages_up_to(t, r_max);
    std::vector<std::vector<Page>> smashed_pages;
    std::vector<int> tops, conns;
    for (const auto& w : family) {
        smashed_pages.push_back(pages_up_to(smash(t, w), r_max));
        tops.push_back(top_homology_degree(w));
        conns.push_back(connectivity(w));
    }
    std::vector<std::vector<Entry>> d_by_r, e_by_r, fam3_by_r, fam4_by_r;
    for (int r = 1; r <= r_max; ++r) {
        d_by_r.push_back(d_entries(tables, r));
        e_by_r.push_back(page_entries(pages[static_cast<std::size_t>(r - 1)]));
        // Detections for condition 3: one entry per (W, s) with a non-null
        // composite, placed so that t - s is the top homology degree of W.
        std::vector<Entry> det;
        if (tables.has_window())
            for (std::size_t wi = 0; wi < family.size(); ++wi) {
                auto hw = homology_dims(family[wi]);
                for (int s = -(r - 1); s <= tables.length(); ++s)
                    for (const auto& [n, hd] : hw)
                        if (tables.rank_d(s, r, n) > 0) {
                            det.push_back({s, s + tops[wi], 1});
                            break;
                        }
            }
        fam3_by_r.push_back(std::move(det));
        // Condition-4 entries with t shifted by the connectivity of W, so
        // that s - m(t-s) is again the intercept contribution.
        std::vector<Entry> sme;
        for (std::size_t wi = 0; wi < family.size(); ++wi)
            for (const auto& e : page_entries(smashed_pages[wi][static_cast<std::size_t>(r - 1)]))
                sme.push_back({e.s, e.t - conns[wi], e.dim});
        fam4_by_r.push_back(std::move(sme));
    }

    std::vector<VerificationReport> reports;
    for (const Rational& m : slopes) {
        for (char case_tag : {'a', 'b', 'c', 'd'}) {
            for (int r = 1; r <= r_max; ++r) {
                VerificationReport rep;
                rep.condition = std::string("lemma-") + case_tag;
                const std::vector<Entry>* pre_entries = nullptr;
                const std::vector<Entry>* con_entries = nullptr;
                switch (case_tag) {
                case 'a':
                    pre_entries = &d_by_r[static_cast<std::size_t>(r - 1)];
                    con_entries = &e_by_r[static_cast<std::size_t>(r - 1)];
                    break;
                case 'b':
                    pre_entries = &e_by_r[static_cast<std::size_t>(r - 1)];
                    con_entries = &d_by_r[static_cast<std::size_t>(r - 1)];
                    break;
                case 'c':
                    pre_entries = &fam3_by_r[static_cast<std::size_t>(r - 1)];
                    con_entries = &fam4_by_r[static_cast<std::size_t>(r - 1)];
                    break;
                default:
                    pre_entries = &fam4_by_r[static_cast<std::size_t>(r - 1)];
                    con_entries = &fam3_by_r[static_cast<std::size_t>(r - 1)];
                    break;
                }
                std::optional<Rational> beta_pre = beta_of(*pre_entries, m);
                std::optional<Rational> beta_con = beta_of(*con_entries, m);

                Rational pre_b = beta_pre ? *beta_pre : Rational(0);
                rep.premises = {LineSpec(m, pre_b, r)};
                auto [concl_id, concl_spec] = lemma_shift(case_tag, m, r, pre_b);
                rep.conclusion = concl_spec;
                rep.notes.push_back("r=" + std::to_string(r));
                rep.notes.push_back("m=" + m.str());
                rep.notes.push_back("premise_bound=" + rational_or_neg_inf(beta_pre));
                rep.notes.push_back("conclusion_bound=" + rational_or_neg_inf(beta_con));
                rep.notes.push_back("conclusion_condition=" + std::to_string(concl_id));

                if (case_tag == 'a' || case_tag == 'c') {
                    Rational shift = Rational(r) >= -m ? Rational(r - 1) : -m;
                    rep.holds = shifted_bound_covers(beta_pre, shift, beta_con);
                    if (!rep.holds)
                        conclusion_witnesses(rep, *con_entries, m, beta_pre, shift);
                } else {
                    // Statement and reindexed-proof intercepts; they agree
                    // when r < 1 - m (both b - r + 1) and when m = 0.
                    std::vector<std::pair<std::string, Rational>> shifts;
                    if (Rational(r) >= Rational(1) - m) {
                        shifts.push_back({"statement b-m", -m});
                        shifts.push_back({"proof b+m", m});
                    } else {
                        shifts.push_back({"statement=proof b-r+1", -Rational(r - 1)});
                    }
                    bool any = false;
                    for (const auto& [label, shift] : shifts) {
                        bool ok = shifted_bound_covers(beta_pre, shift, beta_con);
                        any = any || ok;
                        rep.candidates.push_back(
                            {label,
                             beta_pre ? std::optional<Rational>(*beta_pre + shift) : std::nullopt,
                             ok});
                    }
                    rep.holds = any;
                    if (!rep.holds)
                        conclusion_witnesses(rep, *con_entries, m, beta_pre,
                                             shifts.front().second);
                }
                reports.push_back(std::move(rep));
            }
        }
    }
    return reports;
}

std::vector<VerificationReport> verify_lemma(const Tower& t, const Rational& m,
                                             const std::vector<GradedComplex>& family, int r_max)
{
    return verify_lemma_slopes(t, {m}, family, r_max);
}

VerificationReport verify_generic_cofiber(const TowerMap& f, const Rational& m, int r_max)
{
    VerificationReport rep;
    rep.condition = "cofiber";
    CofiberTower cof = cofiber_tower(f);
    const Tower& x = f.source();
    const Tower& y = f.target();
    const Tower& z = cof.tower;
    if (r_max <= 0)
        r_max = y.length() + 2;

    HomTables tx(x), ty(y), tz(z);
    std::vector<std::optional<Rational>> bx, bz;
    for (int r = 1; r <= r_max; ++r) {
        bx.push_back(beta_of(d_entries(tx, r), m));
        bz.push_back(beta_of(d_entries(tz, r), m));
    }
    std::map<int, std::optional<Rational>> by;
    std::map<int, std::vector<Entry>> ye;
    for (int rho = 1; rho <= 2 * r_max - 1; ++rho) {
        ye[rho] = d_entries(ty, rho);
        by[rho] = beta_of(ye[rho], m);
    }

    rep.holds = true;
    for (int r = 1; r <= r_max; ++r)
        for (int rp = 1; rp <= r_max; ++rp) {
            const auto& beta_x = bx[static_cast<std::size_t>(r - 1)];
            const auto& beta_z = bz[static_cast<std::size_t>(rp - 1)];
            // bound = max(beta_x, beta_z - r + 1); -infinity drops out of max
            std::optional<Rational> bound;
            if (beta_x)
                bound = *beta_x;
            if (beta_z) {
                Rational v = *beta_z - Rational(r - 1);
                if (!bound || v > *bound)
                    bound = v;
            }
            int rho = r + rp - 1;
            const auto& beta_y = by[rho];
            bool ok = !beta_y || (bound && *bound >= *beta_y);
            std::ostringstream os;
            os << "r=" << r << " r'=" << rp << " bX=" << rational_or_neg_inf(beta_x)
               << " bZ=" << rational_or_neg_inf(beta_z)
               << " allowed=" << rational_or_neg_inf(bound)
               << " observed_Y=" << rational_or_neg_inf(beta_y) << (ok ? " ok" : " VIOLATION");
            rep.notes.push_back(os.str());
            if (!ok && rep.holds) {
                rep.holds = false;
                rep.premises = {LineSpec(m, beta_x ? *beta_x : Rational(0), r),
                                LineSpec(m, beta_z ? *beta_z : Rational(0), rp)};
                rep.conclusion = LineSpec(m, bound ? *bound : Rational(0), rho);
                for (const auto& e : ye[rho]) {
                    Rational v = Rational(e.s) - m * Rational(e.t - e.s);
                    if (!bound || v > *bound)
                        rep.witnesses.push_back({e.s, e.t, e.dim, ""});
                }
            }
        }
    if (rep.holds && r_max >= 1) {
        rep.premises = {LineSpec(m, bx[0] ? *bx[0] : Rational(0), 1),
                        LineSpec(m, bz[0] ? *bz[0] : Rational(0), 1)};
        rep.conclusion = LineSpec(m, Rational(0), 1);
    }
    return rep;
}

VerificationReport verify_generic_retract(const TowerMap& i, const TowerMap& j, const Rational& m,
                                          const LineSpec& spec)
{
    if (!is_retract(i, j))
        throw std::invalid_argument("verify_generic_retract: maps do not exhibit a retract");
    VerificationReport rep;
    rep.condition = "retract";
    LineSpec used(m, spec.b, spec.r);
    rep.premises = {used};
    rep.conclusion = used;
    VerificationReport on_big = check_cond1(i.target(), used);
    if (!on_big.holds) {
        rep.holds = true;
        rep.notes.push_back("premise does not hold for the big tower; nothing to inherit");
        return rep;
    }
    VerificationReport on_retract = check_cond1(i.source(), used);
    rep.holds = on_retract.holds;
    rep.witnesses = on_retract.witnesses;
    return rep;
}

VerificationReport verify_ghost_corollary(const Tower& t, int r, const Rational& b)
{
    if (r < 1)
        throw std::invalid_argument("verify_ghost_corollary: needs r >= 1");
    VerificationReport rep;
    rep.condition = "ghost";
    LineSpec spec(Rational(0), b, r);
    rep.premises = {spec};
    rep.conclusion = spec;
    auto window = t.degree_window();
    if (!window) {
        rep.holds = true;
        return rep;
    }
    for (int s = -(r - 1); s <= t.length(); ++s) {
        if (!(Rational(s) >= b))
            continue;
        ComplexMap comp = t.composite(s + r - 1, s);
        if (is_ghost(comp))
            continue;
        for (int n = window->first - 1; n <= window->second + 1; ++n) {
            int d = rank(induced_on_homology(comp, n));
            if (d > 0)
                rep.witnesses.push_back({s, n + s, d, composite_cycle_note(t, s, r, n)});
        }
    }
    rep.holds = rep.witnesses.empty();
    return rep;
}

std::vector<GradedComplex> sphere_family(std::uint32_t p, int lo, int hi)
{
    std::vector<GradedComplex> out;
    for (int n = lo; n <= hi; ++n)
        out.push_back(GradedComplex::sphere(p, n));
    return out;
}

std::vector<GradedComplex> default_family(const Tower& t)
{
    const std::uint32_t p = t.p();
    auto window = t.degree_window();
    int lo = window ? window->first - 1 : -1;
    int hi = window ? window->second + 1 : 1;
    std::vector<GradedComplex> fam = sphere_family(p, lo, hi);
    // Two fixed shapes: a split pair of cells, and a sphere padded with an
    // acyclic pair so the homology is smaller than the complex.
    fam.push_back(direct_sum(GradedComplex::sphere(p, lo), GradedComplex::sphere(p, lo + 2)));
    fam.push_back(direct_sum(GradedComplex::sphere(p, lo), GradedComplex::disk(p, lo + 2)));
    // Seeded random complexes with nonzero homology.
    for (std::uint64_t seed : {9001ull, 9002ull}) {
        for (std::uint64_t probe = seed;; ++probe) {
            GradedComplex c = random_complex(probe, p, 5, lo, hi);
            if (!homology_dims(c).empty()) {
                fam.push_back(std::move(c));
                break;
            }
        }
    }
    return fam;
}

}  // namespace sseq
