#include "sseq/couple.hpp"

#include <algorithm>
#include <stdexcept>

namespace sseq {

namespace {

FpMatrix lookup(const BigradedMap& f, const BigradedModule& src, const BigradedModule& dst,
                Bidegree sb, std::uint32_t p)
{
    auto it = f.mats.find(sb);
    if (it != f.mats.end())
        return it->second;
    return FpMatrix(p, dst.dim({sb.s + f.ds, sb.t + f.dt}), src.dim(sb));
}

}  // namespace

FpMatrix ExactCouple::mat_i(Bidegree src) const { return lookup(i, D, D, src, p); }
FpMatrix ExactCouple::mat_j(Bidegree src) const { return lookup(j, D, E, src, p); }
FpMatrix ExactCouple::mat_k(Bidegree src) const { return lookup(k, E, D, src, p); }

ExactCouple couple_from_tower(const Tower& t)
{
    const int S = t.length();
    const std::uint32_t p = t.p();
    ExactCouple c;
    c.p = p;
    c.r = 1;
    c.s_min = -(S + 3);
    c.i = BigradedMap{-1, -1, {}};
    c.j = BigradedMap{0, 0, {}};
    c.k = BigradedMap{1, 0, {}};

    auto window = t.degree_window();
    if (!window)
        return c;
    const int dlo = window->first - 1;
    const int dhi = window->second + 1;

    // Homology presentations of the levels and cofibers, cached per degree.
    std::vector<std::map<int, HomologyData>> hl(static_cast<std::size_t>(S) + 1);
    std::vector<std::map<int, HomologyData>> hk(static_cast<std::size_t>(S) + 1);
    for (int s = 0; s <= S; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            hl[static_cast<std::size_t>(s)].emplace(n, homology(t.level(s), n));
            hk[static_cast<std::size_t>(s)].emplace(n, homology(t.cofiber(s).complex, n));
        }
    auto hlevel = [&](int s, int n) -> const HomologyData& {
        return hl[static_cast<std::size_t>(std::max(s, 0))].at(n);
    };

    // D^{s,t} = H_{t-s}(F_s), with F_s = F_0 below filtration 0.
    for (int s = c.s_min; s <= S; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            int d = hlevel(s, n).dim;
            if (d > 0)
                c.D.dims[{s, n + s}] = d;
        }
    // E^{s,t} = H_{t-s}(K_s).
    for (int s = 0; s <= S; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            int d = hk[static_cast<std::size_t>(s)].at(n).dim;
            if (d > 0)
                c.E.dims[{s, n + s}] = d;
        }

    // i : D^{s,t} -> D^{s-1,t-1}, induced by g_{s-1} (identity below 0).
    for (int s = c.s_min + 1; s <= S; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            Bidegree sb{s, n + s};
            if (c.D.dim(sb) == 0 || c.D.dim({s - 1, n + s - 1}) == 0)
                continue;
            if (s <= 0) {
                c.i.mats.emplace(sb, FpMatrix::identity(p, c.D.dim(sb)));
                continue;
            }
            const HomologyData& hs = hlevel(s, n);
            const HomologyData& ht = hlevel(s - 1, n);
            c.i.mats.emplace(sb, ht.proj * t.structure_map(s - 1).comp(n) * hs.cycles);
        }

    // j : D^{s,t} -> E^{s,t}, induced by F_s -> K_s.
    for (int s = 0; s <= S; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            Bidegree sb{s, n + s};
            if (c.D.dim(sb) == 0 || c.E.dim(sb) == 0)
                continue;
            const HomologyData& hs = hlevel(s, n);
            const HomologyData& ht = hk[static_cast<std::size_t>(s)].at(n);
            c.j.mats.emplace(sb, ht.proj * t.cofiber(s).from_target.comp(n) * hs.cycles);
        }

    // k : E^{s,t} -> D^{s+1,t}: a cycle (y, x) of K_s maps to the class of
    // its F_{s+1}-component x.
    for (int s = 0; s < S; ++s)
        for (int n = dlo; n <= dhi; ++n) {
            Bidegree sb{s, n + s};
            if (c.E.dim(sb) == 0 || c.D.dim({s + 1, n + s}) == 0)
                continue;
            const HomologyData& he = hk[static_cast<std::size_t>(s)].at(n);
            const HomologyData& ht = hlevel(s + 1, n - 1);
            const int off = t.level(s).dim(n);
            const int xdim = t.level(s + 1).dim(n - 1);
            FpMatrix xpart(p, xdim, he.dim);
            for (int col = 0; col < he.dim; ++col)
                for (int row = 0; row < xdim; ++row)
                    xpart.set(row, col, he.cycles.at(off + row, col));
            c.k.mats.emplace(sb, ht.proj * xpart);
        }

    return c;
}

namespace {

std::string bidegree_str(Bidegree b)
{
    return "(s=" + std::to_string(b.s) + ",t=" + std::to_string(b.t) + ")";
}

void check_node(std::vector<LesFailure>& out, const FpMatrix& in_map, const FpMatrix& out_map,
                const std::string& node, Bidegree at)
{
    // Exact at the middle object iff the composite vanishes and the ranks
    // fill the middle dimension.
    const int mid = out_map.cols();
    const int rank_in = rank(in_map);
    const int rank_out = rank(out_map);
    if (rank_in + rank_out != mid || !(out_map * in_map).is_zero())
        out.push_back(LesFailure{at, node, rank_in, mid - rank_out});
}

}  // namespace

std::vector<LesFailure> verify_les(const ExactCouple& c)
{
    std::vector<LesFailure> failures;
    const int r = c.r;
    // Exactness at D^{s,t} between i (in) and j (out).
    for (const auto& [b, d] : c.D.dims)
        check_node(failures, c.mat_i({b.s + 1, b.t + 1}), c.mat_j(b), "ker(j)=im(i) on D", b);
    // Exactness at E^{s,t} between j (in) and k (out).
    for (const auto& [b, d] : c.E.dims) {
        Bidegree jsrc{b.s - r + 1, b.t - r + 1};
        if (jsrc.s < c.s_min)
            continue;  // reference below the stored window
        check_node(failures, c.mat_j(jsrc), c.mat_k(b), "ker(k)=im(j) on E", b);
    }
    // Exactness at D^{s,t} between k (in) and i (out).
    for (const auto& [b, d] : c.D.dims) {
        if (b.s - 1 < c.s_min)
            continue;  // i out of the window
        check_node(failures, c.mat_k({b.s - 1, b.t}), c.mat_i(b), "ker(i)=im(k) on D", b);
    }
    return failures;
}

ExactCouple derive(const ExactCouple& c)
{
    {
        auto failures = verify_les(c);
        if (!failures.empty())
            throw std::invalid_argument("derive: input couple fails exactness at " +
                                        bidegree_str(failures.front().at) + " [" +
                                        failures.front().node + "]");
    }
    const std::uint32_t p = c.p;
    const int r = c.r;
    ExactCouple out;
    out.p = p;
    out.r = r + 1;
    out.s_min = c.s_min;
    out.i = BigradedMap{-1, -1, {}};
    out.j = BigradedMap{r, r, {}};
    out.k = BigradedMap{1, 0, {}};

    // D' = im(i), with a lift into old coordinates and preimages for j'.
    std::map<Bidegree, FpMatrix> lift;  // old D coords x new dim
    std::map<Bidegree, FpMatrix> pre;   // old D^{s+1,t+1} coords x new dim
    for (const auto& [b, d] : c.D.dims) {
        FpMatrix in = c.mat_i({b.s + 1, b.t + 1});
        Subspace im = image(in);
        if (im.dim() == 0)
            continue;
        auto x = solve(in, im.basis);
        if (!x)
            throw std::logic_error("derive: image basis has no preimage");
        out.D.dims[b] = im.dim();
        lift.emplace(b, im.basis);
        pre.emplace(b, *x);
    }

    // E' = ker(d)/im(d) with d = j o k, presented by subquotient data.
    std::map<Bidegree, FpMatrix> elift;
    std::map<Bidegree, FpMatrix> eproj;
    for (const auto& [b, d] : c.E.dims) {
        FpMatrix d_out = c.mat_j({b.s + 1, b.t}) * c.mat_k(b);
        Bidegree bin{b.s - r, b.t - r + 1};
        FpMatrix d_in = c.mat_j({bin.s + 1, bin.t}) * c.mat_k(bin);
        Subquotient q = subquotient(kernel(d_out), image(d_in));
        if (q.dim == 0)
            continue;
        out.E.dims[b] = q.dim;
        elift.emplace(b, q.lift);
        eproj.emplace(b, q.proj);
    }

    // i' : restriction of i to D'.
    for (const auto& [b, d] : out.D.dims) {
        Bidegree tb{b.s - 1, b.t - 1};
        if (tb.s < c.s_min)
            continue;
        FpMatrix moved = c.mat_i(b) * lift.at(b);
        int td = out.D.dim(tb);
        if (td == 0) {
            if (!moved.is_zero())
                throw std::logic_error("derive: i does not restrict to the derived couple");
            continue;
        }
        auto y = solve(lift.at(tb), moved);
        if (!y)
            throw std::logic_error("derive: restricted i leaves im(i)");
        out.i.mats.emplace(b, *y);
    }

    // j'(i x) = [j x].
    for (const auto& [b, d] : out.D.dims) {
        Bidegree tb{b.s + r, b.t + r};
        FpMatrix e = c.mat_j({b.s + 1, b.t + 1}) * pre.at(b);
        int td = out.E.dim(tb);
        if (td == 0)
            continue;  // classes die in the subquotient
        out.j.mats.emplace(b, eproj.at(tb) * e);
    }

    // k'([z]) = k z, landing in im(i) by exactness.
    for (const auto& [b, d] : out.E.dims) {
        Bidegree tb{b.s + 1, b.t};
        FpMatrix w = c.mat_k(b) * elift.at(b);
        int td = out.D.dim(tb);
        if (td == 0) {
            if (!w.is_zero())
                throw std::logic_error("derive: k does not restrict to the derived couple");
            continue;
        }
        auto y = solve(lift.at(tb), w);
        if (!y)
            throw std::logic_error("derive: restricted k leaves im(i)");
        out.k.mats.emplace(b, *y);
    }

    return out;
}

Page page_of_couple(const ExactCouple& c, int label_r)
{
    Page pg;
    pg.p = c.p;
    pg.r = label_r;
    pg.module = c.E;
    pg.d = BigradedMap{label_r, label_r - 1, {}};
    if (label_r != c.r)
        return pg;  // stabilized page: differentials vanish
    for (const auto& [b, d] : c.E.dims) {
        Bidegree tb{b.s + c.r, b.t + c.r - 1};
        if (c.E.dim(tb) == 0)
            continue;
        pg.d.mats.emplace(b, c.mat_j({b.s + 1, b.t}) * c.mat_k(b));
    }
    return pg;
}

Page page(const Tower& t, int r)
{
    if (r < 1)
        throw std::invalid_argument("page: needs r >= 1");
    const int stable = t.length() + 2;
    ExactCouple c = couple_from_tower(t);
    for (int level = 1; level < std::min(r, stable); ++level)
        c = derive(c);
    return page_of_couple(c, r);
}

std::vector<Page> pages_up_to(const Tower& t, int r_max)
{
    if (r_max < 1)
        throw std::invalid_argument("pages_up_to: needs r_max >= 1");
    const int stable = t.length() + 2;
    std::vector<Page> pages;
    ExactCouple c = couple_from_tower(t);
    pages.push_back(page_of_couple(c, 1));
    for (int r = 2; r <= r_max; ++r) {
        if (r <= stable) {
            c = derive(c);
            pages.push_back(page_of_couple(c, r));
        } else {
            pages.push_back(page_of_couple(c, r));
        }
    }
    return pages;
}

BigradedModule oracle_page(const Tower& t, int r)
{
    if (r < 1)
        throw std::invalid_argument("oracle_page: needs r >= 1");
    const std::uint32_t p = t.p();
    const int S = t.length();
    BigradedModule out;
    out.p = p;
    auto window = t.degree_window();
    if (!window)
        return out;
    const int dlo = window->first - 1;
    const int dhi = window->second + 1;
    const GradedComplex& f0 = t.level(0);

    // Realize each level as a subspace of F_0 via the composite inclusion.
    auto level_subspace = [&](int s, int n) -> Subspace {
        if (s <= 0)
            return Subspace::full(p, f0.dim(n));
        if (s > S)
            return Subspace::zero(p, f0.dim(n));
        return image(t.composite(s, 0).comp(n));
    };

    for (int s = 0; s <= S; ++s) {
        for (int n = dlo; n <= dhi; ++n) {
            // Z_r^{s} = F_s n d^{-1}(F_{s+r})
            Subspace z = intersect(level_subspace(s, n),
                                   preimage(f0.diff(n), level_subspace(s + r, n - 1)));
            // Z_{r-1}^{s+1} = F_{s+1} n d^{-1}(F_{s+r})
            Subspace a = intersect(level_subspace(s + 1, n),
                                   preimage(f0.diff(n), level_subspace(s + r, n - 1)));
            // B = d(F_{s-r+1} n d^{-1}(F_s))
            Subspace zup = intersect(level_subspace(s - r + 1, n + 1),
                                     preimage(f0.diff(n + 1), level_subspace(s, n)));
            Subspace b = image(f0.diff(n + 1) * zup.basis);
            int dim = z.dim() - sum(a, b).dim();
            if (dim > 0)
                out.dims[{s, n + s}] = dim;
        }
    }
    return out;
}

Convergence e_infinity(const Tower& t)
{
    const int S = t.length();
    const std::uint32_t p = t.p();
    Convergence conv;
    conv.limit.p = p;
    auto window = t.degree_window();
    conv.stable_page = page(t, S + 2).module;
    if (window) {
        const int dlo = window->first - 1;
        const int dhi = window->second + 1;
        for (int n = dlo; n <= dhi; ++n) {
            HomologyData h0 = homology(t.level(0), n);
            if (h0.dim > 0)
                conv.h_total[n] = h0.dim;
            // Images of H_n(F_s) -> H_n(F_0), a decreasing chain.
            std::vector<int> img_dims(static_cast<std::size_t>(S) + 2, 0);
            for (int s = 0; s <= S; ++s) {
                FpMatrix m = h0.proj * t.composite(s, 0).comp(n) * homology(t.level(s), n).cycles;
                img_dims[static_cast<std::size_t>(s)] = rank(m);
            }
            for (int s = 0; s <= S; ++s) {
                int d = img_dims[static_cast<std::size_t>(s)] - img_dims[static_cast<std::size_t>(s) + 1];
                if (d > 0)
                    conv.limit.dims[{s, n + s}] = d;
            }
        }
    }
    conv.page_matches = conv.limit.dims == conv.stable_page.dims;
    std::map<int, int> sums;
    for (const auto& [b, d] : conv.stable_page.dims)
        sums[b.t - b.s] += d;
    conv.totals_match = sums == conv.h_total;
    return conv;
}

}  // namespace sseq
