#include "sseq/generator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sseq {

namespace {

struct Piece {
    int degree;      // top generator degree
    int filt_top;    // filtration of the top generator
    int filt_bot;    // filtration of the boundary generator (disks only)
    bool disk;
};

FilteredComplex build_filtered(Rng& rng, std::uint32_t p, int max_levels, int max_generators,
                               int degree_lo, int degree_hi, int mix_moves_per_gen)
{
    if (!is_prime(p) || max_levels < 1 || max_generators < 1 || degree_hi < degree_lo)
        throw std::invalid_argument("random_filtered: infeasible parameters");
    const int s_top = rng.uniform(0, max_levels - 1);
    const int target = rng.uniform(1, max_generators);

    std::vector<Piece> pieces;
    int used = 0;
    while (used < target) {
        // a disk needs two adjacent degrees
        bool disk = used + 2 <= target && degree_hi > degree_lo && rng.chance(1, 2);
        Piece pc{};
        pc.disk = disk;
        if (disk) {
            pc.degree = rng.uniform(degree_lo + 1, degree_hi);
            pc.filt_top = rng.uniform(0, s_top);
            pc.filt_bot = rng.uniform(pc.filt_top, s_top);
            used += 2;
        } else {
            pc.degree = rng.uniform(degree_lo, degree_hi);
            pc.filt_top = rng.uniform(0, s_top);
            used += 1;
        }
        pieces.push_back(pc);
    }

    std::vector<FilteredComplex::Generator> gens;
    // (piece index, is-boundary) per generator, to place differential entries
    std::vector<std::pair<int, bool>> origin;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& pc = pieces[i];
        gens.push_back({"g" + std::to_string(gens.size()), pc.degree, pc.filt_top});
        origin.push_back({static_cast<int>(i), false});
        if (pc.disk) {
            gens.push_back({"g" + std::to_string(gens.size()), pc.degree - 1, pc.filt_bot});
            origin.push_back({static_cast<int>(i), true});
        }
    }

    // Positions within each degree, in listed order.
    std::map<int, std::vector<int>> by_degree;
    for (std::size_t i = 0; i < gens.size(); ++i)
        by_degree[gens[i].degree].push_back(static_cast<int>(i));
    auto position = [&](int gen) {
        const auto& v = by_degree[gens[static_cast<std::size_t>(gen)].degree];
        return static_cast<int>(std::find(v.begin(), v.end(), gen) - v.begin());
    };

    std::map<int, FpMatrix> diffs;
    for (const auto& [n, col_gens] : by_degree) {
        auto tgt_it = by_degree.find(n - 1);
        if (tgt_it == by_degree.end())
            continue;
        FpMatrix m(p, static_cast<int>(tgt_it->second.size()),
                   static_cast<int>(col_gens.size()));
        diffs.emplace(n, std::move(m));
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto [piece, is_bot] = origin[i];
        if (is_bot || !pieces[static_cast<std::size_t>(piece)].disk)
            continue;
        int top = static_cast<int>(i);
        int bot = top + 1;  // boundary generator is listed right after the top
        diffs.at(gens[static_cast<std::size_t>(top)].degree)
            .set(position(bot), position(top), 1);
    }

    // Conjugate by elementary filtration-preserving moves, degree by degree.
    std::map<int, FpMatrix> u, u_inv;
    for (const auto& [n, idx] : by_degree) {
        int d = static_cast<int>(idx.size());
        FpMatrix un = FpMatrix::identity(p, d);
        int moves = mix_moves_per_gen * d;
        for (int mv = 0; mv < moves; ++mv) {
            int a = rng.uniform(0, d - 1);
            int b = rng.uniform(0, d - 1);
            if (a == b) {
                // scale column a
                std::uint32_t c = rng.nonzero_residue(p);
                FpMatrix e = FpMatrix::identity(p, d);
                e.set(a, a, c);
                un = un * e;
                continue;
            }
            // column move e_b -> e_b + c e_a needs filt(a) >= filt(b)
            if (gens[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])].filtration <
                gens[static_cast<std::size_t>(idx[static_cast<std::size_t>(b)])].filtration)
                continue;
            std::uint32_t c = rng.residue(p);
            if (!c)
                continue;
            FpMatrix e = FpMatrix::identity(p, d);
            e.set(a, b, c);
            un = un * e;
        }
        u_inv.emplace(n, inverse(un));
        u.emplace(n, std::move(un));
    }
    std::map<int, FpMatrix> mixed;
    for (const auto& [n, m] : diffs) {
        auto ui = u_inv.find(n - 1);
        auto us = u.find(n);
        FpMatrix res = m;
        if (us != u.end())
            res = res * us->second;
        if (ui != u_inv.end())
            res = ui->second * res;
        mixed.emplace(n, std::move(res));
    }
    return FilteredComplex(p, std::move(gens), std::move(mixed));
}

}  // namespace

FilteredComplex random_filtered(std::uint64_t seed, const TowerParams& params)
{
    Rng rng(seed);
    return build_filtered(rng, params.p, params.max_levels, params.max_generators,
                          params.degree_lo, params.degree_hi, params.mix_moves_per_gen);
}

Tower random_tower(std::uint64_t seed, const TowerParams& params)
{
    return random_filtered(seed, params).to_tower();
}

GradedComplex random_complex(std::uint64_t seed, std::uint32_t p, int max_generators,
                             int degree_lo, int degree_hi)
{
    Rng rng(seed);
    return build_filtered(rng, p, 1, max_generators, degree_lo, degree_hi, 3).total();
}

namespace {

struct MapVariable {
    int degree;
    int row;  // target position within the degree
    int col;  // source position within the degree
};

/* Sample from the kernel of the chain-map equations, restricted to the
** filtration-allowed entries. */
std::map<int, FpMatrix> sample_chain_map(Rng& rng, std::uint32_t p, const GradedComplex& cx,
                                         const GradedComplex& cy,
                                         const std::map<int, std::vector<int>>& filt_x,
                                         const std::map<int, std::vector<int>>& filt_y)
{
    std::vector<MapVariable> vars;
    std::map<int, std::map<std::pair<int, int>, int>> var_id;
    auto filt_of = [](const std::map<int, std::vector<int>>& f, int n, int pos) {
        auto it = f.find(n);
        return it == f.end() ? 0 : it->second[static_cast<std::size_t>(pos)];
    };
    for (const auto& [n, dx] : cx.dims()) {
        int dy = cy.dim(n);
        for (int i = 0; i < dy; ++i)
            for (int j = 0; j < dx; ++j) {
                if (filt_of(filt_y, n, i) < filt_of(filt_x, n, j))
                    continue;  // would lower filtration
                var_id[n][{i, j}] = static_cast<int>(vars.size());
                vars.push_back({n, i, j});
            }
    }
    if (vars.empty())
        return {};

    // Equations: (d_y f_n - f_{n-1} d_x)[a][b] = 0 for all degrees n.
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& [n, dx] : cx.dims()) {
        FpMatrix dyn = cy.diff(n);
        FpMatrix dxn = cx.diff(n);
        int ty = cy.dim(n - 1);
        for (int a = 0; a < ty; ++a)
            for (int b = 0; b < dx; ++b) {
                std::vector<std::uint32_t> row(vars.size(), 0);
                bool nontrivial = false;
                auto itn = var_id.find(n);
                if (itn != var_id.end())
                    for (int i = 0; i < cy.dim(n); ++i) {
                        auto it = itn->second.find({i, b});
                        if (it == itn->second.end() || !dyn.at(a, i))
                            continue;
                        row[static_cast<std::size_t>(it->second)] =
                            (row[static_cast<std::size_t>(it->second)] + dyn.at(a, i)) % p;
                        nontrivial = true;
                    }
                auto itm = var_id.find(n - 1);
                if (itm != var_id.end())
                    for (int c = 0; c < cx.dim(n - 1); ++c) {
                        auto it = itm->second.find({a, c});
                        if (it == itm->second.end() || !dxn.at(c, b))
                            continue;
                        std::uint32_t v = (p - dxn.at(c, b)) % p;
                        row[static_cast<std::size_t>(it->second)] =
                            (row[static_cast<std::size_t>(it->second)] + v) % p;
                        nontrivial = true;
                    }
                if (nontrivial)
                    rows.push_back(std::move(row));
            }
    }
    FpMatrix system = rows.empty() ? FpMatrix(p, 0, static_cast<int>(vars.size()))
                                   : FpMatrix::from_rows(p, rows);
    Subspace sol = kernel(system);
    FpMatrix coeffs(p, sol.dim(), 1);
    for (int i = 0; i < sol.dim(); ++i)
        coeffs.set(i, 0, rng.residue(p));
    FpMatrix pick = sol.basis * coeffs;

    std::map<int, FpMatrix> comps;
    for (const auto& [n, dx] : cx.dims()) {
        if (cy.dim(n) == 0)
            continue;
        comps.emplace(n, FpMatrix(p, cy.dim(n), dx));
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
        std::uint32_t c = pick.at(static_cast<int>(v), 0);
        if (c)
            comps.at(vars[v].degree).set(vars[v].row, vars[v].col, c);
    }
    return comps;
}

std::map<int, std::vector<int>> filtration_table(const FilteredComplex& f)
{
    std::map<int, std::vector<int>> out;
    std::set<int> degrees;
    for (const auto& g : f.generators())
        degrees.insert(g.degree);
    for (int n : degrees) {
        std::vector<int> filts;
        for (int idx : f.degree_basis(n))
            filts.push_back(f.generators()[static_cast<std::size_t>(idx)].filtration);
        out[n] = std::move(filts);
    }
    return out;
}

}  // namespace

FilteredMap random_filtered_map(std::uint64_t seed, const FilteredComplex& x,
                                const FilteredComplex& y)
{
    if (x.p() != y.p())
        throw std::invalid_argument("random_filtered_map: modulus mismatch");
    Rng rng(seed);
    auto comps = sample_chain_map(rng, x.p(), x.total(), y.total(), filtration_table(x),
                                  filtration_table(y));
    return FilteredMap{&x, &y, std::move(comps)};
}

ComplexMap random_chain_map(std::uint64_t seed, const GradedComplex& c, const GradedComplex& d)
{
    if (c.p() != d.p())
        throw std::invalid_argument("random_chain_map: modulus mismatch");
    Rng rng(seed);
    auto comps = sample_chain_map(rng, c.p(), c, d, {}, {});
    return ComplexMap(c, d, std::move(comps));
}

ComplexMap random_ghost(std::uint64_t seed, const GradedComplex& c, const GradedComplex& d)
{
    if (c.p() != d.p())
        throw std::invalid_argument("random_ghost: modulus mismatch");
    Rng rng(seed);
    const std::uint32_t p = c.p();
    // Random degree-raising h : c_n -> d_{n+1}, then f = d h + h d.
    std::map<int, FpMatrix> h;
    for (const auto& [n, dim] : c.dims()) {
        if (d.dim(n + 1) == 0)
            continue;
        FpMatrix m(p, d.dim(n + 1), dim);
        for (int i = 0; i < m.rows(); ++i)
            for (int jj = 0; jj < m.cols(); ++jj)
                m.set(i, jj, rng.residue(p));
        h.emplace(n, std::move(m));
    }
    auto h_at = [&](int n) {
        auto it = h.find(n);
        if (it != h.end())
            return it->second;
        return FpMatrix(p, d.dim(n + 1), c.dim(n));
    };
    std::map<int, FpMatrix> comps;
    for (const auto& [n, dim] : c.dims()) {
        if (d.dim(n) == 0)
            continue;
        comps.emplace(n, d.diff(n + 1) * h_at(n) + h_at(n - 1) * c.diff(n));
    }
    return ComplexMap(c, d, std::move(comps));
}

}  // namespace sseq
