#include "sseq/tower.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sseq {

Tower Tower::make(std::vector<GradedComplex> levels, std::vector<ComplexMap> maps)
{
    if (levels.empty())
        throw std::invalid_argument("Tower: at least one level required");
    if (maps.size() + 1 != levels.size())
        throw std::invalid_argument("Tower: expected one structure map per adjacent level pair");
    Tower t;
    t.p_ = levels.front().p();
    for (const auto& l : levels)
        if (l.p() != t.p_)
            throw std::invalid_argument("Tower: level modulus mismatch");
    for (std::size_t s = 0; s < maps.size(); ++s) {
        const ComplexMap& g = maps[s];
        if (!(g.source() == levels[s + 1]) || !(g.target() == levels[s]))
            throw std::invalid_argument("Tower: structure map " + std::to_string(s) +
                                        " does not match adjacent levels");
        for (const auto& [n, d] : g.source().dims())
            if (rank(g.comp(n)) != d)
                throw std::invalid_argument("Tower: structure map " + std::to_string(s) +
                                            " is not injective in degree " + std::to_string(n));
    }
    t.zero_level_ = GradedComplex(t.p_);
    for (std::size_t s = 0; s + 1 < levels.size(); ++s)
        t.cofibers_.push_back(cone(maps[s]));
    t.cofibers_.push_back(cone(ComplexMap::zero(t.zero_level_, levels.back())));
    t.levels_ = std::move(levels);
    t.maps_ = std::move(maps);
    return t;
}

Tower Tower::zero(std::uint32_t p)
{
    return make({GradedComplex(p)}, {});
}

const GradedComplex& Tower::level(int s) const
{
    if (s < 0)
        return levels_.front();
    if (s > length())
        return zero_level_;
    return levels_[static_cast<std::size_t>(s)];
}

const ComplexMap& Tower::structure_map(int s) const
{
    if (s < 0 || s >= length())
        throw std::out_of_range("Tower::structure_map: index " + std::to_string(s));
    return maps_[static_cast<std::size_t>(s)];
}

const Cone& Tower::cofiber(int s) const
{
    if (s < 0 || s > length())
        throw std::out_of_range("Tower::cofiber: index " + std::to_string(s));
    return cofibers_[static_cast<std::size_t>(s)];
}

ComplexMap Tower::composite(int from, int to) const
{
    if (from < to)
        throw std::invalid_argument("Tower::composite: needs from >= to");
    ComplexMap acc = ComplexMap::identity(level(from));
    for (int s = from - 1; s >= to; --s) {
        // step F_{s+1} -> F_s with the boundary conventions
        ComplexMap step = [&]() -> ComplexMap {
            if (s < 0)
                return ComplexMap::identity(level(0));
            if (s >= length())
                return ComplexMap::zero(level(s + 1), level(s));
            return maps_[static_cast<std::size_t>(s)];
        }();
        acc = compose(step, acc);
    }
    return acc;
}

Tower Tower::padded(int new_length) const
{
    if (new_length < length())
        throw std::invalid_argument("Tower::padded: cannot shrink");
    std::vector<GradedComplex> levels = levels_;
    std::vector<ComplexMap> maps = maps_;
    for (int s = length(); s < new_length; ++s) {
        levels.push_back(GradedComplex(p_));
        maps.push_back(ComplexMap::zero(levels.back(), levels[static_cast<std::size_t>(s)]));
    }
    return make(std::move(levels), std::move(maps));
}

std::optional<std::pair<int, int>> Tower::degree_window() const
{
    std::optional<std::pair<int, int>> w;
    for (const auto& l : levels_) {
        if (l.empty())
            continue;
        if (!w)
            w = {l.min_degree(), l.max_degree()};
        else
            w = {std::min(w->first, l.min_degree()), std::max(w->second, l.max_degree())};
    }
    return w;
}

TowerMap TowerMap::make(Tower source, Tower target, std::vector<ComplexMap> levels)
{
    if (source.p() != target.p())
        throw std::invalid_argument("TowerMap: modulus mismatch");
    int len = std::max({source.length(), target.length(), static_cast<int>(levels.size()) - 1});
    if (source.length() < len)
        source = source.padded(len);
    if (target.length() < len)
        target = target.padded(len);
    while (static_cast<int>(levels.size()) - 1 < len)
        levels.push_back(ComplexMap::zero(source.level(static_cast<int>(levels.size())),
                                          target.level(static_cast<int>(levels.size()))));
    for (int s = 0; s <= len; ++s) {
        const ComplexMap& f = levels[static_cast<std::size_t>(s)];
        if (!(f.source() == source.level(s)) || !(f.target() == target.level(s)))
            throw std::invalid_argument("TowerMap: level " + std::to_string(s) +
                                        " does not match the towers");
    }
    for (int s = 0; s + 1 <= len; ++s) {
        ComplexMap lhs = compose(target.composite(s + 1, s), levels[static_cast<std::size_t>(s + 1)]);
        ComplexMap rhs = compose(levels[static_cast<std::size_t>(s)], source.composite(s + 1, s));
        for (const auto& [n, d] : lhs.source().dims())
            if (!(lhs.comp(n) == rhs.comp(n)))
                throw std::invalid_argument("TowerMap: does not commute with structure maps at level " +
                                            std::to_string(s));
    }
    return TowerMap(std::move(source), std::move(target), std::move(levels));
}

TowerMap TowerMap::zero(Tower source, Tower target)
{
    return make(std::move(source), std::move(target), {});
}

TowerMap TowerMap::identity(Tower t)
{
    std::vector<ComplexMap> levels;
    for (int s = 0; s <= t.length(); ++s)
        levels.push_back(ComplexMap::identity(t.level(s)));
    Tower copy = t;
    return make(std::move(copy), std::move(t), std::move(levels));
}

Tower smash(const Tower& t, const GradedComplex& w)
{
    if (t.p() != w.p())
        throw std::invalid_argument("smash: modulus mismatch");
    std::vector<GradedComplex> levels;
    std::vector<ComplexMap> maps;
    for (int s = 0; s <= t.length(); ++s)
        levels.push_back(tensor(t.level(s), w));
    for (int s = 0; s + 1 <= t.length(); ++s)
        maps.push_back(tensor_with_identity(t.structure_map(s), w));
    return Tower::make(std::move(levels), std::move(maps));
}

TowerMap smash_map(const TowerMap& f, const GradedComplex& w)
{
    std::vector<ComplexMap> levels;
    for (int s = 0; s <= f.length(); ++s)
        levels.push_back(tensor_with_identity(f.level(s), w));
    return TowerMap::make(smash(f.source(), w), smash(f.target(), w), std::move(levels));
}

CofiberTower cofiber_tower(const TowerMap& f)
{
    const int len = f.length();
    const std::uint32_t p = f.source().p();
    std::vector<Cone> cones;
    for (int s = 0; s <= len; ++s)
        cones.push_back(cone(f.level(s)));

    std::vector<GradedComplex> z_levels;
    for (int s = 0; s <= len; ++s)
        z_levels.push_back(cones[static_cast<std::size_t>(s)].complex);

    // Induced structure maps (y, x) -> (g_Y y, g_X x), blockwise.
    std::vector<ComplexMap> z_maps;
    for (int s = 0; s + 1 <= len; ++s) {
        const GradedComplex& zs1 = z_levels[static_cast<std::size_t>(s + 1)];
        const GradedComplex& zs = z_levels[static_cast<std::size_t>(s)];
        ComplexMap gy = f.target().composite(s + 1, s);
        ComplexMap gx = f.source().composite(s + 1, s);
        const GradedComplex& y1 = f.target().level(s + 1);
        const GradedComplex& y0 = f.target().level(s);
        std::map<int, FpMatrix> comps;
        for (const auto& [n, d] : zs1.dims()) {
            if (zs.dim(n) == 0)
                continue;
            FpMatrix m(p, zs.dim(n), d);
            FpMatrix my = gy.comp(n);
            FpMatrix mx = gx.comp(n - 1);
            for (int i = 0; i < my.rows(); ++i)
                for (int j = 0; j < my.cols(); ++j)
                    m.set(i, j, my.at(i, j));
            for (int i = 0; i < mx.rows(); ++i)
                for (int j = 0; j < mx.cols(); ++j)
                    m.set(y0.dim(n) + i, y1.dim(n) + j, mx.at(i, j));
            comps.emplace(n, std::move(m));
        }
        z_maps.push_back(ComplexMap(zs1, zs, std::move(comps)));
    }
    Tower z = Tower::make(z_levels, std::move(z_maps));

    std::vector<ComplexMap> incl;
    std::vector<ComplexMap> proj;
    for (int s = 0; s <= len; ++s) {
        incl.push_back(cones[static_cast<std::size_t>(s)].from_target);
        proj.push_back(cones[static_cast<std::size_t>(s)].to_shifted_source);
    }

    std::vector<GradedComplex> sx_levels;
    std::vector<ComplexMap> sx_maps;
    for (int s = 0; s <= len; ++s)
        sx_levels.push_back(shift(f.source().level(s), 1));
    for (int s = 0; s + 1 <= len; ++s)
        sx_maps.push_back(shift_map(f.source().composite(s + 1, s), 1));
    Tower sx = Tower::make(std::move(sx_levels), std::move(sx_maps));

    TowerMap include_target = TowerMap::make(f.target(), z, std::move(incl));
    TowerMap project = TowerMap::make(z, sx, std::move(proj));
    return CofiberTower{std::move(z), std::move(include_target), std::move(sx), std::move(project)};
}

bool is_retract(const TowerMap& i, const TowerMap& j)
{
    int len = std::max(i.length(), j.length());
    for (int s = 0; s <= len; ++s) {
        // Levels beyond a map's stored length are zero maps between the
        // towers' zero levels.
        ComplexMap is = s <= i.length()
                            ? i.level(s)
                            : ComplexMap::zero(i.source().level(s), i.target().level(s));
        ComplexMap js = s <= j.length()
                            ? j.level(s)
                            : ComplexMap::zero(j.source().level(s), j.target().level(s));
        ComplexMap ji = compose(js, is);
        ComplexMap diff = map_sub(ComplexMap::identity(ji.source()), ji);
        if (!is_null_homotopic(diff))
            return false;
    }
    return true;
}

FpMatrix composite_on_homology(const Tower& t, int s, int r, int n)
{
    if (r < 1)
        throw std::invalid_argument("composite_on_homology: needs r >= 1");
    return induced_on_homology(t.composite(s + r - 1, s), n);
}

bool composite_zero_on_H(const Tower& t, int s, int r, int n)
{
    return composite_on_homology(t, s, r, n).is_zero();
}

bool composite_null_from(const Tower& t, const GradedComplex& w, int s, int r)
{
    if (r < 1)
        throw std::invalid_argument("composite_null_from: needs r >= 1");
    for (const auto& [n, h] : homology_dims(w))
        if (!composite_zero_on_H(t, s, r, n))
            return false;
    return true;
}

FilteredComplex::FilteredComplex(std::uint32_t p, std::vector<Generator> gens,
                                 std::map<int, FpMatrix> diffs)
    : p_(p), gens_(std::move(gens)), diffs_(std::move(diffs)), total_(p)
{
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (g.name.empty())
            throw std::invalid_argument("FilteredComplex: empty generator name");
        if (!names.insert(g.name).second)
            throw std::invalid_argument("FilteredComplex: duplicate generator name '" + g.name + "'");
        if (g.filtration < 0)
            throw std::invalid_argument("FilteredComplex: generator '" + g.name +
                                        "' has negative filtration");
    }
    std::map<int, int> dims;
    for (const auto& g : gens_)
        ++dims[g.degree];
    for (const auto& [n, m] : diffs_) {
        auto src = degree_basis(n);
        auto tgt = degree_basis(n - 1);
        if (m.rows() != static_cast<int>(tgt.size()) || m.cols() != static_cast<int>(src.size()))
            throw std::invalid_argument("FilteredComplex: differential shape mismatch in degree " +
                                        std::to_string(n));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j) &&
                    gens_[static_cast<std::size_t>(tgt[static_cast<std::size_t>(i)])].filtration <
                        gens_[static_cast<std::size_t>(src[static_cast<std::size_t>(j)])].filtration)
                    throw std::invalid_argument(
                        "FilteredComplex: differential entry from '" +
                        gens_[static_cast<std::size_t>(src[static_cast<std::size_t>(j)])].name +
                        "' to '" +
                        gens_[static_cast<std::size_t>(tgt[static_cast<std::size_t>(i)])].name +
                        "' lowers filtration");
    }
    total_ = GradedComplex(p_, std::move(dims), diffs_);  // checks d*d = 0
}

int FilteredComplex::max_filtration() const
{
    int m = 0;
    for (const auto& g : gens_)
        m = std::max(m, g.filtration);
    return m;
}

std::vector<int> FilteredComplex::degree_basis(int degree) const
{
    std::vector<int> idx;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].degree == degree)
            idx.push_back(static_cast<int>(i));
    return idx;
}

GradedComplex FilteredComplex::level_complex(int s, std::map<int, std::vector<int>>& indices) const
{
    indices.clear();
    std::map<int, int> dims;
    for (const auto& g : gens_)
        if (g.filtration >= s)
            ++dims[g.degree];
    for (const auto& [n, d] : dims) {
        auto all = degree_basis(n);
        std::vector<int> sel;
        for (std::size_t pos = 0; pos < all.size(); ++pos)
            if (gens_[static_cast<std::size_t>(all[pos])].filtration >= s)
                sel.push_back(static_cast<int>(pos));  // position within the degree basis
        indices[n] = std::move(sel);
    }
    std::map<int, FpMatrix> diffs;
    for (const auto& [n, d] : dims) {
        if (dims.find(n - 1) == dims.end())
            continue;
        FpMatrix full = total_.diff(n);
        const auto& sc = indices[n];
        const auto& tc = indices[n - 1];
        FpMatrix m(p_, static_cast<int>(tc.size()), static_cast<int>(sc.size()));
        for (std::size_t i = 0; i < tc.size(); ++i)
            for (std::size_t j = 0; j < sc.size(); ++j)
                m.set(static_cast<int>(i), static_cast<int>(j),
                      full.at(tc[i], sc[j]));
        diffs.emplace(n, std::move(m));
    }
    return GradedComplex(p_, std::move(dims), std::move(diffs));
}

Tower FilteredComplex::to_tower() const
{
    int top = max_filtration();
    std::vector<GradedComplex> levels;
    std::vector<std::map<int, std::vector<int>>> level_indices(static_cast<std::size_t>(top) + 1);
    for (int s = 0; s <= top; ++s)
        levels.push_back(level_complex(s, level_indices[static_cast<std::size_t>(s)]));
    std::vector<ComplexMap> maps;
    for (int s = 0; s + 1 <= top; ++s) {
        const auto& up = level_indices[static_cast<std::size_t>(s + 1)];
        const auto& lo = level_indices[static_cast<std::size_t>(s)];
        std::map<int, FpMatrix> comps;
        for (const auto& [n, upsel] : up) {
            auto it = lo.find(n);
            if (it == lo.end())
                continue;
            FpMatrix m(p_, static_cast<int>(it->second.size()), static_cast<int>(upsel.size()));
            for (std::size_t j = 0; j < upsel.size(); ++j) {
                auto pos = std::find(it->second.begin(), it->second.end(), upsel[j]);
                m.set(static_cast<int>(pos - it->second.begin()), static_cast<int>(j), 1);
            }
            comps.emplace(n, std::move(m));
        }
        maps.push_back(ComplexMap(levels[static_cast<std::size_t>(s + 1)],
                                  levels[static_cast<std::size_t>(s)], std::move(comps)));
    }
    return Tower::make(std::move(levels), std::move(maps));
}

FpMatrix FilteredComplex::level_inclusion(int degree, int s) const
{
    auto all = degree_basis(degree);
    std::vector<int> sel;
    for (std::size_t pos = 0; pos < all.size(); ++pos)
        if (gens_[static_cast<std::size_t>(all[pos])].filtration >= s)
            sel.push_back(static_cast<int>(pos));
    FpMatrix m(p_, static_cast<int>(all.size()), static_cast<int>(sel.size()));
    for (std::size_t j = 0; j < sel.size(); ++j)
        m.set(sel[j], static_cast<int>(j), 1);
    return m;
}

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b)
{
    if (a.p() != b.p())
        throw std::invalid_argument("direct_sum: modulus mismatch");
    std::vector<FilteredComplex::Generator> gens;
    for (const auto& g : a.generators())
        gens.push_back({"0/" + g.name, g.degree, g.filtration});
    for (const auto& g : b.generators())
        gens.push_back({"1/" + g.name, g.degree, g.filtration});

    // Per-degree bases list the a-generators first, so differentials are
    // block diagonal.
    std::map<int, FpMatrix> diffs;
    std::set<int> degrees;
    for (const auto& g : gens)
        degrees.insert(g.degree);
    for (int n : degrees) {
        int sa = static_cast<int>(a.degree_basis(n).size());
        int sb = static_cast<int>(b.degree_basis(n).size());
        int ta = static_cast<int>(a.degree_basis(n - 1).size());
        int tb = static_cast<int>(b.degree_basis(n - 1).size());
        if (ta + tb == 0 || sa + sb == 0)
            continue;
        FpMatrix m(a.p(), ta + tb, sa + sb);
        FpMatrix ma = a.total().diff(n);
        FpMatrix mb = b.total().diff(n);
        for (int i = 0; i < ma.rows(); ++i)
            for (int j = 0; j < ma.cols(); ++j)
                m.set(i, j, ma.at(i, j));
        for (int i = 0; i < mb.rows(); ++i)
            for (int j = 0; j < mb.cols(); ++j)
                m.set(ta + i, sa + j, mb.at(i, j));
        diffs.emplace(n, std::move(m));
    }
    return FilteredComplex(a.p(), std::move(gens), std::move(diffs));
}

TowerMap FilteredMap::to_tower_map() const
{
    Tower x = source->to_tower();
    Tower y = target->to_tower();
    int len = std::max(x.length(), y.length());
    std::vector<ComplexMap> levels;
    for (int s = 0; s <= len; ++s) {
        const GradedComplex& xs = x.level(s);
        std::map<int, FpMatrix> comps;
        for (const auto& [n, d] : xs.dims()) {
            // Coordinates of the level bases inside the total complexes.
            FpMatrix inc_x = source->level_inclusion(n, s);
            FpMatrix inc_y = target->level_inclusion(n, s);
            FpMatrix in_total = comps_matrix(n) * inc_x;
            auto sol = solve(inc_y, in_total);
            if (!sol)
                throw std::invalid_argument("FilteredMap: image leaves filtration level " +
                                            std::to_string(s) + " in degree " + std::to_string(n));
            comps.emplace(n, *sol);
        }
        levels.push_back(ComplexMap(xs, y.level(s), std::move(comps)));
    }
    return TowerMap::make(std::move(x), std::move(y), std::move(levels));
}

FpMatrix FilteredMap::comps_matrix(int degree) const
{
    auto it = comps.find(degree);
    if (it != comps.end())
        return it->second;
    return FpMatrix(source->p(), static_cast<int>(target->degree_basis(degree).size()),
                    static_cast<int>(source->degree_basis(degree).size()));
}

FilteredMap filtered_sum_inclusion(const FilteredComplex& a, const FilteredComplex& b,
                                   const FilteredComplex& s, int which)
{
    const FilteredComplex& part = which == 0 ? a : b;
    std::map<int, FpMatrix> comps;
    std::set<int> degrees;
    for (const auto& g : part.generators())
        degrees.insert(g.degree);
    for (int n : degrees) {
        int pa = static_cast<int>(a.degree_basis(n).size());
        int pp = static_cast<int>(part.degree_basis(n).size());
        int ps = static_cast<int>(s.degree_basis(n).size());
        FpMatrix m(a.p(), ps, pp);
        int off = which == 0 ? 0 : pa;
        for (int i = 0; i < pp; ++i)
            m.set(off + i, i, 1);
        comps.emplace(n, std::move(m));
    }
    return FilteredMap{&part, &s, std::move(comps)};
}

FilteredMap filtered_sum_projection(const FilteredComplex& a, const FilteredComplex& b,
                                    const FilteredComplex& s, int which)
{
    const FilteredComplex& part = which == 0 ? a : b;
    std::map<int, FpMatrix> comps;
    std::set<int> degrees;
    for (const auto& g : s.generators())
        degrees.insert(g.degree);
    for (int n : degrees) {
        int pa = static_cast<int>(a.degree_basis(n).size());
        int pp = static_cast<int>(part.degree_basis(n).size());
        int ps = static_cast<int>(s.degree_basis(n).size());
        if (pp == 0)
            continue;
        FpMatrix m(a.p(), pp, ps);
        int off = which == 0 ? 0 : pa;
        for (int i = 0; i < pp; ++i)
            m.set(i, off + i, 1);
        comps.emplace(n, std::move(m));
    }
    return FilteredMap{&s, &part, std::move(comps)};
}

}  // namespace sseq
