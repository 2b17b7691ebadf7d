#include "sseq/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sseq {

GradedComplex::GradedComplex(std::uint32_t p) : p_(p)
{
    if (!is_prime(p))
        throw std::invalid_argument("GradedComplex: modulus " + std::to_string(p) + " is not prime");
}

GradedComplex::GradedComplex(std::uint32_t p, std::map<int, int> dims, std::map<int, FpMatrix> diffs)
    : p_(p), dims_(std::move(dims)), diffs_(std::move(diffs))
{
    if (!is_prime(p))
        throw std::invalid_argument("GradedComplex: modulus " + std::to_string(p) + " is not prime");
    for (auto it = dims_.begin(); it != dims_.end();) {
        if (it->second < 0)
            throw std::invalid_argument("GradedComplex: negative dimension");
        it = it->second == 0 ? dims_.erase(it) : std::next(it);
    }
    validate();
}

void GradedComplex::validate() const
{
    for (const auto& [n, d] : diffs_) {
        if (d.p() != p_)
            throw std::invalid_argument("GradedComplex: differential modulus mismatch");
        if (d.rows() != dim(n - 1) || d.cols() != dim(n))
            throw std::invalid_argument("GradedComplex: differential shape mismatch in degree " +
                                        std::to_string(n));
    }
    for (const auto& [n, d] : diffs_) {
        if (dim(n - 2) == 0 || d.cols() == 0)
            continue;
        if (!(diff(n - 1) * d).is_zero())
            throw std::invalid_argument("GradedComplex: d*d != 0 at degree " + std::to_string(n));
    }
}

GradedComplex GradedComplex::sphere(std::uint32_t p, int n)
{
    return GradedComplex(p, {{n, 1}}, {});
}

GradedComplex GradedComplex::disk(std::uint32_t p, int n)
{
    FpMatrix d(p, 1, 1);
    d.set(0, 0, 1);
    return GradedComplex(p, {{n, 1}, {n - 1, 1}}, {{n, d}});
}

int GradedComplex::dim(int n) const
{
    auto it = dims_.find(n);
    return it == dims_.end() ? 0 : it->second;
}

FpMatrix GradedComplex::diff(int n) const
{
    auto it = diffs_.find(n);
    if (it != diffs_.end())
        return it->second;
    return FpMatrix(p_, dim(n - 1), dim(n));
}

int GradedComplex::min_degree() const
{
    if (dims_.empty())
        throw std::domain_error("min_degree: empty complex");
    return dims_.begin()->first;
}

int GradedComplex::max_degree() const
{
    if (dims_.empty())
        throw std::domain_error("max_degree: empty complex");
    return dims_.rbegin()->first;
}

int GradedComplex::total_dim() const
{
    int t = 0;
    for (const auto& [n, d] : dims_)
        t += d;
    return t;
}

bool GradedComplex::operator==(const GradedComplex& rhs) const
{
    if (p_ != rhs.p_ || dims_ != rhs.dims_)
        return false;
    for (const auto& [n, d] : dims_)
        if (!(diff(n) == rhs.diff(n)))
            return false;
    return true;
}

ComplexMap::ComplexMap(GradedComplex source, GradedComplex target, std::map<int, FpMatrix> comps)
    : src_(std::move(source)), tgt_(std::move(target)), f_(std::move(comps))
{
    validate();
}

void ComplexMap::validate() const
{
    if (src_.p() != tgt_.p())
        throw std::invalid_argument("ComplexMap: modulus mismatch");
    std::set<int> degrees;
    for (const auto& [n, d] : src_.dims())
        degrees.insert(n);
    for (const auto& [n, d] : tgt_.dims())
        degrees.insert(n);
    for (const auto& [n, m] : f_)
        if (m.rows() != tgt_.dim(n) || m.cols() != src_.dim(n))
            throw std::invalid_argument("ComplexMap: component shape mismatch in degree " +
                                        std::to_string(n));
    for (int n : degrees)
        if (!(tgt_.diff(n) * comp(n) == comp(n - 1) * src_.diff(n)))
            throw std::invalid_argument("ComplexMap: chain-map condition fails in degree " +
                                        std::to_string(n));
}

ComplexMap ComplexMap::zero(GradedComplex source, GradedComplex target)
{
    return ComplexMap(std::move(source), std::move(target), {});
}

ComplexMap ComplexMap::identity(GradedComplex c)
{
    std::map<int, FpMatrix> comps;
    for (const auto& [n, d] : c.dims())
        comps.emplace(n, FpMatrix::identity(c.p(), d));
    GradedComplex copy = c;
    return ComplexMap(std::move(copy), std::move(c), std::move(comps));
}

FpMatrix ComplexMap::comp(int n) const
{
    auto it = f_.find(n);
    if (it != f_.end())
        return it->second;
    return FpMatrix(src_.p(), tgt_.dim(n), src_.dim(n));
}

bool ComplexMap::is_zero() const
{
    for (const auto& [n, m] : f_)
        if (!m.is_zero())
            return false;
    return true;
}

ComplexMap compose(const ComplexMap& second, const ComplexMap& first)
{
    if (!(first.target() == second.source()))
        throw std::invalid_argument("compose: middle complexes differ");
    std::map<int, FpMatrix> comps;
    for (const auto& [n, d] : first.source().dims())
        if (second.target().dim(n) > 0)
            comps.emplace(n, second.comp(n) * first.comp(n));
    return ComplexMap(first.source(), second.target(), std::move(comps));
}

ComplexMap map_sub(const ComplexMap& a, const ComplexMap& b)
{
    if (!(a.source() == b.source()) || !(a.target() == b.target()))
        throw std::invalid_argument("map_sub: endpoint mismatch");
    std::map<int, FpMatrix> comps;
    for (const auto& [n, d] : a.source().dims())
        if (a.target().dim(n) > 0)
            comps.emplace(n, a.comp(n) - b.comp(n));
    return ComplexMap(a.source(), a.target(), std::move(comps));
}

HomologyData homology(const GradedComplex& c, int n)
{
    Subspace cycles = kernel(c.diff(n));
    Subspace boundaries = image(c.diff(n + 1));
    Subquotient q = subquotient(cycles, boundaries);
    HomologyData h(c.p(), c.dim(n));
    h.dim = q.dim;
    h.cycles = q.lift;
    h.proj = q.proj;
    return h;
}

std::map<int, int> homology_dims(const GradedComplex& c)
{
    std::map<int, int> out;
    for (const auto& [n, d] : c.dims()) {
        int h = homology(c, n).dim;
        if (h > 0)
            out[n] = h;
    }
    return out;
}

FpMatrix induced_on_homology(const ComplexMap& f, int n)
{
    HomologyData hs = homology(f.source(), n);
    HomologyData ht = homology(f.target(), n);
    return ht.proj * f.comp(n) * hs.cycles;
}

Cone cone(const ComplexMap& f)
{
    const GradedComplex& a = f.source();
    const GradedComplex& b = f.target();
    const std::uint32_t p = a.p();

    std::map<int, int> dims;
    std::set<int> degrees;
    for (const auto& [n, d] : b.dims())
        degrees.insert(n);
    for (const auto& [n, d] : a.dims())
        degrees.insert(n + 1);
    for (int n : degrees) {
        int d = b.dim(n) + a.dim(n - 1);
        if (d > 0)
            dims[n] = d;
    }

    std::map<int, FpMatrix> diffs;
    for (const auto& [n, d] : dims) {
        int rows = b.dim(n - 1) + a.dim(n - 2);
        if (rows == 0)
            continue;
        FpMatrix m(p, rows, d);
        FpMatrix db = b.diff(n);
        FpMatrix fa = f.comp(n - 1);
        FpMatrix da = a.diff(n - 1);
        for (int i = 0; i < db.rows(); ++i)
            for (int j = 0; j < db.cols(); ++j)
                m.set(i, j, db.at(i, j));
        for (int i = 0; i < fa.rows(); ++i)
            for (int j = 0; j < fa.cols(); ++j)
                m.set(i, b.dim(n) + j, fa.at(i, j));
        for (int i = 0; i < da.rows(); ++i)
            for (int j = 0; j < da.cols(); ++j)
                m.set(b.dim(n - 1) + i, b.dim(n) + j, da.at(i, j) ? p - da.at(i, j) : 0);
        diffs.emplace(n, std::move(m));
    }
    GradedComplex cn(p, dims, std::move(diffs));

    std::map<int, FpMatrix> incl;
    for (const auto& [n, d] : b.dims()) {
        FpMatrix m(p, cn.dim(n), d);
        for (int i = 0; i < d; ++i)
            m.set(i, i, 1);
        incl.emplace(n, std::move(m));
    }
    ComplexMap from_target(b, cn, std::move(incl));

    GradedComplex sa = shift(a, 1);
    std::map<int, FpMatrix> proj;
    for (const auto& [n, d] : cn.dims()) {
        if (sa.dim(n) == 0)
            continue;
        FpMatrix m(p, sa.dim(n), d);
        for (int i = 0; i < a.dim(n - 1); ++i)
            m.set(i, b.dim(n) + i, 1);
        proj.emplace(n, std::move(m));
    }
    ComplexMap to_shifted(cn, sa, std::move(proj));

    return Cone{std::move(cn), std::move(from_target), std::move(to_shifted)};
}

GradedComplex shift(const GradedComplex& c, int k)
{
    std::map<int, int> dims;
    std::map<int, FpMatrix> diffs;
    const std::uint32_t sign = (k % 2 == 0) ? 1 : c.p() - 1;
    for (const auto& [n, d] : c.dims())
        dims[n + k] = d;
    for (const auto& [n, d] : c.dims()) {
        FpMatrix m = c.diff(n);
        if (m.rows() > 0 && m.cols() > 0)
            diffs.emplace(n + k, m.scaled(sign));
    }
    return GradedComplex(c.p(), std::move(dims), std::move(diffs));
}

ComplexMap shift_map(const ComplexMap& f, int k)
{
    std::map<int, FpMatrix> comps;
    for (const auto& [n, d] : f.source().dims())
        if (f.target().dim(n) > 0)
            comps.emplace(n + k, f.comp(n));
    return ComplexMap(shift(f.source(), k), shift(f.target(), k), std::move(comps));
}

namespace {

/* Block layout of (c (x) w)_n: blocks (i, n-i) for ascending i with both
** factors nonzero; within a block, index a * w.dim(n-i) + b. */
struct TensorBlock {
    int i;       // degree in c
    int offset;  // within the degree-n space
};

std::vector<TensorBlock> tensor_blocks(const GradedComplex& c, const GradedComplex& w, int n)
{
    std::vector<TensorBlock> blocks;
    int off = 0;
    for (const auto& [i, dc] : c.dims()) {
        int dw = w.dim(n - i);
        if (dw == 0)
            continue;
        blocks.push_back({i, off});
        off += dc * dw;
    }
    return blocks;
}

int tensor_dim(const GradedComplex& c, const GradedComplex& w, int n)
{
    int t = 0;
    for (const auto& [i, dc] : c.dims())
        t += dc * w.dim(n - i);
    return t;
}

int tensor_block_offset(const std::vector<TensorBlock>& blocks, int i)
{
    for (const auto& b : blocks)
        if (b.i == i)
            return b.offset;
    return -1;
}

}  // namespace

GradedComplex tensor(const GradedComplex& c, const GradedComplex& w)
{
    if (c.p() != w.p())
        throw std::invalid_argument("tensor: modulus mismatch");
    const std::uint32_t p = c.p();

    std::set<int> degrees;
    for (const auto& [i, dc] : c.dims())
        for (const auto& [j, dw] : w.dims())
            degrees.insert(i + j);

    std::map<int, int> dims;
    for (int n : degrees)
        dims[n] = tensor_dim(c, w, n);

    std::map<int, FpMatrix> diffs;
    for (int n : degrees) {
        int rows = tensor_dim(c, w, n - 1);
        if (rows == 0)
            continue;
        FpMatrix m(p, rows, dims[n]);
        auto src_blocks = tensor_blocks(c, w, n);
        auto tgt_blocks = tensor_blocks(c, w, n - 1);
        for (const auto& blk : src_blocks) {
            const int i = blk.i;
            const int dw = w.dim(n - i);
            const int dc = c.dim(i);
            // d_c (x) id : block (i, n-i) -> (i-1, n-i)
            int toff = tensor_block_offset(tgt_blocks, i - 1);
            if (toff >= 0) {
                FpMatrix dci = c.diff(i);
                for (int a2 = 0; a2 < dci.rows(); ++a2)
                    for (int a = 0; a < dc; ++a) {
                        std::uint32_t v = dci.at(a2, a);
                        if (!v)
                            continue;
                        for (int b = 0; b < dw; ++b)
                            m.set(toff + a2 * dw + b, blk.offset + a * dw + b, v);
                    }
            }
            // (-1)^i id (x) d_w : block (i, n-i) -> (i, n-1-i)
            toff = tensor_block_offset(tgt_blocks, i);
            if (toff >= 0) {
                FpMatrix dwj = w.diff(n - i);
                const int dw2 = w.dim(n - 1 - i);
                const bool neg = (i % 2 != 0);
                for (int b2 = 0; b2 < dwj.rows(); ++b2)
                    for (int b = 0; b < dw; ++b) {
                        std::uint32_t v = dwj.at(b2, b);
                        if (!v)
                            continue;
                        if (neg)
                            v = p - v;
                        for (int a = 0; a < dc; ++a)
                            m.set(toff + a * dw2 + b2, blk.offset + a * dw + b, v);
                    }
            }
        }
        diffs.emplace(n, std::move(m));
    }
    return GradedComplex(p, std::move(dims), std::move(diffs));
}

ComplexMap tensor_with_identity(const ComplexMap& f, const GradedComplex& w)
{
    const GradedComplex& c = f.source();
    const GradedComplex& d = f.target();
    GradedComplex tc = tensor(c, w);
    GradedComplex td = tensor(d, w);
    std::map<int, FpMatrix> comps;
    for (const auto& [n, dimn] : tc.dims()) {
        if (td.dim(n) == 0)
            continue;
        FpMatrix m(c.p(), td.dim(n), dimn);
        auto src_blocks = tensor_blocks(c, w, n);
        auto tgt_blocks = tensor_blocks(d, w, n);
        for (const auto& blk : src_blocks) {
            int toff = tensor_block_offset(tgt_blocks, blk.i);
            if (toff < 0)
                continue;
            FpMatrix fi = f.comp(blk.i);
            const int dw = w.dim(n - blk.i);
            for (int a2 = 0; a2 < fi.rows(); ++a2)
                for (int a = 0; a < fi.cols(); ++a) {
                    std::uint32_t v = fi.at(a2, a);
                    if (!v)
                        continue;
                    for (int b = 0; b < dw; ++b)
                        m.set(toff + a2 * dw + b, blk.offset + a * dw + b, v);
                }
        }
        comps.emplace(n, std::move(m));
    }
    return ComplexMap(std::move(tc), std::move(td), std::move(comps));
}

GradedComplex dual(const GradedComplex& w)
{
    std::map<int, int> dims;
    std::map<int, FpMatrix> diffs;
    for (const auto& [n, d] : w.dims())
        dims[-n] = d;
    for (const auto& [n, d] : dims) {
        // d^(DW)_n = (-1)^n transpose(d^W_{1-n}) : (W_{-n})* -> (W_{1-n})*
        FpMatrix t = w.diff(1 - n).transpose();
        if (t.rows() == 0 || t.cols() == 0)
            continue;
        bool neg = ((n % 2) + 2) % 2 == 1;
        diffs.emplace(n, neg ? t.scaled(w.p() - 1) : t);
    }
    return GradedComplex(w.p(), std::move(dims), std::move(diffs));
}

GradedComplex direct_sum(const GradedComplex& c, const GradedComplex& d)
{
    if (c.p() != d.p())
        throw std::invalid_argument("direct_sum: modulus mismatch");
    std::map<int, int> dims;
    std::set<int> degrees;
    for (const auto& [n, x] : c.dims())
        degrees.insert(n);
    for (const auto& [n, x] : d.dims())
        degrees.insert(n);
    for (int n : degrees)
        dims[n] = c.dim(n) + d.dim(n);
    std::map<int, FpMatrix> diffs;
    for (int n : degrees) {
        int rows = c.dim(n - 1) + d.dim(n - 1);
        if (rows == 0)
            continue;
        FpMatrix m(c.p(), rows, dims[n]);
        FpMatrix mc = c.diff(n), md = d.diff(n);
        for (int i = 0; i < mc.rows(); ++i)
            for (int j = 0; j < mc.cols(); ++j)
                m.set(i, j, mc.at(i, j));
        for (int i = 0; i < md.rows(); ++i)
            for (int j = 0; j < md.cols(); ++j)
                m.set(c.dim(n - 1) + i, c.dim(n) + j, md.at(i, j));
        diffs.emplace(n, std::move(m));
    }
    return GradedComplex(c.p(), std::move(dims), std::move(diffs));
}

ComplexMap sum_inclusion(const GradedComplex& c, const GradedComplex& d, int which)
{
    GradedComplex s = direct_sum(c, d);
    const GradedComplex& part = which == 0 ? c : d;
    std::map<int, FpMatrix> comps;
    for (const auto& [n, dimn] : part.dims()) {
        FpMatrix m(c.p(), s.dim(n), dimn);
        int off = which == 0 ? 0 : c.dim(n);
        for (int i = 0; i < dimn; ++i)
            m.set(off + i, i, 1);
        comps.emplace(n, std::move(m));
    }
    return ComplexMap(part, std::move(s), std::move(comps));
}

ComplexMap sum_projection(const GradedComplex& c, const GradedComplex& d, int which)
{
    GradedComplex s = direct_sum(c, d);
    const GradedComplex& part = which == 0 ? c : d;
    std::map<int, FpMatrix> comps;
    for (const auto& [n, dimn] : part.dims()) {
        FpMatrix m(c.p(), dimn, s.dim(n));
        int off = which == 0 ? 0 : c.dim(n);
        for (int i = 0; i < dimn; ++i)
            m.set(i, off + i, 1);
        comps.emplace(n, std::move(m));
    }
    return ComplexMap(std::move(s), part, std::move(comps));
}

int connectivity(const GradedComplex& w)
{
    for (const auto& [n, d] : w.dims())
        if (homology(w, n).dim > 0)
            return n;
    throw std::domain_error("connectivity: undefined for a complex with zero homology");
}

namespace {

struct HomBlock {
    int n;       // source degree in w; the block is Hom(w_n, y_{n+k})
    int offset;  // flattened offset; entry (i, j) at offset + i * w.dim(n) + j
};

std::vector<HomBlock> hom_blocks(const GradedComplex& w, const GradedComplex& y, int k)
{
    std::vector<HomBlock> blocks;
    int off = 0;
    for (const auto& [n, dw] : w.dims()) {
        int dy = y.dim(n + k);
        if (dy == 0)
            continue;
        blocks.push_back({n, off});
        off += dw * dy;
    }
    return blocks;
}

int hom_dim(const std::vector<HomBlock>& blocks, const GradedComplex& w, const GradedComplex& y,
            int k)
{
    if (blocks.empty())
        return 0;
    const auto& last = blocks.back();
    return last.offset + w.dim(last.n) * y.dim(last.n + k);
}

int hom_block_offset(const std::vector<HomBlock>& blocks, int n)
{
    for (const auto& b : blocks)
        if (b.n == n)
            return b.offset;
    return -1;
}

}  // namespace

GradedComplex hom_complex(const GradedComplex& w, const GradedComplex& y)
{
    if (w.p() != y.p())
        throw std::invalid_argument("hom_complex: modulus mismatch");
    const std::uint32_t p = w.p();
    if (w.empty() || y.empty())
        return GradedComplex(p);

    int k_lo = y.min_degree() - w.max_degree();
    int k_hi = y.max_degree() - w.min_degree();

    std::map<int, int> dims;
    for (int k = k_lo; k <= k_hi; ++k) {
        int d = hom_dim(hom_blocks(w, y, k), w, y, k);
        if (d > 0)
            dims[k] = d;
    }

    std::map<int, FpMatrix> diffs;
    for (const auto& [k, dk] : dims) {
        auto src_blocks = hom_blocks(w, y, k);
        auto tgt_blocks = hom_blocks(w, y, k - 1);
        int rows = hom_dim(tgt_blocks, w, y, k - 1);
        if (rows == 0)
            continue;
        FpMatrix m(p, rows, dk);
        const bool k_odd = ((k % 2) + 2) % 2 == 1;
        for (const auto& blk : src_blocks) {
            const int n = blk.n;
            const int dw = w.dim(n);
            const int dy = y.dim(n + k);
            // post-compose with d_y : contributes to the degree-n block
            int toff = hom_block_offset(tgt_blocks, n);
            if (toff >= 0) {
                FpMatrix dyn = y.diff(n + k);
                for (int i2 = 0; i2 < dyn.rows(); ++i2)
                    for (int i = 0; i < dy; ++i) {
                        std::uint32_t v = dyn.at(i2, i);
                        if (!v)
                            continue;
                        for (int j = 0; j < dw; ++j)
                            m.set(toff + i2 * dw + j, blk.offset + i * dw + j, v);
                    }
            }
            // pre-compose with d_w, sign -(-1)^k : contributes to block n+1
            toff = hom_block_offset(tgt_blocks, n + 1);
            if (toff >= 0) {
                FpMatrix dwn = w.diff(n + 1);  // w_{n+1} -> w_n
                const int dw2 = w.dim(n + 1);
                for (int j = 0; j < dwn.rows(); ++j)
                    for (int j2 = 0; j2 < dw2; ++j2) {
                        std::uint32_t v = dwn.at(j, j2);
                        if (!v)
                            continue;
                        std::uint32_t signed_v = k_odd ? v : (p - v) % p;
                        if (!signed_v)
                            continue;
                        for (int i = 0; i < dy; ++i)
                            m.set(toff + i * dw2 + j2, blk.offset + i * dw + j, signed_v);
                    }
            }
        }
        diffs.emplace(k, std::move(m));
    }
    return GradedComplex(p, std::move(dims), std::move(diffs));
}

std::map<int, int> homotopy_classes(const GradedComplex& w, const GradedComplex& y)
{
    return homology_dims(hom_complex(w, y));
}

bool is_null_homotopic(const ComplexMap& f)
{
    const GradedComplex& w = f.source();
    const GradedComplex& y = f.target();
    GradedComplex h = hom_complex(w, y);
    if (h.dim(0) == 0)
        return true;  // no nonzero degree-0 maps at all
    auto blocks = hom_blocks(w, y, 0);
    FpMatrix v(w.p(), h.dim(0), 1);
    for (const auto& blk : blocks) {
        FpMatrix fn = f.comp(blk.n);
        for (int i = 0; i < fn.rows(); ++i)
            for (int j = 0; j < fn.cols(); ++j)
                v.set(blk.offset + i * fn.cols() + j, 0, fn.at(i, j));
    }
    if (v.is_zero())
        return true;
    return contains(image(h.diff(1)), v);
}

bool is_ghost(const ComplexMap& f)
{
    for (const auto& [n, d] : f.source().dims())
        if (!induced_on_homology(f, n).is_zero())
            return false;
    return true;
}

}  // namespace sseq
