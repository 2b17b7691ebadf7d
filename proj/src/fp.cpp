#include "sseq/fp.hpp"

#include <sstream>
#include <stdexcept>

namespace sseq {

bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p)
{
    if (a % p == 0)
        throw std::invalid_argument("fp_inverse: not invertible");
    // Fermat: a^(p-2) mod p
    std::uint64_t base = a % p, acc = 1;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1)
            acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

FpMatrix::FpMatrix(std::uint32_t p, int rows, int cols) : p_(p), rows_(rows), cols_(cols)
{
    if (!is_prime(p))
        throw std::invalid_argument("FpMatrix: modulus " + std::to_string(p) + " is not prime");
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("FpMatrix: negative shape");
    a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(std::uint32_t p, int n)
{
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::uint32_t>>& rows)
{
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    FpMatrix m(p, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
        for (int j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

void FpMatrix::set(int r, int c, std::uint32_t v)
{
    a_[static_cast<std::size_t>(r) * cols_ + c] = v % p_;
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.set(j, i, at(i, j));
    return t;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const
{
    if (p_ != rhs.p_ || cols_ != rhs.rows_)
        throw std::invalid_argument("FpMatrix::operator*: shape/modulus mismatch");
    FpMatrix out(p_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            std::uint64_t v = at(i, k);
            if (!v)
                continue;
            for (int j = 0; j < rhs.cols_; ++j)
                out.set(i, j, static_cast<std::uint32_t>((out.at(i, j) + v * rhs.at(k, j)) % p_));
        }
    return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const
{
    if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("FpMatrix::operator+: shape/modulus mismatch");
    FpMatrix out(p_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = (a_[i] + rhs.a_[i]) % p_;
    return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const
{
    if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("FpMatrix::operator-: shape/modulus mismatch");
    FpMatrix out(p_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = (a_[i] + p_ - rhs.a_[i]) % p_;
    return out;
}

FpMatrix FpMatrix::scaled(std::uint32_t c) const
{
    FpMatrix out(p_, rows_, cols_);
    std::uint64_t cc = c % p_;
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = static_cast<std::uint32_t>(a_[i] * cc % p_);
    return out;
}

bool FpMatrix::operator==(const FpMatrix& rhs) const
{
    return p_ == rhs.p_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

bool FpMatrix::is_zero() const
{
    for (auto v : a_)
        if (v)
            return false;
    return true;
}

FpMatrix FpMatrix::column(int c) const
{
    FpMatrix out(p_, rows_, 1);
    for (int i = 0; i < rows_; ++i)
        out.set(i, 0, at(i, c));
    return out;
}

std::string FpMatrix::to_string() const
{
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " mod " << p_ << "\n";
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            os << at(i, j) << (j + 1 == cols_ ? "" : " ");
        os << "\n";
    }
    return os.str();
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.rows() != b.rows())
        throw std::invalid_argument("hstack: shape/modulus mismatch");
    FpMatrix out(a.p(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
            out.set(i, j, a.at(i, j));
        for (int j = 0; j < b.cols(); ++j)
            out.set(i, a.cols() + j, b.at(i, j));
    }
    return out;
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.cols() != b.cols())
        throw std::invalid_argument("vstack: shape/modulus mismatch");
    FpMatrix out(a.p(), a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i)
            out.set(i, j, a.at(i, j));
        for (int i = 0; i < b.rows(); ++i)
            out.set(a.rows() + i, j, b.at(i, j));
    }
    return out;
}

namespace {

struct Echelon {
    FpMatrix rref;
    std::vector<int> pivot_cols;      // increasing
    std::vector<int> pivot_row_of;    // per pivot col index into rref rows
};

/* Reduced row echelon form; pivot = first row with a nonzero entry in the
** current column, scanning top to bottom, so bases are reproducible. */
Echelon rref(FpMatrix m)
{
    const std::uint32_t p = m.p();
    int r = 0;
    std::vector<int> pivots;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c)) {
                pr = i;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != r)
            for (int j = 0; j < m.cols(); ++j) {
                auto t = m.at(r, j);
                m.set(r, j, m.at(pr, j));
                m.set(pr, j, t);
            }
        std::uint32_t inv = fp_inverse(m.at(r, c), p);
        for (int j = 0; j < m.cols(); ++j)
            m.set(r, j, static_cast<std::uint32_t>(static_cast<std::uint64_t>(m.at(r, j)) * inv % p));
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r)
                continue;
            std::uint64_t f = m.at(i, c);
            if (!f)
                continue;
            for (int j = 0; j < m.cols(); ++j)
                m.set(i, j, static_cast<std::uint32_t>((m.at(i, j) + (p - 1) * f % p * m.at(r, j)) % p));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<int> rows(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        rows[i] = static_cast<int>(i);
    return Echelon{std::move(m), std::move(pivots), std::move(rows)};
}

}  // namespace

int rank(const FpMatrix& m)
{
    return static_cast<int>(rref(m).pivot_cols.size());
}

Subspace kernel(const FpMatrix& m)
{
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivot_cols)
        is_pivot[c] = true;
    int nul = m.cols() - static_cast<int>(e.pivot_cols.size());
    FpMatrix basis(m.p(), m.cols(), nul);
    int out = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c])
            continue;
        basis.set(c, out, 1);
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
            std::uint32_t v = e.rref.at(static_cast<int>(i), c);
            if (v)
                basis.set(e.pivot_cols[i], out, m.p() - v);
        }
        ++out;
    }
    return Subspace(m.p(), m.cols(), std::move(basis));
}

Subspace image(const FpMatrix& m)
{
    Echelon e = rref(m);
    FpMatrix basis(m.p(), m.rows(), static_cast<int>(e.pivot_cols.size()));
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
        for (int r = 0; r < m.rows(); ++r)
            basis.set(r, static_cast<int>(i), m.at(r, e.pivot_cols[i]));
    return Subspace(m.p(), m.rows(), std::move(basis));
}

std::optional<FpMatrix> solve(const FpMatrix& m, const FpMatrix& rhs)
{
    if (m.p() != rhs.p() || m.rows() != rhs.rows())
        throw std::invalid_argument("solve: shape/modulus mismatch");
    Echelon e = rref(hstack(m, rhs));
    // Any pivot in the rhs block means the system is inconsistent.
    for (int c : e.pivot_cols)
        if (c >= m.cols())
            return std::nullopt;
    FpMatrix x(m.p(), m.cols(), rhs.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
        for (int j = 0; j < rhs.cols(); ++j)
            x.set(e.pivot_cols[i], j, e.rref.at(static_cast<int>(i), m.cols() + j));
    return x;
}

FpMatrix inverse(const FpMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    auto x = solve(m, FpMatrix::identity(m.p(), m.rows()));
    if (!x || rank(m) != m.rows())
        throw std::invalid_argument("inverse: matrix is singular");
    return *x;
}

Subspace Subspace::full(std::uint32_t p, int ambient)
{
    return Subspace(p, ambient, FpMatrix::identity(p, ambient));
}

Subspace sum(const Subspace& u, const Subspace& v)
{
    if (u.p != v.p || u.ambient != v.ambient)
        throw std::invalid_argument("sum: ambient mismatch");
    return image(hstack(u.basis, v.basis));
}

Subspace intersect(const Subspace& u, const Subspace& v)
{
    if (u.p != v.p || u.ambient != v.ambient)
        throw std::invalid_argument("intersect: ambient mismatch");
    // Kernel of [U | -V]; the U-part of each kernel vector lands in both.
    Subspace k = kernel(hstack(u.basis, v.basis.scaled(u.p - 1)));
    FpMatrix ucoef(u.p, u.dim(), k.dim());
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < k.dim(); ++j)
            ucoef.set(i, j, k.basis.at(i, j));
    return image(u.basis * ucoef);
}

bool contains(const Subspace& u, const FpMatrix& v)
{
    if (v.cols() != 1 || v.rows() != u.ambient)
        throw std::invalid_argument("contains: expected an ambient column vector");
    return solve(u.basis, v).has_value();
}

bool is_contained(const Subspace& u, const Subspace& v)
{
    if (u.ambient != v.ambient)
        throw std::invalid_argument("is_contained: ambient mismatch");
    return solve(v.basis, u.basis).has_value();
}

namespace {

/* Greedily extend `cols` (assumed independent) to a basis of the ambient
** space, first by candidate columns, then by standard vectors. */
FpMatrix complete_basis(std::uint32_t p, int ambient, const FpMatrix& start,
                        const FpMatrix& candidates)
{
    FpMatrix acc = start;
    auto try_add = [&](const FpMatrix& col) {
        FpMatrix ext = hstack(acc, col);
        if (rank(ext) == ext.cols())
            acc = std::move(ext);
    };
    for (int c = 0; c < candidates.cols() && acc.cols() < ambient; ++c)
        try_add(candidates.column(c));
    for (int i = 0; i < ambient && acc.cols() < ambient; ++i) {
        FpMatrix e(p, ambient, 1);
        e.set(i, 0, 1);
        try_add(e);
    }
    return acc;
}

}  // namespace

FpMatrix quotient_map(const Subspace& v)
{
    FpMatrix full = complete_basis(v.p, v.ambient, v.basis, FpMatrix(v.p, v.ambient, 0));
    FpMatrix inv = inverse(full);
    FpMatrix q(v.p, v.ambient - v.dim(), v.ambient);
    for (int i = v.dim(); i < v.ambient; ++i)
        for (int j = 0; j < v.ambient; ++j)
            q.set(i - v.dim(), j, inv.at(i, j));
    return q;
}

Subspace preimage(const FpMatrix& m, const Subspace& v)
{
    if (m.p() != v.p || m.rows() != v.ambient)
        throw std::invalid_argument("preimage: ambient mismatch");
    if (v.dim() == v.ambient)
        return Subspace::full(m.p(), m.cols());
    return kernel(quotient_map(v) * m);
}

Subquotient subquotient(const Subspace& a, const Subspace& b)
{
    if (a.p != b.p || a.ambient != b.ambient)
        throw std::invalid_argument("subquotient: ambient mismatch");
    const std::uint32_t p = a.p;
    Subspace c = intersect(a, b);
    // Representatives: extend a basis of A n B by columns of A.
    FpMatrix ext = complete_basis(p, a.ambient, c.basis, a.basis);
    int dim = a.dim() - c.dim();
    FpMatrix lift(p, a.ambient, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < a.ambient; ++i)
            lift.set(i, j, ext.at(i, c.dim() + j));
    // Order the full basis as [lift | A n B | completion]; the projection
    // reads off the lift coordinates, so proj*lift = id and proj(A n B) = 0.
    FpMatrix reordered(p, a.ambient, 0);
    reordered = hstack(lift, c.basis);
    reordered = complete_basis(p, a.ambient, reordered, FpMatrix(p, a.ambient, 0));
    FpMatrix inv = inverse(reordered);
    Subquotient out(p, a.ambient);
    out.dim = dim;
    out.lift = std::move(lift);
    FpMatrix proj(p, dim, a.ambient);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < a.ambient; ++j)
            proj.set(i, j, inv.at(i, j));
    out.proj = std::move(proj);
    return out;
}

}  // namespace sseq
