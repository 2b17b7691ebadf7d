#ifndef SSEQ_FP_HPP
#define SSEQ_FP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sseq {

bool is_prime(std::uint32_t n);

/* Dense matrix over F_p, row-major. Instances are tiny (ambient dimensions
** of a few dozen), so plain Gaussian elimination with deterministic pivoting
** (first nonzero entry in scan order) is the algorithm of record. */
class FpMatrix {
public:
    FpMatrix(std::uint32_t p, int rows, int cols);

    static FpMatrix identity(std::uint32_t p, int n);
    static FpMatrix from_rows(std::uint32_t p,
                              const std::vector<std::vector<std::uint32_t>>& rows);

    std::uint32_t p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint32_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, std::uint32_t v);

    FpMatrix transpose() const;
    FpMatrix operator*(const FpMatrix& rhs) const;
    FpMatrix operator+(const FpMatrix& rhs) const;
    FpMatrix operator-(const FpMatrix& rhs) const;
    FpMatrix scaled(std::uint32_t c) const;
    bool operator==(const FpMatrix& rhs) const;

    bool is_zero() const;
    FpMatrix column(int c) const;
    std::string to_string() const;

private:
    std::uint32_t p_;
    int rows_, cols_;
    std::vector<std::uint32_t> a_;
};

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);

/* A subspace of F_p^ambient, stored as a matrix whose columns form a basis. */
struct Subspace {
    std::uint32_t p;
    int ambient;
    FpMatrix basis;  // ambient x dim, columns linearly independent

    Subspace(std::uint32_t p_, int ambient_) : p(p_), ambient(ambient_), basis(p_, ambient_, 0) {}
    Subspace(std::uint32_t p_, int ambient_, FpMatrix basis_)
        : p(p_), ambient(ambient_), basis(std::move(basis_))
    {
        if (basis.rows() != ambient || basis.p() != p)
            throw std::invalid_argument("Subspace: basis shape does not match the ambient space");
    }
    int dim() const { return basis.cols(); }

    static Subspace full(std::uint32_t p, int ambient);
    static Subspace zero(std::uint32_t p, int ambient) { return Subspace(p, ambient); }
};

int rank(const FpMatrix& m);
Subspace kernel(const FpMatrix& m);
Subspace image(const FpMatrix& m);

/* One solution X of M X = rhs, or nullopt if inconsistent. */
std::optional<FpMatrix> solve(const FpMatrix& m, const FpMatrix& rhs);
FpMatrix inverse(const FpMatrix& m);

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);
bool contains(const Subspace& u, const FpMatrix& v);
bool is_contained(const Subspace& u, const Subspace& v);

/* Matrix Q with kernel exactly V; rows = ambient - dim V. */
FpMatrix quotient_map(const Subspace& v);

/* {x : Mx in V}, V a subspace of the target. */
Subspace preimage(const FpMatrix& m, const Subspace& v);

/* Presentation of A/(A n B): dimension, a lift sending quotient coordinates
** to ambient representatives, and a projection matrix with proj*lift = id
** and proj(A n B) = 0.  The projection is only meaningful on vectors of A. */
struct Subquotient {
    int ambient = 0;
    int dim = 0;
    FpMatrix lift;  // ambient x dim
    FpMatrix proj;  // dim x ambient

    Subquotient(std::uint32_t p, int ambient_)
        : ambient(ambient_), lift(p, ambient_, 0), proj(p, 0, ambient_) {}
};

Subquotient subquotient(const Subspace& a, const Subspace& b);

}  // namespace sseq

#endif
