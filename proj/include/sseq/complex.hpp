#ifndef SSEQ_COMPLEX_HPP
#define SSEQ_COMPLEX_HPP

#include <map>
#include <vector>

#include "sseq/fp.hpp"

namespace sseq {

/* Bounded chain complex of finite-dimensional F_p vector spaces.
** d_n : C_n -> C_{n-1}, with d_{n-1} d_n = 0 checked on construction. */
class GradedComplex {
public:
    explicit GradedComplex(std::uint32_t p);
    GradedComplex(std::uint32_t p, std::map<int, int> dims, std::map<int, FpMatrix> diffs);

    static GradedComplex sphere(std::uint32_t p, int n);
    /* Two generators x (degree n) and dx (degree n-1); acyclic. */
    static GradedComplex disk(std::uint32_t p, int n);

    std::uint32_t p() const { return p_; }
    int dim(int n) const;
    FpMatrix diff(int n) const;  // dim(n-1) x dim(n), zero if unset
    const std::map<int, int>& dims() const { return dims_; }

    bool empty() const { return dims_.empty(); }
    int min_degree() const;  // throws if empty
    int max_degree() const;
    int total_dim() const;

    bool operator==(const GradedComplex& rhs) const;

private:
    std::uint32_t p_;
    std::map<int, int> dims_;        // only dims > 0
    std::map<int, FpMatrix> diffs_;  // keyed by source degree; only nonzero-shaped
    void validate() const;
};

/* Chain map f : source -> target, degreewise matrices f_n. */
class ComplexMap {
public:
    ComplexMap(GradedComplex source, GradedComplex target, std::map<int, FpMatrix> comps);

    static ComplexMap zero(GradedComplex source, GradedComplex target);
    static ComplexMap identity(GradedComplex c);

    const GradedComplex& source() const { return src_; }
    const GradedComplex& target() const { return tgt_; }
    FpMatrix comp(int n) const;  // tgt.dim(n) x src.dim(n)

    bool is_zero() const;

private:
    GradedComplex src_, tgt_;
    std::map<int, FpMatrix> f_;
    void validate() const;
};

ComplexMap compose(const ComplexMap& second, const ComplexMap& first);  // second o first
ComplexMap map_sub(const ComplexMap& a, const ComplexMap& b);           // a - b, same endpoints

/* Homology presentation in degree n: dimension, representative cycles
** (columns in C_n coordinates), and a projection valid on cycles. */
struct HomologyData {
    int dim = 0;
    FpMatrix cycles;  // C_n-dim x dim
    FpMatrix proj;    // dim x C_n-dim
    HomologyData(std::uint32_t p, int ambient) : cycles(p, ambient, 0), proj(p, 0, ambient) {}
};

HomologyData homology(const GradedComplex& c, int n);
std::map<int, int> homology_dims(const GradedComplex& c);
FpMatrix induced_on_homology(const ComplexMap& f, int n);

/* cone(f)_n = target_n (+) source_{n-1}, d(y,x) = (d y + f x, -d x). */
struct Cone {
    GradedComplex complex;
    ComplexMap from_target;       // target -> cone
    ComplexMap to_shifted_source; // cone -> shift(source, 1)
};

Cone cone(const ComplexMap& f);

GradedComplex shift(const GradedComplex& c, int k);  // shift(c,k)_n = c_{n-k}
GradedComplex tensor(const GradedComplex& c, const GradedComplex& w);
GradedComplex dual(const GradedComplex& w);
GradedComplex direct_sum(const GradedComplex& c, const GradedComplex& d);

ComplexMap shift_map(const ComplexMap& f, int k);
/* f (x) id_W between tensor(source, w) and tensor(target, w). */
ComplexMap tensor_with_identity(const ComplexMap& f, const GradedComplex& w);
ComplexMap sum_inclusion(const GradedComplex& c, const GradedComplex& d, int which);
ComplexMap sum_projection(const GradedComplex& c, const GradedComplex& d, int which);

/* Smallest degree with nonzero homology; throws on acyclic input. */
int connectivity(const GradedComplex& w);

/* Hom(w, y)_k = (+)_n Hom(w_n, y_{n+k}), (Df)_n = d f_n - (-1)^k f_{n-1} d. */
GradedComplex hom_complex(const GradedComplex& w, const GradedComplex& y);

/* Dimensions of chain maps raising degree by k, modulo chain homotopy. */
std::map<int, int> homotopy_classes(const GradedComplex& w, const GradedComplex& y);

bool is_null_homotopic(const ComplexMap& f);
bool is_ghost(const ComplexMap& f);

}  // namespace sseq

#endif
