#ifndef CYCLOFREY_FIELD_HPP
#define CYCLOFREY_FIELD_HPP

#include <memory>
#include <vector>

#include "cyclofrey/finite.hpp"
#include "cyclofrey/poly.hpp"

namespace cyclofrey {

class RealCyclotomicField;
using FieldPtr = std::shared_ptr<const RealCyclotomicField>;

// Element of a real cyclotomic field (or of the fixed subfield K'),
// written as an integer coordinate vector in the power basis of the
// field generator over a positive denominator, kept in lowest terms.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<Z> coords, Z den = Z(1));

    const FieldPtr &field() const { return field_; }
    const std::vector<Z> &coords() const { return coords_; }
    const Z &den() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    Q rational_value() const;  // throws unless is_rational()

    FieldElement operator+(const FieldElement &o) const;
    FieldElement operator-(const FieldElement &o) const;
    FieldElement operator*(const FieldElement &o) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement &o) const;

    FieldElement scaled(const Q &c) const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    // Coordinate vector as a trimmed polynomial in the generator.
    ZPoly coord_poly() const;

  private:
    FieldPtr field_;
    std::vector<Z> coords_;
    Z den_ = 1;

    void normalize();
};

// One of the embeddings of the field into the reals: the generator maps
// to the sum of 2cos(2*pi*k/n) over the stored indices k.
struct Embedding {
    std::vector<long> cos_indices;
};

// Prime ideal of O_K above an unramified rational prime q, identified by
// an irreducible factor of the minimal polynomial mod q.  The reduction
// map sends the field generator to the class of x in F_q[x]/(g).
struct PrimeAboveQ {
    long q = 0;
    int f = 0;
    int index = 0;
    FqPoly local_factor;
    std::shared_ptr<ResidueField> rf;
};

// Q(zeta_n)^+ in the power basis of theta = zeta_n + zeta_n^{-1}, or the
// index-2 subfield K' of Q(zeta_p)^+ for p = 1 mod 4 in the power basis
// of theta_1 + tau(theta_1).
class RealCyclotomicField
    : public std::enable_shared_from_this<RealCyclotomicField> {
  public:
    // Q(zeta_n)^+ for n >= 3, n != 2 mod 4.
    static FieldPtr build_full(long n);
    // Pipeline entry point: p an odd prime; subfield selects K' and
    // requires p = 1 mod 4.
    static FieldPtr build(long p, bool subfield);

    long conductor() const { return conductor_; }
    long degree() const { return degree_; }
    const ZPoly &min_poly() const { return min_poly_; }
    bool is_subfield() const { return subfield_; }
    const FieldPtr &parent() const { return parent_; }
    long involution_class() const { return involution_; }

    // Galois group (Z/n)^x / {+-1}, or its quotient for K'; class_reps()
    // lists the distinguished representatives, class_reps()[0] == 1.
    const std::vector<long> &class_reps() const { return class_reps_; }
    long fold(long a) const;                 // representative of +-a mod n
    int class_index(long a) const;           // throws if gcd(a, n) != 1
    const FieldElement &conjugate_of_generator(int idx) const {
        return conjugates_[idx];
    }
    const std::vector<Embedding> &embeddings() const { return embeddings_; }

    FieldElement element(std::vector<Z> coords, Z den = Z(1)) const;
    FieldElement from_int(const Z &c) const;
    FieldElement from_q(const Q &c) const;
    FieldElement generator() const;

    // theta' of K' as an element of the parent field.
    const FieldElement &generator_in_parent() const { return gen_in_parent_; }

  private:
    RealCyclotomicField() = default;

    long conductor_ = 0;
    long degree_ = 0;
    ZPoly min_poly_;
    bool subfield_ = false;
    long involution_ = 0;  // parent-class value of tau (subfield only)
    FieldPtr parent_;
    std::vector<long> class_reps_;
    std::vector<FieldElement> conjugates_;
    std::vector<Embedding> embeddings_;
    FieldElement gen_in_parent_;
    // K' coordinate solve: selected rows of the power matrix and the
    // rational inverse of that square submatrix.
    std::vector<size_t> conv_rows_;
    std::vector<std::vector<Q>> conv_inv_;
    std::vector<std::vector<Z>> conv_M_;  // d x d' powers of theta'

    friend FieldElement to_subfield(const FieldPtr &sub, const FieldElement &x);
};

// --- operations -----------------------------------------------------------

// theta_j = zeta^j + zeta^{-j} via the integer recurrence
// theta_0 = 2, theta_1 = theta, theta_{j+1} = theta_1 theta_j - theta_{j-1}.
FieldElement theta(const FieldPtr &field, long j);
// Same recurrence without the index-range precondition (any j >= 0).
FieldElement theta_any(const FieldPtr &field, long j);

// sigma_a; a must be invertible mod the conductor.
FieldElement galois_apply(const FieldPtr &field, long a, const FieldElement &x);

// Product over the Galois orbit.
Q norm(const FieldElement &x);

// Signs under each real embedding (order matches class_reps), by
// adaptive-precision interval evaluation starting at 64 bits.
std::vector<int> embedding_signs(const FieldElement &x);

// Factor q in O_K for q coprime to the conductor; canonical ordering by
// lexicographic coefficient list of the local factors.
std::vector<PrimeAboveQ> split_prime(const FieldPtr &field, long q);

// Reduction mod a prime above q; denominator must be prime to q.
ResidueField::Elt reduce(const FieldElement &x, const PrimeAboveQ &P);

uint64_t residue_norm_to_prime_field(const ResidueField::Elt &r,
                                     const PrimeAboveQ &P);

// ord at the unique (totally ramified) prime above the conductor prime p;
// valid for prime-conductor fields (K or K').  Works for fractions.
long val_at_p(const FieldElement &x);

// Exact q-adic valuation at an unramified prime by Hensel lifting with a
// stability certificate.  Requires integral x (denominator prime to q is
// treated as a unit).
long val_at_unramified_prime(const FieldElement &x, const PrimeAboveQ &P);

// Valuation allowing an arbitrary rational denominator.
long val_q_fractional(const FieldElement &x, const PrimeAboveQ &P);

// Rewrite a tau-invariant element of K in the power basis of K'.
FieldElement to_subfield(const FieldPtr &sub, const FieldElement &x);

// Coordinate-polynomial evaluation at a field element (Horner).
FieldElement eval_poly_at(const ZPoly &f, const FieldElement &t);

bool is_prime_long(long n);

}  // namespace cyclofrey

#endif
