#ifndef CYCLOFREY_FINITE_HPP
#define CYCLOFREY_FINITE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "cyclofrey/poly.hpp"

namespace cyclofrey {

// Polynomials over F_q, constant term first, coefficients reduced mod q.
using FqPoly = std::vector<uint64_t>;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t q);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t q);
uint64_t invmod_u64(uint64_t a, uint64_t q);

namespace fqpoly {
void trim(FqPoly &f);
long deg(const FqPoly &f);
FqPoly add(const FqPoly &a, const FqPoly &b, uint64_t q);
FqPoly sub(const FqPoly &a, const FqPoly &b, uint64_t q);
FqPoly mul(const FqPoly &a, const FqPoly &b, uint64_t q);
FqPoly scale(const FqPoly &a, uint64_t c, uint64_t q);
FqPoly rem(const FqPoly &a, const FqPoly &b, uint64_t q);
FqPoly gcd(FqPoly a, FqPoly b, uint64_t q);
FqPoly monic(const FqPoly &a, uint64_t q);
FqPoly powmod(const FqPoly &a, const Z &e, const FqPoly &mod, uint64_t q);
FqPoly deriv(const FqPoly &f, uint64_t q);
}  // namespace fqpoly

// Reduce an integer polynomial mod q.
FqPoly reduce_poly_mod(const ZPoly &f, uint64_t q);

// Factor a squarefree monic polynomial over F_q into monic irreducibles,
// sorted lexicographically by coefficient list (constant term first).
// Distinct-degree then Cantor-Zassenhaus splitting; deterministic seed.
std::vector<FqPoly> factor_squarefree(const FqPoly &f, uint64_t q);

// The field F_{q^f} = F_q[x]/(g) for a monic irreducible g of degree f.
// Elements are coefficient vectors of length f (fixed size, may have
// leading zeros).
class ResidueField {
  public:
    ResidueField(uint64_t q, FqPoly modulus);

    uint64_t q() const { return q_; }
    int f() const { return f_; }
    const FqPoly &modulus() const { return modulus_; }
    Z order() const;  // q^f

    using Elt = std::vector<uint64_t>;

    Elt zero() const { return Elt(f_, 0); }
    Elt one() const;
    Elt from_scalar(const Z &c) const;
    Elt from_poly(const FqPoly &g) const;

    bool is_zero(const Elt &a) const;
    bool eq(const Elt &a, const Elt &b) const;
    Elt add(const Elt &a, const Elt &b) const;
    Elt sub(const Elt &a, const Elt &b) const;
    Elt neg(const Elt &a) const;
    Elt mul(const Elt &a, const Elt &b) const;
    Elt mul_scalar(const Elt &a, uint64_t c) const;
    Elt inv(const Elt &a) const;
    Elt pow(const Elt &a, const Z &e) const;

    // Nonzero square test.  For odd q this is the Euler criterion on the
    // full field F_{q^f}; in characteristic 2 every element is a square.
    bool is_square(const Elt &a) const;

    // a^((q^f-1)/(q-1)); lands in the prime field, returned as a scalar.
    uint64_t norm_to_prime_field(const Elt &a) const;

    // Membership in the prime field F_q.
    bool in_prime_field(const Elt &a) const;

    // Enumerate all q^f field elements (ascending coefficient vectors).
    std::vector<Elt> all_elements() const;

  private:
    uint64_t q_;
    int f_;
    FqPoly modulus_;
};

}  // namespace cyclofrey

#endif
