#ifndef CYCLOFREY_IRRED_HPP
#define CYCLOFREY_IRRED_HPP

#include <vector>

#include "cyclofrey/field.hpp"

namespace cyclofrey {

// One (D, T') enumeration entry of the irreducibility bound sweep.  The cyclic
// Galois group G = Gal(K/Q) of order d is written additively as Z/d via a
// fixed generator; subgroup_order identifies D, coset_reps lists T, and
// subset_mask selects T' as a bitmask over T.
struct BoundReport {
    long p = 0;
    long subgroup_order = 0;
    std::vector<long> coset_reps;            // exponents of the generator
    unsigned subset_mask = 0;                // non-empty proper subset of T
    std::vector<Z> per_generator;            // B_{T',D}(u_i), absolute values
    Z gcd_value;
};

// All subgroups D of G, all non-empty proper subsets T' of the coset
// representatives, evaluated on the system of d totally positive units
// theta_j + 2 (j = 1..d).
std::vector<BoundReport> bound_products(long p);

// B_{T',D}(u) = |Norm(prod_{tau in T', sigma in D} u^{sigma tau} - 1)|.
Z bound_value(const FieldPtr &K, const FieldElement &u,
              const std::vector<long> &exponents);

// Set of attained gcd values across all reports.
std::vector<Z> attained_values(const std::vector<BoundReport> &reports);

// Residual follow-up: for every non-empty proper subset S of the primes
// above ell, some totally positive generator u has
// prod_{lambda in S} Norm(u mod lambda) != 1 in F_ell.
bool residual_pair_check(long p, long ell);

}  // namespace cyclofrey

#endif
