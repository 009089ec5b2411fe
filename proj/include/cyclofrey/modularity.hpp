#ifndef CYCLOFREY_MODULARITY_HPP
#define CYCLOFREY_MODULARITY_HPP

#include <vector>

#include "cyclofrey/field.hpp"
#include "cyclofrey/units.hpp"

namespace cyclofrey {

// Result of the condition (c) test for one conductor.
struct ConductorReport {
    long conductor = 0;
    int s5_size = 0;
    // failing subsets of S_5, as index lists into the canonical prime order
    std::vector<std::vector<int>> failing_subsets;
    bool pass = false;
    // a pairwise-product fallback witness was needed for some subset
    // (never expected: the norm-product map is multiplicative, so if all
    // generators map to 1 the whole group does)
    bool used_products = false;
};

// First element of tp_gens whose product over S of residue norms to F_5
// differs from 1, or -1 when none exists.  S must be a non-empty proper
// subset of the primes above 5.
int condition_c_witness(const FieldPtr &field,
                        const std::vector<PrimeAboveQ> &S,
                        const std::vector<FieldElement> &tp_gens);

// strict restricts the witness search to single generators (no
// pairwise-product fallback).
ConductorReport check_conductor(long n, bool strict);

// All admissible n < max_n (n >= 3, n != 2 mod 4, 5 does not divide n),
// reports ordered by n.  max_n <= 100.
std::vector<ConductorReport> scan_conductors(long max_n, bool strict,
                                             int workers);

}  // namespace cyclofrey

#endif
