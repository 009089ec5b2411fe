#ifndef CYCLOFREY_UNITS_HPP
#define CYCLOFREY_UNITS_HPP

#include <cstdint>
#include <vector>

#include "cyclofrey/field.hpp"

namespace cyclofrey {

// Cyclotomic-unit generators with their sign data and a generating set of
// the totally positive units.  tp_basis entries are exponent vectors of
// length generators.size() + 1; the final entry is the exponent of -1.
struct UnitLattice {
    FieldPtr field;
    std::vector<FieldElement> generators;
    // rows = generators, columns = embeddings, entry 1 iff negative there
    std::vector<std::vector<uint8_t>> sign_matrix;
    std::vector<std::vector<int>> tp_basis;
};

// Divisor-indexed generating set of the cyclotomic units of Q(zeta_n)^+:
// for each d | n with d > 2, d != 2 mod 4 and each a with gcd(a,d) = 1,
// 1 < a < d/2, the real unit
//   xi_{d,a} = zeta_d^{(1-a)/2} (1 - zeta_d^a) / (1 - zeta_d),
// and additionally (1-zeta_d)(1-zeta_d^{-1}) = 2 - theta_{n/d} when d is
// not a prime power.  Every candidate is checked to have norm +-1.
// Conductors n >= 100 are refused unless n is prime.
std::vector<FieldElement> cyclotomic_unit_generators(const FieldPtr &field);

UnitLattice build_unit_lattice(const FieldPtr &field);

// Products given by the GF(2) kernel lifts together with the squares of
// all generators; each result is verified totally positive.
std::vector<FieldElement> totally_positive_basis(const UnitLattice &lat);

// Evaluate an exponent vector (last entry = exponent of -1).
FieldElement apply_exponents(const UnitLattice &lat, const std::vector<int> &e);

// Numerical rank of the Dirichlet log-embedding matrix equals d - 1
// (128-bit evaluation, tolerance 1e-10, precision doubled when the
// verdict is near-singular).
bool log_embedding_full_rank(const std::vector<FieldElement> &gens);

}  // namespace cyclofrey

#endif
