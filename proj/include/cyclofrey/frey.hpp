#ifndef CYCLOFREY_FREY_HPP
#define CYCLOFREY_FREY_HPP

#include <vector>

#include "cyclofrey/field.hpp"

namespace cyclofrey {

// Gaussian descent data: x^l + y^m i = (a+bi)^p with z = a^2 + b^2.
struct DescentInstance {
    long p = 0;
    Z a, b;
    long ell = 0;         // exponent l (>= 5, prime); 0 when irrelevant
    bool p_divides_x = false;
    long n = 0;           // ord_2(x) = ord_2(a)/l
    long kappa = 0;       // ord_p(x) in the dividing case
};

// Synthetic instance obeying the descent shape: a = 2^{l n} t (or
// 2^{l n} p^{kappa l - 1} t in the dividing case) with t odd and coprime
// to b and p, b odd.
DescentInstance synthetic_instance(long p, long ell, long n, long kappa,
                                   bool p_divides_x, const Z &t, const Z &b);

struct FreyTriple {
    FieldElement u, v, w;  // over K; the twisted triple is tau-symmetric
    long j_idx = 0, k_idx = 0;
    bool twisted = false;
};

struct CurveInvariants {
    FieldElement c4, c6, delta;
    bool singular = false;   // delta = 0: no j-invariant
    FieldElement j_inv;      // valid only when !singular
};

// Valuation report for check_conductor_shape.
struct ShapeReport {
    std::vector<long> ord_at_2;  // ord of Delta_min at each prime above 2
    long expected_at_2 = 0;      // 4 l n - 4
    long ord_at_p = 0;           // at the ramified prime (of K or K')
    long expected_at_p = 0;
    bool congruences_ok = false;  // multiplicative-reduction criterion at 2
    bool ok = false;
};

// beta_j = (theta_j + 2) a^2 + (theta_j - 2) b^2.
FieldElement beta(const FieldPtr &field, long j, const Z &a, const Z &b);

// a * prod_j beta_j = ((a+bi)^p + (a-bi)^p) / 2, verified with exact
// Gaussian-integer exponentiation.
bool check_factor_identity(long p, const Z &a, const Z &b);

// (ord_p(beta_j) for j = 1..(p-1)/2, ord_p(a)).
struct BetaValuations {
    std::vector<long> ord_beta;
    long ord_a = 0;
};
BetaValuations beta_valuations(const DescentInstance &inst);

// u, v, w of the Frey model Y^2 = X(X - u)(X + v); twisted requires
// p = 1 mod 4 and tau(theta_j) = theta_k.
FreyTriple frey_triple(const DescentInstance &inst, long j, long k,
                       bool twisted);

// c4 = 16(u^2 - vw), c6 = -32(u-v)(v-w)(w-u), Delta = 16 u^2 v^2 w^2.
CurveInvariants curve_invariants(const FreyTriple &t);

// Verify the minimal-discriminant valuation formulas on an instance.
ShapeReport check_conductor_shape(const DescentInstance &inst,
                                  const FreyTriple &t);

// theta_j^2 theta_k^2 / (theta_j - theta_k)^2 at the prime above 2 of K'
// (p = 13) lies outside F_2, for every admissible pair.
bool j_residue_check_p13();

}  // namespace cyclofrey

#endif
