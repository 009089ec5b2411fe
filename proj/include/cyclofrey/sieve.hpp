#ifndef CYCLOFREY_SIEVE_HPP
#define CYCLOFREY_SIEVE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclofrey/field.hpp"

namespace cyclofrey {

// Hecke eigenvalue data for one eigenform.  Eigenvalues live in the order
// Z[theta_f] = Z[x]/(hecke_poly) and are keyed by (rational prime q,
// canonical prime index) with the split_prime ordering of the base field.
struct EigenformData {
    std::string label;
    long p = 0;
    bool kprime = false;  // base field K' instead of K
    std::string level;
    ZPoly hecke_poly;  // monic, constant term first
    std::map<std::pair<long, long>, std::vector<Z>> eigenvalues;

    long deg() const { return zdeg(hecke_poly); }
    FieldPtr base_field() const;
};

// Ideal of Z[theta_f] as an HNF Z-basis (rows); empty basis = zero ideal.
struct HeckeIdeal {
    long deg = 1;
    std::vector<std::vector<Z>> basis;
    bool is_zero() const { return basis.empty(); }
};

HeckeIdeal ideal_from_elements(const ZPoly &hecke,
                               const std::vector<std::vector<Z>> &elems);
HeckeIdeal ideal_mul(const ZPoly &hecke, const HeckeIdeal &a,
                     const HeckeIdeal &b);
HeckeIdeal ideal_scale(const HeckeIdeal &a, const Z &c);
HeckeIdeal ideal_add(const HeckeIdeal &a, const HeckeIdeal &b);
Z ideal_norm_value(const HeckeIdeal &a);  // lattice index, 0 for zero ideal

// Exact point count (including infinity) of
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
// over the residue field; exhaustive in x with a square table (odd q) or
// Artin-Schreier solvability (q = 2).
Z count_points(const ResidueField &rf, const Z &a1, const Z &a2, const Z &a3,
               const Z &a4, const Z &a6);

// One residue pair (eta, mu) of the A_q grid.
struct ResiduePair {
    long eta = 0, mu = 0;
};

enum class ReductionType { good, split_mult, nonsplit_mult };

struct ReductionResult {
    ReductionType type = ReductionType::good;
    long trace = 0;  // a_q(E) when good
};

// Precomputed data for the Frey curve family E_(eta,mu) of a sieve run:
// the working field (K, or K' for the twisted p = 1 mod 4 dividing case)
// and the model coefficients as quadratic forms in (eta, mu).
class SieveSetup {
  public:
    SieveSetup(long p, bool dividing, long j, long k, bool twisted);

    const FieldPtr &work() const { return work_; }
    long p() const { return p_; }
    bool dividing() const { return dividing_; }
    bool twisted() const { return twisted_; }

    // s1, s2 with Y^2 = X^3 + s1 X^2 + s2 X the (eta,mu) model over work().
    FieldElement s1(long eta, long mu) const;
    FieldElement s2(long eta, long mu) const;

  private:
    long p_ = 0;
    bool dividing_ = false, twisted_ = false;
    FieldPtr work_;
    // u = cu2 eta^2 + cu0 mu^2, v = cv2 eta^2 + cv0 mu^2 over the parent K
    FieldElement cu2_, cu0_, cv2_, cv0_;
    FieldPtr K_;
};

// Classification of E_(eta,mu) at an unramified prime q-bar of the working
// field, q coprime to 2p.  Additive reduction is impossible on the grid and
// raises logic_error if ever observed.
ReductionResult frey_reduction(const SieveSetup &setup, const ResiduePair &pr,
                               const PrimeAboveQ &P);

// B_q(f, eta, mu): the O_f-ideal generated by the values B_qbar over all
// primes qbar | q.
HeckeIdeal b_value(const EigenformData &f, const SieveSetup &setup, long q,
                   const std::vector<PrimeAboveQ> &primes,
                   const ResiduePair &pr);

// B_q(f) = q * prod over the A_q grid; (eta,mu) and (-eta,-mu) give the
// same curve, so each class is computed once and squared.
HeckeIdeal b_q(const EigenformData &f, const SieveSetup &setup, long q,
               int threads = 1);

struct SieveReport {
    std::string label;
    std::vector<long> S;
    std::vector<Z> bq_norms;  // |Norm(B_q(f))| per q in S
    Z b_s_value;              // Norm of the ideal sum; 0 for the zero ideal
    std::vector<std::pair<Z, long>> b_s_factors;  // prime -> exponent
    Z unfactored = 1;         // cofactor left by trial division
    std::vector<Z> surviving; // primes l >= 5, l != p dividing B_S
    bool no_bound = false;    // B_S = 0: no exponent bound from S
};

SieveReport b_s(const EigenformData &f, const SieveSetup &setup,
                const std::vector<long> &S, int threads = 1);

// a_qbar of an integral Weierstrass model over Q, regarded over the base
// field, at every prime above each q in qs (q must avoid bad reduction).
EigenformData eigenvalues_from_curve(const std::string &label, long p,
                                     bool kprime, const std::string &level,
                                     const std::vector<Z> &a_inv,
                                     const std::vector<long> &qs,
                                     const std::vector<long> &bad_primes);

// Strict schema ingestion; validates Hasse bounds (exact Sturm-sequence
// check over the totally real Hecke field) and per-q completeness.
EigenformData ingest_eigenform(const std::string &path);
EigenformData ingest_eigenform_text(const std::string &json_text);

// Distinct retriable failure for database fetches.
struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fetch a label from an HTTP endpoint and store the response body at path.
void fetch_eigenform(const std::string &label, const std::string &endpoint,
                     const std::string &out_path);

// P_q ~ (1 - c^r / q^{d/2})^{q^2 - 1}.
double heuristic_success(long q, long d, long r, double c);

}  // namespace cyclofrey

#endif
