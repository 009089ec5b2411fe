#include "cyclofrey/irred.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclofrey/units.hpp"

namespace cyclofrey {

namespace {

// class values of g^0, g^1, ..., g^{d-1} for a generator g of the cyclic
// group Gal(K/Q), chosen as the smallest generating class
std::vector<long> power_table(const FieldPtr &K) {
    long d = K->degree();
    for (long g : K->class_reps()) {
        std::vector<long> pw{1};
        long cur = 1;
        for (long i = 1; i < d; i++) {
            cur = K->fold(cur * g);
            pw.push_back(cur);
        }
        std::vector<long> sorted = pw;
        std::sort(sorted.begin(), sorted.end());
        if (sorted == K->class_reps()) return pw;
    }
    throw std::logic_error("no generator found (group must be cyclic)");
}

}  // namespace

Z bound_value(const FieldPtr &K, const FieldElement &u,
              const std::vector<long> &exponents) {
    auto pw = power_table(K);
    long d = K->degree();
    FieldElement prod = K->from_int(1);
    for (long e : exponents)
        prod = prod * galois_apply(K, pw[((e % d) + d) % d], u);
    Q N = norm(prod - K->from_int(1));
    if (N.get_den() != 1)
        throw std::logic_error("bound value is not an integer");
    Z v = N.get_num();
    return v < 0 ? Z(-v) : v;
}

std::vector<BoundReport> bound_products(long p) {
    if (p != 5 && p != 7 && p != 11 && p != 13)
        throw std::invalid_argument("p must be one of 5, 7, 11, 13");
    auto K = RealCyclotomicField::build(p, false);
    long d = K->degree();
    // system of d totally positive units: theta_j + 2 = theta_r^2 is the
    // square of a unit, and the family is the Galois orbit of one of them
    std::vector<FieldElement> tp;
    for (long j = 1; j <= d; j++) tp.push_back(theta(K, j) + K->from_int(2));

    std::vector<BoundReport> reports;
    for (long m = 1; m <= d; m++) {
        if (d % m) continue;  // subgroup D of order m
        long t = d / m;       // number of cosets
        if (t < 2) continue;  // no non-empty proper subsets
        std::vector<long> T(t);
        for (long i = 0; i < t; i++) T[i] = i;
        for (unsigned mask = 1; mask + 1 < (1u << t); mask++) {
            BoundReport rep;
            rep.p = p;
            rep.subgroup_order = m;
            rep.coset_reps = T;
            rep.subset_mask = mask;
            // exponents of g for {sigma tau : sigma in D, tau in T'}
            std::vector<long> exps;
            for (long i = 0; i < t; i++) {
                if (!(mask & (1u << i))) continue;
                for (long s = 0; s < m; s++) exps.push_back(i + s * t);
            }
            Z g(0);
            for (const auto &u : tp) {
                Z v = bound_value(K, u, exps);
                rep.per_generator.push_back(v);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            }
            rep.gcd_value = g;
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

std::vector<Z> attained_values(const std::vector<BoundReport> &reports) {
    std::vector<Z> vals;
    for (const auto &r : reports) vals.push_back(r.gcd_value);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

bool residual_pair_check(long p, long ell) {
    auto K = RealCyclotomicField::build(p, false);
    if (ell == p) throw std::invalid_argument("ell ramifies in K");
    auto lat = build_unit_lattice(K);
    auto tp = totally_positive_basis(lat);
    auto Sl = split_prime(K, ell);
    size_t r = Sl.size();
    if (r == 1) return true;  // vacuous: no non-empty proper subsets

    // residue norms of each generator at each prime above ell
    std::vector<std::vector<uint64_t>> table(tp.size(),
                                             std::vector<uint64_t>(r));
    for (size_t i = 0; i < tp.size(); i++)
        for (size_t j = 0; j < r; j++)
            table[i][j] = residue_norm_to_prime_field(reduce(tp[i], Sl[j]), Sl[j]);

    uint64_t uell = static_cast<uint64_t>(ell);
    for (unsigned mask = 1; mask + 1 < (1u << r); mask++) {
        bool witness = false;
        for (const auto &row : table) {
            uint64_t prod = 1;
            for (size_t j = 0; j < r; j++)
                if (mask & (1u << j)) prod = prod * row[j] % uell;
            if (prod != 1) {
                witness = true;
                break;
            }
        }
        if (!witness) return false;
    }
    return true;
}

}  // namespace cyclofrey
