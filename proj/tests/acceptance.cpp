// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "cyclofrey/frey.hpp"
#include "cyclofrey/irred.hpp"
#include "cyclofrey/modularity.hpp"
#include "cyclofrey/sieve.hpp"

using namespace cyclofrey;

namespace {

int failures = 0;

void report(int idx, const char *what, bool ok, const std::string &detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) failures++;
}

std::string set_str(const std::vector<Z> &v) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < v.size(); i++) os << (i ? ", " : "") << v[i];
    os << "}";
    return os.str();
}

// criterion 1: conductor scan exceptions
void c1() {
    auto reps = scan_conductors(100, false, 8);
    std::vector<long> failing;
    for (const auto &r : reps)
        if (!r.pass) failing.push_back(r.conductor);
    std::ostringstream os;
    for (long n : failing) os << n << " ";
    report(1, "conductor-scan exceptions are {29, 87, 89}",
           failing == std::vector<long>{29, 87, 89}, "got " + os.str());
}

// criterion 2: attained gcd sets
void c2() {
    const std::map<long, std::vector<Z>> want = {
        {5, {1}}, {7, {1}}, {11, {1, 23}}, {13, {1, 25, 243}}};
    bool ok = true;
    std::ostringstream os;
    for (const auto &[p, exp] : want) {
        auto got = attained_values(bound_products(p));
        if (got != exp) {
            ok = false;
            os << "p=" << p << " got " << set_str(got) << " want "
               << set_str(exp) << "; ";
        }
    }
    report(2, "attained gcd-value sets per exponent", ok, os.str());
}

// criterion 3: residual checks
void c3() {
    report(3, "residual checks (11,23) and (13,5)",
           residual_pair_check(11, 23) && residual_pair_check(13, 5));
}

// criterion 4: theta-unit norms
void c4() {
    bool ok = true;
    for (long p : {5L, 7L, 11L, 13L}) {
        auto K = RealCyclotomicField::build(p, false);
        long half = (p - 1) / 2;
        Q pq(p);
        for (long j = 1; j <= half; j++) {
            auto tj = theta(K, j);
            ok = ok && abs(norm(tj)) == 1;
            ok = ok && abs(norm(tj + K->from_int(2))) == 1;
            ok = ok && abs(norm(tj - K->from_int(2))) == pq;
            for (long k = j + 1; k <= half; k++)
                ok = ok && abs(norm(tj - theta(K, k))) == pq;
        }
    }
    report(4, "theta, theta+2, theta-2, theta_j-theta_k norms", ok);
}

// criterion 5: Frey conductor shape on >= 50 instances per (p, case)
void c5() {
    std::mt19937_64 rng(401);
    bool ok = true;
    std::ostringstream os;
    for (long p : {5L, 7L, 11L, 13L}) {
        for (bool divx : {false, true}) {
            int done = 0, guard = 0;
            while (done < 50 && guard++ < 500) {
                long ell = (rng() % 2) ? 7 : 5;
                long n = 1 + static_cast<long>(rng() % 2);
                long kappa = divx ? 1 + static_cast<long>(rng() % 2) : 0;
                Z t(2 * static_cast<long>(rng() % 50) + 1);
                Z b(2 * static_cast<long>(rng() % 50) + 1);
                if (t % p == 0 || b % p == 0) continue;
                Z g;
                mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t());
                if (g != 1) continue;
                auto inst = synthetic_instance(p, ell, n, kappa, divx, t, b);
                long k = 2 + static_cast<long>(rng() % ((p - 1) / 2 - 1));
                auto r = check_conductor_shape(inst, frey_triple(inst, 1, k, false));
                if (!r.ok || r.expected_at_2 != 4 * ell * n - 4) {
                    ok = false;
                    os << "p=" << p << (divx ? " div" : " nondiv") << " t=" << t
                       << " b=" << b << "; ";
                }
                done++;
            }
            if (done < 50) ok = false;
        }
    }
    report(5, "minimal-discriminant valuations on synthetic instances", ok,
           os.str());
}

// criterion 6: j-invariant residue at 2 outside F_2
void c6() { report(6, "j-residue at 2 lies outside F_2", j_residue_check_p13()); }

// criterion 7: f9 sieve value
void c7() {
    auto f = ingest_eigenform("data/f9.json");
    SieveSetup setup(13, true, 1, 5, true);
    auto rep = b_s(f, setup, {3, 5, 31, 47}, 8);
    std::ostringstream os;
    os << "B_S = " << rep.b_s_value;
    report(7, "f9 sieve gives B_S = 49", rep.b_s_value == 49, os.str());
}

// criterion 8: 7-torsion divisibility for f9 up to norm 10^4
void c8() {
    auto Kp = RealCyclotomicField::build(13, true);
    bool ok = true;
    long checked = 0;
    for (long q = 3; q <= 10000; q += 2) {
        if (!is_prime_long(q) || q == 13) continue;
        for (const auto &P : split_prime(Kp, q)) {
            if (P.rf->order() > 10000) continue;
            // N + 1 - a is the point count of the reduction of 26b1
            Z count = count_points(*P.rf, 1, -1, 1, -3, 3);
            if (count % 7 != 0) ok = false;
            checked++;
        }
    }
    std::ostringstream os;
    os << checked << " primes checked";
    report(8, "7 | Nq + 1 - a_q(f9) for Nq <= 10^4, q coprime to 26",
           ok && checked > 0, os.str());
}

// criterion 9a: norm agrees with the resultant oracle
bool c9_norms() {
    std::mt19937_64 rng(77);
    int samples = 0;
    for (long p : {5L, 7L, 11L, 13L}) {
        for (bool sub : {false, true}) {
            if (sub && p % 4 != 1) continue;
            auto K = RealCyclotomicField::build(p, sub);
            QPoly m = to_q(K->min_poly());
            for (int i = 0; i < 220; i++) {
                std::vector<Z> coords;
                for (long c = 0; c < K->degree(); c++)
                    coords.push_back(Z(static_cast<long>(rng() % 41) - 20));
                Z den(static_cast<long>(rng() % 5) + 1);
                FieldElement x(K, coords, den);
                QPoly g;
                for (const auto &c : x.coords()) g.push_back(Q(c, x.den()));
                qtrim(g);
                Q want = g.empty() ? Q(0) : resultant(m, g);
                if (norm(x) != want) return false;
                samples++;
            }
        }
    }
    return samples >= 1000;
}

// criterion 9b: point counts vs the exhaustive oracle
bool c9_counts() {
    auto oracle = [](const ResidueField &rf, const ResidueField::Elt &a1,
                     const ResidueField::Elt &a3, const ResidueField::Elt &a4,
                     const ResidueField::Elt &a6) {
        Z n = 1;
        for (const auto &x : rf.all_elements()) {
            auto rhs = rf.add(rf.mul(rf.mul(x, x), x),
                              rf.add(rf.mul(a4, x), a6));
            for (const auto &y : rf.all_elements()) {
                auto lhs = rf.add(rf.mul(y, y),
                                  rf.add(rf.mul(rf.mul(a1, x), y),
                                         rf.mul(a3, y)));
                if (rf.eq(lhs, rhs)) n++;
            }
        }
        return n;
    };
    std::vector<ResidueField> fields;
    for (long q : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L})
        fields.emplace_back(q, FqPoly{0, 1});
    fields.emplace_back(2, FqPoly{1, 1, 1});
    fields.emplace_back(2, FqPoly{1, 1, 0, 1});
    fields.emplace_back(2, FqPoly{1, 1, 0, 0, 1});
    fields.emplace_back(3, FqPoly{1, 0, 1});
    fields.emplace_back(3, FqPoly{1, 2, 0, 1});
    fields.emplace_back(5, FqPoly{2, 0, 1});
    std::mt19937_64 rng(99);
    for (const auto &rf : fields) {
        bool char2 = rf.q() == 2;
        // scalar sweeps of y^2 (+xy, +a3 y in char 2) = x^3 + a4 x + a6
        for (long a4 = 0; a4 < static_cast<long>(rf.q()); a4++)
            for (long a6 = 0; a6 < static_cast<long>(rf.q()); a6++) {
                auto A4 = rf.from_scalar(a4), A6 = rf.from_scalar(a6);
                auto zero = rf.zero(), one = rf.one();
                auto a1 = char2 ? one : zero;
                auto a3 = char2 ? one : zero;
                if (count_points(rf, char2 ? 1 : 0, 0, char2 ? 1 : 0, a4, a6) !=
                    oracle(rf, a1, a3, A4, A6))
                    return false;
            }
        // random full-field coefficients through the scalar interface
        for (int i = 0; i < 30; i++) {
            long a1 = char2 ? static_cast<long>(rng() % 2) : 0;
            long a3 = static_cast<long>(rng() % rf.q());
            long a4 = static_cast<long>(rng() % rf.q());
            long a6 = static_cast<long>(rng() % rf.q());
            if (count_points(rf, a1, 0, a3, a4, a6) !=
                oracle(rf, rf.from_scalar(a1), rf.from_scalar(a3),
                       rf.from_scalar(a4), rf.from_scalar(a6)))
                return false;
        }
    }
    return true;
}

// criterion 9c: Gaussian factor identity on random inputs
bool c9_gaussian() {
    std::mt19937_64 rng(123);
    for (long p : {5L, 7L, 11L, 13L})
        for (int i = 0; i < 100; i++) {
            Z a(static_cast<long>(rng() % 400) - 200);
            Z b(static_cast<long>(rng() % 400) - 200);
            if (!check_factor_identity(p, a, b)) return false;
        }
    return true;
}

// criterion 9d: determinism across 1/4/8 workers
bool c9_determinism() {
    auto r1 = scan_conductors(60, false, 1);
    for (int w : {4, 8}) {
        auto rw = scan_conductors(60, false, w);
        if (rw.size() != r1.size()) return false;
        for (size_t i = 0; i < r1.size(); i++)
            if (rw[i].conductor != r1[i].conductor ||
                rw[i].pass != r1[i].pass ||
                rw[i].failing_subsets != r1[i].failing_subsets)
                return false;
    }
    auto f = ingest_eigenform("data/f9.json");
    SieveSetup setup(13, true, 1, 5, true);
    auto b1 = b_q(f, setup, 5, 1);
    for (int w : {4, 8})
        if (b_q(f, setup, 5, w).basis != b1.basis) return false;
    return true;
}

void c9() {
    bool norms = c9_norms();
    bool counts = c9_counts();
    bool gaussian = c9_gaussian();
    bool det = c9_determinism();
    std::ostringstream os;
    if (!norms) os << "norm-vs-resultant; ";
    if (!counts) os << "point counts; ";
    if (!gaussian) os << "gaussian identity; ";
    if (!det) os << "determinism; ";
    report(9, "property suites", norms && counts && gaussian && det, os.str());

    if (std::filesystem::exists("data/f1.json")) {
        auto f = ingest_eigenform("data/f1.json");
        SieveSetup setup(7, true, 1, 2, false);
        auto rep = b_s(f, setup, {3}, 8);
        Z want = Z(256) * 243 * 117649;  // 2^8 3^5 7^6
        std::ostringstream d;
        d << "B_{3} = " << rep.b_s_value;
        report(9, "conditional f1 sieve value", rep.b_s_value == want, d.str());
    } else {
        std::printf("SKIP criterion 9 (conditional): no data/f1.json\n");
    }
}

}  // namespace

int main() {
    c1();
    c2();
    c3();
    c4();
    c5();
    c6();
    c7();
    c8();
    c9();
    return failures == 0 ? 0 : 1;
}
