#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "cyclofrey/field.hpp"

using namespace cyclofrey;

namespace {

long mobius(long n) {
    long r = 1;
    for (long p = 2; p * p <= n; p++) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
    }
    if (n > 1) r = -r;
    return r;
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; p++) {
        if (n % p) continue;
        r -= r / p;
        while (n % p == 0) n /= p;
    }
    if (n > 1) r -= r / n;
    return r;
}

// Ramanujan sum c_n(m) = mu(n/g) phi(n) / phi(n/g), g = gcd(m, n).
Z ramanujan(long n, long m) {
    long g = std::gcd(((m % n) + n) % n, n);
    long k = n / g;
    long mu = mobius(k);
    if (mu == 0) return 0;
    return Z(mu) * Z(euler_phi(n) / euler_phi(k));
}

// Independent oracle for the minimal polynomial of theta = 2cos(2 pi / n):
// exact power sums of the conjugates via Ramanujan sums, then Newton's
// identities.
ZPoly min_poly_newton(long n) {
    long d = euler_phi(n) / 2;
    // s_k = (1/2) sum_i C(k,i) c_n(k - 2i)
    std::vector<Q> s(d + 1, Q(0));
    for (long k = 1; k <= d; k++) {
        Z binom = 1;
        Z acc = 0;
        for (long i = 0; i <= k; i++) {
            acc += binom * ramanujan(n, k - 2 * i);
            binom = binom * (k - i) / (i + 1);
        }
        s[k] = Q(acc, 2);
        s[k].canonicalize();
    }
    std::vector<Q> e(d + 1, Q(0));
    e[0] = 1;
    for (long j = 1; j <= d; j++) {
        Q acc(0);
        for (long i = 1; i <= j; i++) {
            Q t = e[j - i] * s[i];
            if (i % 2 == 0) acc -= t;
            else acc += t;
        }
        e[j] = acc / j;
    }
    ZPoly m(d + 1);
    for (long j = 0; j <= d; j++) {
        Q c = e[d - j];
        c.canonicalize();
        REQUIRE(c.get_den() == 1);
        m[j] = ((d - j) % 2) ? -c.get_num() : c.get_num();
    }
    return m;
}

}  // namespace

TEST_CASE("minimal polynomials of small prime conductors") {
    auto K5 = RealCyclotomicField::build(5, false);
    CHECK(K5->min_poly() == ZPoly{-1, 1, 1});  // x^2 + x - 1
    auto K7 = RealCyclotomicField::build(7, false);
    CHECK(K7->min_poly() == ZPoly{-1, -2, 1, 1});  // x^3 + x^2 - 2x - 1
    auto K13 = RealCyclotomicField::build(13, false);
    CHECK(K13->degree() == 6);
    CHECK(K13->min_poly().back() == 1);
}

TEST_CASE("minimal polynomial matches the Newton-identity oracle") {
    for (long n : {5, 7, 8, 11, 12, 13, 15, 16, 20, 21, 29, 35}) {
        CAPTURE(n);
        auto K = RealCyclotomicField::build_full(n);
        CHECK(K->min_poly() == min_poly_newton(n));
    }
}

TEST_CASE("theta values and products") {
    auto K = RealCyclotomicField::build(5, false);
    auto t1 = theta(K, 1);
    auto t2 = theta(K, 2);
    CHECK((t1 * t2) == K->from_int(-1));
    CHECK((t1 + t2) == K->from_int(-1));
    // theta_0 = 2 and folding theta_{n-j} = theta_j
    CHECK(theta_any(K, 0) == K->from_int(2));
    CHECK(theta_any(K, 4) == t1);
    CHECK_THROWS(theta(K, 3));
}

TEST_CASE("norm of 2 - theta_j multiplies to p") {
    for (long p : {5, 7, 11, 13}) {
        CAPTURE(p);
        auto K = RealCyclotomicField::build(p, false);
        Q prod(1);
        for (long j = 1; j <= (p - 1) / 2; j++) {
            // each 2 - theta_j is conjugate to 2 - theta_1
            CHECK(norm(K->from_int(2) - theta(K, j)) == norm(K->from_int(2) - theta(K, 1)));
        }
        CHECK(norm(K->from_int(2) - theta(K, 1)) == Q(p));
        CHECK(val_at_p(K->from_int(2) - theta(K, 1)) == 1);
        CHECK(val_at_p(K->from_int(p)) == K->degree());
    }
}

TEST_CASE("galois action permutes theta indices") {
    auto K = RealCyclotomicField::build(13, false);
    auto t1 = theta(K, 1);
    for (long a = 1; a <= 6; a++) {
        CHECK(galois_apply(K, a, t1) == theta(K, a));
        CHECK(galois_apply(K, 13 - a, t1) == theta(K, a));
    }
    // homomorphism property on a composite element
    auto x = theta(K, 2) * theta(K, 3) + K->from_int(7);
    auto y = theta(K, 5) - K->from_int(2);
    CHECK(galois_apply(K, 4, x * y) == galois_apply(K, 4, x) * galois_apply(K, 4, y));
}

TEST_CASE("field arithmetic: inverses and rational values") {
    auto K = RealCyclotomicField::build(11, false);
    auto x = theta(K, 1) * theta(K, 3) - K->from_int(5);
    auto xi = x.inverse();
    CHECK((x * xi) == K->from_int(1));
    auto half = K->from_q(Q(1, 2));
    CHECK((half + half) == K->from_int(1));
    CHECK((x * x.pow(3)) == x.pow(4));
    CHECK(x.pow(-2) == (x * x).inverse());
}

TEST_CASE("norm is multiplicative") {
    auto K = RealCyclotomicField::build(13, false);
    auto x = theta(K, 2) - K->from_int(1);
    auto y = (theta(K, 4) + theta(K, 6)).scaled(Q(3, 7));
    CHECK(norm(x * y) == norm(x) * norm(y));
    CHECK(norm(x.inverse()) == Q(1) / norm(x));
    CHECK(norm(K->from_int(2)) == Q(64));
}

TEST_CASE("embedding signs") {
    auto K = RealCyclotomicField::build(5, false);
    // theta_1 = 2cos(72) > 0, theta_2 = 2cos(144) < 0
    CHECK(embedding_signs(theta(K, 1)) == std::vector<int>{1, -1});
    CHECK(embedding_signs(theta(K, 1) - K->from_int(2)) == std::vector<int>{-1, -1});
    auto K13 = RealCyclotomicField::build(13, false);
    auto allneg = embedding_signs(K13->from_int(2) - theta(K13, 1) * theta(K13, 1) - K13->from_int(4));
    CHECK(allneg == std::vector<int>(6, -1));
}

TEST_CASE("prime splitting in K for p = 13") {
    auto K = RealCyclotomicField::build(13, false);
    // 3 has order 3 in (Z/13)^x and -1 is not a power of 3: f = 3
    auto P3 = split_prime(K, 3);
    CHECK(P3.size() == 2);
    CHECK(P3[0].f == 3);
    // 5 has order 4, and 5^2 = -1: f = 2 in the quotient by +-1
    auto P5 = split_prime(K, 5);
    CHECK(P5.size() == 3);
    CHECK(P5[0].f == 2);
    // canonical order: lexicographic by coefficient list
    for (size_t i = 1; i < P5.size(); i++)
        CHECK(P5[i - 1].local_factor < P5[i].local_factor);
    // ramified prime is rejected with a pointer to val_at_p
    CHECK_THROWS_AS(split_prime(K, 13), std::invalid_argument);
}

TEST_CASE("reduction mod primes is a ring homomorphism") {
    auto K = RealCyclotomicField::build(13, false);
    auto x = theta(K, 1) * theta(K, 2) + K->from_int(3);
    auto y = theta(K, 5) - K->from_int(1);
    for (long q : {3, 5, 7, 103}) {
        CAPTURE(q);
        for (const auto &P : split_prime(K, q)) {
            const auto &rf = *P.rf;
            CHECK(rf.eq(reduce(x * y, P), rf.mul(reduce(x, P), reduce(y, P))));
            CHECK(rf.eq(reduce(x + y, P), rf.add(reduce(x, P), reduce(y, P))));
        }
    }
    // denominators prime to q are units
    auto z = x.scaled(Q(1, 7));
    for (const auto &P : split_prime(K, 5)) {
        const auto &rf = *P.rf;
        CHECK(rf.eq(reduce(z, P), rf.mul_scalar(reduce(x, P), invmod_u64(7, 5))));
    }
}

TEST_CASE("unramified valuations against the norm") {
    auto K = RealCyclotomicField::build(13, false);
    auto x = (theta(K, 1) - K->from_int(2)) * (theta(K, 3) + K->from_int(4)) * K->from_int(25);
    for (long q : {3, 5, 7, 11}) {
        CAPTURE(q);
        auto primes = split_prime(K, q);
        long total = 0;
        for (const auto &P : primes) {
            long v = val_at_unramified_prime(x, P);
            CHECK(v >= 0);
            CHECK(val_at_unramified_prime(K->from_int(q), P) == 1);
            total += P.f * v;
        }
        Q N = norm(x);
        REQUIRE(N.get_den() == 1);
        Z rest;
        long nq = static_cast<long>(
            mpz_remove(rest.get_mpz_t(), N.get_num().get_mpz_t(), Z(q).get_mpz_t()));
        CHECK(total == nq);
    }
    auto P = split_prime(K, 5)[0];
    CHECK(val_q_fractional(x.scaled(Q(1, 5)), P) ==
          val_at_unramified_prime(x, P) - 1);
}

TEST_CASE("subfield K' for p = 13") {
    auto Kp = RealCyclotomicField::build(13, true);
    CHECK(Kp->degree() == 3);
    // cyclic cubic field of conductor 13
    CHECK(Kp->min_poly() == ZPoly{1, -4, 1, 1});  // x^3 + x^2 - 4x + 1
    CHECK(Kp->involution_class() == 5);
    CHECK(Kp->class_reps() == std::vector<long>{1, 2, 4});

    auto parent = Kp->parent();
    CHECK(to_subfield(Kp, Kp->generator_in_parent()) == Kp->generator());
    // tau-invariant elements descend; theta_1 itself does not
    auto sym = theta(parent, 2) + theta(parent, 3);
    auto down = to_subfield(Kp, sym);
    CHECK(norm(down) == Q(-1));  // product of the three periods
    CHECK_THROWS(to_subfield(Kp, theta(parent, 1)));

    // ramified valuation in the subfield
    CHECK(val_at_p(Kp->from_int(13)) == 3);

    // splitting: q = 3 is in H = {1,5,8,12} mod 13? 3 is not, so f = 3
    auto P3 = split_prime(Kp, 3);
    CHECK(P3.size() == 1);
    CHECK(P3[0].f == 3);
    // q = 5: 5 in H (5 mod 13 = 5), so f = 1, three primes
    auto P5 = split_prime(Kp, 5);
    CHECK(P5.size() == 3);
    CHECK(P5[0].f == 1);
}

TEST_CASE("subfield K' for p = 5 is the rationals") {
    auto Kp = RealCyclotomicField::build(5, true);
    CHECK(Kp->degree() == 1);
    CHECK(Kp->min_poly() == ZPoly{1, 1});  // theta' = -1
    CHECK(Kp->generator() == Kp->from_int(-1));
    auto parent = Kp->parent();
    auto sym = theta(parent, 1) + theta(parent, 2);
    CHECK(to_subfield(Kp, sym).rational_value() == Q(-1));
    CHECK(norm(Kp->from_int(7)) == Q(7));
}

TEST_CASE("build validates input") {
    CHECK_THROWS_AS(RealCyclotomicField::build(9, false), std::invalid_argument);
    CHECK_THROWS_AS(RealCyclotomicField::build(7, true), std::invalid_argument);
    CHECK_THROWS_AS(RealCyclotomicField::build_full(6), std::invalid_argument);
}
