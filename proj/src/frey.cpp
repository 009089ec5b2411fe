#include "cyclofrey/frey.hpp"

#include <stdexcept>

namespace cyclofrey {

namespace {

long ord_of(const Z &v, long p) {
    Z rest;
    return static_cast<long>(
        mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), Z(p).get_mpz_t()));
}

// the parent-class value of the unique involution of Gal(K/Q)
long involution_of(const FieldPtr &K) {
    for (long a : K->class_reps())
        if (a != 1 && K->fold(a * a) == 1) return a;
    throw std::logic_error("no involution (degree must be even)");
}

// valuation of x at P, with val(0) treated as +infinity against `bound`
bool val_at_least(const FieldElement &x, const PrimeAboveQ &P, long bound) {
    if (x.is_zero()) return true;
    return val_q_fractional(x, P) >= bound;
}

}  // namespace

DescentInstance synthetic_instance(long p, long ell, long n, long kappa,
                                   bool p_divides_x, const Z &t, const Z &b) {
    if (ell < 5 || !is_prime_long(ell))
        throw std::invalid_argument("exponent must be a prime >= 5");
    if (n < 1 || (p_divides_x && kappa < 1))
        throw std::invalid_argument("invalid valuation parameters");
    if (t % 2 == 0 || b % 2 == 0)
        throw std::invalid_argument("t and b must be odd");
    if (t % p == 0 || b % p == 0)
        throw std::invalid_argument("t and b must be coprime to p");
    DescentInstance inst;
    inst.p = p;
    inst.ell = ell;
    inst.n = n;
    inst.kappa = p_divides_x ? kappa : 0;
    inst.p_divides_x = p_divides_x;
    Z a(1);
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(),
                 static_cast<unsigned long>(ell * n));
    if (p_divides_x) {
        Z pk;
        mpz_pow_ui(pk.get_mpz_t(), Z(p).get_mpz_t(),
                   static_cast<unsigned long>(kappa * ell - 1));
        a *= pk;
    }
    a *= t;
    inst.a = a;
    inst.b = b;
    Z g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw std::invalid_argument("a and b are not coprime");
    return inst;
}

FieldElement beta(const FieldPtr &field, long j, const Z &a, const Z &b) {
    FieldElement tj = theta(field, j);
    FieldElement two = field->from_int(2);
    return (tj + two).scaled(Q(a * a)) + (tj - two).scaled(Q(b * b));
}

bool check_factor_identity(long p, const Z &a, const Z &b) {
    auto K = RealCyclotomicField::build(p, false);
    FieldElement prod = K->from_int(a);
    for (long j = 1; j <= (p - 1) / 2; j++) prod = prod * beta(K, j, a, b);
    if (!prod.is_rational()) return false;
    // ((a+bi)^p + (a-bi)^p)/2 = Re((a+bi)^p)
    Z re(1), im(0);
    for (long i = 0; i < p; i++) {
        Z nre = re * a - im * b;
        Z nim = re * b + im * a;
        re = nre;
        im = nim;
    }
    return prod.rational_value() == Q(re);
}

BetaValuations beta_valuations(const DescentInstance &inst) {
    auto K = RealCyclotomicField::build(inst.p, false);
    BetaValuations out;
    for (long j = 1; j <= (inst.p - 1) / 2; j++)
        out.ord_beta.push_back(val_at_p(beta(K, j, inst.a, inst.b)));
    out.ord_a = ord_of(inst.a, inst.p);
    return out;
}

FreyTriple frey_triple(const DescentInstance &inst, long j, long k,
                       bool twisted) {
    long p = inst.p;
    if (j == k || j < 1 || k < 1 || j > (p - 1) / 2 || k > (p - 1) / 2)
        throw std::invalid_argument("need distinct j, k in 1..(p-1)/2");
    auto K = RealCyclotomicField::build(p, false);
    if (twisted) {
        if (p % 4 != 1)
            throw std::invalid_argument("twist requires p = 1 mod 4");
        long tau = involution_of(K);
        if (K->fold(tau * j) != K->fold(k))
            throw std::invalid_argument("twist requires tau(theta_j) = theta_k");
    }
    FieldElement tj = theta(K, j), tk = theta(K, k);
    FieldElement two = K->from_int(2);
    FieldElement bj = beta(K, j, inst.a, inst.b);
    FieldElement bk = beta(K, k, inst.a, inst.b);
    FieldElement a2 = K->from_int(inst.a * inst.a);
    FieldElement four = K->from_int(4);

    FreyTriple t;
    t.j_idx = j;
    t.k_idx = k;
    t.twisted = twisted;
    if (inst.p_divides_x) {
        // dividing case; already tau-symmetric, so the twisted curve is E itself
        FieldElement dj = (tj - two).inverse(), dk = (tk - two).inverse();
        t.u = bj * dj;
        t.v = -(bk * dk);
        t.w = four * (tj - tk) * dj * dk * a2;
    } else if (!twisted) {
        // generic (non-dividing, untwisted) triple
        FieldElement dk = (tk - two).inverse();
        t.u = bj;
        t.v = -((tj - two) * dk * bk);
        t.w = four * (tj - tk) * dk * a2;
    } else {
        // quadratic twist by (theta_k - 2)
        t.u = (tk - two) * bj;
        t.v = -((tj - two) * bk);
        t.w = four * (tj - tk) * a2;
    }
    if (!(t.u + t.v + t.w).is_zero())
        throw std::logic_error("u + v + w != 0");
    return t;
}

CurveInvariants curve_invariants(const FreyTriple &t) {
    const auto &F = t.u.field();
    FieldElement s16 = F->from_int(16);
    CurveInvariants inv;
    FieldElement c4a = s16 * (t.u * t.u - t.v * t.w);
    FieldElement c4b = s16 * (t.v * t.v - t.u * t.w);
    FieldElement c4c = s16 * (t.w * t.w - t.u * t.v);
    if (!(c4a == c4b) || !(c4b == c4c))
        throw std::logic_error("c4 expressions disagree (u+v+w != 0?)");
    inv.c4 = c4a;
    inv.c6 = -(F->from_int(32) * (t.u - t.v) * (t.v - t.w) * (t.w - t.u));
    inv.delta = s16 * (t.u * t.u) * (t.v * t.v) * (t.w * t.w);
    FieldElement lhs = inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6;
    if (!(lhs == inv.delta.scaled(Q(1728))))
        throw std::logic_error("c4^3 - c6^2 != 1728 Delta");
    inv.singular = inv.delta.is_zero();
    if (!inv.singular)
        inv.j_inv = inv.c4 * inv.c4 * inv.c4 * inv.delta.inverse();
    return inv;
}

ShapeReport check_conductor_shape(const DescentInstance &inst,
                                  const FreyTriple &t) {
    if (inst.ell < 5) throw std::invalid_argument("instance needs an exponent");
    long p = inst.p;
    long delta_exp = (inst.kappa * inst.ell - 1) * (p - 1) - 1;
    auto inv = curve_invariants(t);
    FieldElement dmin = inv.delta.scaled(Q(Z(1), Z(4096)));

    ShapeReport rep;
    rep.expected_at_2 = 4 * inst.ell * inst.n - 4;
    if (t.twisted) {
        auto Kp = RealCyclotomicField::build(p, true);
        FieldElement dsub = to_subfield(Kp, dmin);
        for (const auto &P : split_prime(Kp, 2))
            rep.ord_at_2.push_back(val_q_fractional(dsub, P));
        rep.ord_at_p = val_at_p(dsub);
        rep.expected_at_p = inst.p_divides_x ? delta_exp : 3;
    } else {
        const auto &K = t.u.field();
        for (const auto &P : split_prime(K, 2))
            rep.ord_at_2.push_back(val_q_fractional(dmin, P));
        rep.ord_at_p = val_at_p(dmin);
        rep.expected_at_p = inst.p_divides_x ? 2 * delta_exp : 0;
    }

    // multiplicative-reduction congruences at 2, on the untwisted model over K
    auto K = RealCyclotomicField::build(p, false);
    FreyTriple base = t;
    if (t.twisted && !inst.p_divides_x)
        base = frey_triple(inst, t.j_idx, t.k_idx, false);
    auto binv = curve_invariants(base);
    FieldElement tj = theta(K, t.j_idx);
    FieldElement two = K->from_int(2);
    Z b2 = inst.b * inst.b;
    FieldElement target4 =
        inst.p_divides_x ? K->from_int(b2 * b2)
                         : (tj - two) * (tj - two).scaled(Q(b2 * b2));
    FieldElement target6 =
        inst.p_divides_x
            ? K->from_int(4 * b2 * b2 * b2)
            : ((tj - two) * (tj - two) * (tj - two)).scaled(Q(4 * b2 * b2 * b2));
    FieldElement d4 = binv.c4.scaled(Q(Z(1), Z(16))) - target4;
    FieldElement d6 = -(binv.c6.scaled(Q(Z(1), Z(16)))) - target6;
    rep.congruences_ok = true;
    for (const auto &P : split_prime(K, 2)) {
        if (!val_at_least(d4, P, 2 * inst.ell)) rep.congruences_ok = false;
        if (!val_at_least(d6, P, 2 * inst.ell + 1)) rep.congruences_ok = false;
    }

    rep.ok = rep.congruences_ok && rep.ord_at_p == rep.expected_at_p;
    for (long v : rep.ord_at_2)
        if (v != rep.expected_at_2) rep.ok = false;
    return rep;
}

bool j_residue_check_p13() {
    auto K = RealCyclotomicField::build(13, false);
    auto Kp = RealCyclotomicField::build(13, true);
    long tau = Kp->involution_class();
    auto primes = split_prime(Kp, 2);
    if (primes.size() != 1 || primes[0].f != 3)
        throw std::logic_error("unexpected splitting of 2 in K'");
    const auto &P = primes[0];
    const auto &rf = *P.rf;
    bool all_outside = true;
    for (long j = 1; j <= 6; j++) {
        long k = K->fold(tau * j);
        if (k <= j) continue;  // each admissible pair once
        FieldElement tj = theta(K, j), tk = theta(K, k);
        FieldElement num = tj * tj * tk * tk;
        FieldElement den = (tj - tk) * (tj - tk);
        FieldElement x = to_subfield(Kp, num * den.inverse());
        auto r = reduce(x, P);
        if (rf.is_zero(r))
            throw std::logic_error("residue unexpectedly zero (2-unit check)");
        Z o = rf.order();
        if (!rf.eq(rf.pow(r, o), r))  // Frobenius sanity: r^{2^f} = r
            throw std::logic_error("residue fails Frobenius consistency");
        if (rf.in_prime_field(r)) all_outside = false;
    }
    return all_outside;
}

}  // namespace cyclofrey
