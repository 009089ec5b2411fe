#include "cyclofrey/poly.hpp"

namespace cyclofrey {

ZPoly zadd(const ZPoly &a, const ZPoly &b) {
    ZPoly r(std::max(a.size(), b.size()), Z(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly &a, const ZPoly &b) {
    ZPoly r(std::max(a.size(), b.size()), Z(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmul(const ZPoly &a, const ZPoly &b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Z(0));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zscale(const ZPoly &a, const Z &c) {
    if (c == 0) return {};
    ZPoly r(a);
    for (auto &x : r) x *= c;
    return r;
}

Z zeval(const ZPoly &f, const Z &x) {
    Z r = 0;
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

ZPoly zdiv_exact(const ZPoly &a, const ZPoly &b) {
    if (b.empty()) throw std::invalid_argument("zdiv_exact: division by zero");
    ZPoly rem(a), q;
    long db = zdeg(b);
    if (zdeg(rem) >= db) q.assign(rem.size() - b.size() + 1, Z(0));
    while (zdeg(rem) >= db) {
        long k = zdeg(rem) - db;
        Z c;
        mpz_fdiv_qr(c.get_mpz_t(), Z().get_mpz_t(), rem.back().get_mpz_t(),
                    b.back().get_mpz_t());
        if (c * b.back() != rem.back())
            throw std::runtime_error("zdiv_exact: leading term not divisible");
        q[k] = c;
        for (size_t i = 0; i < b.size(); i++) rem[k + i] -= c * b[i];
        ztrim(rem);
    }
    if (!rem.empty()) throw std::runtime_error("zdiv_exact: nonzero remainder");
    ztrim(q);
    return q;
}

ZPoly zmod_monic(const ZPoly &a, const ZPoly &m) {
    if (m.empty() || m.back() != 1)
        throw std::invalid_argument("zmod_monic: modulus must be monic");
    ZPoly r(a);
    long dm = zdeg(m);
    while (zdeg(r) >= dm) {
        long k = zdeg(r) - dm;
        Z c = r.back();
        for (size_t i = 0; i < m.size(); i++) r[k + i] -= c * m[i];
        ztrim(r);
    }
    return r;
}

ZPoly zderiv(const ZPoly &f) {
    if (f.size() <= 1) return {};
    ZPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); i++) r[i - 1] = f[i] * Z(static_cast<long>(i));
    ztrim(r);
    return r;
}

ZPoly cyclotomic(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic: n >= 1");
    ZPoly num(n + 1, Z(0));
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; d++) {
        if (n % d != 0) continue;
        num = zdiv_exact(num, cyclotomic(d));
    }
    return num;
}

QPoly to_q(const ZPoly &f) {
    QPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) r[i] = Q(f[i]);
    return r;
}

QPoly qmul(const QPoly &a, const QPoly &b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Q(0));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

QPoly qsub(const QPoly &a, const QPoly &b) {
    QPoly r(std::max(a.size(), b.size()), Q(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] -= b[i];
    qtrim(r);
    return r;
}

QPoly qscale(const QPoly &a, const Q &c) {
    if (c == 0) return {};
    QPoly r(a);
    for (auto &x : r) x *= c;
    return r;
}

QPoly qrem(const QPoly &a, const QPoly &b) {
    if (b.empty()) throw std::invalid_argument("qrem: division by zero");
    QPoly r(a);
    long db = qdeg(b);
    while (qdeg(r) >= db) {
        Q c = r.back() / b.back();
        long k = qdeg(r) - db;
        for (size_t i = 0; i < b.size(); i++) r[k + i] -= c * b[i];
        qtrim(r);
    }
    return r;
}

Q resultant(const QPoly &f, const QPoly &g) {
    // Euclidean remainder sequence with the standard transformation rules.
    QPoly a(f), b(g);
    qtrim(a);
    qtrim(b);
    if (a.empty() || b.empty()) return Q(0);
    Q res = 1;
    while (true) {
        long da = qdeg(a), db = qdeg(b);
        if (db == 0) {
            Q p = b[0];
            Q t;
            mpz_pow_ui(mpq_numref(t.get_mpq_t()), p.get_num_mpz_t(),
                       static_cast<unsigned long>(da));
            mpz_pow_ui(mpq_denref(t.get_mpq_t()), p.get_den_mpz_t(),
                       static_cast<unsigned long>(da));
            t.canonicalize();
            return res * t;
        }
        QPoly r = qrem(a, b);
        if (r.empty()) return Q(0);
        long dr = qdeg(r);
        // Res(a,b) = (-1)^(da*db) * lc(b)^(da-dr) * Res(b,r)
        Q lc = b.back();
        Q t;
        mpz_pow_ui(mpq_numref(t.get_mpq_t()), lc.get_num_mpz_t(),
                   static_cast<unsigned long>(da - dr));
        mpz_pow_ui(mpq_denref(t.get_mpq_t()), lc.get_den_mpz_t(),
                   static_cast<unsigned long>(da - dr));
        t.canonicalize();
        res *= t;
        if ((da * db) % 2 == 1) res = -res;
        a = std::move(b);
        b = std::move(r);
    }
}

QXgcd qxgcd(const QPoly &f, const QPoly &m) {
    QPoly r0(f), r1(m), s0{Q(1)}, s1{}, t0{}, t1{Q(1)};
    qtrim(r0);
    qtrim(r1);
    while (!r1.empty()) {
        // quotient of r0 by r1
        QPoly q;
        QPoly rem(r0);
        long d1 = qdeg(r1);
        if (qdeg(rem) >= d1) q.assign(rem.size() - r1.size() + 1, Q(0));
        while (qdeg(rem) >= d1) {
            Q c = rem.back() / r1.back();
            long k = qdeg(rem) - d1;
            q[k] = c;
            for (size_t i = 0; i < r1.size(); i++) rem[k + i] -= c * r1[i];
            qtrim(rem);
        }
        qtrim(q);
        QPoly ns = qsub(s0, qmul(q, s1));
        QPoly nt = qsub(t0, qmul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (!r0.empty() && r0.back() != 1) {
        Q lc = r0.back();
        r0 = qscale(r0, 1 / lc);
        s0 = qscale(s0, 1 / lc);
        t0 = qscale(t0, 1 / lc);
    }
    return {r0, s0, t0};
}

std::string qstr(const Q &x) { return x.get_str(); }

}  // namespace cyclofrey
