#include "cyclofrey/finite.hpp"

#include <algorithm>
#include <random>

namespace cyclofrey {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t q) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % q);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t q) {
    uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, q);
        a = mulmod_u64(a, a, q);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t q) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(q), nr = static_cast<int64_t>(a % q);
    while (nr != 0) {
        int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("invmod_u64: not invertible");
    if (t < 0) t += static_cast<int64_t>(q);
    return static_cast<uint64_t>(t);
}

namespace fqpoly {

void trim(FqPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

long deg(const FqPoly &f) { return static_cast<long>(f.size()) - 1; }

FqPoly add(const FqPoly &a, const FqPoly &b, uint64_t q) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] = (r[i] + b[i]) % q;
    trim(r);
    return r;
}

FqPoly sub(const FqPoly &a, const FqPoly &b, uint64_t q) {
    FqPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] = (r[i] + q - b[i] % q) % q;
    trim(r);
    return r;
}

FqPoly mul(const FqPoly &a, const FqPoly &b, uint64_t q) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); j++)
            r[i + j] = (r[i + j] + static_cast<__uint128_t>(a[i]) * b[j]) % q;
    }
    trim(r);
    return r;
}

FqPoly scale(const FqPoly &a, uint64_t c, uint64_t q) {
    FqPoly r(a);
    for (auto &x : r) x = mulmod_u64(x, c, q);
    trim(r);
    return r;
}

FqPoly rem(const FqPoly &a, const FqPoly &b, uint64_t q) {
    FqPoly r(a);
    trim(r);
    long db = deg(b);
    uint64_t inv_lc = invmod_u64(b.back(), q);
    while (deg(r) >= db) {
        uint64_t c = mulmod_u64(r.back(), inv_lc, q);
        long k = deg(r) - db;
        for (size_t i = 0; i < b.size(); i++)
            r[k + i] = (r[k + i] + q - mulmod_u64(c, b[i], q) % q) % q;
        trim(r);
    }
    return r;
}

FqPoly gcd(FqPoly a, FqPoly b, uint64_t q) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FqPoly r = rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, q);
}

FqPoly monic(const FqPoly &a, uint64_t q) {
    if (a.empty()) return a;
    return scale(a, invmod_u64(a.back(), q), q);
}

FqPoly powmod(const FqPoly &a, const Z &e, const FqPoly &mod, uint64_t q) {
    FqPoly r{1}, base = rem(a, mod, q);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = rem(mul(r, r, q), mod, q);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base, q), mod, q);
    }
    return r;
}

FqPoly deriv(const FqPoly &f, uint64_t q) {
    if (f.size() <= 1) return {};
    FqPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); i++) r[i - 1] = mulmod_u64(f[i], i % q, q);
    trim(r);
    return r;
}

}  // namespace fqpoly

FqPoly reduce_poly_mod(const ZPoly &f, uint64_t q) {
    FqPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) {
        Z m = f[i] % Z(static_cast<unsigned long>(q));
        if (m < 0) m += static_cast<unsigned long>(q);
        r[i] = m.get_ui();
    }
    fqpoly::trim(r);
    return r;
}

namespace {

// Quotient f/g assuming exact divisibility over F_q.
FqPoly quot(const FqPoly &f, const FqPoly &g, uint64_t q) {
    using namespace fqpoly;
    FqPoly r(f), out;
    trim(r);
    long dg = deg(g);
    uint64_t inv_lc = invmod_u64(g.back(), q);
    out.assign(r.size() - g.size() + 1, 0);
    while (deg(r) >= dg) {
        uint64_t c = mulmod_u64(r.back(), inv_lc, q);
        long k = deg(r) - dg;
        out[k] = c;
        for (size_t i = 0; i < g.size(); i++)
            r[k + i] = (r[k + i] + q - mulmod_u64(c, g[i], q) % q) % q;
        trim(r);
    }
    if (!r.empty()) throw std::runtime_error("quot: not divisible");
    fqpoly::trim(out);
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus; trace construction for q=2).
void edf(const FqPoly &f, long d, uint64_t q, std::mt19937_64 &rng,
         std::vector<FqPoly> &out) {
    using namespace fqpoly;
    if (deg(f) == d) {
        out.push_back(monic(f, q));
        return;
    }
    long n = deg(f);
    while (true) {
        FqPoly h(n);
        for (long i = 0; i < n; i++) h[i] = rng() % q;
        trim(h);
        if (deg(h) < 1) continue;
        FqPoly g;
        if (q == 2) {
            // trace map h + h^2 + ... + h^(2^(d-1))
            FqPoly t = rem(h, f, q), acc = t;
            for (long i = 1; i < d; i++) {
                t = rem(mul(t, t, q), f, q);
                acc = add(acc, t, q);
            }
            g = gcd(f, acc, q);
        } else {
            Z e;
            mpz_ui_pow_ui(e.get_mpz_t(), q, static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            FqPoly t = powmod(h, e, f, q);
            t = sub(t, FqPoly{1}, q);
            g = gcd(f, t, q);
        }
        if (deg(g) > 0 && deg(g) < deg(f)) {
            edf(g, d, q, rng, out);
            edf(quot(f, g, q), d, q, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FqPoly> factor_squarefree(const FqPoly &f_in, uint64_t q) {
    using namespace fqpoly;
    FqPoly f = monic(f_in, q);
    if (deg(f) < 1) throw std::invalid_argument("factor_squarefree: degree < 1");
    {
        FqPoly d = deriv(f, q);
        if (d.empty() || deg(gcd(f, d, q)) > 0)
            throw std::runtime_error("factor_squarefree: polynomial not squarefree");
    }
    std::mt19937_64 rng(0x636c6f63ULL ^ (q * 0x9e3779b97f4a7c15ULL));
    std::vector<FqPoly> factors;
    // distinct-degree decomposition
    FqPoly x{0, 1};
    FqPoly h = rem(x, f, q), rest = f;
    long d = 0;
    while (deg(rest) > 0) {
        d++;
        if (2 * d > deg(rest)) {
            edf(rest, deg(rest), q, rng, factors);
            break;
        }
        Z qe(static_cast<unsigned long>(q));
        h = powmod(h, qe, rest, q);
        FqPoly g = gcd(rest, sub(h, x, q), q);
        if (deg(g) > 0) {
            edf(g, d, q, rng, factors);
            rest = quot(rest, g, q);
            h = rem(h, rest, q);
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const FqPoly &a, const FqPoly &b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return factors;
}

ResidueField::ResidueField(uint64_t q, FqPoly modulus)
    : q_(q), f_(static_cast<int>(fqpoly::deg(modulus))), modulus_(std::move(modulus)) {
    if (f_ < 1 || modulus_.back() != 1)
        throw std::invalid_argument("ResidueField: modulus must be monic, degree >= 1");
}

Z ResidueField::order() const {
    Z o;
    mpz_ui_pow_ui(o.get_mpz_t(), q_, static_cast<unsigned long>(f_));
    return o;
}

ResidueField::Elt ResidueField::one() const {
    Elt e(f_, 0);
    e[0] = 1 % q_;
    return e;
}

ResidueField::Elt ResidueField::from_scalar(const Z &c) const {
    Z m = c % Z(static_cast<unsigned long>(q_));
    if (m < 0) m += static_cast<unsigned long>(q_);
    Elt e(f_, 0);
    e[0] = m.get_ui();
    return e;
}

ResidueField::Elt ResidueField::from_poly(const FqPoly &g) const {
    FqPoly r = fqpoly::rem(g, modulus_, q_);
    Elt e(f_, 0);
    for (size_t i = 0; i < r.size(); i++) e[i] = r[i];
    return e;
}

bool ResidueField::is_zero(const Elt &a) const {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

bool ResidueField::eq(const Elt &a, const Elt &b) const { return a == b; }

ResidueField::Elt ResidueField::add(const Elt &a, const Elt &b) const {
    Elt r(f_);
    for (int i = 0; i < f_; i++) r[i] = (a[i] + b[i]) % q_;
    return r;
}

ResidueField::Elt ResidueField::sub(const Elt &a, const Elt &b) const {
    Elt r(f_);
    for (int i = 0; i < f_; i++) r[i] = (a[i] + q_ - b[i]) % q_;
    return r;
}

ResidueField::Elt ResidueField::neg(const Elt &a) const {
    Elt r(f_);
    for (int i = 0; i < f_; i++) r[i] = (q_ - a[i]) % q_;
    return r;
}

ResidueField::Elt ResidueField::mul(const Elt &a, const Elt &b) const {
    FqPoly pa(a.begin(), a.end()), pb(b.begin(), b.end());
    fqpoly::trim(pa);
    fqpoly::trim(pb);
    return from_poly(fqpoly::mul(pa, pb, q_));
}

ResidueField::Elt ResidueField::mul_scalar(const Elt &a, uint64_t c) const {
    Elt r(f_);
    for (int i = 0; i < f_; i++) r[i] = mulmod_u64(a[i], c % q_, q_);
    return r;
}

ResidueField::Elt ResidueField::inv(const Elt &a) const {
    if (is_zero(a)) throw std::invalid_argument("ResidueField::inv: zero");
    // a^(q^f - 2)
    return pow(a, order() - 2);
}

ResidueField::Elt ResidueField::pow(const Elt &a, const Z &e) const {
    if (e < 0) return pow(inv(a), -e);
    FqPoly pa(a.begin(), a.end());
    fqpoly::trim(pa);
    FqPoly r = fqpoly::powmod(pa, e, modulus_, q_);
    Elt out(f_, 0);
    for (size_t i = 0; i < r.size(); i++) out[i] = r[i];
    return out;
}

bool ResidueField::is_square(const Elt &a) const {
    if (is_zero(a)) return false;
    if (q_ == 2) return true;
    Elt t = pow(a, (order() - 1) / 2);
    return eq(t, one());
}

uint64_t ResidueField::norm_to_prime_field(const Elt &a) const {
    if (is_zero(a)) throw std::invalid_argument("norm_to_prime_field: zero");
    Z e = (order() - 1) / Z(static_cast<unsigned long>(q_ - 1));
    Elt t = pow(a, e);
    for (int i = 1; i < f_; i++)
        if (t[i] != 0) throw std::runtime_error("norm_to_prime_field: not in F_q");
    return t[0];
}

bool ResidueField::in_prime_field(const Elt &a) const {
    for (int i = 1; i < f_; i++)
        if (a[i] != 0) return false;
    return true;
}

std::vector<ResidueField::Elt> ResidueField::all_elements() const {
    std::vector<Elt> out;
    Elt cur(f_, 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < f_) {
            cur[i]++;
            if (cur[i] < q_) break;
            cur[i] = 0;
            i++;
        }
        if (i == f_) break;
    }
    return out;
}

}  // namespace cyclofrey
