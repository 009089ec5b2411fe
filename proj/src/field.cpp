#include "cyclofrey/field.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "cyclofrey/interval.hpp"

namespace cyclofrey {

namespace {

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

void check_same_field(const FieldElement &a, const FieldElement &b) {
    const auto &f = a.field();
    const auto &g = b.field();
    if (!f || !g) throw std::invalid_argument("uninitialized field element");
    if (f.get() == g.get()) return;
    if (f->conductor() != g->conductor() || f->is_subfield() != g->is_subfield())
        throw std::invalid_argument("field elements from different fields");
}

long ord_in(const Z &v, long p) {
    if (v == 0) throw std::invalid_argument("ord of zero");
    mpz_class rest;
    return static_cast<long>(
        mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), Z(p).get_mpz_t()));
}

// --- modular polynomial arithmetic over Z/N ------------------------------

ZPoly pmod(ZPoly a, const Z &N) {
    for (auto &c : a) {
        c %= N;
        if (c < 0) c += N;
    }
    ztrim(a);
    return a;
}

ZPoly pmul(const ZPoly &a, const ZPoly &b, const Z &N) {
    return pmod(zmul(a, b), N);
}

ZPoly padd(const ZPoly &a, const ZPoly &b, const Z &N) {
    return pmod(zadd(a, b), N);
}

ZPoly psub(const ZPoly &a, const ZPoly &b, const Z &N) {
    return pmod(zsub(a, b), N);
}

// Division by a monic b over Z/N.
void pdivmod(const ZPoly &a, const ZPoly &b, const Z &N, ZPoly &quo, ZPoly &rem) {
    if (b.empty() || b.back() != 1)
        throw std::invalid_argument("pdivmod needs a monic divisor");
    rem = pmod(a, N);
    long db = zdeg(b);
    quo.assign(rem.size() > b.size() - 1 ? rem.size() - b.size() + 1 : 0, Z(0));
    while (zdeg(rem) >= db) {
        long sh = zdeg(rem) - db;
        Z c = rem.back();
        quo[sh] = c;
        for (long i = 0; i <= db; i++) {
            rem[sh + i] -= c * b[i];
            rem[sh + i] %= N;
            if (rem[sh + i] < 0) rem[sh + i] += N;
        }
        ztrim(rem);
    }
    ztrim(quo);
}

// --- F_q[x] division and extended gcd ------------------------------------

void fq_divmod(const FqPoly &a, const FqPoly &b, uint64_t q, FqPoly &quo,
               FqPoly &rem) {
    long db = fqpoly::deg(b);
    if (db < 0) throw std::invalid_argument("division by zero polynomial");
    uint64_t lcinv = invmod_u64(b.back(), q);
    rem = a;
    fqpoly::trim(rem);
    quo.assign(rem.size() > b.size() - 1 ? rem.size() - b.size() + 1 : 0, 0);
    while (fqpoly::deg(rem) >= db) {
        long sh = fqpoly::deg(rem) - db;
        uint64_t c = mulmod_u64(rem.back(), lcinv, q);
        quo[sh] = c;
        for (long i = 0; i <= db; i++) {
            uint64_t t = mulmod_u64(c, b[i], q);
            rem[sh + i] = (rem[sh + i] + q - t) % q;
        }
        fqpoly::trim(rem);
    }
    fqpoly::trim(quo);
}

// s*g + t*h = 1 for coprime g, h over F_q.
void fq_bezout(const FqPoly &g, const FqPoly &h, uint64_t q, FqPoly &s,
               FqPoly &t) {
    FqPoly r0 = g, r1 = h;
    FqPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    fqpoly::trim(r0);
    fqpoly::trim(r1);
    while (fqpoly::deg(r1) >= 0) {
        FqPoly quo, rem;
        fq_divmod(r0, r1, q, quo, rem);
        r0 = r1;
        r1 = rem;
        FqPoly s2 = fqpoly::sub(s0, fqpoly::mul(quo, s1, q), q);
        FqPoly t2 = fqpoly::sub(t0, fqpoly::mul(quo, t1, q), q);
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (fqpoly::deg(r0) != 0)
        throw std::runtime_error("fq_bezout: inputs not coprime");
    uint64_t c = invmod_u64(r0[0], q);
    s = fqpoly::scale(s0, c, q);
    t = fqpoly::scale(t0, c, q);
}

ZPoly lift_fq(const FqPoly &f) {
    ZPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) r[i] = Z(static_cast<unsigned long>(f[i]));
    ztrim(r);
    return r;
}

// Monic lift ghat of g0 with m = ghat * hhat mod q^k (quadratic Hensel).
ZPoly hensel_lift_factor(const ZPoly &m, const FqPoly &g0, uint64_t q, long k) {
    FqPoly mq = reduce_poly_mod(m, q);
    FqPoly h0, r0;
    fq_divmod(mq, g0, q, h0, r0);
    if (fqpoly::deg(r0) >= 0)
        throw std::runtime_error("hensel: factor does not divide modulus");
    FqPoly s0, t0;
    fq_bezout(g0, h0, q, s0, t0);

    ZPoly g = lift_fq(g0), h = lift_fq(h0), s = lift_fq(s0), t = lift_fq(t0);
    Z N(static_cast<unsigned long>(q));
    long cur = 1;
    while (cur < k) {
        Z N2 = N * N;
        ZPoly e = psub(m, pmul(g, h, N2), N2);
        ZPoly q1, r1;
        pdivmod(pmul(t, e, N2), g, N2, q1, r1);
        ZPoly gs = padd(g, r1, N2);
        if (zdeg(gs) != zdeg(g) || gs.back() != 1)
            throw std::runtime_error("hensel: lifted factor not monic");
        ZPoly hs, rem0;
        pdivmod(m, gs, N2, hs, rem0);
        if (!rem0.empty())
            throw std::runtime_error("hensel: lift failed to divide");
        ZPoly b = psub(padd(pmul(s, gs, N2), pmul(t, hs, N2), N2), ZPoly{Z(1)}, N2);
        ZPoly tpre = psub(t, pmul(t, b, N2), N2);
        ZPoly q3, tstar;
        pdivmod(tpre, gs, N2, q3, tstar);
        ZPoly sstar, rem1;
        pdivmod(psub(ZPoly{Z(1)}, pmul(tstar, hs, N2), N2), gs, N2, sstar, rem1);
        if (!rem1.empty())
            throw std::runtime_error("hensel: bezout update failed");
        g = gs;
        h = hs;
        s = sstar;
        t = tstar;
        N = N2;
        cur *= 2;
    }
    Z Nk(1);
    mpz_pow_ui(Nk.get_mpz_t(), Z(static_cast<unsigned long>(q)).get_mpz_t(),
               static_cast<unsigned long>(k));
    return pmod(g, Nk);
}

}  // namespace

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; p++)
        if (n % p == 0) return false;
    return true;
}

// --- FieldElement ---------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Z> coords, Z den)
    : field_(std::move(field)), coords_(std::move(coords)), den_(std::move(den)) {
    if (!field_) throw std::invalid_argument("null field");
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    size_t d = static_cast<size_t>(field_->degree());
    if (coords_.size() > d) {
        ZPoly r = zmod_monic(coords_, field_->min_poly());
        coords_ = std::move(r);
    }
    coords_.resize(d, Z(0));
    normalize();
}

void FieldElement::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto &c : coords_) c = -c;
    }
    Z g = den_;
    for (const auto &c : coords_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1) {
        den_ /= g;
        for (auto &c : coords_) c /= g;
    }
    bool zero = true;
    for (const auto &c : coords_)
        if (c != 0) zero = false;
    if (zero) den_ = 1;
}

bool FieldElement::is_zero() const {
    for (const auto &c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coords_.size(); i++)
        if (coords_[i] != 0) return false;
    return true;
}

Q FieldElement::rational_value() const {
    if (!is_rational())
        throw std::domain_error("element is not rational");
    Q r(coords_.empty() ? Z(0) : coords_[0], den_);
    r.canonicalize();
    return r;
}

ZPoly FieldElement::coord_poly() const {
    ZPoly r = coords_;
    ztrim(r);
    return r;
}

FieldElement FieldElement::operator+(const FieldElement &o) const {
    check_same_field(*this, o);
    std::vector<Z> c(coords_.size());
    for (size_t i = 0; i < c.size(); i++)
        c[i] = coords_[i] * o.den_ + o.coords_[i] * den_;
    return FieldElement(field_, std::move(c), den_ * o.den_);
}

FieldElement FieldElement::operator-(const FieldElement &o) const {
    return *this + (-o);
}

FieldElement FieldElement::operator-() const {
    std::vector<Z> c(coords_.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = -coords_[i];
    return FieldElement(field_, std::move(c), den_);
}

FieldElement FieldElement::operator*(const FieldElement &o) const {
    check_same_field(*this, o);
    ZPoly prod = zmul(coord_poly(), o.coord_poly());
    ZPoly red = zmod_monic(prod, field_->min_poly());
    return FieldElement(field_, std::move(red), den_ * o.den_);
}

bool FieldElement::operator==(const FieldElement &o) const {
    check_same_field(*this, o);
    return den_ == o.den_ && coords_ == o.coords_;
}

FieldElement FieldElement::scaled(const Q &c) const {
    Q cc = c;
    cc.canonicalize();
    std::vector<Z> v(coords_.size());
    for (size_t i = 0; i < v.size(); i++) v[i] = coords_[i] * cc.get_num();
    return FieldElement(field_, std::move(v), den_ * cc.get_den());
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    QPoly f(coords_.size());
    for (size_t i = 0; i < coords_.size(); i++) {
        f[i] = Q(coords_[i], den_);
        f[i].canonicalize();
    }
    qtrim(f);
    QXgcd x = qxgcd(f, to_q(field_->min_poly()));
    if (qdeg(x.g) != 0)
        throw std::runtime_error("inverse: gcd with minimal polynomial not 1");
    // x.s * f = 1 mod min_poly (g is monic, i.e. the constant 1)
    Z lcm(1);
    for (const auto &c : x.s)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Z> v(x.s.size());
    for (size_t i = 0; i < x.s.size(); i++) {
        Q t = x.s[i] * Q(lcm);
        t.canonicalize();
        assert(t.get_den() == 1);
        v[i] = t.get_num();
    }
    return FieldElement(field_, std::move(v), lcm);
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement acc = field_->from_int(1);
    FieldElement base = *this;
    unsigned long ue = static_cast<unsigned long>(e);
    while (ue) {
        if (ue & 1) acc = acc * base;
        base = base * base;
        ue >>= 1;
    }
    return acc;
}

// --- field construction ---------------------------------------------------

FieldPtr RealCyclotomicField::build_full(long n) {
    if (n < 3 || n % 4 == 2)
        throw std::invalid_argument("conductor must be >= 3 and not 2 mod 4");
    long d = euler_phi(n) / 2;

    auto F = std::shared_ptr<RealCyclotomicField>(new RealCyclotomicField());
    F->conductor_ = n;
    F->degree_ = d;
    F->subfield_ = false;

    for (long a = 1; 2 * a <= n; a++)
        if (std::gcd(a, n) == 1) F->class_reps_.push_back(a);
    if (static_cast<long>(F->class_reps_.size()) != d)
        throw std::logic_error("class representative count mismatch");

    // Expand prod_a (x - theta_a) with x-coefficients in Z[y]/(y^n - 1),
    // where theta_a = y^a + y^{n-a}; project to Z at the end via Phi_n.
    std::vector<std::vector<Z>> cf(1, std::vector<Z>(n, Z(0)));
    cf[0][0] = 1;
    for (long a : F->class_reps_) {
        std::vector<std::vector<Z>> nx(cf.size() + 1, std::vector<Z>(n, Z(0)));
        for (size_t i = 0; i < cf.size(); i++) {
            for (long j = 0; j < n; j++) {
                nx[i + 1][j] += cf[i][j];
                nx[i][(j + a) % n] -= cf[i][j];
                nx[i][(j - a + n) % n] -= cf[i][j];
            }
        }
        cf = std::move(nx);
    }
    ZPoly phi = cyclotomic(n);
    ZPoly m(cf.size());
    for (size_t i = 0; i < cf.size(); i++) {
        ZPoly v = cf[i];
        ztrim(v);
        ZPoly r = zmod_monic(v, phi);
        if (zdeg(r) > 0)
            throw std::logic_error("minimal polynomial coefficient not rational");
        m[i] = r.empty() ? Z(0) : r[0];
    }
    ztrim(m);
    if (zdeg(m) != d || m.back() != 1)
        throw std::logic_error("minimal polynomial is not monic of the right degree");
    F->min_poly_ = m;

    // Conjugates theta_a = V_a(theta) mod m via the Chebyshev-type recurrence.
    long maxrep = F->class_reps_.back();
    std::vector<ZPoly> V(maxrep + 1);
    V[0] = {Z(2)};
    if (maxrep >= 1) V[1] = {Z(0), Z(1)};
    for (long j = 2; j <= maxrep; j++) {
        ZPoly t = V[j - 1];
        t.insert(t.begin(), Z(0));
        V[j] = zmod_monic(zsub(t, V[j - 2]), m);
    }
    FieldPtr self = F;
    for (long a : F->class_reps_) {
        F->conjugates_.emplace_back(self, V[a]);
        F->embeddings_.push_back(Embedding{{a}});
    }
    return self;
}

FieldPtr RealCyclotomicField::build(long p, bool subfield) {
    if (!is_prime_long(p) || p < 3)
        throw std::invalid_argument("p must be an odd prime");
    if (!subfield) return build_full(p);
    if (p % 4 != 1)
        throw std::invalid_argument("subfield requires p = 1 mod 4");

    FieldPtr parent = build_full(p);
    long dsub = (p - 1) / 4;

    // The unique class of order 2 in the cyclic group (Z/p)^x / {+-1}.
    long tau = 0;
    for (long a : parent->class_reps()) {
        if (a != 1 && parent->fold(a * a) == 1) {
            tau = a;
            break;
        }
    }
    if (tau == 0) throw std::logic_error("no involution found");

    std::vector<long> cosets;
    for (long a : parent->class_reps()) {
        long b = parent->fold(a * tau);
        if (a <= b) cosets.push_back(a);
    }
    std::sort(cosets.begin(), cosets.end());
    if (static_cast<long>(cosets.size()) != dsub)
        throw std::logic_error("coset count mismatch");

    auto F = std::shared_ptr<RealCyclotomicField>(new RealCyclotomicField());
    F->conductor_ = p;
    F->degree_ = dsub;
    F->subfield_ = true;
    F->involution_ = tau;
    F->parent_ = parent;
    F->class_reps_ = cosets;

    FieldElement gen = theta(parent, 1) + theta(parent, tau);
    F->gen_in_parent_ = gen;

    // sigma_a(theta') for each coset representative, inside the parent.
    std::vector<FieldElement> conj_par;
    for (long a : cosets)
        conj_par.push_back(theta(parent, a) +
                           theta(parent, parent->fold(a * tau)));

    // min poly: product of (x - sigma_a(theta')) with parent coefficients.
    std::vector<FieldElement> mc = {parent->from_int(1)};
    for (const auto &c : conj_par) {
        std::vector<FieldElement> nx(mc.size() + 1, parent->from_int(0));
        for (size_t i = 0; i < mc.size(); i++) {
            nx[i + 1] = nx[i + 1] + mc[i];
            nx[i] = nx[i] - c * mc[i];
        }
        mc = std::move(nx);
    }
    ZPoly m(mc.size());
    for (size_t i = 0; i < mc.size(); i++) {
        Q v = mc[i].rational_value();
        if (v.get_den() != 1)
            throw std::logic_error("subfield minimal polynomial not integral");
        m[i] = v.get_num();
    }
    ztrim(m);
    if (zdeg(m) != dsub || m.back() != 1)
        throw std::logic_error("subfield minimal polynomial malformed");
    F->min_poly_ = m;

    // Power matrix of theta' in the parent basis; theta' is an algebraic
    // integer and Z[theta] is the full ring of integers, so the columns
    // are integral.
    long dpar = parent->degree();
    F->conv_M_.assign(dpar, std::vector<Z>(dsub, Z(0)));
    FieldElement pw = parent->from_int(1);
    for (long j = 0; j < dsub; j++) {
        if (pw.den() != 1)
            throw std::logic_error("power of subfield generator not integral");
        for (long i = 0; i < dpar; i++) F->conv_M_[i][j] = pw.coords()[i];
        if (j + 1 < dsub) pw = pw * gen;
    }

    // Choose dsub rows with an invertible square submatrix.
    std::vector<std::vector<Q>> work;
    for (long r = 0; r < dpar && static_cast<long>(F->conv_rows_.size()) < dsub;
         r++) {
        std::vector<Q> row(dsub);
        for (long j = 0; j < dsub; j++) row[j] = Q(F->conv_M_[r][j]);
        // eliminate against rows already chosen
        std::vector<std::vector<Q>> trial = work;
        trial.push_back(row);
        // rank via fresh Gaussian elimination (tiny matrices)
        std::vector<std::vector<Q>> G = trial;
        size_t rank = 0;
        for (long col = 0; col < dsub && rank < G.size(); col++) {
            size_t piv = rank;
            while (piv < G.size() && G[piv][col] == 0) piv++;
            if (piv == G.size()) continue;
            std::swap(G[rank], G[piv]);
            for (size_t i = 0; i < G.size(); i++) {
                if (i == rank || G[i][col] == 0) continue;
                Q f = G[i][col] / G[rank][col];
                for (long j2 = col; j2 < dsub; j2++)
                    G[i][j2] -= f * G[rank][j2];
            }
            rank++;
        }
        if (rank == trial.size()) {
            work = std::move(trial);
            F->conv_rows_.push_back(static_cast<size_t>(r));
        }
    }
    if (static_cast<long>(F->conv_rows_.size()) != dsub)
        throw std::logic_error("power matrix is rank-deficient");

    // Invert the selected square submatrix over Q (Gauss-Jordan).
    std::vector<std::vector<Q>> A(dsub, std::vector<Q>(2 * dsub, Q(0)));
    for (long i = 0; i < dsub; i++) {
        for (long j = 0; j < dsub; j++) A[i][j] = Q(F->conv_M_[F->conv_rows_[i]][j]);
        A[i][dsub + i] = 1;
    }
    for (long col = 0; col < dsub; col++) {
        long piv = col;
        while (piv < dsub && A[piv][col] == 0) piv++;
        if (piv == dsub) throw std::logic_error("singular conversion matrix");
        std::swap(A[col], A[piv]);
        Q inv = Q(1) / A[col][col];
        for (long j = 0; j < 2 * dsub; j++) A[col][j] *= inv;
        for (long i = 0; i < dsub; i++) {
            if (i == col || A[i][col] == 0) continue;
            Q f = A[i][col];
            for (long j = 0; j < 2 * dsub; j++) A[i][j] -= f * A[col][j];
        }
    }
    F->conv_inv_.assign(dsub, std::vector<Q>(dsub));
    for (long i = 0; i < dsub; i++)
        for (long j = 0; j < dsub; j++) F->conv_inv_[i][j] = A[i][dsub + j];

    FieldPtr self = F;
    for (size_t i = 0; i < cosets.size(); i++) {
        F->conjugates_.push_back(to_subfield(self, conj_par[i]));
        F->embeddings_.push_back(
            Embedding{{cosets[i], parent->fold(cosets[i] * tau)}});
    }
    return self;
}

long RealCyclotomicField::fold(long a) const {
    long n = conductor_;
    long r = ((a % n) + n) % n;
    if (r == 0) throw std::invalid_argument("fold: index divisible by conductor");
    if (2 * r > n) r = n - r;
    if (!subfield_) return r;
    long b = parent_->fold(r * involution_);
    return std::min(r, b);
}

int RealCyclotomicField::class_index(long a) const {
    if (std::gcd(((a % conductor_) + conductor_) % conductor_, conductor_) != 1)
        throw std::invalid_argument("index not invertible mod conductor");
    long r = fold(a);
    for (size_t i = 0; i < class_reps_.size(); i++)
        if (class_reps_[i] == r) return static_cast<int>(i);
    throw std::logic_error("class representative not found");
}

FieldElement RealCyclotomicField::element(std::vector<Z> coords, Z den) const {
    return FieldElement(shared_from_this(), std::move(coords), std::move(den));
}

FieldElement RealCyclotomicField::from_int(const Z &c) const {
    return element({c});
}

FieldElement RealCyclotomicField::from_q(const Q &c) const {
    Q v = c;
    v.canonicalize();
    return element({Z(v.get_num())}, Z(v.get_den()));
}

FieldElement RealCyclotomicField::generator() const {
    if (degree_ == 1) {
        // degree-1 field: the generator equals the root of the linear
        // minimal polynomial x + c.
        return element({-min_poly_[0]});
    }
    return element({Z(0), Z(1)});
}

// --- operations -----------------------------------------------------------

FieldElement eval_poly_at(const ZPoly &f, const FieldElement &t) {
    const auto &F = t.field();
    if (f.empty()) return F->from_int(0);
    FieldElement acc = F->from_int(f.back());
    for (size_t i = f.size() - 1; i-- > 0;)
        acc = acc * t + F->from_int(f[i]);
    return acc;
}

FieldElement theta_any(const FieldPtr &field, long j) {
    if (field->is_subfield())
        throw std::invalid_argument("theta lives in the full real subfield");
    if (j < 0) j = -j;
    j %= field->conductor();
    j = std::min(j, field->conductor() - j);
    FieldElement v0 = field->from_int(2);
    if (j == 0) return v0;
    FieldElement v1 = field->generator();
    FieldElement x = v1;
    for (long i = 2; i <= j; i++) {
        FieldElement v2 = x * v1 - v0;
        v0 = v1;
        v1 = v2;
    }
    return v1;
}

FieldElement theta(const FieldPtr &field, long j) {
    long n = field->conductor();
    long jmax = (n % 2) ? (n - 1) / 2 : n / 2;
    if (j < 1 || j > jmax)
        throw std::invalid_argument("theta index out of range");
    return theta_any(field, j);
}

FieldElement galois_apply(const FieldPtr &field, long a, const FieldElement &x) {
    int idx = field->class_index(a);
    const FieldElement &c = field->conjugate_of_generator(idx);
    FieldElement num = eval_poly_at(x.coord_poly(), c);
    return num.scaled(Q(Z(1), x.den()));
}

Q norm(const FieldElement &x) {
    const auto &F = x.field();
    if (x.is_zero()) return Q(0);
    FieldElement prod = F->from_int(1);
    ZPoly np = x.coord_poly();
    for (long i = 0; i < F->degree(); i++)
        prod = prod * eval_poly_at(np, F->conjugate_of_generator(static_cast<int>(i)));
    Q r = prod.rational_value();
    Z dp;
    mpz_pow_ui(dp.get_mpz_t(), x.den().get_mpz_t(),
               static_cast<unsigned long>(F->degree()));
    r /= Q(dp);
    r.canonicalize();
    return r;
}

std::vector<int> embedding_signs(const FieldElement &x) {
    const auto &F = x.field();
    if (x.is_zero())
        throw std::invalid_argument("embedding signs of zero are undefined");
    ZPoly np = x.coord_poly();
    long n = F->conductor();
    for (mpfr_prec_t prec = 64; prec <= (1 << 20); prec *= 2) {
        std::vector<int> signs;
        bool ok = true;
        for (const auto &emb : F->embeddings()) {
            RInterval t(prec);
            bool first = true;
            for (long k : emb.cos_indices) {
                RInterval c = RInterval::two_cos(k, n, prec);
                t = first ? c : t.add(c);
                first = false;
            }
            RInterval val = eval_interval(np, t);
            int s = val.sign();
            if (s == 0) {
                ok = false;
                break;
            }
            signs.push_back(s);
        }
        if (ok) return signs;
    }
    throw std::runtime_error("embedding signs did not resolve at max precision");
}

std::vector<PrimeAboveQ> split_prime(const FieldPtr &field, long q) {
    if (!is_prime_long(q)) throw std::invalid_argument("q must be prime");
    if (field->conductor() % q == 0)
        throw std::invalid_argument(
            "q ramifies in this field; use val_at_p for the ramified prime");
    uint64_t uq = static_cast<uint64_t>(q);
    FqPoly mq = reduce_poly_mod(field->min_poly(), uq);
    FqPoly d = fqpoly::deriv(mq, uq);
    if (fqpoly::deg(fqpoly::gcd(mq, d, uq)) != 0)
        throw std::logic_error("minimal polynomial not squarefree mod q");
    std::vector<FqPoly> factors = factor_squarefree(mq, uq);
    long total = 0;
    for (const auto &g : factors) total += fqpoly::deg(g);
    if (total != field->degree())
        throw std::logic_error("factor degrees do not sum to the field degree");
    std::vector<PrimeAboveQ> out;
    for (size_t i = 0; i < factors.size(); i++) {
        PrimeAboveQ P;
        P.q = q;
        P.f = static_cast<int>(fqpoly::deg(factors[i]));
        P.index = static_cast<int>(i);
        P.local_factor = factors[i];
        P.rf = std::make_shared<ResidueField>(uq, factors[i]);
        out.push_back(std::move(P));
    }
    return out;
}

ResidueField::Elt reduce(const FieldElement &x, const PrimeAboveQ &P) {
    const auto &rf = *P.rf;
    Z dm = x.den() % P.q;
    if (dm == 0)
        throw std::invalid_argument("denominator not invertible mod q");
    ResidueField::Elt X = rf.from_poly({0, 1});
    ResidueField::Elt acc = rf.zero();
    ZPoly np = x.coord_poly();
    for (size_t i = np.size(); i-- > 0;)
        acc = rf.add(rf.mul(acc, X), rf.from_scalar(np[i]));
    uint64_t dinv =
        invmod_u64(static_cast<uint64_t>(dm.get_ui()), rf.q());
    return rf.mul_scalar(acc, dinv);
}

uint64_t residue_norm_to_prime_field(const ResidueField::Elt &r,
                                     const PrimeAboveQ &P) {
    return P.rf->norm_to_prime_field(r);
}

long val_at_p(const FieldElement &x) {
    const auto &F = x.field();
    long p = F->conductor();
    if (!is_prime_long(p))
        throw std::invalid_argument("val_at_p needs a prime conductor");
    if (x.is_zero()) throw std::invalid_argument("valuation of zero");
    // p is totally ramified with residue degree 1 in both K and K', so
    // ord at the prime above p equals ord_p of the norm.
    Q N = norm(x);
    return ord_in(Z(N.get_num()), p) - ord_in(Z(N.get_den()), p);
}

long val_at_unramified_prime(const FieldElement &x, const PrimeAboveQ &P) {
    if (x.is_zero()) throw std::invalid_argument("valuation of zero");
    if (x.den() % P.q == 0)
        throw std::invalid_argument("element is not q-integral");
    const ZPoly &m = x.field()->min_poly();
    ZPoly np = x.coord_poly();
    uint64_t q = static_cast<uint64_t>(P.q);
    for (long k = 8; k <= (1 << 16); k *= 2) {
        ZPoly ghat = hensel_lift_factor(m, P.local_factor, q, k);
        Z Nk(1);
        mpz_pow_ui(Nk.get_mpz_t(), Z(P.q).get_mpz_t(),
                   static_cast<unsigned long>(k));
        ZPoly quo, A;
        pdivmod(np, ghat, Nk, quo, A);
        if (A.empty()) continue;  // valuation >= k: inconclusive, lift further
        long v = -1;
        for (const auto &c : A) {
            if (c == 0) continue;
            long o = ord_in(c, P.q);
            if (v < 0 || o < v) v = o;
        }
        if (v < k) return v;  // stability certificate
    }
    throw std::runtime_error("unramified valuation did not stabilize");
}

long val_q_fractional(const FieldElement &x, const PrimeAboveQ &P) {
    if (x.is_zero()) throw std::invalid_argument("valuation of zero");
    FieldElement num = x.field()->element(x.coords());
    long vden = 0;
    Z d = x.den();
    if (d % P.q == 0) vden = ord_in(d, P.q);
    return val_at_unramified_prime(num, P) - vden;
}

FieldElement to_subfield(const FieldPtr &sub, const FieldElement &x) {
    if (!sub->is_subfield())
        throw std::invalid_argument("target is not a subfield");
    check_same_field(x, sub->parent()->from_int(0));
    long dsub = sub->degree();
    long dpar = sub->parent()->degree();
    std::vector<Q> t(dsub, Q(0));
    for (long i = 0; i < dsub; i++) {
        for (long r = 0; r < dsub; r++)
            t[i] += sub->conv_inv_[i][r] * Q(x.coords()[sub->conv_rows_[r]]);
        t[i] /= Q(x.den());
        t[i].canonicalize();
    }
    // verify on all parent coordinates, not just the selected rows
    for (long i = 0; i < dpar; i++) {
        Q acc(0);
        for (long j = 0; j < dsub; j++) acc += Q(sub->conv_M_[i][j]) * t[j];
        Q want(x.coords()[i], x.den());
        want.canonicalize();
        if (acc != want)
            throw std::domain_error("element does not lie in the subfield");
    }
    Z lcm(1);
    for (const auto &c : t)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Z> v(dsub);
    for (long i = 0; i < dsub; i++) {
        Q w = t[i] * Q(lcm);
        w.canonicalize();
        v[i] = w.get_num();
    }
    return FieldElement(sub, std::move(v), lcm);
}

}  // namespace cyclofrey
