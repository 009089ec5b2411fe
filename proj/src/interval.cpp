#include "cyclofrey/interval.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cyclofrey {

RInterval::RInterval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RInterval::RInterval(const RInterval &o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RInterval::RInterval(RInterval &&o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RInterval &RInterval::operator=(RInterval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RInterval::~RInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RInterval RInterval::from_z(const Z &v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::from_q(const Q &v, mpfr_prec_t prec) {
    RInterval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

RInterval RInterval::two_cos(long k, long n, mpfr_prec_t prec) {
    // angle = 2*pi*k/n, evaluated with outward rounding; cos is then
    // bounded by sampling both endpoints in both rounding modes, padded
    // by one ulp (cos is monotone on subintervals shorter than pi, and
    // the angle interval here is a few ulps wide).
    RInterval r(prec);
    mpfr_t pi_lo, pi_hi, a_lo, a_hi, t;
    mpfr_inits2(prec, pi_lo, pi_hi, a_lo, a_hi, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_const_pi(pi_hi, MPFR_RNDU);
    long kk = ((k % n) + n) % n;
    mpfr_mul_si(a_lo, pi_lo, 2 * kk, MPFR_RNDD);
    mpfr_mul_si(a_hi, pi_hi, 2 * kk, MPFR_RNDU);
    mpfr_div_si(a_lo, a_lo, n, MPFR_RNDD);
    mpfr_div_si(a_hi, a_hi, n, MPFR_RNDU);
    // candidate endpoint values
    mpfr_t c[4];
    for (auto &x : c) mpfr_init2(x, prec);
    mpfr_cos(c[0], a_lo, MPFR_RNDD);
    mpfr_cos(c[1], a_lo, MPFR_RNDU);
    mpfr_cos(c[2], a_hi, MPFR_RNDD);
    mpfr_cos(c[3], a_hi, MPFR_RNDU);
    mpfr_set(r.lo_, c[0], MPFR_RNDD);
    mpfr_set(r.hi_, c[1], MPFR_RNDU);
    for (int i = 2; i < 4; i++) {
        if (mpfr_cmp(c[i], r.lo_) < 0) mpfr_set(r.lo_, c[i], MPFR_RNDD);
        if (mpfr_cmp(c[i], r.hi_) > 0) mpfr_set(r.hi_, c[i], MPFR_RNDU);
    }
    mpfr_nextbelow(r.lo_);
    mpfr_nextabove(r.hi_);
    mpfr_mul_si(r.lo_, r.lo_, 2, MPFR_RNDD);
    mpfr_mul_si(r.hi_, r.hi_, 2, MPFR_RNDU);
    for (auto &x : c) mpfr_clear(x);
    mpfr_clears(pi_lo, pi_hi, a_lo, a_hi, t, static_cast<mpfr_ptr>(nullptr));
    return r;
}

RInterval RInterval::add(const RInterval &o) const {
    RInterval r(prec_);
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

RInterval RInterval::sub(const RInterval &o) const {
    RInterval r(prec_);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

RInterval RInterval::mul(const RInterval &o) const {
    RInterval r(prec_);
    mpfr_t cand;
    mpfr_init2(cand, prec_);
    bool first_lo = true, first_hi = true;
    const mpfr_t *xs[2] = {&lo_, &hi_};
    const mpfr_t *ys[2] = {&o.lo_, &o.hi_};
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) {
            mpfr_mul(cand, *xs[i], *ys[j], MPFR_RNDD);
            if (first_lo || mpfr_cmp(cand, r.lo_) < 0) mpfr_set(r.lo_, cand, MPFR_RNDD);
            first_lo = false;
            mpfr_mul(cand, *xs[i], *ys[j], MPFR_RNDU);
            if (first_hi || mpfr_cmp(cand, r.hi_) > 0) mpfr_set(r.hi_, cand, MPFR_RNDU);
            first_hi = false;
        }
    mpfr_clear(cand);
    return r;
}

RInterval RInterval::neg() const {
    RInterval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

int RInterval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

double RInterval::mid() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2.0;
}

double RInterval::log_abs_upper() const {
    double a = std::fabs(mpfr_get_d(lo_, MPFR_RNDN));
    double b = std::fabs(mpfr_get_d(hi_, MPFR_RNDN));
    return std::log(std::max(a, b));
}

RInterval eval_interval(const ZPoly &f, const RInterval &t) {
    RInterval acc(t.prec());
    if (f.empty()) return acc;
    acc = RInterval::from_z(f.back(), t.prec());
    for (size_t i = f.size() - 1; i-- > 0;)
        acc = acc.mul(t).add(RInterval::from_z(f[i], t.prec()));
    return acc;
}

}  // namespace cyclofrey
