#ifndef CYCLOFREY_INTERVAL_HPP
#define CYCLOFREY_INTERVAL_HPP

#include <mpfr.h>

#include "cyclofrey/poly.hpp"

namespace cyclofrey {

// Closed interval [lo, hi] with outward-rounded mpfr endpoints.
class RInterval {
  public:
    explicit RInterval(mpfr_prec_t prec);
    RInterval(const RInterval &o);
    RInterval(RInterval &&o) noexcept;
    RInterval &operator=(RInterval o);
    ~RInterval();

    static RInterval from_z(const Z &v, mpfr_prec_t prec);
    static RInterval from_q(const Q &v, mpfr_prec_t prec);
    // [2cos(2*pi*k/n)] with rigorous outward rounding.
    static RInterval two_cos(long k, long n, mpfr_prec_t prec);

    RInterval add(const RInterval &o) const;
    RInterval sub(const RInterval &o) const;
    RInterval mul(const RInterval &o) const;
    RInterval neg() const;

    // +1 if lo > 0, -1 if hi < 0, 0 if the interval straddles zero.
    int sign() const;
    bool contains_zero() const { return sign() == 0; }
    double mid() const;
    // log of max(|lo|,|hi|); requires 0 not in the interval for meaningful use.
    double log_abs_upper() const;

    mpfr_prec_t prec() const { return prec_; }

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

// Interval Horner evaluation of an integer polynomial at t.
RInterval eval_interval(const ZPoly &f, const RInterval &t);

}  // namespace cyclofrey

#endif
