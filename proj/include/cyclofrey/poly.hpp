#ifndef CYCLOFREY_POLY_HPP
#define CYCLOFREY_POLY_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace cyclofrey {

using Z = mpz_class;
using Q = mpq_class;

// Dense univariate polynomials, constant term first, no trailing zeros.
using ZPoly = std::vector<Z>;
using QPoly = std::vector<Q>;

inline void ztrim(ZPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline void qtrim(QPoly &f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long zdeg(const ZPoly &f) { return static_cast<long>(f.size()) - 1; }
inline long qdeg(const QPoly &f) { return static_cast<long>(f.size()) - 1; }

ZPoly zadd(const ZPoly &a, const ZPoly &b);
ZPoly zsub(const ZPoly &a, const ZPoly &b);
ZPoly zmul(const ZPoly &a, const ZPoly &b);
ZPoly zscale(const ZPoly &a, const Z &c);
Z zeval(const ZPoly &f, const Z &x);

// Quotient of exact division; throws if the division leaves a remainder.
ZPoly zdiv_exact(const ZPoly &a, const ZPoly &b);

// Remainder of a modulo monic m.
ZPoly zmod_monic(const ZPoly &a, const ZPoly &m);

// Formal derivative.
ZPoly zderiv(const ZPoly &f);

// n-th cyclotomic polynomial, computed by dividing x^n - 1 by the lower
// cyclotomic factors.
ZPoly cyclotomic(long n);

QPoly to_q(const ZPoly &f);
QPoly qmul(const QPoly &a, const QPoly &b);
QPoly qsub(const QPoly &a, const QPoly &b);
QPoly qscale(const QPoly &a, const Q &c);
// a mod b with b not necessarily monic (rational arithmetic).
QPoly qrem(const QPoly &a, const QPoly &b);

// Resultant Res_x(f, g) over the rationals.
Q resultant(const QPoly &f, const QPoly &g);

// Extended gcd: returns (g, s, t) with s*f + t*m = g, g monic (or zero).
struct QXgcd {
    QPoly g, s, t;
};
QXgcd qxgcd(const QPoly &f, const QPoly &m);

// Write a rational as a string (diagnostics).
std::string qstr(const Q &x);

}  // namespace cyclofrey

#endif
