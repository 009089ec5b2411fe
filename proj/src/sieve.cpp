#include "cyclofrey/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cyclofrey/hnf.hpp"

#include <json.hpp>

namespace cyclofrey {

namespace {

using Elt = ResidueField::Elt;

// ---- rational Sturm sequences (Hasse validation) -------------------------

QPoly qderiv(const QPoly &f) {
    QPoly d;
    for (size_t i = 1; i < f.size(); i++) d.push_back(f[i] * Q(i));
    qtrim(d);
    return d;
}

std::vector<QPoly> sturm_chain(const QPoly &f) {
    std::vector<QPoly> chain{f, qderiv(f)};
    while (qdeg(chain.back()) > 0) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        qtrim(r);
        if (r.empty()) break;
        for (auto &c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_of(const Q &x) { return sgn(x); }

// sign of f at 0, or at +-infinity (where = -1, 0, +1 select the point)
int chain_sign(const QPoly &f, int where) {
    if (f.empty()) return 0;
    if (where == 0) {
        for (const auto &c : f)
            if (c != 0) return sign_of(f[0]);
        return 0;
    }
    int s = sign_of(f.back());
    if (where < 0 && (qdeg(f) % 2)) s = -s;
    return s;
}

long variations(const std::vector<QPoly> &chain, int where) {
    long v = 0;
    int prev = 0;
    for (const auto &f : chain) {
        int s = chain_sign(f, where);
        if (s == 0) continue;
        if (prev != 0 && s != prev) v++;
        prev = s;
    }
    return v;
}

QPoly squarefree_part(const QPoly &f) {
    auto d = qderiv(f);
    if (d.empty()) return f;
    auto g = qxgcd(f, d).g;
    if (qdeg(g) < 1) return f;
    // exact division f / g
    QPoly num = f, quot(qdeg(f) - qdeg(g) + 1, Q(0));
    for (long i = qdeg(num); i >= qdeg(g); i--) {
        Q c = num[i] / g.back();
        quot[i - qdeg(g)] = c;
        for (long j = 0; j <= qdeg(g); j++) num[i - qdeg(g) + j] -= c * g[j];
    }
    qtrim(quot);
    return quot;
}

long real_root_count(const QPoly &f) {  // distinct real roots
    auto chain = sturm_chain(f);
    return variations(chain, -1) - variations(chain, +1);
}

long negative_root_count(const QPoly &f) {  // distinct roots in (-inf, 0)
    QPoly g = f;
    while (!g.empty() && g[0] == 0) g.erase(g.begin());  // drop roots at 0
    auto chain = sturm_chain(g);
    return variations(chain, -1) - variations(chain, 0);
}

// ---- Z[theta_f] helpers --------------------------------------------------

std::vector<Z> pad_to(ZPoly v, long d) {
    v.resize(d, Z(0));
    return v;
}

std::vector<Z> order_mul(const ZPoly &hecke, const std::vector<Z> &a,
                         const std::vector<Z> &b) {
    ZPoly pa = a, pb = b;
    ztrim(pa);
    ztrim(pb);
    return pad_to(zmod_monic(zmul(pa, pb), hecke), zdeg(hecke));
}

bool elt_is_zero(const std::vector<Z> &a) {
    for (const auto &x : a)
        if (x != 0) return false;
    return true;
}

// characteristic polynomial of multiplication by b in Q[x]/(h),
// by Faddeev-LeVerrier on the multiplication matrix
QPoly char_poly_of(const ZPoly &hecke, const std::vector<Z> &b4n) {
    long k = zdeg(hecke);
    // columns: b4n * x^j mod hecke
    std::vector<std::vector<Q>> M(k, std::vector<Q>(k));
    ZPoly cur = b4n;
    ztrim(cur);
    for (long j = 0; j < k; j++) {
        for (long i = 0; i < k; i++)
            M[i][j] = (i < static_cast<long>(cur.size())) ? Q(cur[i]) : Q(0);
        cur = zmod_monic(zmul(cur, ZPoly{Z(0), Z(1)}), hecke);
    }
    std::vector<Q> c(k + 1, Q(0));
    c[k] = 1;
    std::vector<std::vector<Q>> A = M;
    for (long i = 1; i <= k; i++) {
        Q tr(0);
        for (long t = 0; t < k; t++) tr += A[t][t];
        c[k - i] = -tr / Q(i);
        if (i == k) break;
        for (long t = 0; t < k; t++) A[t][t] += c[k - i];
        std::vector<std::vector<Q>> B(k, std::vector<Q>(k, Q(0)));
        for (long r = 0; r < k; r++)
            for (long s = 0; s < k; s++)
                for (long t = 0; t < k; t++) B[r][s] += M[r][t] * A[t][s];
        A = std::move(B);
    }
    return c;
}

// |a|^2 <= 4N under every embedding of the totally real Q_f
void check_hasse(const ZPoly &hecke, const std::vector<Z> &a, const Z &nq,
                 const std::string &where) {
    long k = zdeg(hecke);
    if (k == 1) {
        if (a[0] * a[0] > 4 * nq)
            throw std::invalid_argument("Hasse bound violated at " + where);
        return;
    }
    // conjugates of 4N - a^2 must all be >= 0
    std::vector<Z> b = order_mul(hecke, a, a);
    for (auto &x : b) x = -x;
    b[0] += 4 * nq;
    QPoly cp = squarefree_part(char_poly_of(hecke, b));
    if (real_root_count(cp) != qdeg(cp))
        throw std::invalid_argument("Hecke element has complex conjugates at " +
                                    where);
    if (negative_root_count(cp) != 0)
        throw std::invalid_argument("Hasse bound violated at " + where);
}

// ---- point counting ------------------------------------------------------

Z count_points_impl(const ResidueField &rf, const Elt &a1, const Elt &a2,
                    const Elt &a3, const Elt &a4, const Elt &a6) {
    Z total(1);  // point at infinity
    Z order = rf.order();
    bool char2 = rf.q() == 2;
    // square table for small odd fields, Euler criterion otherwise
    std::set<Elt> squares;
    bool use_table = !char2 && order <= 100000;
    auto xs = rf.all_elements();
    if (use_table)
        for (const auto &e : xs) squares.insert(rf.mul(e, e));
    for (const auto &x : xs) {
        Elt A = rf.add(rf.mul(a1, x), a3);
        Elt B = rf.add(rf.mul(rf.add(rf.mul(rf.add(x, a2), x), a4), x), a6);
        if (char2) {
            if (rf.is_zero(A)) {
                total += 1;  // squaring is bijective
                continue;
            }
            Elt ai = rf.inv(A);
            Elt b = rf.mul(B, rf.mul(ai, ai));
            Elt tr = rf.zero();
            Elt cur = b;
            for (int i = 0; i < rf.f(); i++) {
                tr = rf.add(tr, cur);
                cur = rf.mul(cur, cur);
            }
            if (rf.is_zero(tr)) total += 2;
            continue;
        }
        // (2y + A)^2 = A^2 + 4B
        Elt C = rf.add(rf.mul(A, A), rf.mul_scalar(B, 4 % rf.q()));
        if (rf.is_zero(C)) {
            total += 1;
        } else if (use_table ? squares.count(C) != 0 : rf.is_square(C)) {
            total += 2;
        }
    }
    return total;
}

void run_chunked(long n, int threads, const std::function<void(long, long)> &f) {
    if (threads <= 1 || n < 2) {
        f(0, n);
        return;
    }
    long chunk = (n + threads - 1) / threads;
    std::vector<std::thread> ts;
    for (long lo = 0; lo < n; lo += chunk)
        ts.emplace_back(f, lo, std::min(n, lo + chunk));
    for (auto &t : ts) t.join();
}

}  // namespace

// ---- ideals --------------------------------------------------------------

HeckeIdeal ideal_from_elements(const ZPoly &hecke,
                               const std::vector<std::vector<Z>> &elems) {
    long d = zdeg(hecke);
    HeckeIdeal out;
    out.deg = d;
    std::vector<std::vector<Z>> rows;
    for (const auto &e : elems) {
        if (static_cast<long>(e.size()) > d)
            throw std::invalid_argument("element has too many coordinates");
        if (elt_is_zero(e)) continue;
        std::vector<Z> cur = pad_to(e, d);
        for (long i = 0; i < d; i++) {
            rows.push_back(cur);
            if (i + 1 < d) cur = order_mul(hecke, cur, pad_to({Z(0), Z(1)}, d));
        }
    }
    if (rows.empty()) return out;
    out.basis = hnf_rows(rows, d);
    if (static_cast<long>(out.basis.size()) != d)
        throw std::invalid_argument("hecke order has zero divisors");
    return out;
}

HeckeIdeal ideal_mul(const ZPoly &hecke, const HeckeIdeal &a,
                     const HeckeIdeal &b) {
    HeckeIdeal out;
    out.deg = zdeg(hecke);
    if (a.is_zero() || b.is_zero()) return out;
    std::vector<std::vector<Z>> rows;
    for (const auto &ra : a.basis)
        for (const auto &rb : b.basis) rows.push_back(order_mul(hecke, ra, rb));
    out.basis = hnf_rows(rows, out.deg);
    return out;
}

HeckeIdeal ideal_scale(const HeckeIdeal &a, const Z &c) {
    HeckeIdeal out;
    out.deg = a.deg;
    if (c == 0 || a.is_zero()) return out;
    std::vector<std::vector<Z>> rows = a.basis;
    for (auto &r : rows)
        for (auto &x : r) x *= c;
    out.basis = hnf_rows(rows, a.deg);
    return out;
}

HeckeIdeal ideal_add(const HeckeIdeal &a, const HeckeIdeal &b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.deg != b.deg) throw std::invalid_argument("ideal degree mismatch");
    std::vector<std::vector<Z>> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    HeckeIdeal out;
    out.deg = a.deg;
    out.basis = hnf_rows(rows, a.deg);
    return out;
}

Z ideal_norm_value(const HeckeIdeal &a) {
    if (a.is_zero()) return Z(0);
    Z det(1);
    for (long j = 0; j < a.deg; j++) det *= a.basis[j][j];
    return det < 0 ? Z(-det) : det;
}

// ---- point counting (public) ---------------------------------------------

Z count_points(const ResidueField &rf, const Z &a1, const Z &a2, const Z &a3,
               const Z &a4, const Z &a6) {
    if (rf.order() > 10000000)
        throw std::invalid_argument("field too large for exhaustive count");
    return count_points_impl(rf, rf.from_scalar(a1), rf.from_scalar(a2),
                             rf.from_scalar(a3), rf.from_scalar(a4),
                             rf.from_scalar(a6));
}

// ---- Frey reduction ------------------------------------------------------

SieveSetup::SieveSetup(long p, bool dividing, long j, long k, bool twisted)
    : p_(p), dividing_(dividing), twisted_(twisted) {
    if (j == k || j < 1 || k < 1 || j > (p - 1) / 2 || k > (p - 1) / 2)
        throw std::invalid_argument("need distinct j, k in 1..(p-1)/2");
    K_ = RealCyclotomicField::build(p, false);
    if (twisted) {
        if (p % 4 != 1)
            throw std::invalid_argument("twist requires p = 1 mod 4");
        long tau = 0;
        for (long a : K_->class_reps())
            if (a != 1 && K_->fold(a * a) == 1) tau = a;
        if (K_->fold(tau * j) != K_->fold(k))
            throw std::invalid_argument("twist requires tau(theta_j) = theta_k");
        work_ = RealCyclotomicField::build(p, true);
    } else {
        work_ = K_;
    }
    FieldElement tj = theta(K_, j), tk = theta(K_, k);
    FieldElement two = K_->from_int(2);
    if (twisted && !dividing) {
        // twist by (theta_k - 2); for p | x the untwisted model is already
        // tau-symmetric and descends as it stands
        cu2_ = (tk - two) * (tj + two);
        cu0_ = (tk - two) * (tj - two);
        cv2_ = -((tj - two) * (tk + two));
        cv0_ = -((tj - two) * (tk - two));
    } else if (dividing) {
        FieldElement dj = (tj - two).inverse(), dk = (tk - two).inverse();
        cu2_ = (tj + two) * dj;
        cu0_ = K_->from_int(1);
        cv2_ = -((tk + two) * dk);
        cv0_ = K_->from_int(-1);
    } else {
        FieldElement dk = (tk - two).inverse();
        cu2_ = tj + two;
        cu0_ = tj - two;
        cv2_ = -((tj - two) * (tk + two) * dk);
        cv0_ = -(tj - two);
    }
}

FieldElement SieveSetup::s1(long eta, long mu) const {
    Z e2(eta), m2(mu);
    e2 *= e2;
    m2 *= m2;
    FieldElement u = cu2_.scaled(Q(e2)) + cu0_.scaled(Q(m2));
    FieldElement v = cv2_.scaled(Q(e2)) + cv0_.scaled(Q(m2));
    FieldElement r = v - u;
    return twisted_ ? to_subfield(work_, r) : r;
}

FieldElement SieveSetup::s2(long eta, long mu) const {
    Z e2(eta), m2(mu);
    e2 *= e2;
    m2 *= m2;
    FieldElement u = cu2_.scaled(Q(e2)) + cu0_.scaled(Q(m2));
    FieldElement v = cv2_.scaled(Q(e2)) + cv0_.scaled(Q(m2));
    FieldElement r = -(u * v);
    return twisted_ ? to_subfield(work_, r) : r;
}

ReductionResult frey_reduction(const SieveSetup &setup, const ResiduePair &pr,
                               const PrimeAboveQ &P) {
    if (P.q == 2 || setup.p() % P.q == 0)
        throw std::invalid_argument("prime must be coprime to 2p");
    const auto &rf = *P.rf;
    Elt r1 = reduce(setup.s1(pr.eta, pr.mu), P);
    Elt r2 = reduce(setup.s2(pr.eta, pr.mu), P);
    // Y^2 = X (X^2 + s1 X + s2); Delta ~ s2^2 (s1^2 - 4 s2)
    Elt d1 = rf.sub(rf.mul(r1, r1), rf.mul_scalar(r2, 4 % rf.q()));
    bool singular = rf.is_zero(r2) || rf.is_zero(d1);
    ReductionResult res;
    if (!singular) {
        Z count = count_points_impl(rf, rf.zero(), r1, rf.zero(), r2,
                                    rf.zero());
        Z a = rf.order() + 1 - count;
        res.type = ReductionType::good;
        res.trace = static_cast<long>(a.get_si());
        return res;
    }
    // c4 = 16 (s1^2 - 3 s2), c6 = -32 s1 (2 s1^2 - 9 s2)
    Elt c4 = rf.mul_scalar(rf.sub(rf.mul(r1, r1), rf.mul_scalar(r2, 3 % rf.q())),
                           16 % rf.q());
    if (rf.is_zero(c4))
        throw std::logic_error("additive reduction on the A_q grid");
    Elt c6 = rf.mul_scalar(
        rf.mul(r1, rf.sub(rf.mul_scalar(rf.mul(r1, r1), 2 % rf.q()),
                          rf.mul_scalar(r2, 9 % rf.q()))),
        (2 * rf.q() - 32 % rf.q()) % rf.q());
    if (rf.is_zero(c6)) throw std::logic_error("c6 = 0 at a node");
    Elt gamma = rf.neg(rf.mul(c4, rf.inv(c6)));
    res.type = rf.is_square(gamma) ? ReductionType::split_mult
                                   : ReductionType::nonsplit_mult;
    return res;
}

// ---- B values ------------------------------------------------------------

FieldPtr EigenformData::base_field() const {
    return RealCyclotomicField::build(p, kprime);
}

HeckeIdeal b_value(const EigenformData &f, const SieveSetup &setup, long q,
                   const std::vector<PrimeAboveQ> &primes,
                   const ResiduePair &pr) {
    long d = f.deg();
    std::vector<std::vector<Z>> elems;
    for (size_t i = 0; i < primes.size(); i++) {
        auto it = f.eigenvalues.find({q, static_cast<long>(i)});
        if (it == f.eigenvalues.end())
            throw std::invalid_argument(
                "missing eigenvalue for q=" + std::to_string(q) +
                " index=" + std::to_string(i) + " of " + f.label);
        std::vector<Z> af = pad_to(it->second, d);
        auto r = frey_reduction(setup, pr, primes[i]);
        std::vector<Z> b(d, Z(0));
        Z nq = primes[i].rf->order();
        switch (r.type) {
            case ReductionType::good:
                for (long t = 0; t < d; t++) b[t] = -af[t];
                b[0] += r.trace;
                break;
            case ReductionType::split_mult:
                for (long t = 0; t < d; t++) b[t] = -af[t];
                b[0] += nq + 1;
                break;
            case ReductionType::nonsplit_mult:
                b = af;
                b[0] += nq + 1;
                break;
        }
        elems.push_back(std::move(b));
    }
    return ideal_from_elements(f.hecke_poly, elems);
}

HeckeIdeal b_q(const EigenformData &f, const SieveSetup &setup, long q,
               int threads) {
    if (q == 2 || setup.p() % q == 0)
        throw std::invalid_argument("q must be coprime to 2p");
    auto primes = split_prime(setup.work(), q);
    // representatives of {(eta,mu)} / (eta,mu)~(-eta,-mu)
    std::vector<ResiduePair> reps;
    for (long eta = 0; eta < q; eta++)
        for (long mu = 0; mu < q; mu++) {
            if (eta == 0 && mu == 0) continue;
            long pe = (q - eta) % q, pm = (q - mu) % q;
            if (std::make_pair(eta, mu) <= std::make_pair(pe, pm))
                reps.push_back({eta, mu});
        }
    long n = static_cast<long>(reps.size());
    int nt = std::max(1, threads);
    long chunk = (n + nt - 1) / nt;
    std::vector<HeckeIdeal> partial((n + chunk - 1) / chunk);
    run_chunked(n, nt, [&](long lo, long hi) {
        HeckeIdeal acc;
        acc.deg = f.deg();
        bool first = true;
        for (long i = lo; i < hi; i++) {
            auto bv = b_value(f, setup, q, primes, reps[i]);
            auto sq = ideal_mul(f.hecke_poly, bv, bv);  // (-eta,-mu) partner
            acc = first ? sq : ideal_mul(f.hecke_poly, acc, sq);
            first = false;
            if (acc.is_zero()) break;
        }
        partial[lo / chunk] = std::move(acc);
    });
    HeckeIdeal prod;
    prod.deg = f.deg();
    bool first = true;
    for (auto &pi : partial) {
        if (first) {
            prod = std::move(pi);
            first = false;
        } else {
            prod = ideal_mul(f.hecke_poly, prod, pi);
        }
    }
    return ideal_scale(prod, Z(q));
}

SieveReport b_s(const EigenformData &f, const SieveSetup &setup,
                const std::vector<long> &S, int threads) {
    if (S.empty()) throw std::invalid_argument("empty prime set S");
    SieveReport rep;
    rep.label = f.label;
    rep.S = S;
    HeckeIdeal sum;
    sum.deg = f.deg();
    for (long q : S) {
        auto bq = b_q(f, setup, q, threads);
        rep.bq_norms.push_back(ideal_norm_value(bq));
        sum = ideal_add(sum, bq);
    }
    rep.b_s_value = ideal_norm_value(sum);
    rep.no_bound = (rep.b_s_value == 0);
    Z rest = rep.b_s_value;
    if (rest > 1) {
        for (Z d(2); d * d <= rest && d <= 1000000; d += (d == 2 ? 1 : 2)) {
            if (rest % d != 0) continue;
            long e = 0;
            while (rest % d == 0) {
                rest /= d;
                e++;
            }
            rep.b_s_factors.push_back({d, e});
        }
        if (rest > 1 && rest <= Z("1000000000000")) {
            rep.b_s_factors.push_back({rest, 1});
            rest = 1;
        }
    }
    rep.unfactored = rest > 1 ? rest : Z(1);
    for (const auto &[pr, e] : rep.b_s_factors)
        if (pr >= 5 && pr != setup.p()) rep.surviving.push_back(pr);
    return rep;
}

// ---- eigenform data ------------------------------------------------------

EigenformData eigenvalues_from_curve(const std::string &label, long p,
                                     bool kprime, const std::string &level,
                                     const std::vector<Z> &a_inv,
                                     const std::vector<long> &qs,
                                     const std::vector<long> &bad_primes) {
    if (a_inv.size() != 5)
        throw std::invalid_argument("need [a1, a2, a3, a4, a6]");
    EigenformData f;
    f.label = label;
    f.p = p;
    f.kprime = kprime;
    f.level = level;
    f.hecke_poly = {Z(0), Z(1)};
    auto field = f.base_field();
    for (long q : qs) {
        if (std::find(bad_primes.begin(), bad_primes.end(), q) !=
            bad_primes.end())
            throw std::invalid_argument("bad-reduction prime requested: " +
                                        std::to_string(q));
        auto primes = split_prime(field, q);
        for (size_t i = 0; i < primes.size(); i++) {
            const auto &rf = *primes[i].rf;
            Z count = count_points(rf, a_inv[0], a_inv[1], a_inv[2], a_inv[3],
                                   a_inv[4]);
            Z a = rf.order() + 1 - count;
            f.eigenvalues[{q, static_cast<long>(i)}] = {a};
        }
    }
    return f;
}

namespace {

using nlohmann::json;

void require_keys(const json &obj, const std::set<std::string> &allowed,
                  const std::string &where) {
    for (const auto &item : obj.items())
        if (!allowed.count(item.key()))
            throw std::invalid_argument("unknown key '" + item.key() +
                                        "' in " + where);
}

}  // namespace

EigenformData ingest_eigenform_text(const std::string &json_text) {
    json doc = json::parse(json_text);
    if (!doc.is_object()) throw std::invalid_argument("top level not an object");
    require_keys(doc,
                 {"label", "base_field", "level", "hecke_poly", "eigenvalues"},
                 "top level");
    for (const char *k :
         {"label", "base_field", "level", "hecke_poly", "eigenvalues"})
        if (!doc.contains(k))
            throw std::invalid_argument(std::string("missing key '") + k + "'");

    EigenformData f;
    f.label = doc["label"].get<std::string>();
    const json &bf = doc["base_field"];
    require_keys(bf, {"p", "variant"}, "base_field");
    f.p = bf.at("p").get<long>();
    std::string variant = bf.at("variant").get<std::string>();
    if (variant == "K")
        f.kprime = false;
    else if (variant == "Kprime")
        f.kprime = true;
    else
        throw std::invalid_argument("variant must be K or Kprime");
    f.level = doc["level"].get<std::string>();
    for (const auto &c : doc["hecke_poly"])
        f.hecke_poly.push_back(Z(c.get<long>()));
    ztrim(f.hecke_poly);
    long d = zdeg(f.hecke_poly);
    if (d < 1 || f.hecke_poly.back() != 1)
        throw std::invalid_argument("hecke_poly must be monic of degree >= 1");

    auto field = f.base_field();  // validates p / variant combination
    for (const auto &entry : doc["eigenvalues"]) {
        require_keys(entry, {"q", "index", "a"}, "eigenvalue entry");
        long q = entry.at("q").get<long>();
        long idx = entry.at("index").get<long>();
        std::vector<Z> a;
        for (const auto &c : entry.at("a")) a.push_back(Z(c.get<long>()));
        if (static_cast<long>(a.size()) > d)
            throw std::invalid_argument("eigenvalue coordinates exceed degree");
        a.resize(d, Z(0));
        if (!f.eigenvalues.emplace(std::make_pair(q, idx), a).second)
            throw std::invalid_argument("duplicate eigenvalue entry");
    }

    // completeness and Hasse bounds per declared rational prime
    std::set<long> qs;
    for (const auto &[key, val] : f.eigenvalues) qs.insert(key.first);
    for (long q : qs) {
        auto primes = split_prime(field, q);
        for (size_t i = 0; i < primes.size(); i++) {
            auto it = f.eigenvalues.find({q, static_cast<long>(i)});
            if (it == f.eigenvalues.end())
                throw std::invalid_argument(
                    "missing prime index " + std::to_string(i) + " of " +
                    std::to_string(primes.size()) + " above q=" +
                    std::to_string(q));
            check_hasse(f.hecke_poly, it->second, primes[i].rf->order(),
                        "q=" + std::to_string(q) + " index=" +
                            std::to_string(i));
        }
        for (const auto &[key, val] : f.eigenvalues)
            if (key.first == q &&
                key.second >= static_cast<long>(primes.size()))
                throw std::invalid_argument("prime index out of range at q=" +
                                            std::to_string(q));
    }
    return f;
}

EigenformData ingest_eigenform(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ingest_eigenform_text(ss.str());
}

double heuristic_success(long q, long d, long r, double c) {
    if (c == 0.0) return 1.0;
    double p1 = 1.0 - std::pow(c, static_cast<double>(r)) /
                          std::pow(static_cast<double>(q), d / 2.0);
    return std::pow(p1, static_cast<double>(q) * q - 1);
}

}  // namespace cyclofrey
