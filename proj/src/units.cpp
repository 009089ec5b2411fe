#include "cyclofrey/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cyclofrey/interval.hpp"

namespace cyclofrey {

namespace {

bool is_prime_power(long n) {
    for (long p = 2; p * p <= n; p++) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        return n == 1;
    }
    return n > 1;
}

// Rewrites real elements of Z[y]/Phi_n(y) in the theta power basis.
class CycloToTheta {
  public:
    explicit CycloToTheta(FieldPtr field) : field_(std::move(field)) {
        long n = field_->conductor();
        long d = field_->degree();
        phi_ = cyclotomic(n);
        long dphi = zdeg(phi_);
        ZPoly theta_y(n);
        theta_y[1] = 1;
        theta_y[n - 1] += 1;
        theta_y = zmod_monic(theta_y, phi_);
        // columns: theta^j mod Phi_n
        std::vector<ZPoly> cols(d);
        cols[0] = {Z(1)};
        for (long j = 1; j < d; j++)
            cols[j] = zmod_monic(zmul(cols[j - 1], theta_y), phi_);
        M_.assign(dphi, std::vector<Z>(d, Z(0)));
        for (long j = 0; j < d; j++)
            for (size_t i = 0; i < cols[j].size(); i++) M_[i][j] = cols[j][i];

        // pick d rows with an invertible submatrix
        std::vector<std::vector<Q>> chosen;
        for (long r = 0; r < dphi && static_cast<long>(rows_.size()) < d; r++) {
            std::vector<std::vector<Q>> trial = chosen;
            std::vector<Q> row(d);
            for (long j = 0; j < d; j++) row[j] = Q(M_[r][j]);
            trial.push_back(row);
            if (rank_of(trial) == trial.size()) {
                chosen = std::move(trial);
                rows_.push_back(static_cast<size_t>(r));
            }
        }
        if (static_cast<long>(rows_.size()) != d)
            throw std::logic_error("theta powers do not span the real subfield");
        invert(chosen);
    }

    FieldElement convert(const ZPoly &v_in) const {
        long d = field_->degree();
        ZPoly v = zmod_monic(v_in, phi_);
        v.resize(M_.size(), Z(0));
        std::vector<Q> t(d, Q(0));
        for (long i = 0; i < d; i++) {
            for (long r = 0; r < d; r++) t[i] += inv_[i][r] * Q(v[rows_[r]]);
            t[i].canonicalize();
        }
        for (size_t i = 0; i < M_.size(); i++) {
            Q acc(0);
            for (long j = 0; j < d; j++) acc += Q(M_[i][j]) * t[j];
            if (acc != Q(v[i]))
                throw std::domain_error("element is not real");
        }
        Z lcm(1);
        for (const auto &c : t)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
        std::vector<Z> coords(d);
        for (long i = 0; i < d; i++) {
            Q w = t[i] * Q(lcm);
            w.canonicalize();
            coords[i] = w.get_num();
        }
        return field_->element(std::move(coords), lcm);
    }

  private:
    static size_t rank_of(std::vector<std::vector<Q>> G) {
        if (G.empty()) return 0;
        size_t cols = G[0].size();
        size_t rank = 0;
        for (size_t col = 0; col < cols && rank < G.size(); col++) {
            size_t piv = rank;
            while (piv < G.size() && G[piv][col] == 0) piv++;
            if (piv == G.size()) continue;
            std::swap(G[rank], G[piv]);
            for (size_t i = 0; i < G.size(); i++) {
                if (i == rank || G[i][col] == 0) continue;
                Q f = G[i][col] / G[rank][col];
                for (size_t j = col; j < cols; j++) G[i][j] -= f * G[rank][j];
            }
            rank++;
        }
        return rank;
    }

    void invert(const std::vector<std::vector<Q>> &S) {
        long d = static_cast<long>(S.size());
        std::vector<std::vector<Q>> A(d, std::vector<Q>(2 * d, Q(0)));
        for (long i = 0; i < d; i++) {
            for (long j = 0; j < d; j++) A[i][j] = S[i][j];
            A[i][d + i] = 1;
        }
        for (long col = 0; col < d; col++) {
            long piv = col;
            while (piv < d && A[piv][col] == 0) piv++;
            if (piv == d) throw std::logic_error("singular conversion matrix");
            std::swap(A[col], A[piv]);
            Q iv = Q(1) / A[col][col];
            for (long j = 0; j < 2 * d; j++) A[col][j] *= iv;
            for (long i = 0; i < d; i++) {
                if (i == col || A[i][col] == 0) continue;
                Q f = A[i][col];
                for (long j = 0; j < 2 * d; j++) A[i][j] -= f * A[col][j];
            }
        }
        inv_.assign(d, std::vector<Q>(d));
        for (long i = 0; i < d; i++)
            for (long j = 0; j < d; j++) inv_[i][j] = A[i][d + j];
    }

    FieldPtr field_;
    ZPoly phi_;
    std::vector<std::vector<Z>> M_;
    std::vector<size_t> rows_;
    std::vector<std::vector<Q>> inv_;
};

// GF(2) null space of the row-span relation: vectors x with sum_i x_i M_i = 0.
std::vector<std::vector<int>> gf2_left_kernel(
    const std::vector<std::vector<uint8_t>> &M) {
    size_t rows = M.size();
    if (rows == 0) return {};
    size_t cols = M[0].size();
    // transpose, then solve A x = 0 with A cols x rows
    std::vector<std::vector<uint8_t>> A(cols, std::vector<uint8_t>(rows, 0));
    for (size_t i = 0; i < rows; i++)
        for (size_t j = 0; j < cols; j++) A[j][i] = M[i][j];
    std::vector<long> pivot_of_col(rows, -1);
    size_t rank = 0;
    for (size_t c = 0; c < rows && rank < A.size(); c++) {
        size_t piv = rank;
        while (piv < A.size() && A[piv][c] == 0) piv++;
        if (piv == A.size()) continue;
        std::swap(A[rank], A[piv]);
        for (size_t i = 0; i < A.size(); i++) {
            if (i == rank || A[i][c] == 0) continue;
            for (size_t j = 0; j < rows; j++) A[i][j] ^= A[rank][j];
        }
        pivot_of_col[c] = static_cast<long>(rank);
        rank++;
    }
    std::vector<std::vector<int>> basis;
    for (size_t c = 0; c < rows; c++) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<int> v(rows, 0);
        v[c] = 1;
        for (size_t c2 = 0; c2 < rows; c2++) {
            long pr = pivot_of_col[c2];
            if (pr >= 0 && A[pr][c]) v[c2] = 1;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Certify |Norm(u)| = 1.  The norm of an integral element is a rational
// integer, so it suffices to trap the product of the embedding values in
// an interval inside (-2,0) or (0,2); exact Galois products are used for
// small degrees.
bool norm_is_pm1(const FieldElement &u) {
    if (u.den() != 1) return false;
    const auto &F = u.field();
    if (F->degree() <= 8) {
        Q N = norm(u);
        return N == 1 || N == -1;
    }
    ZPoly np = u.coord_poly();
    long n = F->conductor();
    for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
        RInterval prod = RInterval::from_z(Z(1), prec);
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
            if (val.contains_zero()) {
                ok = false;
                break;
            }
            prod = prod.mul(val);
        }
        if (!ok || prod.contains_zero()) continue;
        if (prod.log_abs_upper() < 0.5) return true;  // |N| < 2, so |N| = 1
    }
    return false;
}

}  // namespace

std::vector<FieldElement> cyclotomic_unit_generators(const FieldPtr &field) {
    long n = field->conductor();
    if (field->is_subfield())
        throw std::invalid_argument("unit generators live in the full real field");
    if (n >= 100 && !is_prime_long(n))
        throw std::invalid_argument(
            "composite conductors >= 100 are outside the validated range");
    CycloToTheta conv(field);
    std::vector<FieldElement> gens;
    for (long d = 3; d <= n; d++) {
        if (n % d || d % 4 == 2) continue;
        long step = n / d;
        for (long a = 2; 2 * a < d; a++) {
            if (std::gcd(a, d) != 1) continue;
            // s = (1-a)/2 mod d
            long s;
            if (d % 2) {
                long inv2 = (d + 1) / 2;
                s = ((1 - a) % d * inv2 % d + d) % d;
            } else {
                s = (((1 - a) / 2) % d + d) % d;
            }
            ZPoly v(n, Z(0));
            for (long i = 0; i < a; i++) v[((s + i) % d) * step] += 1;
            ztrim(v);
            gens.push_back(conv.convert(v));
        }
        if (!is_prime_power(d))
            gens.push_back(field->from_int(2) - theta_any(field, step));
    }
    for (const auto &u : gens)
        if (!norm_is_pm1(u))
            throw std::logic_error("cyclotomic unit candidate has norm != +-1");
    return gens;
}

UnitLattice build_unit_lattice(const FieldPtr &field) {
    UnitLattice lat;
    lat.field = field;
    lat.generators = cyclotomic_unit_generators(field);
    size_t g = lat.generators.size();
    size_t d = static_cast<size_t>(field->degree());
    std::vector<std::vector<uint8_t>> aug(g + 1, std::vector<uint8_t>(d, 0));
    for (size_t i = 0; i < g; i++) {
        auto s = embedding_signs(lat.generators[i]);
        for (size_t j = 0; j < d; j++) aug[i][j] = (s[j] < 0);
        lat.sign_matrix.push_back(aug[i]);
    }
    for (size_t j = 0; j < d; j++) aug[g][j] = 1;  // sign vector of -1
    lat.tp_basis = gf2_left_kernel(aug);
    return lat;
}

FieldElement apply_exponents(const UnitLattice &lat, const std::vector<int> &e) {
    if (e.size() != lat.generators.size() + 1)
        throw std::invalid_argument("exponent vector length mismatch");
    FieldElement r = lat.field->from_int(1);
    for (size_t i = 0; i < lat.generators.size(); i++)
        if (e[i]) r = r * lat.generators[i].pow(e[i]);
    if (e.back() % 2) r = -r;
    return r;
}

std::vector<FieldElement> totally_positive_basis(const UnitLattice &lat) {
    std::vector<FieldElement> out;
    for (const auto &e : lat.tp_basis) out.push_back(apply_exponents(lat, e));
    for (const auto &u : lat.generators) out.push_back(u * u);
    for (const auto &x : out) {
        auto s = embedding_signs(x);
        for (int si : s)
            if (si <= 0)
                throw std::logic_error("totally positive candidate has a negative embedding");
    }
    return out;
}

bool log_embedding_full_rank(const std::vector<FieldElement> &gens) {
    if (gens.empty()) return false;
    const auto &F = gens[0].field();
    long d = F->degree();
    long n = F->conductor();
    if (d == 1) return true;  // rank d-1 = 0
    for (mpfr_prec_t prec = 128; prec <= (1 << 14); prec *= 2) {
        std::vector<std::vector<double>> L;
        bool ok = true;
        for (const auto &u : gens) {
            std::vector<double> row;
            ZPoly np = u.coord_poly();
            for (const auto &emb : F->embeddings()) {
                RInterval t(prec);
                bool first = true;
                for (long k : emb.cos_indices) {
                    RInterval c = RInterval::two_cos(k, n, prec);
                    t = first ? c : t.add(c);
                    first = false;
                }
                RInterval val = eval_interval(np, t);
                if (val.contains_zero()) {
                    ok = false;
                    break;
                }
                double den = mpz_get_d(u.den().get_mpz_t());
                row.push_back(std::log(std::fabs(val.mid()) / den));
            }
            if (!ok) break;
            L.push_back(std::move(row));
        }
        if (!ok) continue;
        // numerical rank with partial pivoting
        size_t rank = 0;
        size_t rows = L.size();
        for (long col = 0; col < d && rank < rows; col++) {
            size_t piv = rank;
            for (size_t i = rank + 1; i < rows; i++)
                if (std::fabs(L[i][col]) > std::fabs(L[piv][col])) piv = i;
            if (std::fabs(L[piv][col]) < 1e-10) continue;
            std::swap(L[rank], L[piv]);
            bool near_singular = std::fabs(L[rank][col]) < 1e-6;
            if (near_singular && prec < (1 << 14)) {
                ok = false;
                break;
            }
            for (size_t i = 0; i < rows; i++) {
                if (i == rank) continue;
                double f = L[i][col] / L[rank][col];
                for (long j = col; j < d; j++) L[i][j] -= f * L[rank][j];
            }
            rank++;
        }
        if (!ok) continue;
        return rank == static_cast<size_t>(d - 1);
    }
    return false;
}

}  // namespace cyclofrey
