#include "cyclofrey/hnf.hpp"

#include <stdexcept>

namespace cyclofrey {

namespace {

bool is_zero_row(const std::vector<Z> &r) {
    for (const auto &x : r)
        if (x != 0) return false;
    return true;
}

}  // namespace

std::vector<std::vector<Z>> hnf_rows(std::vector<std::vector<Z>> rows, long d) {
    // pivots[j] holds the current row with leading entry in column j
    std::vector<std::vector<Z>> pivots(d);
    for (auto &r : rows) {
        if (static_cast<long>(r.size()) != d)
            throw std::invalid_argument("row has wrong length");
        for (long j = 0; j < d && !is_zero_row(r); j++) {
            if (r[j] == 0) continue;
            if (pivots[j].empty()) {
                pivots[j] = r;
                break;
            }
            Z g, u, v;
            mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                       pivots[j][j].get_mpz_t(), r[j].get_mpz_t());
            Z a = pivots[j][j] / g, b = r[j] / g;
            std::vector<Z> np(d), nr(d);
            for (long t = j; t < d; t++) {
                np[t] = u * pivots[j][t] + v * r[t];
                nr[t] = a * r[t] - b * pivots[j][t];
            }
            pivots[j] = std::move(np);
            r = std::move(nr);
        }
    }
    std::vector<std::vector<Z>> out;
    for (long j = 0; j < d; j++) {
        if (pivots[j].empty()) continue;
        if (pivots[j][j] < 0)
            for (auto &x : pivots[j]) x = -x;
        out.push_back(std::move(pivots[j]));
    }
    // reduce entries above each pivot
    for (long i = static_cast<long>(out.size()) - 1; i >= 0; i--) {
        long j = 0;
        while (out[i][j] == 0) j++;
        for (long k = 0; k < i; k++) {
            Z q;
            mpz_fdiv_q(q.get_mpz_t(), out[k][j].get_mpz_t(),
                       out[i][j].get_mpz_t());
            if (q == 0) continue;
            for (long t = j; t < d; t++) out[k][t] -= q * out[i][t];
        }
    }
    return out;
}

Z lattice_index(const std::vector<std::vector<Z>> &rows, long d) {
    auto h = hnf_rows(rows, d);
    if (static_cast<long>(h.size()) != d) return Z(0);
    Z det(1);
    for (long j = 0; j < d; j++) det *= h[j][j];
    return det;
}

Z ideal_norm(const std::vector<FieldElement> &gens) {
    if (gens.empty()) throw std::invalid_argument("no generators");
    auto K = gens[0].field();
    long d = K->degree();
    auto th = theta(K, 1);
    std::vector<std::vector<Z>> rows;
    for (const auto &g : gens) {
        if (g.den() != 1)
            throw std::invalid_argument("generator is not integral");
        FieldElement cur = g;
        for (long i = 0; i < d; i++) {
            if (cur.den() != 1)
                throw std::logic_error("theta multiple is not integral");
            rows.push_back(cur.coords());
            if (i + 1 < d) cur = cur * th;
        }
    }
    return lattice_index(rows, d);
}

}  // namespace cyclofrey
