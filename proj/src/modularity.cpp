#include "cyclofrey/modularity.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace cyclofrey {

namespace {

// residue norms of each element at each prime above 5, as scalars in F_5
std::vector<std::vector<uint64_t>> norm_table(
    const std::vector<FieldElement> &elts, const std::vector<PrimeAboveQ> &S5) {
    std::vector<std::vector<uint64_t>> t(elts.size(),
                                         std::vector<uint64_t>(S5.size()));
    for (size_t i = 0; i < elts.size(); i++)
        for (size_t j = 0; j < S5.size(); j++)
            t[i][j] = residue_norm_to_prime_field(reduce(elts[i], S5[j]), S5[j]);
    return t;
}

uint64_t subset_product(const std::vector<uint64_t> &row, unsigned mask) {
    uint64_t p = 1;
    for (unsigned j = 0; mask >> j; j++)
        if (mask & (1u << j)) p = p * row[j] % 5;
    return p;
}

}  // namespace

int condition_c_witness(const FieldPtr &field,
                        const std::vector<PrimeAboveQ> &S,
                        const std::vector<FieldElement> &tp_gens) {
    if (field->conductor() % 5 == 0)
        throw std::invalid_argument("5 ramifies in this field");
    if (S.empty()) throw std::invalid_argument("subset must be non-empty");
    for (size_t i = 0; i < tp_gens.size(); i++) {
        uint64_t p = 1;
        for (const auto &P : S)
            p = p * residue_norm_to_prime_field(reduce(tp_gens[i], P), P) % 5;
        if (p != 1) return static_cast<int>(i);
    }
    return -1;
}

ConductorReport check_conductor(long n, bool strict) {
    ConductorReport rep;
    rep.conductor = n;
    auto field = RealCyclotomicField::build_full(n);
    auto lat = build_unit_lattice(field);
    std::vector<FieldElement> tp = totally_positive_basis(lat);
    auto S5 = split_prime(field, 5);
    rep.s5_size = static_cast<int>(S5.size());

    auto table = norm_table(tp, S5);
    unsigned full = (1u << S5.size()) - 1;
    for (unsigned mask = 1; mask < full; mask++) {
        bool found = false;
        for (const auto &row : table) {
            if (subset_product(row, mask) != 1) {
                found = true;
                break;
            }
        }
        if (!found && !strict) {
            // pairwise products of the generating set (vacuous in theory;
            // kept as a distinct, flagged fallback)
            for (size_t i = 0; i < table.size() && !found; i++)
                for (size_t j = i + 1; j < table.size() && !found; j++)
                    if (subset_product(table[i], mask) *
                            subset_product(table[j], mask) % 5 !=
                        1) {
                        found = true;
                        rep.used_products = true;
                    }
        }
        if (!found) {
            std::vector<int> subset;
            for (unsigned j = 0; j < S5.size(); j++)
                if (mask & (1u << j)) subset.push_back(static_cast<int>(j));
            rep.failing_subsets.push_back(std::move(subset));
        }
    }
    rep.pass = rep.failing_subsets.empty();
    return rep;
}

std::vector<ConductorReport> scan_conductors(long max_n, bool strict,
                                             int workers) {
    if (max_n > 100)
        throw std::invalid_argument(
            "scan limited to conductors below 100 (validated unit range)");
    std::vector<long> ns;
    for (long n = 3; n < max_n; n++) {
        if (n % 4 == 2 || n % 5 == 0) continue;
        ns.push_back(n);
    }
    std::vector<ConductorReport> out(ns.size());
    if (workers < 1) workers = 1;
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ns.size()) return;
            out[i] = check_conductor(ns[i], strict);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++) pool.emplace_back(work);
        for (auto &t : pool) t.join();
    }
    return out;
}

}  // namespace cyclofrey
