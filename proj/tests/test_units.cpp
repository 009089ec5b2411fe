#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclofrey/units.hpp"

using namespace cyclofrey;

TEST_CASE("generator set for p = 5") {
    auto K = RealCyclotomicField::build(5, false);
    auto gens = cyclotomic_unit_generators(K);
    REQUIRE(gens.size() == 1);
    // xi_{5,2} = theta_2; together with -1 it generates the same group as
    // theta_1 (theta_1 theta_2 = -1)
    CHECK(gens[0] == theta(K, 2));
    CHECK((gens[0] * theta(K, 1)) == K->from_int(-1));
}

TEST_CASE("generator counts and ranks for prime conductors") {
    for (long p : {5, 7, 11, 13}) {
        CAPTURE(p);
        auto K = RealCyclotomicField::build(p, false);
        auto gens = cyclotomic_unit_generators(K);
        CHECK(gens.size() == static_cast<size_t>(K->degree() - 1));
        CHECK(log_embedding_full_rank(gens));
        for (const auto &u : gens) {
            Q N = norm(u);
            CHECK((N == 1 || N == -1));
        }
    }
}

TEST_CASE("n = 12 includes the non-prime-power unit") {
    auto K = RealCyclotomicField::build_full(12);
    auto gens = cyclotomic_unit_generators(K);
    auto extra = K->from_int(2) - theta(K, 1);  // (1-zeta_12)(1-zeta_12^{-1})
    bool found = false;
    for (const auto &u : gens)
        if (u == extra) found = true;
    CHECK(found);
    Q N = norm(extra);
    CHECK((N == 1 || N == -1));
    CHECK(log_embedding_full_rank(gens));
}

TEST_CASE("totally positive basis") {
    auto K = RealCyclotomicField::build(5, false);
    auto lat = build_unit_lattice(K);
    auto tp = totally_positive_basis(lat);
    REQUIRE(!tp.empty());
    for (const auto &u : tp) {
        for (int s : embedding_signs(u)) CHECK(s == 1);
    }
    // theta_2^2 = theta_4 + 2 = theta_1 + 2 appears via the squares
    auto target = theta(K, 1) + K->from_int(2);
    bool found = false;
    for (const auto &u : tp)
        if (u == target) found = true;
    CHECK(found);
}

TEST_CASE("tp basis exponents lie in the sign kernel") {
    for (long n : {7, 11, 12, 13, 16, 29}) {
        CAPTURE(n);
        auto K = RealCyclotomicField::build_full(n);
        auto lat = build_unit_lattice(K);
        for (const auto &e : lat.tp_basis) {
            // mod-2 sign vector of the encoded product must vanish
            std::vector<int> acc(K->degree(), 0);
            for (size_t i = 0; i < lat.generators.size(); i++)
                if (e[i] % 2)
                    for (long j = 0; j < K->degree(); j++)
                        acc[j] ^= lat.sign_matrix[i][j];
            if (e.back() % 2)
                for (auto &a : acc) a ^= 1;
            for (int a : acc) CHECK(a == 0);
            for (int s : embedding_signs(apply_exponents(lat, e))) CHECK(s == 1);
        }
        CHECK(log_embedding_full_rank(lat.generators));
    }
}

TEST_CASE("range limits") {
    auto K = RealCyclotomicField::build(101, false);
    CHECK_NOTHROW(cyclotomic_unit_generators(K));  // prime conductor allowed
    auto Kc = RealCyclotomicField::build_full(104);
    CHECK_THROWS_AS(cyclotomic_unit_generators(Kc), std::invalid_argument);
    auto Ks = RealCyclotomicField::build(13, true);
    CHECK_THROWS_AS(cyclotomic_unit_generators(Ks), std::invalid_argument);
}
