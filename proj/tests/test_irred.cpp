#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyclofrey/irred.hpp"
#include "cyclofrey/units.hpp"

using namespace cyclofrey;

TEST_CASE("attained gcd sets per exponent") {
    CHECK(attained_values(bound_products(5)) == std::vector<Z>{1});
    CHECK(attained_values(bound_products(7)) == std::vector<Z>{1});
    CHECK(attained_values(bound_products(11)) == std::vector<Z>{1, 23});
    CHECK(attained_values(bound_products(13)) == std::vector<Z>{1, 25, 243});
}

TEST_CASE("report structure invariants") {
    auto reports = bound_products(13);
    // sum over subgroups D of (2^{|T|} - 2): 62 + 6 + 2 + 0
    CHECK(reports.size() == 70);
    for (const auto &r : reports) {
        CHECK(r.subset_mask != 0);
        CHECK(r.subset_mask + 1 != (1u << r.coset_reps.size()));
        for (const auto &v : r.per_generator) {
            if (v == 0) continue;
            CHECK(v % r.gcd_value == 0);
        }
    }
    CHECK(bound_products(7).size() == 6);  // d=3: only D = {1} with |T| = 3
    CHECK_THROWS_AS(bound_products(9), std::invalid_argument);
}

TEST_CASE("translate invariance of bound values") {
    auto K = RealCyclotomicField::build(13, false);
    auto lat = build_unit_lattice(K);
    auto tp = totally_positive_basis(lat);
    REQUIRE(!tp.empty());
    const auto &u = tp[0];
    std::vector<long> exps = {0, 2, 3};
    for (long shift : {1, 2, 5}) {
        std::vector<long> shifted;
        for (long e : exps) shifted.push_back(e + shift);
        CHECK(bound_value(K, u, exps) == bound_value(K, u, shifted));
    }
}

TEST_CASE("residual pair checks") {
    CHECK(residual_pair_check(11, 23));
    CHECK(residual_pair_check(13, 5));
    // closes the extra attained value 53 at p=13
    CHECK(residual_pair_check(13, 53));
    // 3 is inert in Q(zeta_7)^+: vacuously true
    CHECK(residual_pair_check(7, 3));
    CHECK_THROWS_AS(residual_pair_check(11, 11), std::invalid_argument);
}
