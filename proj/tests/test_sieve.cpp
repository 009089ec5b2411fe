#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "cyclofrey/sieve.hpp"

using namespace cyclofrey;

namespace {

// exhaustive double loop over the affine plane, plus the point at infinity
Z oracle_count(const ResidueField &rf, long a1, long a2, long a3, long a4,
               long a6) {
    auto A1 = rf.from_scalar(a1), A2 = rf.from_scalar(a2);
    auto A3 = rf.from_scalar(a3), A4 = rf.from_scalar(a4);
    auto A6 = rf.from_scalar(a6);
    Z n = 1;
    for (const auto &x : rf.all_elements()) {
        auto x2 = rf.mul(x, x);
        auto rhs = rf.add(rf.mul(x2, x),
                          rf.add(rf.mul(A2, x2), rf.add(rf.mul(A4, x), A6)));
        for (const auto &y : rf.all_elements()) {
            auto lhs = rf.add(rf.mul(y, y),
                              rf.add(rf.mul(rf.mul(A1, x), y), rf.mul(A3, y)));
            if (rf.eq(lhs, rhs)) n++;
        }
    }
    return n;
}

std::vector<ResidueField> small_fields() {
    std::vector<ResidueField> out;
    out.emplace_back(2, FqPoly{0, 1});
    out.emplace_back(2, FqPoly{1, 1, 1});     // F_4
    out.emplace_back(2, FqPoly{1, 1, 0, 1});  // F_8
    out.emplace_back(3, FqPoly{0, 1});
    out.emplace_back(3, FqPoly{1, 0, 1});     // F_9
    out.emplace_back(3, FqPoly{1, 2, 0, 1});  // F_27
    out.emplace_back(5, FqPoly{0, 1});
    out.emplace_back(5, FqPoly{2, 0, 1});     // F_25
    out.emplace_back(7, FqPoly{0, 1});
    return out;
}

}  // namespace

TEST_CASE("point counts agree with the exhaustive oracle") {
    std::mt19937 rng(11);
    for (const auto &rf : small_fields()) {
        for (int trial = 0; trial < 25; trial++) {
            long a1 = rng() % 5 - 2, a2 = rng() % 5 - 2, a3 = rng() % 5 - 2;
            long a4 = rng() % 9 - 4, a6 = rng() % 9 - 4;
            CHECK(count_points(rf, Z(a1), Z(a2), Z(a3), Z(a4), Z(a6)) ==
                  oracle_count(rf, a1, a2, a3, a4, a6));
        }
    }
}

TEST_CASE("point counts: fixed examples") {
    ResidueField f5(5, {0, 1}), f7(7, {0, 1}), f3(3, {0, 1});
    // y^2 = x^3 + x over F_5: trace 2
    CHECK(count_points(f5, 0, 0, 0, 1, 0) == 4);
    // y^2 = x^3 - x over F_7: trace 0
    CHECK(count_points(f7, 0, 0, 0, -1, 0) == 8);
    // 26b1 over F_3: trace -3
    CHECK(count_points(f3, 1, -1, 1, -3, 3) == 7);
}

TEST_CASE("ideal arithmetic in a rational Hecke order is integer gcd") {
    ZPoly x = {0, 1};
    auto I = ideal_from_elements(x, {{Z(6)}, {Z(10)}});
    CHECK(ideal_norm_value(I) == 2);
    auto J = ideal_mul(x, ideal_from_elements(x, {{Z(4)}}),
                       ideal_from_elements(x, {{Z(6)}}));
    CHECK(ideal_norm_value(J) == 24);
    CHECK(ideal_norm_value(ideal_scale(I, Z(5))) == 10);
    CHECK(ideal_from_elements(x, {{Z(0)}}).is_zero());

    std::mt19937 rng(23);
    for (int i = 0; i < 200; i++) {
        Z a(static_cast<long>(rng() % 2000) - 1000);
        Z b(static_cast<long>(rng() % 2000) - 1000);
        Z g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        auto K = ideal_from_elements(x, {{a}, {b}});
        CHECK(ideal_norm_value(K) == g);
    }
}

TEST_CASE("frey reduction classifies the whole A_q grid") {
    for (bool dividing : {false, true}) {
        SieveSetup setup(7, dividing, 1, 2, false);
        for (long q : {3L, 13L}) {
            auto primes = split_prime(setup.work(), q);
            for (long eta = 0; eta < q; eta++)
                for (long mu = 0; mu < q; mu++) {
                    if (eta == 0 && mu == 0) continue;
                    for (const auto &P : primes) {
                        ReductionResult r =
                            frey_reduction(setup, {eta, mu}, P);
                        if (r.type == ReductionType::good) {
                            Z n = P.rf->order();
                            CHECK(Z(r.trace) * Z(r.trace) <= 4 * n);
                        }
                    }
                }
        }
    }
}

TEST_CASE("the (0,1) curve is a split node in the dividing case") {
    SieveSetup setup(13, true, 1, 5, true);
    for (long q : {3L, 5L, 31L, 47L})
        for (const auto &P : split_prime(setup.work(), q))
            CHECK(frey_reduction(setup, {0, 1}, P).type ==
                  ReductionType::split_mult);
}

TEST_CASE("f9 ingestion matches the eigenvalues of 26b1 over K'") {
    auto f = ingest_eigenform("data/f9.json");
    CHECK(f.label == "f9");
    CHECK(f.p == 13);
    CHECK(f.kprime);
    CHECK(f.deg() == 1);
    auto g = eigenvalues_from_curve("f9", 13, true, "2*B",
                                    {Z(1), Z(-1), Z(1), Z(-3), Z(3)},
                                    {3, 5, 31, 47}, {2, 13});
    CHECK(f.hecke_poly == g.hecke_poly);
    CHECK(f.eigenvalues == g.eigenvalues);
}

TEST_CASE("f9 sieve reproduces B_S = 49") {
    auto f = ingest_eigenform("data/f9.json");
    SieveSetup setup(13, true, 1, 5, true);
    auto rep = b_s(f, setup, {3, 5, 31, 47}, 4);
    CHECK(rep.b_s_value == 49);
    CHECK(!rep.no_bound);
    REQUIRE(rep.b_s_factors.size() == 1);
    CHECK(rep.b_s_factors[0].first == 7);
    CHECK(rep.b_s_factors[0].second == 2);
    CHECK(rep.surviving == std::vector<Z>{Z(7)});
    // the 7-torsion of 26b1 forces 7 | B_q for every q
    for (const auto &n : rep.bq_norms) CHECK(n % 7 == 0);
}

TEST_CASE("enlarging S never increases B_S") {
    auto f = ingest_eigenform("data/f9.json");
    SieveSetup setup(13, true, 1, 5, true);
    auto r1 = b_s(f, setup, {3}, 4);
    auto r2 = b_s(f, setup, {3, 5}, 4);
    CHECK(r1.b_s_value % r2.b_s_value == 0);
    // single-prime B_S is the norm of that B_q ideal
    CHECK(r1.b_s_value == r1.bq_norms[0]);
}

TEST_CASE("b_q is deterministic across thread counts") {
    auto f = ingest_eigenform("data/f9.json");
    SieveSetup setup(13, true, 1, 5, true);
    auto one = b_q(f, setup, 5, 1);
    for (int threads : {4, 8}) {
        auto multi = b_q(f, setup, 5, threads);
        CHECK(one.basis == multi.basis);
    }
}

TEST_CASE("ingestion accepts a quadratic Hecke field") {
    const char *txt = R"({
      "label": "toy",
      "base_field": { "p": 7, "variant": "K" },
      "level": "1",
      "hecke_poly": [-1, -1, 1],
      "eigenvalues": [ { "q": 3, "index": 0, "a": [0, 1] } ]
    })";
    auto f = ingest_eigenform_text(txt);
    CHECK(f.deg() == 2);
    CHECK(f.eigenvalues.at({3, 0}) == std::vector<Z>{Z(0), Z(1)});
}

TEST_CASE("ingestion rejections") {
    CHECK_THROWS_WITH_AS(
        ingest_eigenform_text(R"({
          "label": "x", "base_field": { "p": 7, "variant": "K" },
          "level": "1", "hecke_poly": [0, 1], "foo": 1,
          "eigenvalues": [] })"),
        doctest::Contains("unknown key 'foo'"), std::invalid_argument);

    CHECK_THROWS_WITH_AS(
        ingest_eigenform_text(R"({
          "label": "x", "base_field": { "p": 7, "variant": "K" },
          "level": "1", "hecke_poly": [0, 1],
          "eigenvalues": [ { "q": 3, "index": 0, "a": [100] } ] })"),
        doctest::Contains("Hasse"), std::invalid_argument);

    // q = 13 has three degree-1 primes in Q(zeta_7)^+
    CHECK_THROWS_WITH_AS(
        ingest_eigenform_text(R"({
          "label": "x", "base_field": { "p": 7, "variant": "K" },
          "level": "1", "hecke_poly": [0, 1],
          "eigenvalues": [ { "q": 13, "index": 0, "a": [1] } ] })"),
        doctest::Contains("missing prime index 1 of 3 above q=13"),
        std::invalid_argument);

    CHECK_THROWS_WITH_AS(
        ingest_eigenform_text(R"({
          "label": "x", "base_field": { "p": 7, "variant": "Kprime" },
          "level": "1", "hecke_poly": [0, 1], "eigenvalues": [] })"),
        doctest::Contains("subfield"), std::invalid_argument);

    CHECK_THROWS_AS(ingest_eigenform("data/no_such_file.json"),
                    std::invalid_argument);
}

TEST_CASE("curve eigenvalues refuse bad-reduction primes") {
    CHECK_THROWS_AS(eigenvalues_from_curve("f9", 13, true, "2*B",
                                           {Z(1), Z(-1), Z(1), Z(-3), Z(3)},
                                           {2}, {2, 13}),
                    std::invalid_argument);
}

TEST_CASE("eigenform fetch against a local server") {
    httplib::Server srv;
    srv.Get("/eigenform/f9.json", [](const httplib::Request &,
                                     httplib::Response &res) {
        std::ifstream in("data/f9.json");
        std::stringstream ss;
        ss << in.rdbuf();
        res.set_content(ss.str(), "application/json");
    });
    srv.Get("/eigenform/bogus.json", [](const httplib::Request &,
                                        httplib::Response &res) {
        res.set_content("{}", "application/json");
    });
    int port = srv.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread t([&] { srv.listen_after_bind(); });
    srv.wait_until_ready();
    std::string endpoint = "http://127.0.0.1:" + std::to_string(port);

    std::string out = "/tmp/fetched_f9.json";
    fetch_eigenform("f9", endpoint, out);
    auto f = ingest_eigenform(out);
    CHECK(f.label == "f9");

    // invalid body is rejected before anything is written
    CHECK_THROWS_AS(fetch_eigenform("bogus", endpoint, "/tmp/bogus.json"),
                    std::invalid_argument);
    // missing label is a retriable network error
    CHECK_THROWS_AS(fetch_eigenform("nothere", endpoint, "/tmp/x.json"),
                    NetworkError);
    srv.stop();
    t.join();
    // unreachable endpoint
    CHECK_THROWS_AS(
        fetch_eigenform("f9", "http://127.0.0.1:1", "/tmp/x.json"),
        NetworkError);
}

TEST_CASE("heuristic success probability") {
    CHECK(heuristic_success(103, 6, 6, 0.0) == doctest::Approx(1.0));
    double expected = std::pow(1.0 - 1.0 / 27.0, 8);
    CHECK(heuristic_success(3, 6, 1, 1.0) == doctest::Approx(expected));
}
