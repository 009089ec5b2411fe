#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cyclofrey/frey.hpp"
#include "cyclofrey/irred.hpp"
#include "cyclofrey/modularity.hpp"
#include "cyclofrey/sieve.hpp"

using namespace cyclofrey;
using json = nlohmann::json;

namespace {

constexpr const char *kVersion = "0.1.0";

constexpr int kOk = 0, kUsage = 2, kData = 3, kMismatch = 4;

std::string fnv1a_hex(const std::string &s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

int env_threads() {
    if (const char *v = std::getenv("CYCLOFREY_THREADS")) {
        long n = std::atol(v);
        if (n >= 1) return static_cast<int>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::string elem_str(const FieldElement &x) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < x.coords().size(); i++) {
        if (i) os << ", ";
        os << x.coords()[i];
    }
    os << "]";
    if (x.den() != 1) os << "/" << x.den();
    return os.str();
}

json z_json(const Z &z) { return z.get_str(); }

std::string factored_str(const SieveReport &rep) {
    if (rep.no_bound) return "0";
    std::ostringstream os;
    os << rep.b_s_value;
    if (!rep.b_s_factors.empty() || rep.unfactored != 1) {
        os << " = ";
        bool first = true;
        for (const auto &[pr, e] : rep.b_s_factors) {
            if (!first) os << " * ";
            first = false;
            os << pr;
            if (e > 1) os << "^" << e;
        }
        if (rep.unfactored != 1) {
            if (!first) os << " * ";
            os << rep.unfactored << " (unfactored)";
        }
        if (first && rep.unfactored == 1) os << 1;
    }
    return os.str();
}

// run manifest shared by every subcommand
struct Run {
    std::string command;
    json params = json::object();
    json results = json::object();
    std::ostringstream text;
    std::string report_path;

    int finish(int code) {
        auto t1 = std::chrono::steady_clock::now();
        std::cout << text.str();
        if (!report_path.empty()) {
            json manifest = {
                {"command", command},
                {"parameters", params},
                {"library_version", kVersion},
                {"seeds", nullptr},  // fully deterministic, none used
                {"wall_time_seconds",
                 std::chrono::duration<double>(t1 - t0).count()},
                {"output_digest", fnv1a_hex(results.dump())},
                {"exit_code", code},
                {"results", results},
            };
            std::ofstream out(report_path);
            if (!out) {
                std::cerr << "cannot write report to " << report_path << "\n";
                return kData;
            }
            out << manifest.dump(2) << "\n";
        }
        return code;
    }

  private:
    std::chrono::steady_clock::time_point t0 =
        std::chrono::steady_clock::now();
};

int cmd_scan(Run &run, long max_n, bool strict, int threads) {
    auto reps = scan_conductors(max_n, strict, threads);
    std::vector<long> exceptions;
    json rows = json::array();
    for (const auto &r : reps) {
        run.text << "n=" << r.conductor << " |S5|=" << r.s5_size << " "
                 << (r.pass ? "pass" : "FAIL");
        if (!r.pass) {
            exceptions.push_back(r.conductor);
            run.text << " subsets:";
            for (const auto &sub : r.failing_subsets) {
                run.text << " {";
                for (size_t i = 0; i < sub.size(); i++)
                    run.text << (i ? "," : "") << sub[i];
                run.text << "}";
            }
        }
        if (r.used_products) run.text << " (product witness)";
        run.text << "\n";
        rows.push_back({{"n", r.conductor},
                        {"s5", r.s5_size},
                        {"pass", r.pass},
                        {"failing_subsets", r.failing_subsets}});
    }
    run.text << "conductor-scan exceptions:";
    for (long n : exceptions) run.text << " " << n;
    run.text << "\n";
    run.results = {{"anchor", "conductor-scan exceptions"},
                   {"max_n", max_n},
                   {"exceptions", exceptions},
                   {"rows", rows}};
    return kOk;
}

int cmd_bounds(Run &run, long p) {
    auto reps = bound_products(p);
    auto attained = attained_values(reps);
    json rows = json::array();
    for (const auto &r : reps) {
        run.text << "|D|=" << r.subgroup_order << " T'=";
        for (size_t i = 0; i < r.coset_reps.size(); i++)
            if (r.subset_mask & (1u << i))
                run.text << "g^" << r.coset_reps[i] << " ";
        run.text << "gcd=" << r.gcd_value << "\n";
        json pg = json::array();
        for (const auto &v : r.per_generator) pg.push_back(z_json(v));
        rows.push_back({{"subgroup_order", r.subgroup_order},
                        {"coset_reps", r.coset_reps},
                        {"subset_mask", r.subset_mask},
                        {"per_generator", pg},
                        {"gcd", z_json(r.gcd_value)}});
    }
    run.text << "attained gcd values:";
    json att = json::array();
    for (const auto &v : attained) {
        run.text << " " << v;
        att.push_back(z_json(v));
    }
    run.text << "\n";
    run.results = {{"anchor", "gcd bound attained set"},
                   {"p", p},
                   {"attained", att},
                   {"rows", rows}};
    return kOk;
}

int cmd_frey(Run &run, long p, const Z &a, const Z &b, long ell, long j,
             long k, bool twist, bool dividing) {
    DescentInstance inst;
    inst.p = p;
    inst.a = a;
    inst.b = b;
    inst.ell = ell;
    inst.p_divides_x = dividing;
    Z t;
    unsigned long n2 = mpz_remove(t.get_mpz_t(), a.get_mpz_t(), Z(2).get_mpz_t());
    if (n2 % ell != 0)
        throw CLI::ValidationError("--a", "ord_2(a) must be a multiple of l");
    inst.n = static_cast<long>(n2 / ell);
    if (dividing) {
        unsigned long np =
            mpz_remove(t.get_mpz_t(), a.get_mpz_t(), Z(p).get_mpz_t());
        if ((np + 1) % ell != 0)
            throw CLI::ValidationError("--a", "ord_p(a) must be -1 mod l");
        inst.kappa = static_cast<long>((np + 1) / ell);
    }

    auto tr = frey_triple(inst, j, k, twist);
    auto inv = curve_invariants(tr);
    auto shape = check_conductor_shape(inst, tr);

    run.text << "u = " << elem_str(tr.u) << "\n";
    run.text << "v = " << elem_str(tr.v) << "\n";
    run.text << "w = " << elem_str(tr.w) << "\n";
    run.text << "c4 = " << elem_str(inv.c4) << "\n";
    run.text << "c6 = " << elem_str(inv.c6) << "\n";
    run.text << "Delta = " << elem_str(inv.delta) << "\n";
    if (!inv.singular) run.text << "j = " << elem_str(inv.j_inv) << "\n";
    run.text << "ord at primes above 2:";
    for (long v : shape.ord_at_2) run.text << " " << v;
    run.text << " (expected " << shape.expected_at_2 << ")\n";
    run.text << "ord at the ramified prime: " << shape.ord_at_p
             << " (expected " << shape.expected_at_p << ")\n";
    run.text << "multiplicative congruences at 2: "
             << (shape.congruences_ok ? "ok" : "FAIL") << "\n";
    run.text << "conductor shape: " << (shape.ok ? "ok" : "MISMATCH") << "\n";
    run.results = {{"anchor", "frey conductor shape"},
                   {"p", p},
                   {"u", elem_str(tr.u)},
                   {"v", elem_str(tr.v)},
                   {"w", elem_str(tr.w)},
                   {"ord_at_2", shape.ord_at_2},
                   {"expected_at_2", shape.expected_at_2},
                   {"ord_at_p", shape.ord_at_p},
                   {"expected_at_p", shape.expected_at_p},
                   {"ok", shape.ok}};
    return shape.ok ? kOk : kMismatch;
}

int cmd_sieve(Run &run, long p, bool dividing, long j, long k,
              const std::string &eigenform, std::vector<long> S,
              int threads) {
    std::string path = eigenform;
    if (!std::filesystem::exists(path) &&
        std::filesystem::exists(path + ".json"))
        path += ".json";
    auto f = ingest_eigenform(path);
    if (f.p != p)
        throw std::invalid_argument("eigenform is attached to p=" +
                                    std::to_string(f.p));
    SieveSetup setup(p, dividing, j, k, f.kprime);
    auto rep = b_s(f, setup, S, threads);

    json bq = json::array();
    for (size_t i = 0; i < S.size(); i++) {
        run.text << "|Norm B_" << S[i] << "(" << f.label
                 << ")| = " << rep.bq_norms[i] << "\n";
        bq.push_back({{"q", S[i]}, {"norm", z_json(rep.bq_norms[i])}});
    }
    run.text << "B_S(" << f.label << ") = " << factored_str(rep) << "\n";
    if (rep.no_bound) {
        run.text << "no exponent bound from this S\n";
    } else {
        run.text << "surviving exponents:";
        if (rep.surviving.empty()) run.text << " none";
        for (const auto &l : rep.surviving) run.text << " " << l;
        run.text << "\n";
    }
    json surv = json::array();
    for (const auto &l : rep.surviving) surv.push_back(z_json(l));
    run.results = {{"anchor", "sieve B_S"},
                   {"label", f.label},
                   {"S", S},
                   {"bq", bq},
                   {"b_s", z_json(rep.b_s_value)},
                   {"b_s_factored", factored_str(rep)},
                   {"surviving", surv},
                   {"no_bound", rep.no_bound}};
    return kOk;
}

int cmd_ingest(Run &run, const std::string &path, const std::string &fetch,
               const std::string &endpoint, std::string out) {
    std::string target = path;
    if (!fetch.empty()) {
        if (out.empty()) out = "data/" + fetch + ".json";
        fetch_eigenform(fetch, endpoint, out);
        run.text << "fetched " << fetch << " from " << endpoint << " to "
                 << out << "\n";
        target = out;
    }
    auto f = ingest_eigenform(target);
    run.text << "label " << f.label << ": p=" << f.p << " over "
             << (f.kprime ? "K'" : "K") << ", level " << f.level
             << ", Hecke degree " << f.deg() << ", " << f.eigenvalues.size()
             << " eigenvalues\n";
    run.results = {{"anchor", "eigenform ingestion"},
                   {"label", f.label},
                   {"p", f.p},
                   {"variant", f.kprime ? "Kprime" : "K"},
                   {"degree", f.deg()},
                   {"eigenvalue_count", f.eigenvalues.size()}};
    return kOk;
}

int cmd_heuristic(Run &run, long q, long d, long r, double c) {
    double v = heuristic_success(q, d, r, c);
    std::ostringstream os;
    os.precision(12);
    os << v;
    run.text << "P_" << q << " = " << os.str() << "\n";
    run.results = {{"anchor", "sieve success heuristic"},
                   {"q", q},
                   {"d", d},
                   {"r", r},
                   {"c", c},
                   {"value", os.str()}};
    return kOk;
}

int cmd_verify_all(Run &run, int threads) {
    struct Item {
        std::string anchor;
        bool ok;
        std::string detail;
    };
    std::vector<Item> items;

    {
        auto reps = scan_conductors(100, false, threads);
        std::vector<long> failing;
        for (const auto &r : reps)
            if (!r.pass) failing.push_back(r.conductor);
        std::ostringstream os;
        for (long n : failing) os << n << " ";
        items.push_back({"conductor-scan exceptions",
                         failing == std::vector<long>{29, 87, 89}, os.str()});
    }

    const std::map<long, std::vector<Z>> expected_sets = {
        {5, {1}}, {7, {1}}, {11, {1, 23}}, {13, {1, 25, 243}}};
    for (const auto &[p, want] : expected_sets) {
        auto got = attained_values(bound_products(p));
        std::ostringstream os;
        for (const auto &v : got) os << v << " ";
        items.push_back({"gcd bound set p=" + std::to_string(p), got == want,
                         os.str()});
    }

    items.push_back({"residual check (11,23)", residual_pair_check(11, 23), ""});
    items.push_back({"residual check (13,5)", residual_pair_check(13, 5), ""});

    {
        bool ok = true;
        for (long p : {5L, 7L, 11L, 13L}) {
            auto K = RealCyclotomicField::build(p, false);
            long half = (p - 1) / 2;
            for (long j = 1; j <= half && ok; j++) {
                auto tj = theta(K, j);
                Q pnorm(p);
                if (abs(norm(tj)) != 1) ok = false;
                if (abs(norm(tj + K->from_int(2))) != 1) ok = false;
                if (abs(norm(tj - K->from_int(2))) != pnorm) ok = false;
                for (long k = j + 1; k <= half && ok; k++)
                    if (abs(norm(tj - theta(K, k))) != pnorm) ok = false;
            }
        }
        items.push_back({"theta-unit norms", ok, ""});
    }

    {
        bool ok = true;
        for (long p : {5L, 7L, 11L, 13L})
            for (bool divx : {false, true}) {
                Z t(3), b(p == 5 ? 7 : 5);
                auto inst =
                    synthetic_instance(p, 5, 1, divx ? 1 : 0, divx, t, b);
                auto r = check_conductor_shape(inst, frey_triple(inst, 1, 2, false));
                if (!r.ok) ok = false;
            }
        items.push_back({"frey conductor shape", ok, ""});
    }

    items.push_back({"j-invariant residue at 2", j_residue_check_p13(), ""});

    {
        Item it{"f9 sieve B_S", false, ""};
        try {
            auto f = ingest_eigenform("data/f9.json");
            SieveSetup setup(13, true, 1, 5, true);
            auto rep = b_s(f, setup, {3, 5, 31, 47}, threads);
            it.ok = rep.b_s_value == 49;
            it.detail = factored_str(rep);
        } catch (const std::invalid_argument &e) {
            it.detail = e.what();
        }
        items.push_back(it);
    }

    bool all = true;
    json out = json::array();
    for (const auto &it : items) {
        all = all && it.ok;
        run.text << (it.ok ? "PASS " : "FAIL ") << it.anchor;
        if (!it.detail.empty()) run.text << " [" << it.detail << "]";
        run.text << "\n";
        out.push_back({{"anchor", it.anchor}, {"pass", it.ok},
                       {"detail", it.detail}});
    }
    if (!all) {
        run.text << "failing anchors:";
        for (const auto &it : items)
            if (!it.ok) run.text << " \"" << it.anchor << "\"";
        run.text << "\n";
    }
    run.results = {{"anchor", "verify-all"}, {"checks", out}, {"pass", all}};
    return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact-arithmetic toolkit for the x^2l + y^2m = z^p pipeline"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Run run;
    std::string report_path;
    app.add_option("--report", report_path, "write a JSON run manifest");

    int threads = env_threads();

    auto *scan = app.add_subcommand("modularity-scan",
                                    "conductor scan of the unit-norm test");
    long max_n = 100;
    bool strict = false;
    scan->add_option("--max-n", max_n, "scan conductors n < max-n (<= 100)");
    scan->add_flag("--strict", strict, "single-generator witnesses only");
    scan->add_option("--threads", threads, "worker threads");

    auto *bounds = app.add_subcommand("bounds", "irreducibility bound sweep");
    long bp = 13;
    bounds->add_option("--p", bp, "exponent p")->required();

    auto *frey = app.add_subcommand("frey", "Frey curve for one instance");
    long fp = 7, fell = 5, fj = 1, fk = 2;
    Z fa, fb;
    std::string fa_s, fb_s, fcase = "nondividing";
    bool ftwist = false;
    frey->add_option("--p", fp, "exponent p")->required();
    frey->add_option("--a", fa_s, "descent value a")->required();
    frey->add_option("--b", fb_s, "descent value b")->required();
    frey->add_option("--l", fell, "exponent l (default 5)");
    frey->add_option("--j", fj, "index j")->required();
    frey->add_option("--k", fk, "index k")->required();
    frey->add_flag("--twist", ftwist, "use the twisted model");
    frey->add_option("--case", fcase, "dividing|nondividing")
        ->check(CLI::IsMember({"dividing", "nondividing"}));

    auto *sieve = app.add_subcommand("sieve", "eigenform elimination sieve");
    long sp = 13, sj = 1, sk = 5;
    std::string scase = "dividing", seigen;
    std::vector<long> sS;
    sieve->add_option("--p", sp, "exponent p")->required();
    sieve->add_option("--case", scase, "dividing|nondividing")
        ->check(CLI::IsMember({"dividing", "nondividing"}));
    sieve->add_option("--j", sj, "index j")->required();
    sieve->add_option("--k", sk, "index k")->required();
    sieve->add_option("--eigenform", seigen, "eigenform JSON path")->required();
    sieve->add_option("--S", sS, "auxiliary primes")
        ->required()
        ->delimiter(',');
    sieve->add_option("--threads", threads, "worker threads");

    auto *ingest = app.add_subcommand("ingest", "validate or fetch eigenforms");
    std::string ipath, ifetch, iendpoint, iout;
    ingest->add_option("path", ipath, "eigenform JSON to validate");
    ingest->add_option("--fetch", ifetch, "label to fetch");
    ingest->add_option("--endpoint", iendpoint, "database base URL");
    ingest->add_option("--out", iout, "output path for --fetch");

    auto *heur = app.add_subcommand("heuristic", "sieve success estimate");
    long hq = 0, hd = 0, hr = 0;
    double hc = 1.0;
    heur->add_option("--q", hq, "auxiliary prime")->required();
    heur->add_option("--d", hd, "field degree")->required();
    heur->add_option("--r", hr, "prime count above q")->required();
    heur->add_option("--c", hc, "eigenvalue count factor");

    auto *verify = app.add_subcommand("verify-all", "full reproduction suite");
    verify->add_option("--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    run.report_path = report_path;
    try {
        if (app.got_subcommand(scan)) {
            run.command = "modularity-scan";
            run.params = {{"max_n", max_n}, {"strict", strict},
                          {"threads", threads}};
            return run.finish(cmd_scan(run, max_n, strict, threads));
        }
        if (app.got_subcommand(bounds)) {
            run.command = "bounds";
            run.params = {{"p", bp}};
            return run.finish(cmd_bounds(run, bp));
        }
        if (app.got_subcommand(frey)) {
            run.command = "frey";
            run.params = {{"p", fp}, {"a", fa_s}, {"b", fb_s}, {"l", fell},
                          {"j", fj}, {"k", fk}, {"twist", ftwist},
                          {"case", fcase}};
            return run.finish(cmd_frey(run, fp, Z(fa_s), Z(fb_s), fell, fj,
                                       fk, ftwist, fcase == "dividing"));
        }
        if (app.got_subcommand(sieve)) {
            run.command = "sieve";
            run.params = {{"p", sp}, {"case", scase}, {"j", sj}, {"k", sk},
                          {"eigenform", seigen}, {"S", sS},
                          {"threads", threads}};
            try {
                return run.finish(cmd_sieve(run, sp, scase == "dividing", sj,
                                            sk, seigen, sS, threads));
            } catch (const std::invalid_argument &e) {
                std::cerr << "data error: " << e.what() << "\n";
                return run.finish(kData);
            }
        }
        if (app.got_subcommand(ingest)) {
            run.command = "ingest";
            run.params = {{"path", ipath}, {"fetch", ifetch},
                          {"endpoint", iendpoint}, {"out", iout}};
            if (ipath.empty() && ifetch.empty()) {
                std::cerr << "ingest needs a path or --fetch\n";
                return kUsage;
            }
            if (!ifetch.empty() && iendpoint.empty()) {
                std::cerr << "--fetch needs --endpoint\n";
                return kUsage;
            }
            try {
                return run.finish(
                    cmd_ingest(run, ipath, ifetch, iendpoint, iout));
            } catch (const NetworkError &e) {
                std::cerr << "network error: " << e.what() << "\n";
                return run.finish(kData);
            } catch (const std::invalid_argument &e) {
                std::cerr << "data error: " << e.what() << "\n";
                return run.finish(kData);
            }
        }
        if (app.got_subcommand(heur)) {
            run.command = "heuristic";
            run.params = {{"q", hq}, {"d", hd}, {"r", hr}, {"c", hc}};
            return run.finish(cmd_heuristic(run, hq, hd, hr, hc));
        }
        run.command = "verify-all";
        run.params = {{"threads", threads}};
        return run.finish(cmd_verify_all(run, threads));
    } catch (const CLI::ValidationError &e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
}
