#include <fstream>

#include "cyclofrey/sieve.hpp"

#include <httplib.h>

namespace cyclofrey {

void fetch_eigenform(const std::string &label, const std::string &endpoint,
                     const std::string &out_path) {
    httplib::Client cli(endpoint);
    cli.set_connection_timeout(10, 0);
    cli.set_read_timeout(30, 0);
    auto res = cli.Get("/eigenform/" + label + ".json");
    if (!res)
        throw NetworkError("no response from " + endpoint + " (retriable)");
    if (res->status != 200)
        throw NetworkError("HTTP " + std::to_string(res->status) + " for " +
                           label + " (retriable)");
    ingest_eigenform_text(res->body);  // validate before persisting
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << res->body;
}

}  // namespace cyclofrey
