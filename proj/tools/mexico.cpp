#include "mexico.hpp"

#include <algorithm>
#include <array>

#include "segvsa/algebra.hpp"

namespace segvsa::demo {

bool MexicoReport::all_passed() const {
    return std::all_of(probes.begin(), probes.end(), [](const ProbeResult& p) { return p.passed(); });
}

MexicoReport run_mexico(const SpaceConfig& space, std::uint64_t seed) {
    static constexpr std::array<const char*, 9> kAtoms = {
        "mex", "mexico_city", "peso", "usa", "dc", "dollar", "code", "capital", "currency"};

    RngStream draw(seed);
    Codebook book(space);
    for (const char* name : kAtoms) {
        book.insert(name, random_code(space, draw));
    }
    auto c = [&](const char* name) { return book.at(name); };

    RngStream mixer = RngStream(seed).split(1);
    auto record = [&](const char* code, const char* capital, const char* currency) {
        const std::array<Hypervector, 3> fields = {bind(c("code"), c(code)),
                                                   bind(c("capital"), c(capital)),
                                                   bind(c("currency"), c(currency))};
        return bundle_uniform(fields, mixer);
    };
    const Hypervector mexico = record("mex", "mexico_city", "peso");
    const Hypervector us = record("usa", "dc", "dollar");

    // Map each US filler onto its Mexican counterpart, then carry the Mexican
    // record across.
    const std::array<Hypervector, 3> mapping = {release(c("usa"), c("mex")),
                                                release(c("dc"), c("mexico_city")),
                                                release(c("dollar"), c("peso"))};
    const Hypervector us_transferred = bind(mexico, bundle_uniform(mapping, mixer));

    struct Query {
        const char* name;
        Hypervector probe;
        const char* expected;
    };
    const std::vector<Query> queries = {
        {"capital_of_mexico", release(mexico, c("capital")), "mexico_city"},
        {"currency_of_us", release(us, c("currency")), "dollar"},
        {"role_of_peso", release(mexico, c("peso")), "currency"},
        {"role_of_usa", release(us, c("usa")), "code"},
        {"dollar_of_mexico", release(bind(c("dollar"), mexico), us), "peso"},
        {"dc_of_mexico", release(bind(c("dc"), mexico), us), "mexico_city"},
        {"usa_of_mexico", release(bind(c("usa"), mexico), us), "mex"},
        {"transfer_code", release(us_transferred, c("code")), "usa"},
        {"transfer_capital", release(us_transferred, c("capital")), "dc"},
        {"transfer_currency", release(us_transferred, c("currency")), "dollar"},
    };

    MexicoReport report;
    for (const auto& q : queries) {
        report.probes.push_back({q.name, q.expected, book.nearest(q.probe, 3)});
    }
    return report;
}

}  // namespace segvsa::demo
