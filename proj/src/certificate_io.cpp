#include "ebc/certificate_io.hpp"

#include "ebc/errors.hpp"

#include <json.hpp>

#include <charconv>

namespace ebc {
namespace {

using ordered_json = nlohmann::ordered_json;

const char* const kCheckNames[] = {"residues", "s_properties", "d6", "divisibility_pattern", "tail", "digits", "valuation"};

bool& flag(WitnessChecks& c, std::string_view name) {
    if (name == "residues") return c.residues;
    if (name == "s_properties") return c.s_properties;
    if (name == "d6") return c.d6;
    if (name == "divisibility_pattern") return c.divisibility_pattern;
    if (name == "tail") return c.tail;
    if (name == "digits") return c.digits;
    return c.valuation;
}

const std::string& field(const ordered_json& j, const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) throw PreconditionError("certificate: missing field \"" + key + "\"");
    if (!it->is_string()) throw PreconditionError("certificate: field \"" + key + "\" must be a string");
    return it->get_ref<const std::string&>();
}

BigInt big_field(const ordered_json& j, const std::string& key) {
    try {
        return parse_decimal(field(j, key));
    } catch (const PreconditionError&) {
        throw;
    } catch (const std::exception& e) {
        throw PreconditionError("certificate: field \"" + key + "\": " + e.what());
    }
}

std::uint64_t u64_field(const ordered_json& j, const std::string& key) {
    const auto v = try_u64(big_field(j, key));
    if (!v) throw PreconditionError("certificate: field \"" + key + "\" is out of range");
    return *v;
}

Dyadic dyadic_field(const ordered_json& j, const std::string& key) {
    try {
        return Dyadic::parse(field(j, key));
    } catch (const PreconditionError&) {
        throw;
    } catch (const std::exception& e) {
        throw PreconditionError("certificate: field \"" + key + "\": " + e.what());
    }
}

} // namespace

std::string certificate_to_json(const WitnessCertificate& cert) {
    ordered_json j;
    j["k"] = std::to_string(cert.k);
    j["q0"] = to_decimal(cert.q0);
    for (const auto& [idx, Pj] : cert.P) j["P_" + std::to_string(idx)] = to_decimal(Pj);
    j["A"] = to_decimal(cert.A);
    j["B"] = to_decimal(cert.B);
    j["r"] = to_decimal(cert.r);
    j["s"] = to_decimal(cert.s);
    j["m"] = to_decimal(cert.m);
    j["p"] = to_decimal(cert.p);
    j["n"] = to_decimal(cert.n);
    j["tail_cutoff"] = std::to_string(cert.tail.cutoff);
    j["tail_value"] = cert.tail.value.to_string();
    j["tail_remainder_bound"] = cert.tail.remainder_bound.to_string();
    ordered_json checks = ordered_json::object();
    WitnessChecks c = cert.checks;
    for (const char* name : kCheckNames) checks[name] = flag(c, name);
    j["checks"] = std::move(checks);
    ordered_json refs = ordered_json::array();
    const auto& rel = witness_relations();
    for (const char* name : kCheckNames) refs.push_back({{"check", name}, {"relation", rel.at(name)}});
    j["paper_refs"] = std::move(refs);
    return j.dump(2) + "\n";
}

std::string certificate_to_tsv(const WitnessCertificate& cert) {
    const auto j = ordered_json::parse(certificate_to_json(cert));
    std::string out = "field\tvalue\n";
    for (const auto& [key, value] : j.items()) {
        if (key == "checks") {
            for (const auto& [name, flag_value] : value.items())
                out += "check." + name + "\t" + (flag_value.get<bool>() ? "true" : "false") + "\n";
        } else if (value.is_string()) {
            out += key + "\t" + value.get<std::string>() + "\n";
        }
    }
    return out;
}

WitnessCertificate certificate_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw PreconditionError(std::string("certificate: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw PreconditionError("certificate: top level must be an object");

    WitnessCertificate cert;
    const auto k = u64_field(j, "k");
    if (k < 3 || k > 64) throw PreconditionError("certificate: k must lie in [3, 64]");
    cert.k = static_cast<unsigned>(k);
    cert.q0 = big_field(j, "q0");
    for (const auto& [key, value] : j.items()) {
        if (key.rfind("P_", 0) != 0) continue;
        unsigned idx = 0;
        const auto* first = key.data() + 2;
        const auto* last = key.data() + key.size();
        const auto [ptr, ec] = std::from_chars(first, last, idx);
        if (ec != std::errc{} || ptr != last || first == last) throw PreconditionError("certificate: bad key \"" + key + "\"");
        cert.P[idx] = big_field(j, key);
    }
    cert.A = big_field(j, "A");
    cert.B = big_field(j, "B");
    cert.r = big_field(j, "r");
    cert.s = big_field(j, "s");
    cert.m = big_field(j, "m");
    cert.p = big_field(j, "p");
    cert.n = big_field(j, "n");
    cert.tail.n = u64_field(j, "n");
    cert.tail.k = cert.k;
    cert.tail.cutoff = u64_field(j, "tail_cutoff");
    cert.tail.value = dyadic_field(j, "tail_value");
    cert.tail.remainder_bound = dyadic_field(j, "tail_remainder_bound");

    const auto checks = j.find("checks");
    if (checks == j.end() || !checks->is_object()) throw PreconditionError("certificate: missing \"checks\" object");
    for (const char* name : kCheckNames) {
        const auto it = checks->find(name);
        if (it == checks->end() || !it->is_boolean())
            throw PreconditionError(std::string("certificate: checks.") + name + " must be a boolean");
        flag(cert.checks, name) = it->get<bool>();
    }
    return cert;
}

std::string report_to_json(const VerificationReport& report) {
    ordered_json j;
    j["all_passed"] = report.all_passed();
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"relation", c.relation}, {"detail", c.detail}});
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

std::string report_to_tsv(const VerificationReport& report) {
    std::string out = "check\tstatus\trelation\tdetail\n";
    for (const auto& c : report.checks)
        out += c.name + "\t" + to_string(c.status) + "\t" + c.relation + "\t" + c.detail + "\n";
    return out;
}

} // namespace ebc
