#include "cli.hpp"

#include "ebc/certificate_io.hpp"
#include "ebc/construction.hpp"
#include "ebc/digits.hpp"
#include "ebc/errors.hpp"
#include "ebc/lemmas.hpp"
#include "ebc/scanner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace ebc::cli {
namespace {

using u64 = std::uint64_t;
using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

u64 parse_u64(const std::string& text, const std::string& what) {
    const auto v = try_u64(parse_decimal(text));
    if (!v) throw PreconditionError(what + ": \"" + text + "\" is out of range");
    return *v;
}

std::vector<u64> parse_u64_list(const std::string& text, const std::string& what) {
    std::vector<u64> out;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) throw PreconditionError(what + ": empty entry in \"" + text + "\"");
        out.push_back(parse_u64(part, what));
    }
    return out;
}

std::string read_all(std::istream& is) {
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cannot open \"" + path + "\"");
    return read_all(f);
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

struct DigitsArgs {
    u64 n = 0;
    std::string method = "sieve";
    std::string format = "ascii";
    bool prefix = false;
    unsigned threads = 1;
};

struct WindowArgs {
    u64 pos = 0;
    u64 width = 0;
    std::string format = "ascii";
};

struct ScanArgs {
    u64 n = 0;
    std::string file;
    std::string input_format = "ascii";
    u64 bits = 0;
    std::string pattern = "11";
    bool non_overlapping = false;
    unsigned block_len = 0;
    u64 max_positions = 1000;
    u64 chunk = u64{1} << 16;
    std::string format = "json";
    unsigned threads = 1;
};

struct WitnessArgs {
    unsigned k = 3;
    std::string window;
    std::string primes;
    u64 m_max = 100000;
    u64 tail_cutoff = 0;
    unsigned threads = 1;
    bool emit_candidate = false;
    std::string format = "json";
};

struct ErdosArgs {
    u64 t = 2;
    std::string groups;
    std::string format = "json";
};

struct LemmaArgs {
    std::string kind = "lemma2";
    u64 seed = 1;
    u64 count = 0;
    u64 y_max = 1000000;
    std::optional<u64> a, A, M, r, L, cutoff;
    std::optional<unsigned> k;
    std::string Y;
    std::string ns;
    std::string values;
    std::string format = "json";
};

struct AgpArgs {
    u64 X = 0;
    u64 d = 0;
    u64 a = 0;
    std::string format = "json";
};

struct VerifyArgs {
    bool from_stdin = false;
    std::string file;
    std::string format = "json";
};

int run_digits(const DigitsArgs& a, std::ostream& out) {
    ExpansionOptions opt;
    opt.sieve.threads = a.threads;
    const auto e = a.method == "naive" ? expand_naive(a.n, opt) : expand_sieve(a.n, opt);
    if (a.format == "json") {
        ordered_json j;
        j["precision"] = e.precision;
        j["integer_part"] = e.integer_part;
        j["method"] = to_string(e.method);
        j["guard_bits"] = e.guard_bits;
        j["terms_used"] = e.terms_used;
        j["certified"] = e.certified;
        j["bits"] = to_ascii(e.bits);
        out << j.dump() << "\n";
    } else if (a.format == "hex") {
        out << to_hex(e.bits) << "\n";
    } else {
        if (a.prefix) out << e.integer_part << ".";
        out << to_ascii(e.bits) << "\n";
    }
    return ok;
}

int run_window(const WindowArgs& a, std::ostream& out) {
    const auto bits = digit_window(a.pos, a.width);
    if (a.format == "json") {
        ordered_json j;
        j["pos"] = a.pos;
        j["width"] = a.width;
        j["bits"] = to_ascii(bits);
        out << j.dump() << "\n";
    } else if (a.format == "hex") {
        out << to_hex(bits) << "\n";
    } else {
        out << to_ascii(bits) << "\n";
    }
    return ok;
}

int run_scan(const ScanArgs& a, std::istream& in, std::ostream& out) {
    BitSequence digits;
    if (!a.file.empty()) {
        const auto text = trim(a.file == "-" ? read_all(in) : read_file(a.file));
        digits = a.input_format == "hex" ? parse_hex(text, a.bits ? a.bits : 4 * text.size()) : parse_ascii(text);
    } else if (a.n > 0) {
        ExpansionOptions opt;
        opt.sieve.threads = a.threads;
        digits = expand_sieve(a.n, opt).bits;
    } else {
        throw PreconditionError("scan: give --n or --file");
    }
    if (a.block_len > 0) {
        const auto table = block_frequency_table(digits, a.block_len);
        out << (a.format == "tsv" ? to_tsv(table) : to_json(table));
        return ok;
    }
    if (a.chunk == 0) throw PreconditionError("scan: --chunk must be positive");
    StreamingBlockScanner scanner(parse_ascii(a.pattern), !a.non_overlapping);
    for (u64 i = 0; i < digits.size(); i += a.chunk)
        scanner.feed(std::span<const std::uint8_t>(digits).subspan(i, std::min<u64>(a.chunk, digits.size() - i)));
    const auto report = scanner.report();
    out << (a.format == "tsv" ? to_tsv(report, a.max_positions) : to_json(report, a.max_positions));
    return ok;
}

void print_outcome(const SearchOutcome& o, std::ostream& err) {
    err << "scanned " << o.scanned << " m, prime hits " << o.prime_hits << ", tail rejections " << o.tail_rejections
        << ", structure rejections " << o.structure_rejections << "\n";
}

int run_witness(const WitnessArgs& a, std::ostream& out, std::ostream& err) {
    WitnessParams params;
    params.k = a.k;
    params.search_breadth = a.m_max;
    params.tail_cutoff = a.tail_cutoff;
    params.threads = a.threads;
    if (!a.window.empty() == !a.primes.empty()) throw PreconditionError("witness: give exactly one of --window or --primes");
    if (!a.window.empty()) {
        const auto parts = split(a.window, ':');
        if (parts.size() != 2) throw PreconditionError("witness: --window must be LOW:HIGH");
        params.primes = PrimeWindow{parse_u64(parts[0], "window"), parse_u64(parts[1], "window")};
    } else {
        params.primes = parse_u64_list(a.primes, "primes");
    }
    if (params.tail_cutoff != 0 && params.tail_cutoff < params.k)
        throw PreconditionError("witness: --tail-cutoff must be at least k");
    const auto outcome = run_witness_pipeline(params);
    print_outcome(outcome, err);
    auto emit = [&](const WitnessCertificate& c) {
        out << (a.format == "tsv" ? certificate_to_tsv(c) : certificate_to_json(c));
    };
    if (outcome.found()) {
        emit(*outcome.certificate);
        return ok;
    }
    err << "no witness in range: m < " << a.m_max << "\n";
    if (outcome.first_structural_candidate) {
        const auto& c = *outcome.first_structural_candidate;
        err << "first structural candidate: m = " << to_decimal(c.m) << ", n = " << to_decimal(c.n)
            << ", tail upper bound = " << c.tail.upper_bound().to_double() << "\n";
        if (a.emit_candidate) emit(c);
    }
    return no_witness;
}

std::vector<std::vector<u64>> parse_groups(const std::string& text) {
    std::vector<std::vector<u64>> groups;
    for (const auto& g : split(text, ';')) groups.push_back(parse_u64_list(g, "groups"));
    return groups;
}

int run_erdos(const ErdosArgs& a, std::ostream& out) {
    const auto res = erdos_zero_run(ErdosRunParams{a.t, parse_groups(a.groups)});
    if (a.format == "tsv") {
        out << "j\tvalue\tdivisor_count\trequired_factor\tpassed\n";
        for (const auto& c : res.checks)
            out << c.j << "\t" << to_decimal(c.value) << "\t" << c.divisor_count << "\t" << to_decimal(c.required_factor)
                << "\t" << (c.passed ? "true" : "false") << "\n";
    } else {
        ordered_json j;
        j["t"] = a.t;
        j["x"] = to_decimal(res.x);
        j["modulus"] = to_decimal(res.modulus);
        ordered_json system = ordered_json::array();
        for (const auto& c : res.system.congruences())
            system.push_back({{"residue", to_decimal(c.residue)}, {"modulus", to_decimal(c.modulus)}});
        j["congruences"] = std::move(system);
        ordered_json checks = ordered_json::array();
        for (const auto& c : res.checks)
            checks.push_back({{"j", c.j},
                              {"value", to_decimal(c.value)},
                              {"divisor_count", c.divisor_count},
                              {"required_factor", to_decimal(c.required_factor)},
                              {"passed", c.passed}});
        j["checks"] = std::move(checks);
        j["all_passed"] = res.all_passed();
        out << j.dump(2) << "\n";
    }
    return res.all_passed() ? ok : check_failed;
}

int run_lemmas(const LemmaArgs& a, std::ostream& out) {
    const bool tsv = a.format == "tsv";
    bool all_passed = true;
    if (a.kind == "lemma2") {
        std::vector<Lemma2Instance> instances;
        if (a.a || a.A || a.M) {
            if (!(a.a && a.A && a.M) || a.Y.empty()) throw PreconditionError("lemmas: a single instance needs --a --A --M --Y");
            instances.push_back(Lemma2Instance{*a.a, *a.A, *a.M, parse_rational(a.Y)});
        } else {
            instances = generate_lemma2_instances(a.seed, a.count ? a.count : 1000, a.y_max);
        }
        if (tsv) out << lemma2_tsv_header();
        for (const auto& in : instances) {
            const auto r = check_lemma2(in);
            all_passed = all_passed && r.passed();
            out << (tsv ? to_tsv_line(r) : to_json_line(r));
        }
    } else if (a.kind == "lemma3") {
        std::vector<Lemma3Report> reports;
        if (!a.ns.empty()) {
            if (!a.k || !a.L) throw PreconditionError("lemmas: --ns needs --k and --L");
            reports.push_back(check_lemma3_decomposition(parse_u64_list(a.ns, "ns"), *a.k, *a.L, a.cutoff.value_or(0)));
        } else if (a.r || a.A || a.M) {
            if (!(a.r && a.A && a.M && a.k && a.L)) throw PreconditionError("lemmas: a progression needs --r --A --M --k --L");
            Lemma3Instance in{*a.r, *a.A, *a.M, *a.k, *a.L, a.cutoff.value_or(0), std::nullopt};
            if (!a.Y.empty()) in.Y = parse_rational(a.Y);
            reports.push_back(check_lemma3_decomposition(in));
        } else {
            for (const auto& in : generate_lemma3_instances(a.seed, a.count ? a.count : 20))
                reports.push_back(check_lemma3_decomposition(in));
        }
        if (tsv) out << lemma3_tsv_header();
        for (const auto& r : reports) {
            all_passed = all_passed && r.passed();
            out << (tsv ? to_tsv_line(r) : to_json_line(r));
        }
    } else {
        std::vector<std::vector<Dyadic>> collections;
        if (!a.values.empty()) {
            collections.emplace_back();
            for (const auto& v : split(a.values, ',')) {
                const auto q = parse_rational(v);
                BigInt den = q.get_den();
                const auto e = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
                if (den != pow2(e)) throw PreconditionError("lemmas: markov values must be dyadic, got " + v);
                collections.back().push_back(Dyadic(q.get_num(), e));
            }
        } else {
            collections = generate_tail_collections(a.seed, a.count ? a.count : 200);
        }
        const unsigned k = a.k.value_or(2);
        if (tsv) out << "record\tk\tsize\texceed_count\tsum\tholds\n";
        for (const auto& c : collections) {
            const auto r = check_markov(c, k);
            all_passed = all_passed && r.holds;
            if (tsv) {
                out << "markov\t" << k << "\t" << c.size() << "\t" << r.exceed_count << "\t" << r.sum.to_string() << "\t"
                    << (r.holds ? "true" : "false") << "\n";
            } else {
                ordered_json j;
                j["record"] = "markov";
                j["k"] = k;
                j["size"] = c.size();
                j["exceed_count"] = r.exceed_count;
                j["sum"] = r.sum.to_string();
                j["holds"] = r.holds;
                out << j.dump() << "\n";
            }
        }
    }
    return all_passed ? ok : check_failed;
}

int run_agp(const AgpArgs& a, std::ostream& out) {
    const auto r = check_agp_progression(a.X, a.d, a.a);
    out << (a.format == "tsv" ? agp_tsv_header() + to_tsv_line(r) : to_json_line(r));
    return r.verdict == Verdict::fail ? check_failed : ok;
}

int run_verify(const VerifyArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
    if (a.from_stdin == !a.file.empty()) throw PreconditionError("verify: give exactly one of --stdin or --file");
    const std::string text = a.from_stdin ? read_all(in) : read_file(a.file);
    const auto report = verify_certificate(certificate_from_json(text));
    out << (a.format == "tsv" ? report_to_tsv(report) : report_to_json(report));
    if (!report.all_passed()) err << "verification failed\n";
    return report.all_passed() ? ok : check_failed;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified binary digits of the Erdos-Borwein constant and witness constructions", "ebc"};
    app.require_subcommand(1);

    DigitsArgs digits;
    auto* c_digits = app.add_subcommand("digits", "certified fractional bits 1..n");
    c_digits->add_option("--n", digits.n, "number of fractional bits")->required()->check(CLI::PositiveNumber);
    c_digits->add_option("--method", digits.method)->check(CLI::IsMember({"naive", "sieve"}));
    c_digits->add_option("--format", digits.format)->check(CLI::IsMember({"ascii", "hex", "json"}));
    c_digits->add_flag("--prefix", digits.prefix, "prefix ascii output with \"1.\"");
    c_digits->add_option("--threads", digits.threads)->check(CLI::Range(1u, 256u));

    WindowArgs window;
    auto* c_window = app.add_subcommand("window", "bits pos..pos+width-1 without earlier digits");
    c_window->add_option("--pos", window.pos)->required()->check(CLI::PositiveNumber);
    c_window->add_option("--width", window.width)->required()->check(CLI::PositiveNumber);
    c_window->add_option("--format", window.format)->check(CLI::IsMember({"ascii", "hex", "json"}));

    ScanArgs scan;
    auto* c_scan = app.add_subcommand("scan", "block occurrences or block frequencies");
    c_scan->add_option("--n", scan.n, "scan the first n certified bits");
    c_scan->add_option("--file", scan.file, "scan digits read from a file (- for stdin)");
    c_scan->add_option("--input-format", scan.input_format)->check(CLI::IsMember({"ascii", "hex"}));
    c_scan->add_option("--bits", scan.bits, "bit count of a hex input");
    c_scan->add_option("--pattern", scan.pattern);
    c_scan->add_flag("--non-overlapping", scan.non_overlapping);
    c_scan->add_option("--block-len", scan.block_len, "emit the frequency table of all blocks of this length");
    c_scan->add_option("--max-positions", scan.max_positions, "suppress position lists longer than this");
    c_scan->add_option("--chunk", scan.chunk, "streaming chunk size in bits");
    c_scan->add_option("--format", scan.format)->check(CLI::IsMember({"json", "tsv"}));
    c_scan->add_option("--threads", scan.threads)->check(CLI::Range(1u, 256u));

    WitnessArgs witness;
    auto* c_witness = app.add_subcommand("witness", "construct and search for an \"11\" witness");
    c_witness->add_option("--k", witness.k)->check(CLI::Range(3u, 64u));
    c_witness->add_option("--window", witness.window, "closed prime window LOW:HIGH");
    c_witness->add_option("--primes", witness.primes, "explicit comma-separated prime list");
    c_witness->add_option("--m-max", witness.m_max, "scan m in [0, m-max)");
    c_witness->add_option("--tail-cutoff", witness.tail_cutoff, "0 selects the default policy");
    c_witness->add_option("--threads", witness.threads)->check(CLI::Range(1u, 256u));
    c_witness->add_flag("--emit-candidate", witness.emit_candidate,
                        "when no witness exists, print the first structural candidate's certificate");
    c_witness->add_option("--format", witness.format)->check(CLI::IsMember({"json", "tsv"}));

    ErdosArgs erdos;
    auto* c_erdos = app.add_subcommand("erdos-run", "zero-run construction x + j = P_j^(t-1) (mod P_j^t)");
    c_erdos->add_option("--t", erdos.t)->check(CLI::Range(u64{2}, u64{1} << 20));
    c_erdos->add_option("--groups", erdos.groups, "groups separated by ';', primes by ','")->required();
    c_erdos->add_option("--format", erdos.format)->check(CLI::IsMember({"json", "tsv"}));

    LemmaArgs lemma;
    auto* c_lemmas = app.add_subcommand("lemmas", "divisor-sum, decomposition and counting inequalities");
    c_lemmas->add_option("--kind", lemma.kind)->check(CLI::IsMember({"lemma2", "lemma3", "markov"}));
    c_lemmas->add_option("--seed", lemma.seed);
    c_lemmas->add_option("--count", lemma.count, "number of generated instances");
    c_lemmas->add_option("--y-max", lemma.y_max);
    c_lemmas->add_option("--a", lemma.a);
    c_lemmas->add_option("--A", lemma.A);
    c_lemmas->add_option("--M", lemma.M);
    c_lemmas->add_option("--Y", lemma.Y, "rational, as p/q or decimal");
    c_lemmas->add_option("--r", lemma.r);
    c_lemmas->add_option("--k", lemma.k);
    c_lemmas->add_option("--L", lemma.L);
    c_lemmas->add_option("--cutoff", lemma.cutoff);
    c_lemmas->add_option("--ns", lemma.ns, "explicit comma-separated rows");
    c_lemmas->add_option("--values", lemma.values, "comma-separated dyadic values for markov");
    c_lemmas->add_option("--format", lemma.format)->check(CLI::IsMember({"json", "tsv"}));

    AgpArgs agp;
    auto* c_agp = app.add_subcommand("agp", "primes up to X in the class a mod d");
    c_agp->add_option("--X", agp.X)->required();
    c_agp->add_option("--d", agp.d)->required();
    c_agp->add_option("--a", agp.a)->required();
    c_agp->add_option("--format", agp.format)->check(CLI::IsMember({"json", "tsv"}));

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "re-verify a witness certificate");
    c_verify->add_flag("--stdin", verify.from_stdin);
    c_verify->add_option("--file", verify.file);
    c_verify->add_option("--format", verify.format)->check(CLI::IsMember({"json", "tsv"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return usage;
    }

    try {
        if (c_digits->parsed()) return run_digits(digits, out);
        if (c_window->parsed()) return run_window(window, out);
        if (c_scan->parsed()) return run_scan(scan, in, out);
        if (c_witness->parsed()) return run_witness(witness, out, err);
        if (c_erdos->parsed()) return run_erdos(erdos, out);
        if (c_lemmas->parsed()) return run_lemmas(lemma, out);
        if (c_agp->parsed()) return run_agp(agp, out);
        if (c_verify->parsed()) return run_verify(verify, in, out, err);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const CertificationError& e) {
        err << "error: " << e.what() << "\n";
        return check_failed;
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << "\n";
        return check_failed;
    }
    err << app.help();
    return usage;
}

} // namespace ebc::cli
