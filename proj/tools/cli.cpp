#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "fj/compiler.hpp"
#include "fj/field.hpp"
#include "fj/generator.hpp"
#include "fj/oracle.hpp"
#include "fj/projective.hpp"

namespace fj::cli {
namespace {

const char* kVersion = "fjtool 0.1.0 (FJP format version 0x01)";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* boolstr(bool b) { return b ? "true" : "false"; }

PrimeField field_from(const std::string& p) { return PrimeField(parse_nat(p)); }

// Either a companion matrix of --poly or an explicit --matrix.
ProjMatrix matrix_from(const std::string& p, const std::string& poly, const std::string& matrix) {
    if (poly.empty() == matrix.empty()) throw UsageError("give exactly one of --poly or --matrix");
    PrimeField F = field_from(p);
    if (!matrix.empty()) return ProjMatrix::parse(F, matrix);
    return companion_matrix(FpPoly::parse(F, poly));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::InvalidInput, "short write to " + path);
}

// A program comes from a file, or is compiled on the fly from --p with --poly/--matrix.
struct ProgramSource {
    std::string path, p, poly, matrix;

    void add_to(CLI::App* app) {
        app->add_option("--program", path, "compiled .fjp file");
        app->add_option("--p", p, "prime modulus (decimal), used with --poly or --matrix");
        app->add_option("--poly", poly, "polynomial, \"3,3,0,1\" or \"x^3+3*x+3\"");
        app->add_option("--matrix", matrix, "matrix rows, \"0,0,3;4,0,3;0,4,0\"");
    }

    std::shared_ptr<const FJProgram> load() const {
        if (!path.empty()) {
            if (!p.empty() || !poly.empty() || !matrix.empty()) throw UsageError("--program excludes --p/--poly/--matrix");
            return std::make_shared<const FJProgram>(deserialize(read_file(path)));
        }
        if (p.empty()) throw UsageError("give --program, or --p with --poly or --matrix");
        return std::make_shared<const FJProgram>(compile(matrix_from(p, poly, matrix)));
    }
};

StreamFormat format_from(const std::string& name) {
    auto f = parse_stream_format(name);
    if (!f) throw UsageError("unknown format '" + name + "' (dec or raw)");
    return *f;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("FJ_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("FJ_SEED is not a decimal integer: ") + env);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional jump pseudorandom generators over prime fields", "fjtool"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string p, poly, matrix, strategy = "exhaustive-lex", start, format = "dec", out_path, mode;
    std::size_t degree = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t attempts = 100'000, count = 0, iterations = 100'000;
    unsigned runs = 5;
    bool json = false, trusted = false, verify = false;
    std::string threshold, out_modulus, icg_a = "1", icg_b = "1";
    std::vector<std::string> programs;
    ProgramSource src;

    auto* search = app.add_subcommand("search-poly", "find a projectively primitive polynomial");
    search->add_option("--p", p, "prime modulus")->required();
    search->add_option("--degree", degree, "polynomial degree")->required()->check(CLI::PositiveNumber);
    search->add_option("--strategy", strategy, "exhaustive-lex | seeded-random | small-coefficients-first");
    search->add_option("--seed", seed, "seed for seeded-random (default: $FJ_SEED or 0)");
    search->add_option("--attempts", attempts, "candidate budget for seeded-random");

    auto* check = app.add_subcommand("check-poly", "certify irreducibility and (projective) primitivity");
    check->add_option("--p", p, "prime modulus")->required();
    check->add_option("--poly", poly, "polynomial")->required();

    auto* makep = app.add_subcommand("make-primitive", "rescale roots to obtain a primitive polynomial");
    makep->add_option("--p", p, "prime modulus")->required();
    makep->add_option("--poly", poly, "projectively primitive polynomial")->required();

    auto* comp = app.add_subcommand("compile", "compile a transitive map into an .fjp program");
    comp->add_option("--p", p, "prime modulus")->required();
    comp->add_option("--poly", poly, "characteristic polynomial (companion matrix is used)");
    comp->add_option("--matrix", matrix, "explicit matrix");
    comp->add_option("--out", out_path, "output .fjp path")->required();
    comp->add_flag("--trusted", trusted, "skip the transitivity certificate");

    auto* gen = app.add_subcommand("gen", "emit a fractional jump sequence");
    src.add_to(gen);
    gen->add_option("--start", start, "start point, comma separated (default: zero)");
    gen->add_option("--count", count, "number of outputs")->required()->check(CLI::PositiveNumber);
    gen->add_option("--format", format, "dec | raw");

    auto* orbit = app.add_subcommand("verify-orbit", "exhaustively check that the sequence is one full cycle");
    src.add_to(orbit);
    orbit->add_option("--start", start, "start point (default: zero)");
    orbit->add_flag("--json", json, "JSON report");

    auto* jump = app.add_subcommand("jump-index", "absolute fractional jump index by brute force");
    jump->add_option("--p", p, "prime modulus")->required();
    jump->add_option("--poly", poly, "characteristic polynomial");
    jump->add_option("--matrix", matrix, "explicit matrix");

    auto* compound = app.add_subcommand("compound", "CRT compound of programs over distinct primes");
    compound->add_option("--program", programs, "an .fjp program (repeat)")->required();
    compound->add_option("--start", start, "start point mod N (default: zero)");
    compound->add_option("--count", count, "number of outputs")->check(CLI::PositiveNumber);
    compound->add_option("--format", format, "dec | raw");
    compound->add_flag("--verify", verify, "report the full-orbit check instead of a stream");
    compound->add_flag("--json", json, "JSON report with --verify");

    auto* harden = app.add_subcommand("harden", "secret-prime or forced-jump wrapping");
    harden->add_option("--mode", mode, "secret-prime | forced-jump")->required();
    src.add_to(harden);
    harden->add_option("--out-modulus", out_modulus, "public prime p with q = k p + 2 (secret-prime)");
    harden->add_option("--threshold", threshold, "rank threshold of T (forced-jump; default floor((q^n-1)/2))");
    harden->add_option("--start", start, "start point (default: zero)");
    harden->add_option("--count", count, "number of outputs")->required()->check(CLI::PositiveNumber);
    harden->add_option("--format", format, "dec | raw");

    auto* benchc = app.add_subcommand("bench", "time FJ evaluation against an ICG over the same prime");
    src.add_to(benchc);
    benchc->add_option("--iterations", iterations, "steps per run (>= 10000)");
    benchc->add_option("--runs", runs, "timed runs; the median is reported");
    benchc->add_option("--icg-a", icg_a, "ICG multiplier");
    benchc->add_option("--icg-b", icg_b, "ICG increment");
    benchc->add_flag("--json", json, "JSON report");

    std::vector<const char*> argv{"fjtool"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (search->parsed()) {
            auto s = parse_search_strategy(strategy);
            if (!s) throw UsageError("unknown strategy '" + strategy + "'");
            SearchOptions opts;
            opts.strategy = *s;
            opts.seed = seed ? *seed : default_seed();
            opts.random_attempts = attempts;
            FpPoly f = search_projectively_primitive(field_from(p), degree, opts);
            out << "polynomial: " << f.to_string() << '\n' << "coefficients: " << f.to_coefficient_list() << '\n';
        } else if (check->parsed()) {
            const Nat q = parse_nat(p);
            out << "p_prime: " << boolstr(is_prime(q)) << '\n';
            PrimeField F(q);
            FpPoly f = FpPoly::parse(F, poly);
            if (f.degree() < 1) throw Error(ErrorKind::InvalidInput, "polynomial must have degree >= 1");
            f = f.monic();
            const std::size_t m = static_cast<std::size_t>(f.degree());
            const Nat N = projective_group_order(q, m);
            out << "degree: " << m << '\n';
            out << "projective_order: " << to_decimal(N) << '\n';
            out << "projective_order_prime: " << boolstr(is_prime(N)) << '\n';
            const bool irr = is_irreducible(f);
            out << "irreducible: " << boolstr(irr) << '\n';
            const bool pp = is_projectively_primitive(f);
            out << "projectively_primitive: " << boolstr(pp) << '\n';
            try {
                out << "primitive: " << boolstr(is_primitive(f)) << '\n';
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::IncompleteFactorization) throw;
                out << "primitive: unknown\n";
            }
        } else if (makep->parsed()) {
            auto r = make_primitive(FpPoly::parse(field_from(p), poly).monic());
            out << "lambda: " << to_decimal(r.lambda) << '\n'
                << "polynomial: " << r.polynomial.to_string() << '\n'
                << "coefficients: " << r.polynomial.to_coefficient_list() << '\n';
        } else if (comp->parsed()) {
            CompileOptions opts;
            opts.trusted_transitive = trusted;
            FJProgram prog = compile(matrix_from(p, poly, matrix), opts);
            auto bytes = serialize(prog);
            write_file(out_path, bytes);
            out << "n: " << prog.n() << '\n' << "branches: " << prog.branches().size() << '\n' << "pivots:";
            for (auto v : prog.pivots()) out << ' ' << v;
            out << '\n'
                << "payload_bits: " << payload_bits(prog.field().modulus(), prog.n()) << '\n'
                << "file_bytes: " << bytes.size() << '\n';
        } else if (gen->parsed()) {
            const StreamFormat fmt = format_from(format);
            auto prog = src.load();
            const Nat& q = prog->field().modulus();
            std::optional<AffinePoint> s;
            if (!start.empty()) s = parse_point(start, q, prog->n());
            FJState state(prog, s);
            for (std::uint64_t i = 0; i < count; ++i) write_point(out, state.step(), q, fmt);
        } else if (orbit->parsed()) {
            auto prog = src.load();
            AffinePoint s = start.empty() ? AffinePoint(prog->n(), Nat(0)) : parse_point(start, prog->field().modulus(), prog->n());
            OrbitReport r = verify_full_orbit(*prog, s);
            out << (json ? to_json(r) + "\n" : to_text(r));
        } else if (jump->parsed()) {
            ProjMatrix M = matrix_from(p, poly, matrix);
            out << "n: " << M.n() << '\n' << "absolute_jump_index: " << absolute_jump_index(M) << '\n';
        } else if (compound->parsed()) {
            std::vector<std::shared_ptr<const FJProgram>> progs;
            for (const auto& path : programs) progs.push_back(std::make_shared<const FJProgram>(deserialize(read_file(path))));
            CompoundGenerator probe(progs);
            std::optional<AffinePoint> s;
            if (!start.empty()) s = parse_point(start, probe.modulus(), probe.n());
            CompoundGenerator g(progs, s);
            if (verify) {
                OrbitReport r = verify_full_orbit(g, g.current());
                out << "modulus: " << to_decimal(g.modulus()) << '\n';
                out << (json ? to_json(r) + "\n" : to_text(r));
            } else {
                if (count == 0) throw UsageError("compound needs --count or --verify");
                const StreamFormat fmt = format_from(format);
                for (std::uint64_t i = 0; i < count; ++i) write_point(out, g.step(), g.modulus(), fmt);
            }
        } else if (harden->parsed()) {
            const StreamFormat fmt = format_from(format);
            auto prog = src.load();
            const Nat& q = prog->field().modulus();
            std::optional<AffinePoint> s;
            if (!start.empty()) s = parse_point(start, q, prog->n());
            if (mode == "secret-prime") {
                if (out_modulus.empty()) throw UsageError("secret-prime needs --out-modulus");
                if (!threshold.empty()) throw UsageError("--threshold applies to forced-jump only");
                SecretPrimeGenerator g(prog, parse_nat(out_modulus), s);
                for (std::uint64_t i = 0; i < count; ++i) write_point(out, g.next(), g.out_modulus(), fmt);
            } else if (mode == "forced-jump") {
                if (!out_modulus.empty()) throw UsageError("--out-modulus applies to secret-prime only");
                std::optional<Nat> t;
                if (!threshold.empty()) t = parse_nat(threshold);
                ForcedJump phi(prog, t);
                AffinePoint x = s ? *s : AffinePoint(prog->n(), Nat(0));
                for (std::uint64_t i = 0; i < count; ++i) {
                    x = phi.eval(x);
                    write_point(out, x, q, fmt);
                }
            } else {
                throw UsageError("unknown mode '" + mode + "' (secret-prime or forced-jump)");
            }
        } else if (benchc->parsed()) {
            auto prog = src.load();
            BenchReport r = bench(*prog, IcgParams{parse_nat(icg_a), parse_nat(icg_b)}, iterations, runs);
            out << (json ? to_json(r) + "\n" : to_text(r));
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

}  // namespace fj::cli
