#include "fj/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <json.hpp>

namespace fj {

std::uint64_t point_count(const Nat& modulus, std::size_t n) {
    Nat total;
    mpz_pow_ui(total.get_mpz_t(), modulus.get_mpz_t(), n);
    if (mpz_sizeinbase(total.get_mpz_t(), 2) > 62) return std::uint64_t{1} << 62;
    return total.get_ui();
}

void for_each_point(const Nat& modulus, std::size_t n, const std::function<void(const AffinePoint&)>& visit) {
    AffinePoint x(n, Nat(0));
    while (true) {
        visit(x);
        std::size_t k = 0;
        while (k < n) {
            x[k] += 1;
            if (x[k] < modulus) break;
            x[k] = 0;
            ++k;
        }
        if (k == n) return;
    }
}

namespace {

std::uint64_t rank_u64(const Nat& modulus, const AffinePoint& x) { return point_rank(modulus, x).get_ui(); }

void require_cap(std::uint64_t size, std::uint64_t cap, const char* what) {
    if (size > cap) {
        throw Error(ErrorKind::Capacity, std::string(what) + ": " + std::to_string(size) + " points exceeds cap " + std::to_string(cap));
    }
}

template <class Step>
OrbitReport walk(Step&& step, const IndexFn& index, const AffinePoint& start, std::uint64_t expected_size) {
    require_cap(expected_size, kOrbitCap, "verify_full_orbit");
    std::vector<bool> seen(expected_size, false);
    OrbitReport report;
    AffinePoint x = start;
    while (true) {
        const std::uint64_t i = index(x);
        if (i >= expected_size) throw Error(ErrorKind::InvalidInput, "orbit left the declared point set");
        if (seen[i]) {
            report.is_full_cycle = report.orbit_length == expected_size && x == start;
            return report;
        }
        seen[i] = true;
        ++report.orbit_length;
        x = step(x, report);
    }
}

}  // namespace

OrbitReport verify_full_orbit(const StepFn& step, const IndexFn& index, const AffinePoint& start, std::uint64_t expected_size) {
    return walk([&](const AffinePoint& x, OrbitReport&) { return step(x); }, index, start, expected_size);
}

OrbitReport verify_full_orbit(const FJProgram& program, const AffinePoint& start) {
    const Nat& p = program.field().modulus();
    const std::uint64_t size = point_count(p, program.n());
    auto step = [&](const AffinePoint& x, OrbitReport& r) {
        if (r.branch_histogram.empty()) r.branch_histogram.assign(program.n() + 1, 0);
        TracedStep t = eval_traced(program, x);
        ++r.branch_histogram[t.branch];
        return std::move(t.image);
    };
    OrbitReport r = walk(step, [&](const AffinePoint& x) { return rank_u64(p, x); }, start, size);
    if (r.branch_histogram.empty()) r.branch_histogram.assign(program.n() + 1, 0);
    return r;
}

OrbitReport verify_full_orbit(const CompoundGenerator& g, const AffinePoint& start) {
    const Nat& N = g.modulus();
    return verify_full_orbit([&](const AffinePoint& x) { return g.eval(x); }, [&](const AffinePoint& x) { return rank_u64(N, x); }, start,
                             point_count(N, g.n()));
}

unsigned absolute_jump_index(const ProjMatrix& m) {
    require_cap(point_count(m.field().modulus(), m.n()), kJumpIndexCap, "absolute_jump_index");
    unsigned best = 0;
    for_each_point(m.field().modulus(), m.n(), [&](const AffinePoint& x) {
        best = std::max(best, jump_index(m, ProjPoint::lift(x), JumpBound::Any));
    });
    return best;
}

bool equivalence_check(const FJProgram& program, const ProjMatrix& m) {
    if (!(program.field() == m.field()) || program.n() != m.n()) return false;
    require_cap(point_count(m.field().modulus(), m.n()), kEquivalenceCap, "equivalence_check");
    bool ok = true;
    for_each_point(m.field().modulus(), m.n(), [&](const AffinePoint& x) {
        if (ok && !(eval(program, x) == psi_reference(m, x))) ok = false;
    });
    return ok;
}

std::uint64_t brute_force_root_order(const FpPoly& f_in) {
    if (f_in.degree() < 1) throw Error(ErrorKind::InvalidInput, "constant polynomial");
    const FpPoly f = f_in.monic();
    const PrimeField& F = f.field();
    const std::size_t m = static_cast<std::size_t>(f.degree());
    require_cap(point_count(F.modulus(), m), kPrimitiveCap, "brute_force_root_order");
    if (!is_irreducible(f)) throw Error(ErrorKind::InvalidInput, f.to_string() + " is reducible");
    // Multiply by x as a linear feedback step: shift up, fold x^m = -(c_0 + ... + c_{m-1} x^{m-1}).
    if (mpz_sizeinbase(F.modulus().get_mpz_t(), 2) <= 32) {
        const std::uint64_t p = F.modulus().get_ui();
        std::vector<std::uint64_t> c(m), v(m, 0), one(m, 0);
        for (std::size_t i = 0; i < m; ++i) c[i] = f.coefficient(i).get_ui();
        one[0] = 1;
        v = one;
        for (std::uint64_t k = 1;; ++k) {
            const std::uint64_t top = v[m - 1];
            for (std::size_t i = m - 1; i > 0; --i) v[i] = v[i - 1];
            v[0] = 0;
            for (std::size_t i = 0; i < m; ++i) v[i] = (v[i] + (p - top * c[i] % p)) % p;
            if (v == one) return k;
        }
    }
    std::vector<Nat> v(m, Nat(0)), one(m, Nat(0));
    one[0] = 1;
    v = one;
    for (std::uint64_t k = 1;; ++k) {
        Nat top = v[m - 1];
        for (std::size_t i = m - 1; i > 0; --i) v[i] = v[i - 1];
        v[0] = 0;
        for (std::size_t i = 0; i < m; ++i) v[i] = F.sub(v[i], F.mul(top, f.coefficient(i)));
        if (v == one) return k;
    }
}

bool brute_force_primitive(const FpPoly& f) {
    const Nat& p = f.field().modulus();
    Nat full;
    mpz_pow_ui(full.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f.degree()));
    return Nat(static_cast<unsigned long>(brute_force_root_order(f))) == full - 1;
}

BenchReport bench(const FJProgram& program, const IcgParams& icg, std::uint64_t iterations, unsigned runs) {
    if (iterations < 10'000) throw Error(ErrorKind::InvalidInput, "bench needs at least 10^4 iterations");
    if (runs == 0) throw Error(ErrorKind::InvalidInput, "bench needs at least one run");
    using clock = std::chrono::steady_clock;
    BenchReport r;
    r.p = program.field().modulus();
    r.n = program.n();
    r.steps = iterations;
    r.runs = runs;

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2;
    };

    AffinePoint x(program.n(), Nat(0));
    for (std::uint64_t i = 0; i < iterations / 10; ++i) x = eval(program, x);
    std::vector<double> fj_times;
    for (unsigned run = 0; run < runs; ++run) {
        std::uint64_t hits = 0;
        instrumentation::reset_inversions();
        auto t0 = clock::now();
        for (std::uint64_t i = 0; i < iterations; ++i) {
            TracedStep t = eval_traced(program, x);
            hits += t.branch == 0;
            x = std::move(t.image);
        }
        auto t1 = clock::now();
        fj_times.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(iterations));
        if (run == 0) {
            r.fj_inversions = instrumentation::inversions();
            r.branch1_hits = hits;
        }
    }
    r.fj_coordinates = iterations * program.n();
    r.fj_ns_per_step = median(fj_times);
    r.fj_ns_per_coordinate = r.fj_ns_per_step / static_cast<double>(program.n());
    r.branch1_fraction = static_cast<double>(r.branch1_hits) / static_cast<double>(iterations);

    ICGState state(program.field(), icg.a, icg.b);
    for (std::uint64_t i = 0; i < iterations / 10; ++i) state.next();
    std::vector<double> icg_times;
    for (unsigned run = 0; run < runs; ++run) {
        instrumentation::reset_inversions();
        std::uint64_t zeros = 0;
        auto t0 = clock::now();
        for (std::uint64_t i = 0; i < iterations; ++i) {
            zeros += state.current() == 0;
            state.next();
        }
        auto t1 = clock::now();
        icg_times.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(iterations));
        if (run == 0) {
            r.icg_inversions = instrumentation::inversions();
            r.icg_zero_states = zeros;
        }
    }
    r.icg_outputs = iterations;
    r.icg_ns_per_output = median(icg_times);
    instrumentation::reset_inversions();
    return r;
}

std::string to_text(const OrbitReport& r) {
    std::ostringstream os;
    os << "orbit_length: " << r.orbit_length << '\n';
    os << "is_full_cycle: " << (r.is_full_cycle ? "true" : "false") << '\n';
    if (!r.branch_histogram.empty()) {
        os << "branch_histogram:";
        for (auto c : r.branch_histogram) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

std::string to_text(const BenchReport& r) {
    std::ostringstream os;
    os << "p: " << r.p.get_str() << '\n'
       << "n: " << r.n << '\n'
       << "steps: " << r.steps << '\n'
       << "runs: " << r.runs << '\n'
       << "fj_ns_per_step: " << r.fj_ns_per_step << '\n'
       << "fj_ns_per_coordinate: " << r.fj_ns_per_coordinate << '\n'
       << "icg_ns_per_output: " << r.icg_ns_per_output << '\n'
       << "fj_inversions: " << r.fj_inversions << '\n'
       << "fj_coordinates: " << r.fj_coordinates << '\n'
       << "icg_inversions: " << r.icg_inversions << '\n'
       << "icg_outputs: " << r.icg_outputs << '\n'
       << "icg_zero_states: " << r.icg_zero_states << '\n'
       << "branch1_hits: " << r.branch1_hits << '\n'
       << "branch1_fraction: " << r.branch1_fraction << '\n';
    return os.str();
}

std::string to_json(const OrbitReport& r) {
    nlohmann::json j{{"orbit_length", r.orbit_length}, {"is_full_cycle", r.is_full_cycle}, {"branch_histogram", r.branch_histogram}};
    return j.dump(2);
}

std::string to_json(const BenchReport& r) {
    nlohmann::json j{{"p", r.p.get_str()},
                     {"n", r.n},
                     {"steps", r.steps},
                     {"runs", r.runs},
                     {"fj_ns_per_step", r.fj_ns_per_step},
                     {"fj_ns_per_coordinate", r.fj_ns_per_coordinate},
                     {"icg_ns_per_output", r.icg_ns_per_output},
                     {"fj_inversions", r.fj_inversions},
                     {"fj_coordinates", r.fj_coordinates},
                     {"icg_inversions", r.icg_inversions},
                     {"icg_outputs", r.icg_outputs},
                     {"icg_zero_states", r.icg_zero_states},
                     {"branch1_hits", r.branch1_hits},
                     {"branch1_fraction", r.branch1_fraction}};
    return j.dump(2);
}

}  // namespace fj
