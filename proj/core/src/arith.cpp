#include "fj/arith.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace fj {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidModulus: return "invalid-modulus";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::IncompleteFactorization: return "incomplete-factorization";
        case ErrorKind::NotAUnit: return "not-a-unit-of-claimed-group";
        case ErrorKind::InternalContradiction: return "internal-contradiction";
        case ErrorKind::NotFound: return "not-found";
        case ErrorKind::NotTransitive: return "not-transitive";
        case ErrorKind::Format: return "format";
        case ErrorKind::Truncation: return "truncation";
        case ErrorKind::Range: return "range";
        case ErrorKind::CorruptProgram: return "corrupt-program";
        case ErrorKind::Capacity: return "capacity";
    }
    return "unknown";
}

Nat parse_nat(const std::string& text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw Error(ErrorKind::InvalidInput, "not a decimal integer: '" + text + "'");
    }
    return Nat(text, 10);
}

std::string to_decimal(const Nat& v) { return v.get_str(10); }

std::size_t residue_bits(const Nat& p) {
    if (p < 2) throw Error(ErrorKind::InvalidModulus, "modulus must be >= 2");
    Nat top = p - 1;
    return mpz_sizeinbase(top.get_mpz_t(), 2);
}

Nat mod_pow(const Nat& base, const Nat& exponent, const Nat& modulus) {
    if (modulus < 2) throw Error(ErrorKind::InvalidModulus, "modulus must be >= 2, got " + to_decimal(modulus));
    if (exponent < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
    Nat r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

namespace {

constexpr std::array<unsigned long, 12> kDeterministicBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr unsigned kRandomRounds = 64;
constexpr unsigned long kTrialLimit = 1'000'000;

// Strong probable-prime test to one base; v odd, v > 3, v - 1 = d * 2^s.
bool strong_probable_prime(const Nat& v, const Nat& d, unsigned long s, const Nat& base) {
    Nat vm1 = v - 1;
    Nat x = mod_pow(base, d, v);
    if (x == 1 || x == vm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % v;
        if (x == vm1) return true;
        if (x == 1) return false;
    }
    return false;
}

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace

bool is_prime(const Nat& v) {
    if (v < 2) return false;
    for (unsigned long sp : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (v == sp) return true;
        if (mpz_divisible_ui_p(v.get_mpz_t(), sp)) return false;
    }
    Nat d = v - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    for (unsigned long b : kDeterministicBases) {
        if (!strong_probable_prime(v, d, s, Nat(b))) return false;
    }
    // The 12 fixed bases decide every v < 3.3 * 10^24, in particular v < 2^64.
    if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 64) return true;

    // Seeded from v so the answer is reproducible; 4^-64 = 2^-128 error bound.
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(v);
    Nat span = v - 3;
    for (unsigned r = 0; r < kRandomRounds; ++r) {
        Nat base = rng.get_z_range(span) + 2;
        if (!strong_probable_prime(v, d, s, base)) return false;
    }
    return true;
}

Nat FactoredInteger::product() const {
    Nat acc = 1;
    for (const auto& f : factors) {
        Nat pw;
        mpz_pow_ui(pw.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        acc *= pw;
    }
    return acc * unfactored;
}

namespace {

// Pollard rho with Brent's cycle detection. Returns a nontrivial divisor of
// composite n, or 0 when the budget runs out.
Nat brent_rho(const Nat& n, std::uint64_t& budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    constexpr std::uint64_t kBatch = 128;
    for (unsigned long c = 1; budget > 0; ++c) {
        Nat y = 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        auto step = [&](Nat& v) { v = (v * v + c) % n; };
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) step(y);
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                std::uint64_t lim = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    q = q * abs(x - y) % n;
                }
                budget = budget > lim ? budget - lim : 0;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Batched gcd overshot; retrace one step at a time.
            do {
                step(ys);
                Nat diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

void split(const Nat& n, std::uint64_t& budget, std::map<Nat, unsigned>& found, Nat& leftover) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++found[n];
        return;
    }
    Nat d = budget > 0 ? brent_rho(n, budget) : Nat(0);
    if (d == 0) {
        leftover *= n;
        return;
    }
    split(d, budget, found, leftover);
    split(n / d, budget, found, leftover);
}

}  // namespace

FactoredInteger factor(const Nat& v, std::uint64_t effort_budget) {
    if (v < 1) throw Error(ErrorKind::InvalidInput, "factor requires v >= 1");
    FactoredInteger out;
    out.value = v;
    Nat rest = v;
    std::map<Nat, unsigned> found;
    for (unsigned long p : small_primes()) {
        if (rest == 1) break;
        if (Nat(p) * p > rest) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) found[Nat(p)] += e;
    }
    Nat leftover = 1;
    split(rest, effort_budget, found, leftover);
    for (auto& [p, e] : found) out.factors.push_back({p, e});
    out.unfactored = leftover;
    out.complete = leftover == 1;
    return out;
}

FactoredInteger known_factorization(const Nat& value, std::vector<PrimePower> factors) {
    std::sort(factors.begin(), factors.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].exponent == 0) throw Error(ErrorKind::InvalidInput, "zero exponent in factorization");
        if (i > 0 && factors[i].prime == factors[i - 1].prime) {
            throw Error(ErrorKind::InvalidInput, "repeated prime in factorization");
        }
        if (!is_prime(factors[i].prime)) {
            throw Error(ErrorKind::InvalidInput, "claimed factor is not prime: " + to_decimal(factors[i].prime));
        }
    }
    FactoredInteger out{value, std::move(factors), true, 1};
    if (out.product() != value) throw Error(ErrorKind::InvalidInput, "factorization does not multiply to " + to_decimal(value));
    return out;
}

CrtBasis crt_coefficients(std::span<const Nat> primes) {
    if (primes.empty()) throw Error(ErrorKind::InvalidInput, "crt_coefficients needs at least one prime");
    CrtBasis out;
    out.modulus = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime(primes[i])) throw Error(ErrorKind::InvalidInput, "not prime: " + to_decimal(primes[i]));
        for (std::size_t j = 0; j < i; ++j) {
            if (primes[i] == primes[j]) throw Error(ErrorKind::InvalidInput, "repeated prime: " + to_decimal(primes[i]));
        }
        out.modulus *= primes[i];
    }
    for (const Nat& p : primes) {
        Nat cofactor = out.modulus / p;
        Nat inv;
        mpz_invert(inv.get_mpz_t(), cofactor.get_mpz_t(), p.get_mpz_t());
        out.coefficients.push_back(cofactor * inv % out.modulus);
    }
    return out;
}

}  // namespace fj
