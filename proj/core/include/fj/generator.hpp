#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fj/compiler.hpp"

namespace fj {

struct TracedStep {
    AffinePoint image;
    std::size_t branch;  // 0-based index of the branch that fired
};

// One step of the compiled fractional jump: first branch whose denominator
// does not vanish, one field inversion.
AffinePoint eval(const FJProgram& program, const AffinePoint& x);
TracedStep eval_traced(const FJProgram& program, const AffinePoint& x);

// Mutable cursor over a shared, immutable program.
class FJState {
public:
    explicit FJState(std::shared_ptr<const FJProgram> program, std::optional<AffinePoint> start = std::nullopt);

    const FJProgram& program() const noexcept { return *program_; }
    const AffinePoint& current() const noexcept { return current_; }

    const AffinePoint& step();
    std::vector<AffinePoint> next(std::uint64_t count);

private:
    std::shared_ptr<const FJProgram> program_;
    AffinePoint current_;
};

// CRT combination over Z/NZ of fractional jumps over distinct primes:
// x -> sum_i u_i * L_i(psi_i(x mod p_i)) mod N.
class CompoundGenerator {
public:
    explicit CompoundGenerator(std::vector<std::shared_ptr<const FJProgram>> programs, std::optional<AffinePoint> start = std::nullopt);

    const Nat& modulus() const noexcept { return crt_.modulus; }
    const std::vector<Nat>& coefficients() const noexcept { return crt_.coefficients; }
    const std::vector<Nat>& moduli() const noexcept { return moduli_; }
    std::size_t n() const noexcept { return n_; }
    const AffinePoint& current() const noexcept { return current_; }

    AffinePoint eval(const AffinePoint& x) const;
    const AffinePoint& step();
    std::vector<AffinePoint> next(std::uint64_t count);

private:
    std::vector<std::shared_ptr<const FJProgram>> programs_;
    std::vector<Nat> moduli_;
    CrtBasis crt_;
    std::size_t n_;
    AffinePoint current_;
};

// Reduction of a secret-prime stream: accept a state vector over F_q only if
// no component is q-2 or q-1, then reduce componentwise mod p.
std::optional<AffinePoint> secret_prime_filter(const Nat& q, const Nat& p, const AffinePoint& state);

class SecretPrimeGenerator {
public:
    // Requires p < q both prime and q = k p + 2 with k >= 1.
    SecretPrimeGenerator(std::shared_ptr<const FJProgram> inner, Nat out_modulus, std::optional<AffinePoint> start = std::nullopt);

    const Nat& out_modulus() const noexcept { return p_; }
    const Nat& k() const noexcept { return k_; }
    const FJState& inner() const noexcept { return inner_; }

    AffinePoint next();

private:
    FJState inner_;
    Nat p_;
    Nat k_;
};

// rank(x) = sum x_i q^i (x_0 least significant).
Nat point_rank(const Nat& q, const AffinePoint& x);

// phi(x) = psi(x) if rank(x) < threshold, psi(psi(x)) otherwise.
class ForcedJump {
public:
    // threshold defaults to floor((q^n - 1) / 2); must satisfy 0 < threshold < q^n.
    explicit ForcedJump(std::shared_ptr<const FJProgram> program, std::optional<Nat> threshold = std::nullopt);

    const Nat& threshold() const noexcept { return threshold_; }
    const FJProgram& program() const noexcept { return *program_; }
    bool in_t(const AffinePoint& x) const;
    AffinePoint eval(const AffinePoint& x) const;

private:
    std::shared_ptr<const FJProgram> program_;
    Nat threshold_;
};

// Inversive congruential generator x -> a x^-1 + b (0 -> b).
class ICGState {
public:
    ICGState(PrimeField field, Nat a, Nat b, Nat start = 0);

    const PrimeField& field() const noexcept { return field_; }
    const Nat& current() const noexcept { return current_; }
    const Nat& next();

private:
    PrimeField field_;
    Nat a_, b_, current_;
};

enum class StreamFormat { Dec, Raw };

std::optional<StreamFormat> parse_stream_format(const std::string& name);

// dec: space-separated decimal coordinates, one vector per line.
// raw: each coordinate little-endian in ceil(bitlen(modulus)/8) bytes.
void write_point(std::ostream& out, const AffinePoint& x, const Nat& modulus, StreamFormat format);

AffinePoint parse_point(const std::string& text, const Nat& modulus, std::size_t n);

}  // namespace fj
