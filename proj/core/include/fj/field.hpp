#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fj/arith.hpp"

namespace fj {

// Counts field inversions on the calling thread. Used to check that one
// fractional-jump step costs exactly one inversion.
namespace instrumentation {
std::uint64_t inversions() noexcept;
void reset_inversions() noexcept;
}  // namespace instrumentation

// F_p for a certified prime p. Elements are Nat residues in [0, p); all
// arithmetic goes through the field object.
class PrimeField {
public:
    explicit PrimeField(Nat p);

    const Nat& modulus() const noexcept { return p_; }
    std::size_t residue_bits() const noexcept { return bits_; }

    Nat reduce(const Nat& v) const;
    Nat from_int(long v) const { return reduce(Nat(v)); }

    Nat add(const Nat& a, const Nat& b) const;
    Nat sub(const Nat& a, const Nat& b) const;
    Nat neg(const Nat& a) const;
    Nat mul(const Nat& a, const Nat& b) const;
    Nat inv(const Nat& a) const;  // throws NotAUnit on zero
    Nat pow(const Nat& a, const Nat& e) const;

    // a += b * c, in place; the hot path of form evaluation.
    void mul_add(Nat& acc, const Nat& b, const Nat& c) const;

    bool contains(const Nat& v) const { return v >= 0 && v < p_; }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    Nat p_;
    std::size_t bits_;
};

// Dense polynomial over F_p, lowest degree first, no trailing zeros.
class FpPoly {
public:
    FpPoly(PrimeField field, std::vector<Nat> coefficients);
    static FpPoly zero(PrimeField field) { return FpPoly(std::move(field), {}); }
    static FpPoly constant(PrimeField field, const Nat& c);
    static FpPoly monomial(PrimeField field, std::size_t degree, const Nat& c = 1);

    // Accepts "3,3,0,1" (ascending coefficients) or "x^3+3*x+3"; every
    // coefficient is reduced mod p.
    static FpPoly parse(const PrimeField& field, const std::string& text);

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Nat>& coefficients() const noexcept { return c_; }
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    const Nat& leading() const;
    Nat coefficient(std::size_t i) const;

    FpPoly monic() const;
    Nat evaluate(const Nat& x) const;

    // lambda^m * f(x / lambda) for m = deg f: the monic rescaling that moves
    // every root alpha to lambda * alpha.
    FpPoly rescale_roots(const Nat& lambda) const;

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(const Nat& c) const;

    // Euclidean division; throws InvalidInput on a zero divisor.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& divisor) const;
    FpPoly operator%(const FpPoly& divisor) const { return divmod(divisor).second; }

    // Human form, e.g. "x^3+3*x+3".
    std::string to_string() const;
    // Comma form, e.g. "3,3,0,1".
    std::string to_coefficient_list() const;

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

private:
    void trim();

    PrimeField field_;
    std::vector<Nat> c_;
};

FpPoly gcd(FpPoly a, FpPoly b);

// F_p[x]/(f) for monic f of degree >= 1. Elements are canonical remainders.
class QuotientRing {
public:
    explicit QuotientRing(FpPoly modulus);

    const FpPoly& modulus() const noexcept { return f_; }
    const PrimeField& field() const noexcept { return f_.field(); }
    std::size_t degree() const noexcept { return static_cast<std::size_t>(f_.degree()); }

    FpPoly reduce(const FpPoly& a) const { return a % f_; }
    FpPoly one() const;
    FpPoly x() const;
    FpPoly mul(const FpPoly& a, const FpPoly& b) const;
    FpPoly pow(const FpPoly& a, const Nat& e) const;

private:
    FpPoly f_;
};

bool is_irreducible(const FpPoly& f);

// Exact multiplicative order given a complete factorization of a multiple of
// it. Throws IncompleteFactorization or NotAUnit when preconditions fail.
Nat element_order(const PrimeField& field, const Nat& g, const FactoredInteger& group_order);
Nat element_order(const QuotientRing& ring, const FpPoly& g, const FactoredInteger& group_order);

// (p^m - 1) / (p - 1)
Nat projective_group_order(const Nat& p, std::size_t m);

// Irreducible, and x^(p-1) has order (p^m-1)/(p-1) in F_p[x]/(f). The hint,
// when given, must be a complete factorization of (p^m-1)/(p-1).
bool is_projectively_primitive(const FpPoly& f, const std::optional<FactoredInteger>& hint = std::nullopt);

// Irreducible and x has order p^m - 1 (algebraic test via factorization).
bool is_primitive(const FpPoly& f, const std::optional<FactoredInteger>& projective_hint = std::nullopt);

struct PrimitiveRescaling {
    Nat lambda;
    FpPoly polynomial;
};

// Smallest lambda in 1..p-1 for which lambda^m * f(x/lambda) is primitive.
PrimitiveRescaling make_primitive(const FpPoly& f, const std::optional<FactoredInteger>& hint = std::nullopt);

enum class SearchStrategy { ExhaustiveLex, SeededRandom, SmallCoefficientsFirst };

std::optional<SearchStrategy> parse_search_strategy(const std::string& name);
std::string to_string(SearchStrategy s);

struct SearchOptions {
    SearchStrategy strategy = SearchStrategy::ExhaustiveLex;
    std::uint64_t seed = 0;
    std::uint64_t random_attempts = 100'000;
    std::optional<FactoredInteger> hint;  // factorization of (p^m-1)/(p-1)
};

FpPoly search_projectively_primitive(const PrimeField& field, std::size_t degree, const SearchOptions& options = {});

// Every projectively primitive monic polynomial of the given degree, in the
// exhaustive-lex order. Meant for small p^m.
std::vector<FpPoly> enumerate_projectively_primitive(const PrimeField& field, std::size_t degree);

}  // namespace fj
