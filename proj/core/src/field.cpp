#include "fj/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace fj {

namespace instrumentation {
namespace {
thread_local std::uint64_t g_inversions = 0;
}
std::uint64_t inversions() noexcept { return g_inversions; }
void reset_inversions() noexcept { g_inversions = 0; }
}  // namespace instrumentation

// ---------------------------------------------------------------- PrimeField

PrimeField::PrimeField(Nat p) : p_(std::move(p)) {
    if (!is_prime(p_)) throw Error(ErrorKind::InvalidModulus, "field modulus is not prime: " + to_decimal(p_));
    bits_ = fj::residue_bits(p_);
}

Nat PrimeField::reduce(const Nat& v) const {
    Nat r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return r;
}

Nat PrimeField::add(const Nat& a, const Nat& b) const {
    Nat r = a + b;
    if (r >= p_) r -= p_;
    return r;
}

Nat PrimeField::sub(const Nat& a, const Nat& b) const {
    Nat r = a - b;
    if (r < 0) r += p_;
    return r;
}

Nat PrimeField::neg(const Nat& a) const { return a == 0 ? Nat(0) : Nat(p_ - a); }

Nat PrimeField::mul(const Nat& a, const Nat& b) const {
    Nat r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
    return r;
}

void PrimeField::mul_add(Nat& acc, const Nat& b, const Nat& c) const {
    mpz_addmul(acc.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), p_.get_mpz_t());
}

Nat PrimeField::inv(const Nat& a) const {
    Nat r;
    if (a == 0 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0) {
        throw Error(ErrorKind::NotAUnit, "inverse of zero in F_" + to_decimal(p_));
    }
    ++instrumentation::g_inversions;
    return r;
}

Nat PrimeField::pow(const Nat& a, const Nat& e) const { return mod_pow(a, e, p_); }

// -------------------------------------------------------------------- FpPoly

FpPoly::FpPoly(PrimeField field, std::vector<Nat> coefficients) : field_(std::move(field)), c_(std::move(coefficients)) {
    for (auto& c : c_) {
        if (!field_.contains(c)) c = field_.reduce(c);
    }
    trim();
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::constant(PrimeField field, const Nat& c) { return FpPoly(std::move(field), {c}); }

FpPoly FpPoly::monomial(PrimeField field, std::size_t degree, const Nat& c) {
    std::vector<Nat> cs(degree + 1, Nat(0));
    cs[degree] = c;
    return FpPoly(std::move(field), std::move(cs));
}

const Nat& FpPoly::leading() const {
    if (c_.empty()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no leading coefficient");
    return c_.back();
}

Nat FpPoly::coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Nat(0); }

FpPoly FpPoly::monic() const { return scaled(field_.inv(leading())); }

Nat FpPoly::evaluate(const Nat& x) const {
    Nat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = field_.add(field_.mul(acc, x), *it);
    }
    return acc;
}

FpPoly FpPoly::rescale_roots(const Nat& lambda) const {
    if (c_.empty()) return *this;
    std::size_t m = c_.size() - 1;
    std::vector<Nat> out(c_.size());
    Nat power = 1;  // lambda^(m-k), filled from k = m downwards
    for (std::size_t k = m + 1; k-- > 0;) {
        out[k] = field_.mul(c_[k], power);
        power = field_.mul(power, lambda);
    }
    return FpPoly(field_, std::move(out));
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<Nat> out(std::max(c_.size(), o.c_.size()), Nat(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.add(coefficient(i), o.coefficient(i));
    return FpPoly(field_, std::move(out));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<Nat> out(std::max(c_.size(), o.c_.size()), Nat(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.sub(coefficient(i), o.coefficient(i));
    return FpPoly(field_, std::move(out));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (c_.empty() || o.c_.empty()) return zero(field_);
    std::vector<Nat> out(c_.size() + o.c_.size() - 1, Nat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) mpz_addmul(out[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
    }
    return FpPoly(field_, std::move(out));
}

FpPoly FpPoly::scaled(const Nat& c) const {
    std::vector<Nat> out(c_);
    for (auto& v : out) v = field_.mul(v, c);
    return FpPoly(field_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    if (c_.size() < divisor.c_.size()) return {zero(field_), *this};
    std::vector<Nat> rem(c_);
    const std::size_t dd = divisor.c_.size() - 1;
    std::vector<Nat> quot(c_.size() - dd, Nat(0));
    const Nat lead_inv = divisor.is_monic() ? Nat(1) : field_.inv(divisor.leading());
    for (std::size_t k = rem.size(); k-- > dd;) {
        rem[k] = field_.reduce(rem[k]);
        if (rem[k] == 0) continue;
        Nat q = field_.mul(rem[k], lead_inv);
        quot[k - dd] = q;
        Nat negq = field_.neg(q);
        for (std::size_t j = 0; j <= dd; ++j) {
            mpz_addmul(rem[k - dd + j].get_mpz_t(), negq.get_mpz_t(), divisor.c_[j].get_mpz_t());
        }
    }
    rem.resize(dd);
    return {FpPoly(field_, std::move(quot)), FpPoly(field_, std::move(rem))};
}

std::string FpPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        if (!first) os << '+';
        first = false;
        bool unit = c_[k] == 1;
        if (k == 0) {
            os << c_[k].get_str();
        } else {
            if (!unit) os << c_[k].get_str() << '*';
            os << 'x';
            if (k > 1) os << '^' << k;
        }
    }
    return os.str();
}

std::string FpPoly::to_coefficient_list() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ',';
        out += c_[i].get_str();
    }
    return out;
}

namespace {

Nat parse_signed(const PrimeField& field, std::string_view s, const std::string& whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw Error(ErrorKind::InvalidInput, "bad integer in polynomial '" + whole + "'");
    }
    Nat v(std::string(s), 10);
    return field.reduce(negative ? Nat(-v) : v);
}

}  // namespace

FpPoly FpPoly::parse(const PrimeField& field, const std::string& text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty polynomial");

    if (s.find('x') == std::string::npos && s.find('X') == std::string::npos) {
        std::vector<Nat> cs;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = s.find(',', start);
            cs.push_back(parse_signed(field, std::string_view(s).substr(start, comma - start), text));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return FpPoly(field, std::move(cs));
    }

    std::vector<Nat> cs;
    std::size_t i = 0;
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (i != 0) {
            throw Error(ErrorKind::InvalidInput, "expected '+' or '-' in polynomial '" + text + "'");
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        Nat coef = j > i ? Nat(s.substr(i, j - i), 10) : Nat(1);
        bool has_digits = j > i;
        i = j;
        if (i < s.size() && s[i] == '*') {
            if (!has_digits) throw Error(ErrorKind::InvalidInput, "dangling '*' in polynomial '" + text + "'");
            ++i;
            if (i >= s.size() || (s[i] != 'x' && s[i] != 'X')) {
                throw Error(ErrorKind::InvalidInput, "expected x after '*' in polynomial '" + text + "'");
            }
        }
        std::size_t exponent = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            exponent = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == i) throw Error(ErrorKind::InvalidInput, "missing exponent in polynomial '" + text + "'");
                exponent = std::stoul(s.substr(i, k - i));
                i = k;
            }
        } else if (!has_digits) {
            throw Error(ErrorKind::InvalidInput, "empty term in polynomial '" + text + "'");
        }
        if (cs.size() <= exponent) cs.resize(exponent + 1, Nat(0));
        cs[exponent] += negative ? Nat(-coef) : coef;
    }
    for (auto& c : cs) c = field.reduce(c);
    return FpPoly(field, std::move(cs));
}

FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// -------------------------------------------------------------- QuotientRing

QuotientRing::QuotientRing(FpPoly modulus) : f_(std::move(modulus)) {
    if (f_.degree() < 1 || !f_.is_monic()) throw Error(ErrorKind::InvalidInput, "quotient modulus must be monic of degree >= 1");
}

FpPoly QuotientRing::one() const { return reduce(FpPoly::constant(f_.field(), 1)); }
FpPoly QuotientRing::x() const { return reduce(FpPoly::monomial(f_.field(), 1)); }
FpPoly QuotientRing::mul(const FpPoly& a, const FpPoly& b) const { return (a * b) % f_; }

FpPoly QuotientRing::pow(const FpPoly& a, const Nat& e) const {
    FpPoly result = one();
    FpPoly base = reduce(a);
    const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, base);
    }
    return result;
}

// --------------------------------------------------------- irreducibility etc

namespace {

std::vector<std::size_t> prime_divisors(std::size_t m) {
    std::vector<std::size_t> out;
    for (std::size_t r = 2; r * r <= m; ++r) {
        if (m % r == 0) {
            out.push_back(r);
            while (m % r == 0) m /= r;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

template <class Pow, class IsOne>
Nat order_by_prime_removal(const FactoredInteger& group_order, Pow&& pow, IsOne&& is_one) {
    if (!group_order.complete) {
        throw Error(ErrorKind::IncompleteFactorization, "group order " + to_decimal(group_order.value) + " is not fully factored");
    }
    if (!is_one(pow(group_order.value))) {
        throw Error(ErrorKind::NotAUnit, "element is not a unit of the claimed group of order " + to_decimal(group_order.value));
    }
    Nat order = group_order.value;
    for (const auto& [r, e] : group_order.factors) {
        for (unsigned k = 0; k < e; ++k) {
            Nat candidate = order / r;
            if (!is_one(pow(candidate))) break;
            order = candidate;
        }
    }
    return order;
}

}  // namespace

bool is_irreducible(const FpPoly& f_in) {
    if (f_in.degree() < 1) throw Error(ErrorKind::InvalidInput, "irreducibility of a constant polynomial is undefined");
    const FpPoly f = f_in.monic();
    const std::size_t m = static_cast<std::size_t>(f.degree());
    if (m == 1) return true;
    const PrimeField& F = f.field();
    if (f.coefficient(0) == 0) return false;
    QuotientRing ring(f);
    // frob[k] = x^(p^k) mod f
    std::vector<FpPoly> frob{ring.x()};
    for (std::size_t k = 1; k <= m; ++k) frob.push_back(ring.pow(frob.back(), F.modulus()));
    if (!(frob[m] == ring.x())) return false;
    for (std::size_t r : prime_divisors(m)) {
        FpPoly g = gcd(frob[m / r] - ring.x(), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

Nat element_order(const PrimeField& field, const Nat& g, const FactoredInteger& group_order) {
    Nat v = field.reduce(g);
    if (v == 0) throw Error(ErrorKind::NotAUnit, "zero has no multiplicative order");
    return order_by_prime_removal(group_order, [&](const Nat& e) { return field.pow(v, e); }, [](const Nat& r) { return r == 1; });
}

Nat element_order(const QuotientRing& ring, const FpPoly& g, const FactoredInteger& group_order) {
    FpPoly v = ring.reduce(g);
    if (v.is_zero()) throw Error(ErrorKind::NotAUnit, "zero has no multiplicative order");
    const FpPoly one = ring.one();
    return order_by_prime_removal(group_order, [&](const Nat& e) { return ring.pow(v, e); }, [&](const FpPoly& r) { return r == one; });
}

Nat projective_group_order(const Nat& p, std::size_t m) {
    Nat pm;
    mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
    return (pm - 1) / (p - 1);
}

namespace {

FactoredInteger projective_factorization(const PrimeField& F, std::size_t m, const std::optional<FactoredInteger>& hint) {
    const Nat N = projective_group_order(F.modulus(), m);
    if (hint) {
        if (hint->value != N) {
            throw Error(ErrorKind::InvalidInput, "hint factors " + to_decimal(hint->value) + " but (p^m-1)/(p-1) = " + to_decimal(N));
        }
        if (!hint->complete) throw Error(ErrorKind::IncompleteFactorization, "hint factorization is incomplete");
        return *hint;
    }
    FactoredInteger fact = factor(N);
    if (!fact.complete) {
        throw Error(ErrorKind::IncompleteFactorization, "(p^m-1)/(p-1) = " + to_decimal(N) + " could not be fully factored; supply a hint");
    }
    return fact;
}

FactoredInteger merge(const FactoredInteger& a, const FactoredInteger& b) {
    std::map<Nat, unsigned> acc;
    for (const auto& f : a.factors) acc[f.prime] += f.exponent;
    for (const auto& f : b.factors) acc[f.prime] += f.exponent;
    FactoredInteger out;
    out.value = a.value * b.value;
    out.complete = a.complete && b.complete;
    for (auto& [p, e] : acc) out.factors.push_back({p, e});
    return out;
}

bool pp_with_factorization(const FpPoly& f, const FactoredInteger& N) {
    if (!is_irreducible(f)) return false;
    const PrimeField& F = f.field();
    QuotientRing ring(f);
    if (ring.degree() == 1 && f.coefficient(0) == 0) return false;
    FpPoly g = ring.pow(ring.x(), F.modulus() - 1);
    return element_order(ring, g, N) == N.value;
}

}  // namespace

bool is_projectively_primitive(const FpPoly& f, const std::optional<FactoredInteger>& hint) {
    if (f.degree() < 1) throw Error(ErrorKind::InvalidInput, "projective primitivity needs degree >= 1");
    if (!f.is_monic()) throw Error(ErrorKind::InvalidInput, "projective primitivity is defined for monic polynomials");
    if (f.degree() == 1) return f.coefficient(0) != 0;
    if (!is_irreducible(f)) return false;
    return pp_with_factorization(f, projective_factorization(f.field(), static_cast<std::size_t>(f.degree()), hint));
}

bool is_primitive(const FpPoly& f, const std::optional<FactoredInteger>& projective_hint) {
    if (f.degree() < 1 || !f.is_monic()) throw Error(ErrorKind::InvalidInput, "primitivity is defined for monic polynomials of degree >= 1");
    if (f.coefficient(0) == 0 || !is_irreducible(f)) return false;
    const PrimeField& F = f.field();
    const std::size_t m = static_cast<std::size_t>(f.degree());
    FactoredInteger pm1 = factor(F.modulus() - 1);
    if (!pm1.complete) throw Error(ErrorKind::IncompleteFactorization, "p-1 could not be fully factored");
    FactoredInteger full = m == 1 ? pm1 : merge(pm1, projective_factorization(F, m, projective_hint));
    QuotientRing ring(f);
    return element_order(ring, ring.x(), full) == full.value;
}

PrimitiveRescaling make_primitive(const FpPoly& f, const std::optional<FactoredInteger>& hint) {
    if (!is_projectively_primitive(f, hint)) {
        throw Error(ErrorKind::InvalidInput, f.to_string() + " is not projectively primitive");
    }
    const PrimeField& F = f.field();
    const std::size_t m = static_cast<std::size_t>(f.degree());
    FactoredInteger pm1 = factor(F.modulus() - 1);
    if (!pm1.complete) throw Error(ErrorKind::IncompleteFactorization, "p-1 could not be fully factored");
    // Norm of a root of monic f: (-1)^m f(0).
    const Nat norm = (m % 2 == 0) ? f.coefficient(0) : F.neg(f.coefficient(0));
    const Nat m_nat(static_cast<unsigned long>(m));
    for (Nat lambda = 1; lambda < F.modulus(); ++lambda) {
        Nat scaled_norm = F.mul(F.pow(lambda, m_nat), norm);
        if (element_order(F, scaled_norm, pm1) == pm1.value) return {lambda, f.rescale_roots(lambda)};
    }
    throw Error(ErrorKind::InternalContradiction, "no lambda makes " + f.to_string() + " primitive");
}

// ------------------------------------------------------------------- search

std::optional<SearchStrategy> parse_search_strategy(const std::string& name) {
    if (name == "exhaustive-lex") return SearchStrategy::ExhaustiveLex;
    if (name == "seeded-random") return SearchStrategy::SeededRandom;
    if (name == "small-coefficients-first") return SearchStrategy::SmallCoefficientsFirst;
    return std::nullopt;
}

std::string to_string(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::ExhaustiveLex: return "exhaustive-lex";
        case SearchStrategy::SeededRandom: return "seeded-random";
        case SearchStrategy::SmallCoefficientsFirst: return "small-coefficients-first";
    }
    return "?";
}

namespace {

// Odometer over the non-leading coefficients c_0..c_{m-1}, c_0 fastest;
// digits drawn from `alphabet`. Visits in ascending sum c_k * |alphabet|^k.
template <class Visit>
bool for_each_monic(const PrimeField& F, std::size_t m, const std::vector<Nat>& alphabet, Visit&& visit) {
    std::vector<std::size_t> idx(m, 0);
    std::vector<Nat> cs(m + 1, alphabet.front());
    cs[m] = 1;
    while (true) {
        for (std::size_t k = 0; k < m; ++k) cs[k] = alphabet[idx[k]];
        if (visit(FpPoly(F, cs))) return true;
        std::size_t k = 0;
        while (k < m && ++idx[k] == alphabet.size()) idx[k++] = 0;
        if (k == m) return false;
    }
}

std::vector<Nat> full_alphabet(const PrimeField& F) {
    if (F.modulus() > Nat(1u << 20)) {
        throw Error(ErrorKind::Capacity, "exhaustive polynomial scan over F_" + to_decimal(F.modulus()) + " is not feasible");
    }
    std::vector<Nat> out;
    for (unsigned long v = 0; Nat(v) < F.modulus(); ++v) out.emplace_back(v);
    return out;
}

}  // namespace

FpPoly search_projectively_primitive(const PrimeField& F, std::size_t m, const SearchOptions& options) {
    if (m < 1) throw Error(ErrorKind::InvalidInput, "degree must be >= 1");
    // (p^m-1)/(p-1) depends only on (p, m): factor it once for the whole scan.
    const FactoredInteger N = m == 1 ? factor(Nat(1)) : projective_factorization(F, m, options.hint);
    std::optional<FpPoly> hit;
    auto test = [&](const FpPoly& f) {
        if (m == 1 ? f.coefficient(0) != 0 : pp_with_factorization(f, N)) {
            hit = f;
            return true;
        }
        return false;
    };
    switch (options.strategy) {
        case SearchStrategy::ExhaustiveLex:
            for_each_monic(F, m, full_alphabet(F), test);
            break;
        case SearchStrategy::SmallCoefficientsFirst: {
            std::vector<Nat> small{Nat(0), Nat(1)};
            if (F.modulus() > 2) small.push_back(F.modulus() - 1);
            if (!for_each_monic(F, m, small, test) && F.modulus() > 3) for_each_monic(F, m, full_alphabet(F), test);
            break;
        }
        case SearchStrategy::SeededRandom: {
            gmp_randclass rng(gmp_randinit_mt);
            rng.seed(static_cast<unsigned long>(options.seed));
            std::vector<Nat> cs(m + 1);
            cs[m] = 1;
            for (std::uint64_t attempt = 0; attempt < options.random_attempts && !hit; ++attempt) {
                for (std::size_t k = 0; k < m; ++k) cs[k] = rng.get_z_range(F.modulus());
                test(FpPoly(F, cs));
            }
            break;
        }
    }
    if (!hit) {
        throw Error(ErrorKind::NotFound, "no projectively primitive polynomial of degree " + std::to_string(m) + " over F_" +
                                             to_decimal(F.modulus()) + " found with strategy " + to_string(options.strategy));
    }
    return *hit;
}

std::vector<FpPoly> enumerate_projectively_primitive(const PrimeField& F, std::size_t m) {
    if (m < 1) throw Error(ErrorKind::InvalidInput, "degree must be >= 1");
    const FactoredInteger N = m == 1 ? factor(Nat(1)) : projective_factorization(F, m, std::nullopt);
    std::vector<FpPoly> out;
    for_each_monic(F, m, full_alphabet(F), [&](const FpPoly& f) {
        if (m == 1 ? f.coefficient(0) != 0 : pp_with_factorization(f, N)) out.push_back(f);
        return false;
    });
    return out;
}

}  // namespace fj
