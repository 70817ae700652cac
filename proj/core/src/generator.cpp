#include "fj/generator.hpp"

#include <sstream>

namespace fj {

namespace {

void check_point(const AffinePoint& x, std::size_t n, const Nat& modulus) {
    if (x.size() != n) throw Error(ErrorKind::InvalidInput, "point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(n));
    for (const auto& v : x) {
        if (v < 0 || v >= modulus) throw Error(ErrorKind::InvalidInput, "coordinate " + to_decimal(v) + " outside [0, " + to_decimal(modulus) + ")");
    }
}

}  // namespace

TracedStep eval_traced(const FJProgram& program, const AffinePoint& x) {
    const PrimeField& F = program.field();
    check_point(x, program.n(), F.modulus());
    const auto& branches = program.branches();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        Nat b = branches[i].denominator.evaluate(F, x);
        if (b == 0) continue;
        const Nat c = F.inv(b);
        AffinePoint out;
        out.reserve(program.n());
        for (const auto& a : branches[i].numerators) out.push_back(F.mul(c, a.evaluate(F, x)));
        return {std::move(out), i};
    }
    throw Error(ErrorKind::CorruptProgram, "every branch denominator vanished");
}

AffinePoint eval(const FJProgram& program, const AffinePoint& x) { return eval_traced(program, x).image; }

// ------------------------------------------------------------------- FJState

FJState::FJState(std::shared_ptr<const FJProgram> program, std::optional<AffinePoint> start) : program_(std::move(program)) {
    if (!program_) throw Error(ErrorKind::InvalidInput, "null program");
    current_ = start ? *start : AffinePoint(program_->n(), Nat(0));
    check_point(current_, program_->n(), program_->field().modulus());
}

const AffinePoint& FJState::step() {
    current_ = eval(*program_, current_);
    return current_;
}

std::vector<AffinePoint> FJState::next(std::uint64_t count) {
    if (count == 0) throw Error(ErrorKind::InvalidInput, "count must be >= 1");
    std::vector<AffinePoint> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(step());
    return out;
}

// --------------------------------------------------------- CompoundGenerator

CompoundGenerator::CompoundGenerator(std::vector<std::shared_ptr<const FJProgram>> programs, std::optional<AffinePoint> start)
    : programs_(std::move(programs)) {
    if (programs_.empty()) throw Error(ErrorKind::InvalidInput, "compound generator needs at least one program");
    n_ = programs_.front()->n();
    for (const auto& p : programs_) {
        if (p->n() != n_) throw Error(ErrorKind::InvalidInput, "all programs of a compound generator must share n");
        moduli_.push_back(p->field().modulus());
    }
    crt_ = crt_coefficients(moduli_);
    current_ = start ? *start : AffinePoint(n_, Nat(0));
    check_point(current_, n_, crt_.modulus);
}

AffinePoint CompoundGenerator::eval(const AffinePoint& x) const {
    AffinePoint acc(n_, Nat(0));
    for (std::size_t i = 0; i < programs_.size(); ++i) {
        AffinePoint xi(n_);
        for (std::size_t k = 0; k < n_; ++k) xi[k] = x[k] % moduli_[i];
        AffinePoint yi = fj::eval(*programs_[i], xi);
        for (std::size_t k = 0; k < n_; ++k) acc[k] += crt_.coefficients[i] * yi[k];
    }
    for (auto& v : acc) v %= crt_.modulus;
    return acc;
}

const AffinePoint& CompoundGenerator::step() {
    current_ = eval(current_);
    return current_;
}

std::vector<AffinePoint> CompoundGenerator::next(std::uint64_t count) {
    if (count == 0) throw Error(ErrorKind::InvalidInput, "count must be >= 1");
    std::vector<AffinePoint> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(step());
    return out;
}

// -------------------------------------------------------------- secret prime

std::optional<AffinePoint> secret_prime_filter(const Nat& q, const Nat& p, const AffinePoint& state) {
    AffinePoint out;
    out.reserve(state.size());
    for (const auto& v : state) {
        if (v >= q - 2) return std::nullopt;
        out.push_back(v % p);
    }
    return out;
}

SecretPrimeGenerator::SecretPrimeGenerator(std::shared_ptr<const FJProgram> inner, Nat out_modulus, std::optional<AffinePoint> start)
    : inner_(std::move(inner), std::move(start)), p_(std::move(out_modulus)) {
    const Nat& q = inner_.program().field().modulus();
    if (!is_prime(p_)) throw Error(ErrorKind::InvalidInput, "output modulus " + to_decimal(p_) + " is not prime");
    if (p_ >= q) throw Error(ErrorKind::InvalidInput, "output modulus must be smaller than the secret prime");
    if ((q - 2) % p_ != 0) throw Error(ErrorKind::InvalidInput, "secret prime q must satisfy q = k p + 2");
    k_ = (q - 2) / p_;
}

AffinePoint SecretPrimeGenerator::next() {
    const Nat& q = inner_.program().field().modulus();
    while (true) {
        if (auto out = secret_prime_filter(q, p_, inner_.step())) return *out;
    }
}

// --------------------------------------------------------------- forced jump

Nat point_rank(const Nat& q, const AffinePoint& x) {
    Nat r = 0;
    for (std::size_t k = x.size(); k-- > 0;) r = r * q + x[k];
    return r;
}

ForcedJump::ForcedJump(std::shared_ptr<const FJProgram> program, std::optional<Nat> threshold) : program_(std::move(program)) {
    if (!program_) throw Error(ErrorKind::InvalidInput, "null program");
    Nat size;
    mpz_pow_ui(size.get_mpz_t(), program_->field().modulus().get_mpz_t(), program_->n());
    threshold_ = threshold ? *threshold : Nat((size - 1) / 2);
    if (threshold_ <= 0 || threshold_ >= size) throw Error(ErrorKind::InvalidInput, "threshold must lie in (0, q^n)");
}

bool ForcedJump::in_t(const AffinePoint& x) const { return point_rank(program_->field().modulus(), x) < threshold_; }

AffinePoint ForcedJump::eval(const AffinePoint& x) const {
    AffinePoint y = fj::eval(*program_, x);
    return in_t(x) ? y : fj::eval(*program_, y);
}

// ---------------------------------------------------------------------- ICG

ICGState::ICGState(PrimeField field, Nat a, Nat b, Nat start) : field_(std::move(field)) {
    a_ = field_.reduce(a);
    b_ = field_.reduce(b);
    current_ = field_.reduce(start);
    if (a_ == 0) throw Error(ErrorKind::InvalidInput, "ICG multiplier must be nonzero");
}

const Nat& ICGState::next() {
    current_ = current_ == 0 ? b_ : field_.add(field_.mul(a_, field_.inv(current_)), b_);
    return current_;
}

// ------------------------------------------------------------------- streams

std::optional<StreamFormat> parse_stream_format(const std::string& name) {
    if (name == "dec") return StreamFormat::Dec;
    if (name == "raw") return StreamFormat::Raw;
    return std::nullopt;
}

void write_point(std::ostream& out, const AffinePoint& x, const Nat& modulus, StreamFormat format) {
    if (format == StreamFormat::Dec) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (k) out << ' ';
            out << x[k].get_str();
        }
        out << '\n';
        return;
    }
    const std::size_t width = (mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8;
    std::vector<char> buf(width);
    for (const auto& v : x) {
        std::fill(buf.begin(), buf.end(), 0);
        std::size_t written = 0;
        if (v != 0) mpz_export(buf.data(), &written, -1, 1, -1, 0, v.get_mpz_t());
        out.write(buf.data(), static_cast<std::streamsize>(width));
    }
}

AffinePoint parse_point(const std::string& text, const Nat& modulus, std::size_t n) {
    AffinePoint x;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::string t;
        for (char ch : cell) {
            if (ch != ' ') t += ch;
        }
        x.push_back(parse_nat(t) % modulus);
    }
    check_point(x, n, modulus);
    return x;
}

}  // namespace fj
