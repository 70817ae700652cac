#include "fj/compiler.hpp"

#include <algorithm>

namespace fj {

bool EchelonBasis::has_pivot(std::size_t var) const {
    return std::any_of(rows_.begin(), rows_.end(), [&](const EchelonRow& r) { return r.pivot == var; });
}

namespace {

// f -= c * g
void subtract_multiple(const PrimeField& F, LinearForm& f, const Nat& c, const LinearForm& g) {
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
        if (g.coeffs[k] != 0) f.coeffs[k] = F.sub(f.coeffs[k], F.mul(c, g.coeffs[k]));
    }
    f.constant = F.sub(f.constant, F.mul(c, g.constant));
}

}  // namespace

std::size_t EchelonBasis::insert(const PrimeField& F, const LinearForm& reduced) {
    auto lead = reduced.leading_variable();
    if (!lead) throw Error(ErrorKind::InternalContradiction, "cannot add a constant form to the echelon basis");
    for (const auto& r : rows_) {
        if (reduced.coeffs[r.pivot] != 0) throw Error(ErrorKind::InvalidInput, "form is not reduced against the basis");
    }
    LinearForm row = reduced;
    const Nat s = F.inv(row.coeffs[*lead]);
    for (auto& c : row.coeffs) c = F.mul(c, s);
    row.constant = F.mul(row.constant, s);
    for (auto& r : rows_) {
        Nat c = r.form.coeffs[*lead];
        if (c != 0) subtract_multiple(F, r.form, c, row);
    }
    rows_.push_back({*lead, std::move(row)});
    return *lead;
}

LinearForm reduce_form(const PrimeField& F, const LinearForm& f, const EchelonBasis& basis) {
    LinearForm out = f;
    for (const auto& r : basis.rows()) {
        Nat c = out.coeffs[r.pivot];
        if (c != 0) subtract_multiple(F, out, c, r.form);
    }
    return out;
}

// ----------------------------------------------------------------- FJProgram

FJProgram::FJProgram(PrimeField field, std::size_t n, std::vector<Branch> branches, std::vector<std::size_t> pivots)
    : field_(std::move(field)), n_(n), branches_(std::move(branches)), pivots_(std::move(pivots)) {
    auto corrupt = [](const std::string& what) { throw Error(ErrorKind::CorruptProgram, what); };
    if (n_ < 1) corrupt("dimension must be >= 1");
    if (branches_.size() != n_ + 1) corrupt("expected n+1 branches");
    if (pivots_.size() != n_) corrupt("expected n pivots");
    for (std::size_t i = 0; i < n_; ++i) {
        if (pivots_[i] >= n_) corrupt("pivot index out of range");
        for (std::size_t j = 0; j < i; ++j) {
            if (pivots_[i] == pivots_[j]) corrupt("repeated pivot");
        }
    }
    for (std::size_t i = 0; i <= n_; ++i) {
        const Branch& b = branches_[i];
        if (b.numerators.size() != n_) corrupt("branch has the wrong number of numerators");
        std::vector<const LinearForm*> forms;
        for (const auto& a : b.numerators) forms.push_back(&a);
        forms.push_back(&b.denominator);
        for (const LinearForm* f : forms) {
            if (f->arity() != n_) corrupt("form arity does not match n");
            if (!field_.contains(f->constant)) corrupt("coefficient outside [0, p)");
            for (const auto& c : f->coeffs) {
                if (!field_.contains(c)) corrupt("coefficient outside [0, p)");
            }
            for (std::size_t j = 0; j < i && j < n_; ++j) {
                if (f->coeffs[pivots_[j]] != 0) corrupt("branch form is not reduced at an earlier pivot");
            }
        }
        if (i < n_) {
            // The pivot of reduced b^(i) is its leftmost nonzero variable.
            auto lead = b.denominator.leading_variable();
            if (!lead || *lead != pivots_[i]) corrupt("denominator pivot does not match the pivot list");
        } else if (b.denominator.constant == 0) {
            corrupt("last denominator must be a nonzero constant");
        }
    }
}

FJProgram compile(const ProjMatrix& m, const CompileOptions& options) {
    if (!options.trusted_transitive && !is_transitive(m, options.hint)) {
        throw Error(ErrorKind::NotTransitive, "matrix " + m.to_string() + " is not transitive on P^n");
    }
    const PrimeField& F = m.field();
    const std::size_t n = m.n();
    EchelonBasis basis;
    std::vector<Branch> branches;
    std::vector<std::size_t> pivots;
    ProjMatrix power = m;
    for (std::size_t i = 1; i <= n + 1; ++i) {
        if (i > 1) power = power * m;
        RationalTuple raw = dehom(power);
        Branch br;
        for (const auto& a : raw.numerators) br.numerators.push_back(reduce_form(F, a, basis));
        br.denominator = reduce_form(F, raw.denominator, basis);
        if (br.denominator.is_zero()) {
            throw Error(ErrorKind::InternalContradiction, "reduced denominator " + std::to_string(i) + " vanishes identically");
        }
        if (i <= n) {
            if (br.denominator.is_constant()) {
                throw Error(ErrorKind::InternalContradiction, "reduced denominator " + std::to_string(i) + " is constant before the last branch");
            }
            pivots.push_back(basis.insert(F, br.denominator));
        }
        branches.push_back(std::move(br));
    }
    return FJProgram(F, n, std::move(branches), std::move(pivots));
}

// ------------------------------------------------------------- serialization

std::size_t payload_bits(const Nat& p, std::size_t n) { return residue_bits(p) * (n + 1) * (n + 1) * (n + 2) / 2; }

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'J', 'M', 'P'};

class BitWriter {
public:
    void put(const Nat& v, std::size_t width) {
        for (std::size_t b = width; b-- > 0;) {
            if (bit_ == 0) bytes_.push_back(0);
            if (mpz_tstbit(v.get_mpz_t(), b)) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> bit_);
            bit_ = (bit_ + 1) % 8;
        }
    }
    std::vector<std::uint8_t> take() && { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    unsigned bit_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
    Nat get(std::size_t width) {
        Nat v = 0;
        for (std::size_t b = 0; b < width; ++b, ++pos_) {
            v <<= 1;
            if (bytes_[pos_ / 8] & (0x80u >> (pos_ % 8))) v += 1;
        }
        return v;
    }
    std::size_t position() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

// Visits the stored coefficient slots of every form in serialization order:
// branch by branch, a_1..a_n then b, variable coefficients skipping earlier
// pivots, then the constant.
template <class Visit>
void for_each_slot(std::size_t n, const std::vector<std::size_t>& pivots, Visit&& visit) {
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<bool> skip(n, false);
        for (std::size_t j = 0; j < i && j < n; ++j) skip[pivots[j]] = true;
        for (std::size_t f = 0; f <= n; ++f) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!skip[k]) visit(i, f, std::optional<std::size_t>(k));
            }
            visit(i, f, std::optional<std::size_t>());
        }
    }
}

}  // namespace

std::vector<std::uint8_t> serialize(const FJProgram& program) {
    const Nat& p = program.field().modulus();
    const std::size_t n = program.n();
    if (n > 255) throw Error(ErrorKind::InvalidInput, "dimension does not fit the one-byte header field");
    const std::size_t p_len = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
    if (p_len > 0xFFFF) throw Error(ErrorKind::InvalidInput, "modulus too large for the header");

    std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
    out.push_back(kFormatVersion);
    out.push_back(static_cast<std::uint8_t>(n));
    out.push_back(static_cast<std::uint8_t>(p_len >> 8));
    out.push_back(static_cast<std::uint8_t>(p_len & 0xFF));
    std::vector<std::uint8_t> p_bytes(p_len);
    mpz_export(p_bytes.data(), nullptr, 1, 1, 1, 0, p.get_mpz_t());
    out.insert(out.end(), p_bytes.begin(), p_bytes.end());
    for (std::size_t piv : program.pivots()) out.push_back(static_cast<std::uint8_t>(piv));

    const std::size_t w = program.field().residue_bits();
    BitWriter bw;
    for_each_slot(n, program.pivots(), [&](std::size_t i, std::size_t f, std::optional<std::size_t> var) {
        const Branch& br = program.branches()[i];
        const LinearForm& form = f < n ? br.numerators[f] : br.denominator;
        bw.put(var ? form.coeffs[*var] : form.constant, w);
    });
    std::vector<std::uint8_t> payload = std::move(bw).take();
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

FJProgram deserialize(std::span<const std::uint8_t> bytes) {
    std::size_t pos = 0;
    auto need = [&](std::size_t k) {
        if (bytes.size() < pos + k) throw Error(ErrorKind::Truncation, "FJP data ends inside the header");
    };
    need(4 + 1 + 1 + 2);
    if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw Error(ErrorKind::Format, "bad magic, not an FJP file");
    pos = 4;
    if (bytes[pos] != kFormatVersion) throw Error(ErrorKind::Format, "unsupported FJP version " + std::to_string(bytes[pos]));
    ++pos;
    const std::size_t n = bytes[pos++];
    const std::size_t p_len = (std::size_t(bytes[pos]) << 8) | bytes[pos + 1];
    pos += 2;
    if (n == 0) throw Error(ErrorKind::CorruptProgram, "dimension 0");
    if (p_len == 0) throw Error(ErrorKind::Format, "empty modulus field");
    need(p_len);
    Nat p;
    mpz_import(p.get_mpz_t(), p_len, 1, 1, 1, 0, bytes.data() + pos);
    pos += p_len;
    if (!is_prime(p)) throw Error(ErrorKind::CorruptProgram, "modulus " + to_decimal(p) + " is not prime");
    PrimeField F(p);
    need(n);
    std::vector<std::size_t> pivots(bytes.begin() + pos, bytes.begin() + pos + n);
    pos += n;
    for (std::size_t i = 0; i < n; ++i) {
        if (pivots[i] >= n) throw Error(ErrorKind::CorruptProgram, "pivot index out of range");
        for (std::size_t j = 0; j < i; ++j) {
            if (pivots[i] == pivots[j]) throw Error(ErrorKind::CorruptProgram, "repeated pivot");
        }
    }

    const std::size_t bits = payload_bits(p, n);
    const std::size_t payload_bytes = (bits + 7) / 8;
    const std::size_t remaining = bytes.size() - pos;
    if (remaining != payload_bytes) {
        throw Error(ErrorKind::Truncation, "payload is " + std::to_string(remaining) + " bytes, expected " + std::to_string(payload_bytes));
    }

    std::vector<Branch> branches(n + 1);
    for (auto& br : branches) {
        br.numerators.assign(n, LinearForm(std::vector<Nat>(n, Nat(0)), 0));
        br.denominator = LinearForm(std::vector<Nat>(n, Nat(0)), 0);
    }
    const std::size_t w = F.residue_bits();
    BitReader br(bytes.subspan(pos));
    for_each_slot(n, pivots, [&](std::size_t i, std::size_t f, std::optional<std::size_t> var) {
        Nat v = br.get(w);
        if (v >= p) throw Error(ErrorKind::Range, "coefficient " + to_decimal(v) + " >= p");
        LinearForm& form = f < n ? branches[i].numerators[f] : branches[i].denominator;
        (var ? form.coeffs[*var] : form.constant) = std::move(v);
    });
    for (std::size_t b = bits; b < payload_bytes * 8; ++b) {
        if (bytes[pos + b / 8] & (0x80u >> (b % 8))) throw Error(ErrorKind::CorruptProgram, "nonzero padding bits");
    }
    return FJProgram(F, n, std::move(branches), std::move(pivots));
}

}  // namespace fj
