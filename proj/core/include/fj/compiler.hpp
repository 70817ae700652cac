#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fj/linear_form.hpp"
#include "fj/projective.hpp"

namespace fj {

struct EchelonRow {
    std::size_t pivot;  // 0-based variable index
    LinearForm form;    // coefficient 1 at pivot, 0 at every other row's pivot
};

// Reduced row echelon basis of the affine forms b^(1)..b^(i-1) whose common
// zero set is the domain of branch i.
class EchelonBasis {
public:
    const std::vector<EchelonRow>& rows() const noexcept { return rows_; }
    bool has_pivot(std::size_t var) const;

    // `reduced` must already be reduced against this basis and be nonconstant.
    // Its leftmost nonzero variable becomes the new pivot; returns that index.
    std::size_t insert(const PrimeField& field, const LinearForm& reduced);

private:
    std::vector<EchelonRow> rows_;
};

// Substitute the vanishing of every basis row into f: the result has zero
// coefficient at every pivot and agrees with f on the basis' zero set.
LinearForm reduce_form(const PrimeField& field, const LinearForm& f, const EchelonBasis& basis);

struct Branch {
    std::vector<LinearForm> numerators;  // a^(i)_1 .. a^(i)_n
    LinearForm denominator;              // b^(i)

    friend bool operator==(const Branch&, const Branch&) = default;
};

// Compiled fractional jump: n+1 branches; branch i applies where b^(1..i-1)
// vanish and b^(i) does not. pivots[i] is the pivot variable of reduced b^(i).
class FJProgram {
public:
    // Validates every structural invariant; throws CorruptProgram otherwise.
    FJProgram(PrimeField field, std::size_t n, std::vector<Branch> branches, std::vector<std::size_t> pivots);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t n() const noexcept { return n_; }
    const std::vector<Branch>& branches() const noexcept { return branches_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    friend bool operator==(const FJProgram& a, const FJProgram& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.branches_ == b.branches_ && a.pivots_ == b.pivots_;
    }

private:
    PrimeField field_;
    std::size_t n_;
    std::vector<Branch> branches_;
    std::vector<std::size_t> pivots_;
};

struct CompileOptions {
    // Caller certifies transitivity; skips the char-poly factorization.
    bool trusted_transitive = false;
    std::optional<FactoredInteger> hint;  // factorization of (p^(n+1)-1)/(p-1)
};

FJProgram compile(const ProjMatrix& m, const CompileOptions& options = {});

inline constexpr std::uint8_t kFormatVersion = 0x01;

// ceil(log2 p) * (n+1)^2 * (n+2) / 2
std::size_t payload_bits(const Nat& p, std::size_t n);

std::vector<std::uint8_t> serialize(const FJProgram& program);
FJProgram deserialize(std::span<const std::uint8_t> bytes);

}  // namespace fj
