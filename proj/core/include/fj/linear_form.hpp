#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fj/field.hpp"

namespace fj {

using AffinePoint = std::vector<Nat>;

// c_1 x_1 + ... + c_n x_n + constant over F_p. The field is carried by the
// owning structure (program or matrix), not by each form.
struct LinearForm {
    std::vector<Nat> coeffs;
    Nat constant = 0;

    LinearForm() = default;
    LinearForm(std::vector<Nat> c, Nat k) : coeffs(std::move(c)), constant(std::move(k)) {}

    std::size_t arity() const noexcept { return coeffs.size(); }
    bool is_constant() const;
    bool is_zero() const { return constant == 0 && is_constant(); }
    // Index of the leftmost nonzero variable coefficient.
    std::optional<std::size_t> leading_variable() const;

    Nat evaluate(const PrimeField& field, std::span<const Nat> x) const;

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

}  // namespace fj
