#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fj/field.hpp"
#include "fj/linear_form.hpp"

namespace fj {

// Invertible (n+1)x(n+1) matrix over F_p, standing for the projective
// automorphism [M] of P^n. Entries are row-major and 0-indexed: coordinate
// n (the last) is the one whose vanishing defines the hyperplane at infinity.
class ProjMatrix {
public:
    // Throws InvalidInput on a wrong entry count or a singular matrix.
    ProjMatrix(PrimeField field, std::size_t size, std::vector<Nat> entries);

    static ProjMatrix identity(const PrimeField& field, std::size_t size);
    // Semicolon-separated rows of comma-separated residues: "0,0,3;4,0,3;0,4,0".
    static ProjMatrix parse(const PrimeField& field, const std::string& text);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return size_; }
    std::size_t n() const noexcept { return size_ - 1; }
    const Nat& at(std::size_t row, std::size_t col) const { return a_[row * size_ + col]; }

    ProjMatrix operator*(const ProjMatrix& o) const;
    ProjMatrix power(unsigned k) const;
    ProjMatrix scaled(const Nat& c) const;
    std::vector<Nat> apply(std::span<const Nat> v) const;

    std::string to_string() const;

    friend bool operator==(const ProjMatrix& a, const ProjMatrix& b) {
        return a.field_ == b.field_ && a.size_ == b.size_ && a.a_ == b.a_;
    }

private:
    struct Unchecked {};
    ProjMatrix(Unchecked, PrimeField field, std::size_t size, std::vector<Nat> entries)
        : field_(std::move(field)), size_(size), a_(std::move(entries)) {}

    PrimeField field_;
    std::size_t size_;
    std::vector<Nat> a_;
};

Nat determinant(const PrimeField& field, std::size_t size, std::vector<Nat> entries);

// Point of P^n scaled so that its last nonzero coordinate is 1. Points of
// the affine chart U therefore end in 1, points of H end in 0.
class ProjPoint {
public:
    static ProjPoint canonical(const PrimeField& field, std::vector<Nat> coords);
    static ProjPoint lift(const AffinePoint& x);

    const std::vector<Nat>& coords() const noexcept { return c_; }
    bool in_affine_chart() const { return c_.back() == 1; }
    AffinePoint dehomogenize() const;  // requires in_affine_chart()

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

private:
    explicit ProjPoint(std::vector<Nat> c) : c_(std::move(c)) {}
    std::vector<Nat> c_;
};

struct RationalTuple {
    std::vector<LinearForm> numerators;
    LinearForm denominator;
};

ProjMatrix companion_matrix(const FpPoly& f);
FpPoly char_poly(const ProjMatrix& m);
bool is_transitive(const ProjMatrix& m, const std::optional<FactoredInteger>& hint = std::nullopt);
ProjPoint apply_map(const ProjMatrix& m, const ProjPoint& p);
RationalTuple dehom(const ProjMatrix& m);

enum class JumpBound {
    Transitive,  // caller asserts transitivity: more than n+1 steps is a contradiction
    Any,         // iterate until the orbit returns to U, however long
};

unsigned jump_index(const ProjMatrix& m, const ProjPoint& p, JumpBound bound = JumpBound::Transitive);

// Direct fractional jump: lift x, apply Psi until back in U, dehomogenize.
AffinePoint psi_reference(const ProjMatrix& m, const AffinePoint& x);

}  // namespace fj
