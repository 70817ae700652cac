#pragma once

#include <memory>
#include <vector>

#include "fj/compiler.hpp"
#include "fj/field.hpp"
#include "fj/projective.hpp"

namespace fj::testing {

inline const PrimeField& F2() { static const PrimeField f(Nat(2)); return f; }
inline const PrimeField& F3() { static const PrimeField f(Nat(3)); return f; }
inline const PrimeField& F5() { static const PrimeField f(Nat(5)); return f; }
inline const PrimeField& F7() { static const PrimeField f(Nat(7)); return f; }
inline const PrimeField& F11() { static const PrimeField f(Nat(11)); return f; }
inline const PrimeField& F13() { static const PrimeField f(Nat(13)); return f; }

inline const char* kBigPrime = "38685626227668133590597803";

// The printed F_5 example matrix (negated companion of x^3+3x+3).
inline ProjMatrix printed_f5_matrix() { return ProjMatrix::parse(F5(), "0,0,3;-1,0,3;0,-1,0"); }
// The printed F_3 example matrix (negated companion of x^3+2x+1).
inline ProjMatrix printed_f3_matrix() { return ProjMatrix::parse(F3(), "0,0,1;-1,0,2;0,-1,0"); }

inline FpPoly f5_cubic() { return FpPoly::parse(F5(), "x^3+3*x+3"); }
inline FpPoly f3_cubic() { return FpPoly::parse(F3(), "x^3+2*x+1"); }

inline std::shared_ptr<const FJProgram> f5_program() {
    static const auto p = std::make_shared<const FJProgram>(compile(companion_matrix(f5_cubic())));
    return p;
}
inline std::shared_ptr<const FJProgram> f3_program() {
    static const auto p = std::make_shared<const FJProgram>(compile(companion_matrix(f3_cubic())));
    return p;
}

// Every projectively primitive monic polynomial of degree n+1 over each
// listed prime, for n in [1, max_n] and p^n <= max_points.
struct GridCase {
    FpPoly poly;
    std::size_t n;
    ProjMatrix matrix() const { return companion_matrix(poly); }
};

inline std::vector<GridCase> transitive_grid(std::uint64_t max_points, std::size_t max_n = 3,
                                             std::vector<unsigned long> primes = {2, 3, 5, 7, 11, 13}) {
    std::vector<GridCase> out;
    for (unsigned long p : primes) {
        const PrimeField F{Nat(p)};
        std::uint64_t points = 1;
        for (std::size_t n = 1; n <= max_n; ++n) {
            points *= p;
            if (points > max_points) break;
            for (auto& f : enumerate_projectively_primitive(F, n + 1)) out.push_back({std::move(f), n});
        }
    }
    return out;
}

}  // namespace fj::testing
