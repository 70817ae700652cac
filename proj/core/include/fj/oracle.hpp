#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fj/generator.hpp"

namespace fj {

// Exhaustive checkers. Each one is a brute-force route that shares nothing
// with the compiled evaluator beyond basic field arithmetic.

inline constexpr std::uint64_t kOrbitCap = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kJumpIndexCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kEquivalenceCap = std::uint64_t{1} << 14;
inline constexpr std::uint64_t kPrimitiveCap = std::uint64_t{1} << 20;

struct OrbitReport {
    std::uint64_t orbit_length = 0;  // distinct points before the first revisit
    bool is_full_cycle = false;      // returned to start after expected_size steps
    std::vector<std::uint64_t> branch_histogram;  // empty for maps without branches
};

using StepFn = std::function<AffinePoint(const AffinePoint&)>;
using IndexFn = std::function<std::uint64_t(const AffinePoint&)>;

OrbitReport verify_full_orbit(const StepFn& step, const IndexFn& index, const AffinePoint& start, std::uint64_t expected_size);
OrbitReport verify_full_orbit(const FJProgram& program, const AffinePoint& start);
OrbitReport verify_full_orbit(const CompoundGenerator& generator, const AffinePoint& start);

// Calls visit(x) for every x in (Z/mZ)^n, x_0 varying fastest.
void for_each_point(const Nat& modulus, std::size_t n, const std::function<void(const AffinePoint&)>& visit);
std::uint64_t point_count(const Nat& modulus, std::size_t n);

unsigned absolute_jump_index(const ProjMatrix& m);
bool equivalence_check(const FJProgram& program, const ProjMatrix& m);

// Order of x in F_p[x]/(f) by repeated multiplication; f irreducible.
std::uint64_t brute_force_root_order(const FpPoly& f);
bool brute_force_primitive(const FpPoly& f);

struct BenchReport {
    Nat p;
    std::size_t n = 0;
    std::uint64_t steps = 0;
    unsigned runs = 0;
    double fj_ns_per_step = 0;
    double fj_ns_per_coordinate = 0;
    double icg_ns_per_output = 0;
    std::uint64_t fj_inversions = 0;   // over one run of `steps` steps
    std::uint64_t fj_coordinates = 0;
    std::uint64_t icg_inversions = 0;  // over one run of `steps` outputs
    std::uint64_t icg_outputs = 0;
    std::uint64_t icg_zero_states = 0;  // 0 maps to b without an inversion
    std::uint64_t branch1_hits = 0;
    double branch1_fraction = 0;
};

struct IcgParams {
    Nat a = 1;
    Nat b = 1;
};

// Medians over `runs` timed runs after a warmup. Requires iterations >= 10^4.
BenchReport bench(const FJProgram& program, const IcgParams& icg, std::uint64_t iterations, unsigned runs = 5);

std::string to_text(const OrbitReport& r);
std::string to_text(const BenchReport& r);
std::string to_json(const OrbitReport& r);
std::string to_json(const BenchReport& r);

}  // namespace fj
