#pragma once

#include <cstdint>
#include <iosfwd>

#include "penrisk/scheme.hpp"

namespace penrisk {

// Deterministic, chunked simulation plan. Paths are split into fixed-size
// chunks; each chunk runs on its own counter-derived RNG stream and the
// chunk results are always reduced in chunk order, so serial and parallel
// execution produce bitwise-identical output for the same config.
struct SimulationConfig {
    std::uint64_t n_paths = 1'000'000;
    std::uint64_t seed = 1;
    bool antithetic = false;  // pairs of paths with mirrored uniforms
    std::uint32_t chunk_size = 1024;
};

enum class ExecutionMode { serial, parallel };

// Moments of the simulated liability distribution with standard errors.
// se_vco comes from the delta method (see docs/math_notes.md); with a
// single path the standard errors are undefined and flagged.
struct EmpiricalMoments {
    std::uint64_t n_paths = 0;
    std::uint32_t chunk_size = 0;

    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double sd = 0.0;
    bool vco_defined = false;
    double vco = 0.0;

    bool se_defined = false;
    double se_mean = 0.0;
    double se_variance = 0.0;
    double se_sd = 0.0;
    double se_vco = 0.0;
};

// Sample-covariance Euler estimates per member type. Standard errors use
// a leave-one-chunk-out jackknife over the simulation chunks.
struct EmpiricalAllocation {
    std::uint64_t n_paths = 0;

    double sd = 0.0;               // sample SD of L
    double pi_exec_section = 0.0;  // sample Cov(X_exec, L) / sample SD(L)
    double pi_norm_section = 0.0;
    double lambda_exec = 0.0;      // pi_exec_section / sd

    bool se_defined = false;
    double se_pi_exec = 0.0;
    double se_pi_norm = 0.0;
};

struct SimulationResult {
    EmpiricalMoments moments;
    EmpiricalAllocation allocation;
};

// Inverse-CDF draw of the whole-life death time (in years from the rated
// current age) under the table's UDD survival function: returns t with
// survival(rated age, t) = 1 - u. Throws std::invalid_argument unless
// u is strictly inside (0,1).
double sample_lifetime(const LifeTable& table, AgeRating rating, double age, double u);

// Simulates L = sum_n B_n * Y_n: per path one scenario draw for the whole
// scheme, then independent member lifetimes from the rated age.
SimulationResult run_liability_simulation(const SchemeSpec& spec,
                                          const MortalityBasis& basis,
                                          const LifeTable& table,
                                          const DiscountBasis& discount,
                                          const SimulationConfig& config,
                                          ExecutionMode mode = ExecutionMode::parallel);

EmpiricalMoments simulate_liability(const SchemeSpec& spec, const MortalityBasis& basis,
                                    const LifeTable& table, const DiscountBasis& discount,
                                    const SimulationConfig& config,
                                    ExecutionMode mode = ExecutionMode::parallel);

EmpiricalAllocation empirical_euler(const SchemeSpec& spec, const MortalityBasis& basis,
                                    const LifeTable& table, const DiscountBasis& discount,
                                    const SimulationConfig& config,
                                    ExecutionMode mode = ExecutionMode::parallel);

// Streams one CSV row "path,scenario_rating,L" per simulated path in
// canonical path order (always serial; same draws as the engines).
void dump_paths(const SchemeSpec& spec, const MortalityBasis& basis,
                const LifeTable& table, const DiscountBasis& discount,
                const SimulationConfig& config, std::ostream& out);

}  // namespace penrisk
