#pragma once

#include <cstdint>
#include <vector>

#include "penrisk/scheme.hpp"

namespace penrisk {

// Euler (covariance-principle) split of the liability standard deviation.
// Per-member capital is pi_n = Cov(X_n, L) / SD(L); the sum over members
// recovers SD(L) exactly. Systematic capital per member is
// B_n * sqrt(Cov(Y1,Y2)); the idiosyncratic part is the remainder.
struct AllocationReport {
    double total_sd = 0.0;
    bool degenerate = false;  // total_sd == 0: nothing to allocate

    std::int64_t n_members = 0;
    std::int64_t n_exec = 0;

    // Per-member-type figures; meaningful for homogeneous and tiered
    // structures (per_type_defined), not for explicit benefit vectors.
    bool per_type_defined = false;
    double pi_norm = 0.0;
    double pi_exec = 0.0;
    double lambda_exec = 0.0;  // Euler share of the executive section
    double rho_exec = 0.0;     // benefit-weighted share of the executive section
    double systematic_per_norm = 0.0;
    double systematic_per_exec = 0.0;
    double idiosyncratic_per_norm = 0.0;
    double idiosyncratic_per_exec = 0.0;

    double systematic_total = 0.0;  // sum(B) * sqrt(Cov(Y1,Y2))

    // Member-level allocations, filled for explicit benefit vectors.
    std::vector<double> member_pi;
};

AllocationReport euler_allocation(const SchemeSpec& spec, const MortalityBasis& basis,
                                  const LifeTable& table, const DiscountBasis& discount);

// Total systematic mortality risk sum(B) * sqrt(Cov(Y1,Y2)).
double systematic_total(const SchemeSpec& spec, const MortalityBasis& basis,
                        const LifeTable& table, const DiscountBasis& discount);

struct AllocationPoint {
    double alpha = 0.0;
    double k = 1.0;
    double lambda_exec = 0.0;
    double rho_exec = 0.0;
    bool defined = false;  // false when the scheme is degenerate
};

// lambda/rho of the executive section as the benefit multiple k sweeps,
// alpha and N fixed from spec (which must be tiered).
std::vector<AllocationPoint> allocation_vs_k_curve(const SchemeSpec& spec,
                                                   const MortalityBasis& basis,
                                                   const LifeTable& table,
                                                   const DiscountBasis& discount,
                                                   const std::vector<double>& k_values);

// Same sweep over the executive fraction alpha, k fixed.
std::vector<AllocationPoint> allocation_vs_alpha_curve(const SchemeSpec& spec,
                                                       const MortalityBasis& basis,
                                                       const LifeTable& table,
                                                       const DiscountBasis& discount,
                                                       const std::vector<double>& alpha_values);

}  // namespace penrisk
