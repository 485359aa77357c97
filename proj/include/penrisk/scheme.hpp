#pragma once

#include <cstdint>
#include <vector>

#include "penrisk/annuity.hpp"
#include "penrisk/lifetable.hpp"

namespace penrisk {

enum class BenefitKind {
    homogeneous,     // every member receives the same amount
    executive_tier,  // fraction alpha receives k units, the rest 1 unit
    explicit_vector  // one amount per member
};

// Benefit structure of the scheme. For the executive tier, the executive
// headcount for N members is round(alpha * N); the exact benefit vector
// (executives first) is what every computation uses.
class BenefitStructure {
  public:
    static BenefitStructure homogeneous(double amount = 1.0);
    static BenefitStructure executive_tier(double alpha, double k, double base = 1.0);
    static BenefitStructure explicit_vector(std::vector<double> amounts);

    BenefitKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double k() const { return k_; }
    double base() const { return base_; }
    const std::vector<double>& amounts() const { return amounts_; }

    // Executive headcount for a scheme of n members (0 unless tiered).
    std::int64_t n_exec(std::int64_t n_members) const;

    double sum(std::int64_t n_members) const;          // sum of B_n
    double sum_squares(std::int64_t n_members) const;  // sum of B_n^2

    // Full per-member vector, executives first.
    std::vector<double> expand(std::int64_t n_members) const;

    // Same structure with every amount multiplied by factor > 0.
    BenefitStructure scaled(double factor) const;

  private:
    BenefitStructure() = default;
    BenefitKind kind_ = BenefitKind::homogeneous;
    double base_ = 1.0;
    double alpha_ = 0.0;
    double k_ = 1.0;
    std::vector<double> amounts_;
};

// Scheme population: n members of common age, retiring at retirement_age.
struct SchemeSpec {
    std::int64_t n_members = 1;
    double age = 40.0;
    double retirement_age = 65.0;
    BenefitStructure benefits = BenefitStructure::homogeneous();
};

SchemeSpec make_scheme_spec(std::int64_t n_members, double age, double retirement_age,
                            BenefitStructure benefits);

// Moments of the total liability present value L = sum_n B_n Y_n.
struct LiabilityMoments {
    double expected = 0.0;
    double variance = 0.0;
    double sd = 0.0;

    double cov_pair = 0.0;  // Cov(Y_1, Y_2) under the basis
    double m1_mix = 0.0;    // E[Y]
    double var_mix = 0.0;   // Var(Y)

    // vco and its split are defined only when expected > 0 (an all-dead
    // table gives expected = 0 and the condition is reported, never NaN).
    bool vco_defined = false;
    double vco = 0.0;
    double systematic_vco = 0.0;    // sqrt(cov_pair) / E[Y], the large-N floor
    double idiosyncratic_vco = 0.0; // vco - systematic_vco
};

// Benefit-concentration factor (alpha k^2 + 1 - alpha)/(alpha k + 1 - alpha)^2,
// >= 1 on alpha in [0,1], k >= 1. Continuous in alpha; equals
// N * sum(B^2) / sum(B)^2 when alpha * N is integral.
double f_factor(double alpha, double k);

// Exact liability moments from the benefit vector sums:
//   E[L]   = sum(B) * E[Y]
//   Var[L] = sum(B^2) * (Var(Y) - Cov(Y1,Y2)) + sum(B)^2 * Cov(Y1,Y2)
LiabilityMoments liability_moments(const SchemeSpec& spec, const MortalityBasis& basis,
                                   const LifeTable& table, const DiscountBasis& discount);

struct VcoPoint {
    std::int64_t n_members = 0;
    double vco = 0.0;
    double systematic_vco = 0.0;
    bool defined = false;
};

// Coefficient of variation against membership size; the benefit structure
// and ages are taken from spec, spec.n_members is ignored.
std::vector<VcoPoint> vco_curve(const SchemeSpec& spec, const MortalityBasis& basis,
                                const LifeTable& table, const DiscountBasis& discount,
                                const std::vector<std::int64_t>& n_grid);

}  // namespace penrisk
