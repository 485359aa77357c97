#pragma once

#include <vector>

#include "penrisk/lifetable.hpp"

namespace penrisk {

// Constant continuously-compounded discounting.
struct DiscountBasis {
    double delta = 0.0;

    // Annual discount factor v = e^{-delta}.
    double v() const;
};

DiscountBasis make_discount_basis(double delta);

// Present value of 1 p.a. payable continuously for t years:
// (1 - e^{-delta t}) / delta, with the t limit at delta = 0.
double annuity_certain(double delta, double t);

// First and second moments of Y, the present value of 1 p.a. payable
// continuously from retirement until death, deferred from age x, under
// one age-rating scenario.
struct AnnuityMoments {
    double m1 = 0.0;  // E[Y]
    double m2 = 0.0;  // E[Y^2]

    // context
    double age = 0.0;
    double retirement_age = 0.0;
    double delta = 0.0;
    double rating = 0.0;

    double variance() const { return m2 - m1 * m1; }
};

// E[Y^m] for m in {1, 2}. The rating shifts both the member age and the
// retirement age, so the deferral period is unchanged. Exact per-year
// integration: under UDD the death density is constant within each year
// of age and the annuity-certain powers integrate in closed form, so the
// result carries no quadrature error.
double scenario_moment(const LifeTable& table, AgeRating rating,
                       const DiscountBasis& discount, double age,
                       double retirement_age, int order);

AnnuityMoments scenario_annuity_moments(const LifeTable& table, AgeRating rating,
                                        const DiscountBasis& discount, double age,
                                        double retirement_age);

// Second algebraic route to E[Y]: v^{ret-x} * survival-to-retirement *
// (discounted annuity sum built from l values). Used to cross-check
// scenario_moment; the two must agree to rounding.
double deferred_annuity_epv(const LifeTable& table, AgeRating rating,
                            const DiscountBasis& discount, double age,
                            double retirement_age);

// Moments of Y under a scenario mixture. Conditional on a scenario,
// lives are independent; mixing makes any two lives positively
// correlated through the shared scenario draw.
struct MixtureMoments {
    double m1 = 0.0;        // E[Y]
    double m2 = 0.0;        // E[Y^2]
    double within = 0.0;    // E_s[Var(Y | s)]   (= variance - cov_pair)
    double cov_pair = 0.0;  // Cov(Y_1, Y_2) = Var_s(E[Y | s])

    double variance() const { return within + cov_pair; }
};

// Combines per-scenario moments with the basis weights. The moments must
// share age, retirement age and delta, and line up one-to-one with the
// basis scenarios. cov_pair is accumulated as the weighted squared
// deviation of scenario means, which is exact for a single scenario.
MixtureMoments mixture_moments(const std::vector<AnnuityMoments>& per_scenario,
                               const MortalityBasis& basis);

// Convenience: evaluate every scenario of the basis, then mix.
MixtureMoments mixture_moments(const LifeTable& table, const MortalityBasis& basis,
                               const DiscountBasis& discount, double age,
                               double retirement_age);

}  // namespace penrisk
