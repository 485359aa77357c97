#include "penrisk/allocation.hpp"

#include <cmath>
#include <stdexcept>

namespace penrisk {

namespace {

// Per-member Euler capital for benefit b:
// Cov(bY, L) / SD(L) = (b^2 (Var - Cov) + b sum(B) Cov) / SD(L)
double member_pi(double b, double sum_b, double within, double cov_pair, double sd) {
    return (b * b * within + b * sum_b * cov_pair) / sd;
}

AllocationReport build_report(const SchemeSpec& spec, const MixtureMoments& mix) {
    const auto& benefits = spec.benefits;
    std::int64_t n = spec.n_members;

    AllocationReport report;
    report.n_members = n;
    report.n_exec = benefits.n_exec(n);

    double sum_b = benefits.sum(n);
    double sum_b2 = benefits.sum_squares(n);
    double variance = sum_b2 * mix.within + sum_b * sum_b * mix.cov_pair;
    report.total_sd = std::sqrt(variance);
    double sqrt_cov = std::sqrt(mix.cov_pair);
    report.systematic_total = sum_b * sqrt_cov;

    if (!(report.total_sd > 0.0)) {
        report.degenerate = true;
        return report;
    }

    switch (benefits.kind()) {
        case BenefitKind::homogeneous: {
            report.per_type_defined = true;
            double b = benefits.base();
            report.pi_norm = member_pi(b, sum_b, mix.within, mix.cov_pair, report.total_sd);
            report.pi_exec = report.pi_norm;
            report.lambda_exec = 0.0;
            report.rho_exec = 0.0;
            report.systematic_per_norm = b * sqrt_cov;
            report.systematic_per_exec = b * sqrt_cov;
            break;
        }
        case BenefitKind::executive_tier: {
            report.per_type_defined = true;
            double base = benefits.base();
            double k = benefits.k();
            double ne = static_cast<double>(report.n_exec);
            double nn = static_cast<double>(n) - ne;
            report.pi_norm =
                member_pi(base, sum_b, mix.within, mix.cov_pair, report.total_sd);
            report.pi_exec =
                member_pi(base * k, sum_b, mix.within, mix.cov_pair, report.total_sd);
            report.lambda_exec = ne * report.pi_exec / report.total_sd;
            report.rho_exec = (ne * k) / (ne * k + nn);
            report.systematic_per_norm = base * sqrt_cov;
            report.systematic_per_exec = base * k * sqrt_cov;
            break;
        }
        case BenefitKind::explicit_vector: {
            report.member_pi.reserve(benefits.amounts().size());
            for (double b : benefits.amounts()) {
                report.member_pi.push_back(
                    member_pi(b, sum_b, mix.within, mix.cov_pair, report.total_sd));
            }
            break;
        }
    }
    if (report.per_type_defined) {
        report.idiosyncratic_per_norm = report.pi_norm - report.systematic_per_norm;
        report.idiosyncratic_per_exec = report.pi_exec - report.systematic_per_exec;
    }
    return report;
}

}  // namespace

AllocationReport euler_allocation(const SchemeSpec& spec, const MortalityBasis& basis,
                                  const LifeTable& table, const DiscountBasis& discount) {
    MixtureMoments mix =
        mixture_moments(table, basis, discount, spec.age, spec.retirement_age);
    return build_report(spec, mix);
}

double systematic_total(const SchemeSpec& spec, const MortalityBasis& basis,
                        const LifeTable& table, const DiscountBasis& discount) {
    MixtureMoments mix =
        mixture_moments(table, basis, discount, spec.age, spec.retirement_age);
    return spec.benefits.sum(spec.n_members) * std::sqrt(mix.cov_pair);
}

std::vector<AllocationPoint> allocation_vs_k_curve(const SchemeSpec& spec,
                                                   const MortalityBasis& basis,
                                                   const LifeTable& table,
                                                   const DiscountBasis& discount,
                                                   const std::vector<double>& k_values) {
    if (spec.benefits.kind() != BenefitKind::executive_tier) {
        throw std::invalid_argument("k sweep needs an executive-tier benefit structure");
    }
    MixtureMoments mix =
        mixture_moments(table, basis, discount, spec.age, spec.retirement_age);

    std::vector<AllocationPoint> out(k_values.size());
    for (std::size_t i = 0; i < k_values.size(); ++i) {
        SchemeSpec point = spec;
        point.benefits = BenefitStructure::executive_tier(spec.benefits.alpha(), k_values[i],
                                                          spec.benefits.base());
        AllocationReport report = build_report(point, mix);
        out[i] = AllocationPoint{spec.benefits.alpha(), k_values[i], report.lambda_exec,
                                 report.rho_exec, !report.degenerate};
    }
    return out;
}

std::vector<AllocationPoint> allocation_vs_alpha_curve(
    const SchemeSpec& spec, const MortalityBasis& basis, const LifeTable& table,
    const DiscountBasis& discount, const std::vector<double>& alpha_values) {
    if (spec.benefits.kind() != BenefitKind::executive_tier) {
        throw std::invalid_argument("alpha sweep needs an executive-tier benefit structure");
    }
    MixtureMoments mix =
        mixture_moments(table, basis, discount, spec.age, spec.retirement_age);

    std::vector<AllocationPoint> out(alpha_values.size());
    for (std::size_t i = 0; i < alpha_values.size(); ++i) {
        SchemeSpec point = spec;
        point.benefits = BenefitStructure::executive_tier(alpha_values[i], spec.benefits.k(),
                                                          spec.benefits.base());
        AllocationReport report = build_report(point, mix);
        out[i] = AllocationPoint{alpha_values[i], spec.benefits.k(), report.lambda_exec,
                                 report.rho_exec, !report.degenerate};
    }
    return out;
}

}  // namespace penrisk
