#include "penrisk/scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace penrisk {

BenefitStructure BenefitStructure::homogeneous(double amount) {
    if (!(amount > 0.0) || !std::isfinite(amount)) {
        throw std::invalid_argument("benefit amount must be positive");
    }
    BenefitStructure b;
    b.kind_ = BenefitKind::homogeneous;
    b.base_ = amount;
    return b;
}

BenefitStructure BenefitStructure::executive_tier(double alpha, double k, double base) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0,1]");
    }
    if (!(k >= 1.0) || !std::isfinite(k)) {
        throw std::invalid_argument("benefit multiple k must be >= 1");
    }
    if (!(base > 0.0) || !std::isfinite(base)) {
        throw std::invalid_argument("base benefit must be positive");
    }
    BenefitStructure b;
    b.kind_ = BenefitKind::executive_tier;
    b.alpha_ = alpha;
    b.k_ = k;
    b.base_ = base;
    return b;
}

BenefitStructure BenefitStructure::explicit_vector(std::vector<double> amounts) {
    if (amounts.empty()) throw std::invalid_argument("benefit vector is empty");
    for (double a : amounts) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw std::invalid_argument("benefit amounts must be positive");
        }
    }
    BenefitStructure b;
    b.kind_ = BenefitKind::explicit_vector;
    b.amounts_ = std::move(amounts);
    return b;
}

std::int64_t BenefitStructure::n_exec(std::int64_t n_members) const {
    if (kind_ != BenefitKind::executive_tier) return 0;
    return std::llround(alpha_ * static_cast<double>(n_members));
}

double BenefitStructure::sum(std::int64_t n_members) const {
    switch (kind_) {
        case BenefitKind::homogeneous:
            return base_ * static_cast<double>(n_members);
        case BenefitKind::executive_tier: {
            double ne = static_cast<double>(n_exec(n_members));
            double nn = static_cast<double>(n_members) - ne;
            return base_ * (ne * k_ + nn);
        }
        case BenefitKind::explicit_vector: {
            double total = 0.0;
            for (double a : amounts_) total += a;
            return total;
        }
    }
    return 0.0;
}

double BenefitStructure::sum_squares(std::int64_t n_members) const {
    switch (kind_) {
        case BenefitKind::homogeneous:
            return base_ * base_ * static_cast<double>(n_members);
        case BenefitKind::executive_tier: {
            double ne = static_cast<double>(n_exec(n_members));
            double nn = static_cast<double>(n_members) - ne;
            return base_ * base_ * (ne * k_ * k_ + nn);
        }
        case BenefitKind::explicit_vector: {
            double total = 0.0;
            for (double a : amounts_) total += a * a;
            return total;
        }
    }
    return 0.0;
}

std::vector<double> BenefitStructure::expand(std::int64_t n_members) const {
    std::vector<double> out;
    if (kind_ == BenefitKind::explicit_vector) {
        if (n_members != static_cast<std::int64_t>(amounts_.size())) {
            throw std::invalid_argument("member count does not match the benefit vector");
        }
        return amounts_;
    }
    out.resize(static_cast<std::size_t>(n_members), base_);
    if (kind_ == BenefitKind::executive_tier) {
        auto ne = static_cast<std::size_t>(n_exec(n_members));
        for (std::size_t i = 0; i < ne; ++i) out[i] = base_ * k_;
    }
    return out;
}

BenefitStructure BenefitStructure::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    BenefitStructure b = *this;
    if (kind_ == BenefitKind::explicit_vector) {
        for (double& a : b.amounts_) a *= factor;
    } else {
        b.base_ *= factor;
    }
    return b;
}

SchemeSpec make_scheme_spec(std::int64_t n_members, double age, double retirement_age,
                            BenefitStructure benefits) {
    if (n_members < 1) throw std::invalid_argument("scheme needs at least one member");
    if (!(age <= retirement_age)) {
        throw std::invalid_argument("age exceeds retirement age");
    }
    if (benefits.kind() == BenefitKind::explicit_vector &&
        static_cast<std::int64_t>(benefits.amounts().size()) != n_members) {
        throw std::invalid_argument("member count does not match the benefit vector");
    }
    return SchemeSpec{n_members, age, retirement_age, std::move(benefits)};
}

double f_factor(double alpha, double k) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0,1]");
    }
    if (!(k >= 1.0)) throw std::invalid_argument("benefit multiple k must be >= 1");
    double mean = alpha * k + 1.0 - alpha;
    return (alpha * k * k + 1.0 - alpha) / (mean * mean);
}

namespace {

LiabilityMoments moments_from_mixture(const SchemeSpec& spec, const MixtureMoments& mix) {
    const auto& benefits = spec.benefits;
    double sum_b = benefits.sum(spec.n_members);
    double sum_b2 = benefits.sum_squares(spec.n_members);

    LiabilityMoments out;
    out.m1_mix = mix.m1;
    out.var_mix = mix.variance();
    out.cov_pair = mix.cov_pair;
    out.expected = sum_b * mix.m1;
    out.variance = sum_b2 * mix.within + sum_b * sum_b * mix.cov_pair;
    out.sd = std::sqrt(out.variance);
    if (out.expected > 0.0) {
        out.vco_defined = true;
        out.vco = out.sd / out.expected;
        out.systematic_vco = std::sqrt(mix.cov_pair) / mix.m1;
        out.idiosyncratic_vco = out.vco - out.systematic_vco;
    }
    return out;
}

}  // namespace

LiabilityMoments liability_moments(const SchemeSpec& spec, const MortalityBasis& basis,
                                   const LifeTable& table, const DiscountBasis& discount) {
    MixtureMoments mix =
        mixture_moments(table, basis, discount, spec.age, spec.retirement_age);
    return moments_from_mixture(spec, mix);
}

std::vector<VcoPoint> vco_curve(const SchemeSpec& spec, const MortalityBasis& basis,
                                const LifeTable& table, const DiscountBasis& discount,
                                const std::vector<std::int64_t>& n_grid) {
    if (n_grid.empty()) throw std::invalid_argument("empty membership grid");
    for (std::int64_t n : n_grid) {
        if (n < 1) throw std::invalid_argument("membership grid values must be positive");
    }
    MixtureMoments mix =
        mixture_moments(table, basis, discount, spec.age, spec.retirement_age);

    std::vector<VcoPoint> out(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        SchemeSpec point = spec;
        point.n_members = n_grid[i];
        LiabilityMoments m = moments_from_mixture(point, mix);
        out[i] = VcoPoint{n_grid[i], m.vco, m.systematic_vco, m.vco_defined};
    }
    return out;
}

}  // namespace penrisk
