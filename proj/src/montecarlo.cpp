#include "penrisk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace penrisk {

namespace {

constexpr std::uint64_t kPayloadBits = 52;
constexpr std::uint64_t kPayloadMask = (std::uint64_t{1} << kPayloadBits) - 1;
constexpr double kPayloadScale = 0x1p-52;

// 52-bit payload -> uniform on (0,1). (p + 0.5) * 2^-52 is exact for every
// payload, and the mirrored payload (mask - p) maps to exactly 1 - u, so
// antithetic pairs are bitwise mirrors.
inline double to_unit(std::uint64_t payload) {
    return (static_cast<double>(payload) + 0.5) * kPayloadScale;
}

// splitmix64 finalizer; derives independent per-chunk stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_index) {
    return mix64(seed + 0x9E3779B97F4A7C15ULL * (chunk_index + 1));
}

struct EngineRng {
    std::mt19937_64 eng;
    explicit EngineRng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next_payload() { return eng() >> (64 - kPayloadBits); }
};

// Draw sources for a path: fresh draws, fresh draws recorded for the
// antithetic partner, and the mirrored replay.
struct DirectSource {
    EngineRng* rng;
    std::uint64_t next() { return rng->next_payload(); }
};

struct RecordingSource {
    EngineRng* rng;
    std::vector<std::uint64_t>* buffer;
    std::uint64_t next() {
        std::uint64_t p = rng->next_payload();
        buffer->push_back(p);
        return p;
    }
};

struct MirrorSource {
    const std::vector<std::uint64_t>* buffer;
    std::size_t pos = 0;
    std::uint64_t next() { return kPayloadMask - (*buffer)[pos++]; }
};

// Per-scenario tables for inverse-CDF lifetime sampling from the rated
// retirement age. node_l/node_s hold survivorship and time-from-retirement
// at the segment boundaries; guide accelerates the bracket search.
struct ScenarioPrecomp {
    double rating = 0.0;
    double cum_hi = 1.0;  // upper cumulative weight boundary
    double l_a0 = 1.0;    // survivorship at the rated current age
    double l_ret = 0.0;   // survivorship at the rated retirement age
    double p_ret = 0.0;   // survival probability to retirement
    std::vector<double> node_l;
    std::vector<double> node_s;
    std::vector<std::uint32_t> guide;
    double guide_scale = 0.0;  // guide size / l_ret
};

constexpr std::size_t kGuideSize = 512;

class LiabilityKernel {
  public:
    LiabilityKernel(const SchemeSpec& spec, const MortalityBasis& basis,
                    const LifeTable& table, const DiscountBasis& discount)
        : delta_(discount.delta),
          inv_delta_(discount.delta > 0.0 ? 1.0 / discount.delta : 0.0),
          n_members_(spec.n_members) {
        benefits_ = spec.benefits.expand(spec.n_members);
        n_exec_ = static_cast<std::size_t>(spec.benefits.n_exec(spec.n_members));
        deferral_ = spec.retirement_age - spec.age;
        discount_to_ret_ = std::exp(-delta_ * deferral_);

        double cum = 0.0;
        scenarios_.reserve(basis.scenarios.size());
        for (const auto& s : basis.scenarios) {
            cum += s.weight;
            scenarios_.push_back(
                build_scenario(spec, table, s.rating.years, std::min(cum, 1.0)));
        }
        scenarios_.back().cum_hi = 1.0;
    }

    std::size_t n_members() const { return static_cast<std::size_t>(n_members_); }

    template <typename Source>
    void simulate_path(Source& src, double& liability, double& x_exec, double& x_norm,
                       std::size_t& scenario_index) const {
        double u_scenario = to_unit(src.next());
        std::size_t s = 0;
        while (s + 1 < scenarios_.size() && u_scenario >= scenarios_[s].cum_hi) ++s;
        scenario_index = s;
        const ScenarioPrecomp& sc = scenarios_[s];

        double xe = 0.0;
        double xn = 0.0;
        for (std::size_t m = 0; m < benefits_.size(); ++m) {
            double survival_target = 1.0 - to_unit(src.next());
            double y = 0.0;
            if (survival_target <= sc.p_ret) {
                double years_in_retirement = invert_retirement(sc, survival_target);
                double annuity = (delta_ > 0.0)
                                     ? -std::expm1(-delta_ * years_in_retirement) * inv_delta_
                                     : years_in_retirement;
                y = discount_to_ret_ * annuity;
            }
            if (m < n_exec_) {
                xe += benefits_[m] * y;
            } else {
                xn += benefits_[m] * y;
            }
        }
        x_exec = xe;
        x_norm = xn;
        liability = xe + xn;
    }

    double scenario_rating(std::size_t index) const { return scenarios_[index].rating; }

  private:
    static ScenarioPrecomp build_scenario(const SchemeSpec& spec, const LifeTable& table,
                                          double rating, double cum_hi) {
        double rated_age = spec.age + rating;
        double rated_ret = spec.retirement_age + rating;
        if (!(rated_age >= static_cast<double>(table.first_age))) {
            throw std::invalid_argument("rated age below the table's first age");
        }
        if (rated_age >= static_cast<double>(table.omega)) {
            throw std::invalid_argument("rated age at or beyond the limiting age");
        }
        if (rated_ret > static_cast<double>(table.omega)) {
            throw std::invalid_argument("rated retirement age beyond the limiting age");
        }

        ScenarioPrecomp sc;
        sc.rating = rating;
        sc.cum_hi = cum_hi;
        sc.l_a0 = table.survivorship(rated_age);
        sc.l_ret = table.survivorship(rated_ret);
        sc.p_ret = sc.l_ret / sc.l_a0;
        if (!(sc.l_ret > 0.0)) {
            sc.p_ret = 0.0;  // nobody reaches retirement in this scenario
            return sc;
        }

        double ret_offset = rated_ret - static_cast<double>(table.first_age);
        int first_node = static_cast<int>(std::floor(ret_offset)) + 1;
        sc.node_l.push_back(sc.l_ret);
        sc.node_s.push_back(0.0);
        for (int i = first_node; i <= table.omega - table.first_age; ++i) {
            double s = static_cast<double>(i) - ret_offset;
            if (s <= 0.0) continue;
            sc.node_l.push_back(table.l[static_cast<std::size_t>(i)]);
            sc.node_s.push_back(s);
        }

        // guide[b] lower-bounds the first node whose survivorship falls
        // below any target in bucket b
        sc.guide.assign(kGuideSize, 1);
        sc.guide_scale = static_cast<double>(kGuideSize) / sc.l_ret;
        for (std::size_t b = 0; b < kGuideSize; ++b) {
            double top = sc.l_ret * (static_cast<double>(b) + 1.0) /
                         static_cast<double>(kGuideSize);
            std::uint32_t i = 1;
            while (i < sc.node_l.size() && sc.node_l[i] >= top) ++i;
            sc.guide[b] = std::min<std::uint32_t>(
                i, static_cast<std::uint32_t>(sc.node_l.size() - 1));
        }
        return sc;
    }

    // Solve l(R + s) = target on the piecewise-linear survivorship,
    // target in (0, l_ret].
    double invert_retirement(const ScenarioPrecomp& sc, double survival_target) const {
        double target = survival_target * sc.l_a0;
        if (target > sc.l_ret) target = sc.l_ret;
        auto bucket = static_cast<std::size_t>(target * sc.guide_scale);
        if (bucket >= kGuideSize) bucket = kGuideSize - 1;
        std::size_t i = sc.guide[bucket];
        while (i > 1 && sc.node_l[i - 1] < target) --i;
        while (sc.node_l[i] >= target) ++i;
        double l_lo = sc.node_l[i - 1];
        double l_hi = sc.node_l[i];
        double frac = (l_lo - target) / (l_lo - l_hi);
        return sc.node_s[i - 1] + frac * (sc.node_s[i] - sc.node_s[i - 1]);
    }

    double delta_;
    double inv_delta_;
    std::int64_t n_members_;
    std::size_t n_exec_ = 0;
    double deferral_ = 0.0;
    double discount_to_ret_ = 1.0;
    std::vector<double> benefits_;
    std::vector<ScenarioPrecomp> scenarios_;
};

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Order-2..4 central sums of L plus the cross pieces needed for the
// section allocations and the antithetic pair means.
struct ChunkStats {
    std::uint64_t n = 0;
    double mean_l = 0.0;
    double m2_l = 0.0;
    double m3_l = 0.0;
    double m4_l = 0.0;
    double mean_e = 0.0;
    double mean_n = 0.0;
    double c2_el = 0.0;
    double c2_nl = 0.0;
    std::uint64_t n_pairs = 0;
    double mean_p = 0.0;
    double m2_p = 0.0;
};

struct ChunkPlan {
    std::uint64_t n_paths = 0;
    std::uint32_t chunk_size = 0;
    std::uint64_t n_chunks = 0;
    std::uint64_t chunk_start(std::uint64_t c) const { return c * chunk_size; }
    std::uint64_t chunk_count(std::uint64_t c) const {
        std::uint64_t start = chunk_start(c);
        return std::min<std::uint64_t>(chunk_size, n_paths - start);
    }
};

ChunkPlan make_plan(const SimulationConfig& config) {
    if (config.n_paths < 1) throw std::invalid_argument("n_paths must be at least 1");
    if (config.chunk_size < 1) throw std::invalid_argument("chunk_size must be at least 1");
    if (config.antithetic) {
        if (config.n_paths % 2 != 0) {
            throw std::invalid_argument("antithetic mode needs an even n_paths");
        }
        if (config.chunk_size % 2 != 0) {
            throw std::invalid_argument("antithetic mode needs an even chunk_size");
        }
    }
    ChunkPlan plan;
    plan.n_paths = config.n_paths;
    plan.chunk_size = config.chunk_size;
    plan.n_chunks = (config.n_paths + config.chunk_size - 1) / config.chunk_size;
    return plan;
}

// Runs every path of one chunk through fn(local_index, L, xe, xn, scenario).
template <typename Fn>
void for_each_path_in_chunk(const LiabilityKernel& kernel, const SimulationConfig& config,
                            std::uint64_t chunk_index, std::uint64_t count, Fn&& fn) {
    EngineRng rng(chunk_seed(config.seed, chunk_index));
    double liability = 0.0;
    double x_exec = 0.0;
    double x_norm = 0.0;
    std::size_t scenario = 0;
    if (!config.antithetic) {
        DirectSource src{&rng};
        for (std::uint64_t i = 0; i < count; ++i) {
            kernel.simulate_path(src, liability, x_exec, x_norm, scenario);
            fn(i, liability, x_exec, x_norm, scenario);
        }
    } else {
        std::vector<std::uint64_t> buffer;
        buffer.reserve(kernel.n_members() + 1);
        for (std::uint64_t i = 0; i < count; i += 2) {
            buffer.clear();
            RecordingSource rec{&rng, &buffer};
            kernel.simulate_path(rec, liability, x_exec, x_norm, scenario);
            fn(i, liability, x_exec, x_norm, scenario);
            MirrorSource mir{&buffer, 0};
            kernel.simulate_path(mir, liability, x_exec, x_norm, scenario);
            fn(i + 1, liability, x_exec, x_norm, scenario);
        }
    }
}

ChunkStats compute_chunk(const LiabilityKernel& kernel, const SimulationConfig& config,
                         std::uint64_t chunk_index, std::uint64_t count) {
    std::vector<double> l_values(count);
    std::vector<double> e_values(count);
    std::vector<double> n_values(count);
    for_each_path_in_chunk(kernel, config, chunk_index, count,
                           [&](std::uint64_t i, double l, double xe, double xn,
                               std::size_t) {
                               l_values[i] = l;
                               e_values[i] = xe;
                               n_values[i] = xn;
                           });

    ChunkStats stats;
    stats.n = count;
    double inv_n = 1.0 / static_cast<double>(count);
    KahanSum sum_l, sum_e, sum_n;
    for (std::uint64_t i = 0; i < count; ++i) {
        sum_l.add(l_values[i]);
        sum_e.add(e_values[i]);
        sum_n.add(n_values[i]);
    }
    stats.mean_l = sum_l.sum * inv_n;
    stats.mean_e = sum_e.sum * inv_n;
    stats.mean_n = sum_n.sum * inv_n;

    KahanSum m2, m3, m4, c2e, c2n;
    for (std::uint64_t i = 0; i < count; ++i) {
        double dl = l_values[i] - stats.mean_l;
        double dl2 = dl * dl;
        m2.add(dl2);
        m3.add(dl2 * dl);
        m4.add(dl2 * dl2);
        c2e.add((e_values[i] - stats.mean_e) * dl);
        c2n.add((n_values[i] - stats.mean_n) * dl);
    }
    stats.m2_l = m2.sum;
    stats.m3_l = m3.sum;
    stats.m4_l = m4.sum;
    stats.c2_el = c2e.sum;
    stats.c2_nl = c2n.sum;

    if (config.antithetic) {
        stats.n_pairs = count / 2;
        KahanSum sum_p;
        for (std::uint64_t i = 0; i < count; i += 2) {
            sum_p.add(0.5 * (l_values[i] + l_values[i + 1]));
        }
        stats.mean_p = sum_p.sum / static_cast<double>(stats.n_pairs);
        KahanSum m2p;
        for (std::uint64_t i = 0; i < count; i += 2) {
            double d = 0.5 * (l_values[i] + l_values[i + 1]) - stats.mean_p;
            m2p.add(d * d);
        }
        stats.m2_p = m2p.sum;
    }
    return stats;
}

// Two-group merge of central moments (and covariances); applied in chunk
// order it defines the canonical reduction shared by the serial and
// parallel engines.
void merge(ChunkStats& acc, const ChunkStats& b) {
    if (acc.n == 0) {
        acc = b;
        return;
    }
    if (b.n == 0) return;
    double na = static_cast<double>(acc.n);
    double nb = static_cast<double>(b.n);
    double n = na + nb;

    double dl = b.mean_l - acc.mean_l;
    double de = b.mean_e - acc.mean_e;
    double dn = b.mean_n - acc.mean_n;

    double mean_l = acc.mean_l + dl * nb / n;
    double m2 = acc.m2_l + b.m2_l + dl * dl * na * nb / n;
    double m3 = acc.m3_l + b.m3_l + dl * dl * dl * na * nb * (na - nb) / (n * n) +
                3.0 * dl * (na * b.m2_l - nb * acc.m2_l) / n;
    double m4 = acc.m4_l + b.m4_l +
                dl * dl * dl * dl * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                6.0 * dl * dl * (na * na * b.m2_l + nb * nb * acc.m2_l) / (n * n) +
                4.0 * dl * (na * b.m3_l - nb * acc.m3_l) / n;

    acc.c2_el = acc.c2_el + b.c2_el + de * dl * na * nb / n;
    acc.c2_nl = acc.c2_nl + b.c2_nl + dn * dl * na * nb / n;
    acc.mean_e = acc.mean_e + de * nb / n;
    acc.mean_n = acc.mean_n + dn * nb / n;

    acc.mean_l = mean_l;
    acc.m2_l = m2;
    acc.m3_l = m3;
    acc.m4_l = m4;

    if (acc.n_pairs + b.n_pairs > 0 && b.n_pairs > 0) {
        double pa = static_cast<double>(acc.n_pairs);
        double pb = static_cast<double>(b.n_pairs);
        double p = pa + pb;
        double dp = b.mean_p - acc.mean_p;
        acc.m2_p = acc.m2_p + b.m2_p + dp * dp * pa * pb / p;
        acc.mean_p = acc.mean_p + dp * pb / p;
    }
    acc.n_pairs += b.n_pairs;
    acc.n += b.n;
}

// Inverse of merge: stats of "everything except chunk b", used by the
// leave-one-chunk-out jackknife (second order only).
struct ReducedStats {
    double n = 0.0;
    double mean_l = 0.0;
    double m2_l = 0.0;
    double c2_el = 0.0;
    double c2_nl = 0.0;
};

ReducedStats unmerge(const ChunkStats& total, const ChunkStats& b) {
    ReducedStats rest;
    double n = static_cast<double>(total.n);
    double nb = static_cast<double>(b.n);
    rest.n = n - nb;
    rest.mean_l = (n * total.mean_l - nb * b.mean_l) / rest.n;
    double dl = b.mean_l - rest.mean_l;
    rest.m2_l = total.m2_l - b.m2_l - dl * dl * nb * rest.n / n;
    double mean_e_rest = (n * total.mean_e - nb * b.mean_e) / rest.n;
    double mean_n_rest = (n * total.mean_n - nb * b.mean_n) / rest.n;
    double de = b.mean_e - mean_e_rest;
    double dn = b.mean_n - mean_n_rest;
    rest.c2_el = total.c2_el - b.c2_el - de * dl * nb * rest.n / n;
    rest.c2_nl = total.c2_nl - b.c2_nl - dn * dl * nb * rest.n / n;
    return rest;
}

std::vector<ChunkStats> run_chunks(const LiabilityKernel& kernel,
                                   const SimulationConfig& config, const ChunkPlan& plan,
                                   ExecutionMode mode) {
    std::vector<ChunkStats> stats(plan.n_chunks);
    auto n_chunks = static_cast<std::int64_t>(plan.n_chunks);
#ifdef _OPENMP
    if (mode == ExecutionMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < n_chunks; ++c) {
            stats[static_cast<std::size_t>(c)] =
                compute_chunk(kernel, config, static_cast<std::uint64_t>(c),
                              plan.chunk_count(static_cast<std::uint64_t>(c)));
        }
        return stats;
    }
#else
    (void)mode;
#endif
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        stats[static_cast<std::size_t>(c)] =
            compute_chunk(kernel, config, static_cast<std::uint64_t>(c),
                          plan.chunk_count(static_cast<std::uint64_t>(c)));
    }
    return stats;
}

EmpiricalMoments finalize_moments(const ChunkStats& total, const SimulationConfig& config) {
    EmpiricalMoments out;
    out.n_paths = total.n;
    out.chunk_size = config.chunk_size;
    out.mean = total.mean_l;
    auto n = static_cast<double>(total.n);
    if (total.n >= 2) {
        out.variance = total.m2_l / (n - 1.0);
        out.sd = std::sqrt(out.variance);
        if (out.mean > 0.0) {
            out.vco_defined = true;
            out.vco = out.sd / out.mean;
        }

        out.se_defined = true;
        if (config.antithetic && total.n_pairs >= 2) {
            double np = static_cast<double>(total.n_pairs);
            out.se_mean = std::sqrt(total.m2_p / (np - 1.0) / np);
        } else {
            out.se_mean = std::sqrt(out.variance / n);
        }
        double m2 = total.m2_l / n;
        double m3 = total.m3_l / n;
        double m4 = total.m4_l / n;
        out.se_variance = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
        out.se_sd = (out.sd > 0.0) ? out.se_variance / (2.0 * out.sd) : 0.0;
        if (out.vco_defined && out.sd > 0.0) {
            double mu = out.mean;
            double var_vco = (m2 * m2 / (mu * mu * mu * mu) +
                              (m4 - m2 * m2) / (4.0 * m2 * mu * mu) -
                              m3 / (mu * mu * mu)) /
                             n;
            out.se_vco = std::sqrt(std::max(0.0, var_vco));
        }
    } else if (out.mean > 0.0) {
        out.vco_defined = true;
        out.vco = 0.0;
    }
    return out;
}

EmpiricalAllocation finalize_allocation(const ChunkStats& total,
                                        const std::vector<ChunkStats>& chunks) {
    EmpiricalAllocation out;
    out.n_paths = total.n;
    if (total.n < 2) return out;
    auto n = static_cast<double>(total.n);
    double denom = std::sqrt(total.m2_l * (n - 1.0));
    if (!(denom > 0.0)) return out;
    out.sd = std::sqrt(total.m2_l / (n - 1.0));
    out.pi_exec_section = total.c2_el / denom;
    out.pi_norm_section = total.c2_nl / denom;
    out.lambda_exec = total.c2_el / total.m2_l;

    if (chunks.size() < 2) return out;
    std::vector<double> theta_e;
    std::vector<double> theta_n;
    theta_e.reserve(chunks.size());
    theta_n.reserve(chunks.size());
    for (const ChunkStats& c : chunks) {
        ReducedStats rest = unmerge(total, c);
        if (rest.n < 2.0 || !(rest.m2_l > 0.0)) return out;
        double rd = std::sqrt(rest.m2_l * (rest.n - 1.0));
        theta_e.push_back(rest.c2_el / rd);
        theta_n.push_back(rest.c2_nl / rd);
    }
    auto jackknife_se = [](const std::vector<double>& theta) {
        double b = static_cast<double>(theta.size());
        double mean = 0.0;
        for (double t : theta) mean += t;
        mean /= b;
        double ss = 0.0;
        for (double t : theta) ss += (t - mean) * (t - mean);
        return std::sqrt((b - 1.0) / b * ss);
    };
    out.se_pi_exec = jackknife_se(theta_e);
    out.se_pi_norm = jackknife_se(theta_n);
    out.se_defined = true;
    return out;
}

}  // namespace

double sample_lifetime(const LifeTable& table, AgeRating rating, double age, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("lifetime draw u must lie strictly inside (0,1)");
    }
    double rated_age = age + rating.years;
    if (!(rated_age >= static_cast<double>(table.first_age))) {
        throw std::invalid_argument("rated age below the table's first age");
    }
    if (rated_age >= static_cast<double>(table.omega)) {
        throw std::invalid_argument("rated age at or beyond the limiting age");
    }
    double l_now = table.survivorship(rated_age);
    double target = (1.0 - u) * l_now;

    // first integer-age node strictly after the rated age
    double offset = rated_age - static_cast<double>(table.first_age);
    auto first_node = static_cast<std::size_t>(std::floor(offset)) + 1;
    std::size_t last_node = table.l.size() - 1;

    // first node with survivorship strictly below the target
    std::size_t lo = first_node;
    std::size_t hi = last_node;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (table.l[mid] < target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }

    double prev_age;
    double prev_l;
    if (lo == first_node) {
        prev_age = rated_age;
        prev_l = l_now;
    } else {
        prev_age = static_cast<double>(table.first_age) + static_cast<double>(lo - 1);
        prev_l = table.l[lo - 1];
    }
    double node_age = static_cast<double>(table.first_age) + static_cast<double>(lo);
    double frac = (prev_l - target) / (prev_l - table.l[lo]);
    return prev_age + frac * (node_age - prev_age) - rated_age;
}

SimulationResult run_liability_simulation(const SchemeSpec& spec,
                                          const MortalityBasis& basis,
                                          const LifeTable& table,
                                          const DiscountBasis& discount,
                                          const SimulationConfig& config,
                                          ExecutionMode mode) {
    ChunkPlan plan = make_plan(config);
    LiabilityKernel kernel(spec, basis, table, discount);
    std::vector<ChunkStats> chunks = run_chunks(kernel, config, plan, mode);

    ChunkStats total;
    for (const ChunkStats& c : chunks) merge(total, c);

    SimulationResult result;
    result.moments = finalize_moments(total, config);
    result.allocation = finalize_allocation(total, chunks);
    return result;
}

EmpiricalMoments simulate_liability(const SchemeSpec& spec, const MortalityBasis& basis,
                                    const LifeTable& table, const DiscountBasis& discount,
                                    const SimulationConfig& config, ExecutionMode mode) {
    return run_liability_simulation(spec, basis, table, discount, config, mode).moments;
}

EmpiricalAllocation empirical_euler(const SchemeSpec& spec, const MortalityBasis& basis,
                                    const LifeTable& table, const DiscountBasis& discount,
                                    const SimulationConfig& config, ExecutionMode mode) {
    return run_liability_simulation(spec, basis, table, discount, config, mode).allocation;
}

void dump_paths(const SchemeSpec& spec, const MortalityBasis& basis,
                const LifeTable& table, const DiscountBasis& discount,
                const SimulationConfig& config, std::ostream& out) {
    ChunkPlan plan = make_plan(config);
    LiabilityKernel kernel(spec, basis, table, discount);
    out << "path,scenario_rating,L\n";
    char line[96];
    for (std::uint64_t c = 0; c < plan.n_chunks; ++c) {
        std::uint64_t start = plan.chunk_start(c);
        for_each_path_in_chunk(
            kernel, config, c, plan.chunk_count(c),
            [&](std::uint64_t i, double l, double, double, std::size_t scenario) {
                std::snprintf(line, sizeof(line), "%llu,%.12g,%.12g\n",
                              static_cast<unsigned long long>(start + i),
                              kernel.scenario_rating(scenario), l);
                out << line;
            });
    }
}

}  // namespace penrisk
