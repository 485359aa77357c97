// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "penrisk/allocation.hpp"
#include "penrisk/montecarlo.hpp"

using namespace penrisk;

namespace {

const DiscountBasis kDiscount = make_discount_basis(0.04);

LifeTable g_table;  // loaded once in main

SchemeSpec homogeneous_spec(std::int64_t n) {
    return make_scheme_spec(n, 40.0, 65.0, BenefitStructure::homogeneous());
}

SchemeSpec tier_spec(std::int64_t n, double alpha, double k) {
    return make_scheme_spec(n, 40.0, 65.0, BenefitStructure::executive_tier(alpha, k));
}

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool within_pp(double value, double target_pct, double tolerance_pp) {
    return std::abs(value * 100.0 - target_pct) <= tolerance_pp;
}

std::string pct(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3f%%", v * 100.0);
    return buffer;
}

// --- criterion 1: deterministic homogeneous vco ---------------------------

void criterion_1() {
    MortalityBasis det = MortalityBasis::deterministic();
    double v100 = liability_moments(homogeneous_spec(100), det, g_table, kDiscount).vco;
    double v500 = liability_moments(homogeneous_spec(500), det, g_table, kDiscount).vco;
    bool ok = within_pp(v100, 3.9, 0.3) && within_pp(v500, 1.8, 0.3);
    report("criterion 1 (deterministic vco)", ok,
           "Vco(L_100)=" + pct(v100) + " target 3.9%+-0.3pp, Vco(L_500)=" + pct(v500) +
               " target 1.8%+-0.3pp");
}

// --- criterion 2: two-point basis r = 1 ------------------------------------

void criterion_2() {
    MortalityBasis basis = MortalityBasis::two_point(1.0);
    LiabilityMoments at100 = liability_moments(homogeneous_spec(100), basis, g_table, kDiscount);
    LiabilityMoments at500 = liability_moments(homogeneous_spec(500), basis, g_table, kDiscount);
    double share = at100.systematic_vco / at100.vco;
    bool ok = within_pp(at100.vco, 5.5, 0.3) && within_pp(at500.vco, 4.3, 0.3) &&
              within_pp(at100.systematic_vco, 3.9, 0.3) &&
              std::abs(share * 100.0 - 71.0) <= 3.0;
    report("criterion 2 (two-point r=1 vco)", ok,
           "Vco(L_100)=" + pct(at100.vco) + ", Vco(L_500)=" + pct(at500.vco) +
               ", floor=" + pct(at100.systematic_vco) + ", systematic share=" + pct(share));
}

// --- criterion 3: executive-tier vco ---------------------------------------

void criterion_3() {
    MortalityBasis det = MortalityBasis::deterministic();
    MortalityBasis two = MortalityBasis::two_point(1.0);
    double det5 = liability_moments(tier_spec(100, 0.05, 5.0), det, g_table, kDiscount).vco;
    double det20 = liability_moments(tier_spec(100, 0.05, 20.0), det, g_table, kDiscount).vco;
    double two5 = liability_moments(tier_spec(100, 0.05, 5.0), two, g_table, kDiscount).vco;
    double two20 = liability_moments(tier_spec(100, 0.05, 20.0), two, g_table, kDiscount).vco;
    bool ok = within_pp(det5, 4.9, 0.3) && within_pp(det20, 9.2, 0.3) &&
              within_pp(two5, 6.2, 0.3) && within_pp(two20, 10.0, 0.3);
    report("criterion 3 (executive-tier vco)", ok,
           "det k=5 " + pct(det5) + " / k=20 " + pct(det20) + "; r=1 k=5 " + pct(two5) +
               " / k=20 " + pct(two20));
}

// --- criterion 4: Euler allocation identities -------------------------------

void criterion_4() {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst_sum = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::int64_t n = 1 + static_cast<std::int64_t>(unit(rng) * 150);
        std::vector<double> benefits(static_cast<std::size_t>(n));
        for (double& b : benefits) b = 0.05 + 25.0 * unit(rng);
        SchemeSpec spec = make_scheme_spec(
            n, 40.0, 65.0, BenefitStructure::explicit_vector(std::move(benefits)));
        MortalityBasis basis = (trial % 2 == 0)
                                   ? MortalityBasis::deterministic()
                                   : MortalityBasis::two_point(0.25 + 3.0 * unit(rng));
        AllocationReport r = euler_allocation(spec, basis, g_table, kDiscount);
        double total = std::accumulate(r.member_pi.begin(), r.member_pi.end(), 0.0);
        worst_sum = std::max(worst_sum, std::abs(total - r.total_sd) / r.total_sd);
    }
    bool full_ok = worst_sum <= 1e-9;

    double worst_relation = 0.0;
    for (const auto& basis :
         {MortalityBasis::deterministic(), MortalityBasis::two_point(1.0),
          MortalityBasis::two_point(2.5)}) {
        for (double k : {1.0, 2.0, 5.0, 12.0, 20.0}) {
            for (std::int64_t n : {40, 100, 500}) {
                SchemeSpec spec = tier_spec(n, 0.05, k);
                AllocationReport r = euler_allocation(spec, basis, g_table, kDiscount);
                LiabilityMoments m = liability_moments(spec, basis, g_table, kDiscount);
                double expected =
                    k * r.pi_norm + k * (k - 1.0) * (m.var_mix - m.cov_pair) / r.total_sd;
                worst_relation =
                    std::max(worst_relation, std::abs(r.pi_exec - expected) / r.pi_exec);
            }
        }
    }
    bool relation_ok = worst_relation <= 1e-12;

    double worst_lambda = 0.0;
    for (double alpha : {0.05, 0.1}) {
        for (double k : {2.0, 5.0, 20.0}) {
            double closed = alpha * k * k / (alpha * k * k + 1.0 - alpha);
            for (std::int64_t n : {20, 100, 500, 1000}) {  // alpha*n integral
                AllocationReport r = euler_allocation(
                    tier_spec(n, alpha, k), MortalityBasis::deterministic(), g_table,
                    kDiscount);
                worst_lambda =
                    std::max(worst_lambda, std::abs(r.lambda_exec - closed) / closed);
            }
        }
    }
    bool lambda_ok = worst_lambda <= 1e-12;

    std::ostringstream detail;
    detail << "full-allocation worst rel err " << worst_sum << " (1000 random vectors); "
           << "pi_exec relation worst rel err " << worst_relation << "; "
           << "deterministic lambda vs closed form worst rel err " << worst_lambda;
    report("criterion 4 (Euler identities)", full_ok && relation_ok && lambda_ok,
           detail.str());
}

// --- criterion 5: oracle equivalence ----------------------------------------

// brute-force within-year Simpson integration, independent of the closed forms
double quadrature_moment(const LifeTable& table, double rating, double delta, double age,
                         double retirement_age, int order) {
    double rated_ret = retirement_age + rating;
    double l_now = table.survivorship(age + rating);
    if (rated_ret >= static_cast<double>(table.omega)) return 0.0;
    auto payoff = [&](double s) {
        double a = (delta == 0.0) ? s : -std::expm1(-delta * s) / delta;
        return (order == 1) ? a : a * a;
    };
    double ret_offset = rated_ret - static_cast<double>(table.first_age);
    int first_year = static_cast<int>(std::floor(ret_offset));
    double total = 0.0;
    for (int year = first_year; year < table.omega - table.first_age; ++year) {
        double mass = table.l[static_cast<std::size_t>(year)] -
                      table.l[static_cast<std::size_t>(year) + 1];
        if (mass <= 0.0) continue;
        double z0 = std::max(ret_offset, static_cast<double>(year));
        double z1 = static_cast<double>(year + 1);
        const int intervals = 512;
        double h = (z1 - z0) / intervals;
        double acc = payoff(z0 - ret_offset) + payoff(z1 - ret_offset);
        for (int i = 1; i < intervals; ++i) {
            acc += payoff(z0 + h * i - ret_offset) * ((i % 2 == 1) ? 4.0 : 2.0);
        }
        total += mass * acc * h / 3.0;
    }
    return std::exp(-order * delta * (retirement_age - age)) * total / l_now;
}

void criterion_5() {
    // part a: closed forms versus quadrature on random small tables
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int tested = 0;
    while (tested < 50) {
        std::uniform_int_distribution<int> ages_dist(2, 10);
        int n_ages = ages_dist(rng);
        std::vector<double> q(static_cast<std::size_t>(n_ages));
        for (int i = 0; i + 1 < n_ages; ++i) q[static_cast<std::size_t>(i)] = 0.02 + 0.6 * unit(rng);
        q.back() = 1.0;
        int first_age = static_cast<int>(unit(rng) * 60.0);
        LifeTable table = make_life_table("synthetic", first_age, std::move(q));

        double span = static_cast<double>(table.omega - table.first_age);
        double x = table.first_age + unit(rng) * span * 0.4;
        double ret = x + unit(rng) * span * 0.4;
        double r = unit(rng) - 0.5;
        if (x + r < table.first_age || ret + r >= table.omega - 0.25) continue;
        double delta = unit(rng) * 0.12;
        DiscountBasis discount = make_discount_basis(delta);
        for (int order : {1, 2}) {
            double closed = scenario_moment(table, AgeRating{r}, discount, x, ret, order);
            double brute = quadrature_moment(table, r, delta, x, ret, order);
            double scale = std::max(std::abs(brute), 1e-30);
            worst = std::max(worst, std::abs(closed - brute) / scale);
        }
        ++tested;
    }
    bool part_a = worst <= 1e-9;

    // part b: 100 seeded 10^6-path runs of the base case; every statistic
    // must land within 3 standard errors in at least 99 runs
    SchemeSpec spec = tier_spec(100, 0.05, 5.0);
    MortalityBasis basis = MortalityBasis::two_point(1.0);
    LiabilityMoments analytic = liability_moments(spec, basis, g_table, kDiscount);
    AllocationReport alloc = euler_allocation(spec, basis, g_table, kDiscount);
    double exec_total = static_cast<double>(alloc.n_exec) * alloc.pi_exec;
    double norm_total =
        static_cast<double>(alloc.n_members - alloc.n_exec) * alloc.pi_norm;

    int pass_mean = 0;
    int pass_sd = 0;
    int pass_vco = 0;
    int pass_exec = 0;
    int pass_norm = 0;
    const int runs = 100;
    for (int seed = 1; seed <= runs; ++seed) {
        SimulationConfig config{1000000, static_cast<std::uint64_t>(seed), false, 1024};
        SimulationResult result =
            run_liability_simulation(spec, basis, g_table, kDiscount, config);
        const EmpiricalMoments& m = result.moments;
        const EmpiricalAllocation& e = result.allocation;
        if (std::abs(m.mean - analytic.expected) <= 3.0 * m.se_mean) ++pass_mean;
        if (std::abs(m.sd - analytic.sd) <= 3.0 * m.se_sd) ++pass_sd;
        if (std::abs(m.vco - analytic.vco) <= 3.0 * m.se_vco) ++pass_vco;
        if (std::abs(e.pi_exec_section - exec_total) <= 3.0 * e.se_pi_exec) ++pass_exec;
        if (std::abs(e.pi_norm_section - norm_total) <= 3.0 * e.se_pi_norm) ++pass_norm;
    }
    bool part_b = pass_mean >= 99 && pass_sd >= 99 && pass_vco >= 99 && pass_exec >= 99 &&
                  pass_norm >= 99;

    std::ostringstream detail;
    detail << "closed form vs quadrature worst rel err " << worst
           << " (50 tables); 3-SE pass counts over 100 seeded 1e6-path runs:"
           << " mean " << pass_mean << ", sd " << pass_sd << ", vco " << pass_vco
           << ", exec section " << pass_exec << ", norm section " << pass_norm;
    report("criterion 5 (oracle equivalence)", part_a && part_b, detail.str());
}

// --- criterion 6: property suites -------------------------------------------

void criterion_6() {
    std::ostringstream detail;
    bool ok = true;

    // vco monotone decreasing in N for homogeneous benefits
    for (const auto& basis :
         {MortalityBasis::deterministic(), MortalityBasis::two_point(1.0)}) {
        std::vector<std::int64_t> grid;
        for (std::int64_t n = 1; n <= 3000; n += 3) grid.push_back(n);
        auto curve = vco_curve(homogeneous_spec(1), basis, g_table, kDiscount, grid);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            if (!(curve[i].vco < curve[i - 1].vco)) ok = false;
        }
    }
    detail << "monotone vco ";

    // systematic floor and convergence at N = 1e6
    {
        MortalityBasis basis = MortalityBasis::two_point(1.0);
        for (std::int64_t n : {1LL, 10LL, 1000LL, 1000000LL}) {
            LiabilityMoments m =
                liability_moments(homogeneous_spec(n), basis, g_table, kDiscount);
            if (!(m.vco >= m.systematic_vco)) ok = false;
            if (n == 1000000 && !(m.vco - m.systematic_vco < 1e-3)) ok = false;
        }
        detail << "| floor+convergence ";
    }

    // f >= 1 with equality cases
    {
        for (int i = 0; i <= 20; ++i) {
            double alpha = static_cast<double>(i) / 20.0;
            for (double k = 1.0; k <= 25.0; k += 0.5) {
                if (f_factor(alpha, k) < 1.0 - 1e-14) ok = false;
            }
        }
        if (f_factor(0.37, 1.0) != 1.0) ok = false;
        if (f_factor(0.0, 9.0) != 1.0) ok = false;
        if (f_factor(1.0, 9.0) != 1.0) ok = false;
        detail << "| f>=1 ";
    }

    // lambda >= rho for k >= 1
    {
        for (const auto& basis :
             {MortalityBasis::deterministic(), MortalityBasis::two_point(1.0)}) {
            for (double k = 1.0; k <= 20.0; k += 1.0) {
                AllocationReport r =
                    euler_allocation(tier_spec(100, 0.05, k), basis, g_table, kDiscount);
                if (r.lambda_exec < r.rho_exec - 1e-12) ok = false;
            }
        }
        detail << "| lambda>=rho ";
    }

    // allocation scale invariance
    {
        SchemeSpec spec = tier_spec(100, 0.05, 5.0);
        MortalityBasis basis = MortalityBasis::two_point(1.0);
        AllocationReport base = euler_allocation(spec, basis, g_table, kDiscount);
        for (double c : {0.5, 2.0, 7.25}) {
            SchemeSpec scaled = spec;
            scaled.benefits = spec.benefits.scaled(c);
            AllocationReport r = euler_allocation(scaled, basis, g_table, kDiscount);
            if (std::abs(r.pi_exec - c * base.pi_exec) > 1e-12 * r.pi_exec) ok = false;
            if (std::abs(r.lambda_exec - base.lambda_exec) > 1e-12) ok = false;
            if (std::abs(r.rho_exec - base.rho_exec) > 1e-12) ok = false;
        }
        detail << "| scale invariance ";
    }

    // bitwise determinism of the seeded simulation across engines and reruns
    {
        SchemeSpec spec = tier_spec(50, 0.1, 5.0);
        MortalityBasis basis = MortalityBasis::two_point(1.0);
        SimulationConfig config{40000, 917, false, 1024};
        SimulationResult serial = run_liability_simulation(spec, basis, g_table, kDiscount,
                                                           config, ExecutionMode::serial);
        SimulationResult parallel = run_liability_simulation(
            spec, basis, g_table, kDiscount, config, ExecutionMode::parallel);
        SimulationResult rerun = run_liability_simulation(
            spec, basis, g_table, kDiscount, config, ExecutionMode::parallel);
        auto same = [](const SimulationResult& a, const SimulationResult& b) {
            return a.moments.mean == b.moments.mean &&
                   a.moments.variance == b.moments.variance &&
                   a.moments.vco == b.moments.vco && a.moments.se_vco == b.moments.se_vco &&
                   a.allocation.pi_exec_section == b.allocation.pi_exec_section &&
                   a.allocation.se_pi_exec == b.allocation.se_pi_exec;
        };
        if (!same(serial, parallel) || !same(parallel, rerun)) ok = false;
        detail << "| bitwise determinism";
    }

    report("criterion 6 (property suites)", ok, detail.str() + " all checked");
}

// --- performance preamble ----------------------------------------------------

void performance() {
    using clock = std::chrono::steady_clock;

    auto start = clock::now();
    {
        std::vector<std::int64_t> grid;
        for (std::int64_t n = 1; n <= 1000; ++n) grid.push_back(n);
        for (std::int64_t n = 1100; n <= 10000; n += 100) grid.push_back(n);
        vco_curve(homogeneous_spec(1), MortalityBasis::two_point(1.0), g_table, kDiscount,
                  grid);
        euler_allocation(tier_spec(100, 0.05, 5.0), MortalityBasis::two_point(1.0), g_table,
                         kDiscount);
        std::vector<double> ks;
        for (double k = 1.0; k <= 20.0; k += 1.0) ks.push_back(k);
        allocation_vs_k_curve(tier_spec(100, 0.05, 5.0), MortalityBasis::two_point(1.0),
                              g_table, kDiscount, ks);
    }
    double analytic_seconds = std::chrono::duration<double>(clock::now() - start).count();

    start = clock::now();
    {
        SimulationConfig config{1000000, 1, false, 1024};
        run_liability_simulation(tier_spec(100, 0.05, 5.0), MortalityBasis::two_point(1.0),
                                 g_table, kDiscount, config);
    }
    double mc_seconds = std::chrono::duration<double>(clock::now() - start).count();

    std::ostringstream detail;
    detail.precision(3);
    detail << "analytic run " << analytic_seconds << " s (limit 1 s); 1e6-path MC run "
           << mc_seconds << " s (limit 60 s)";
    report("performance", analytic_seconds < 1.0 && mc_seconds < 60.0, detail.str());
}

}  // namespace

int main() {
    try {
        g_table =
            load_life_table_file(std::string(PENRISK_DATA_DIR) + "/pma92c10_proxy.csv").table;

        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        performance();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
        return 1;
    }

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
