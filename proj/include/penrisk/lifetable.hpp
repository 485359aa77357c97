#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "penrisk/errors.hpp"

namespace penrisk {

// Integer-age mortality table with survivorship derived from radix 1.
// Fractional ages are handled with the uniform-distribution-of-deaths
// assumption, i.e. survivorship l is linear in age within each year.
//
// Invariants (enforced by make_life_table):
//   - q[a] in [0,1] for every age, q at omega-1 equals 1 (the table closes)
//   - l is strictly positive on [first_age, omega), l(first_age) = 1,
//     l(omega) = 0, and l(a+1) = l(a) * (1 - q(a)) exactly
struct LifeTable {
    std::string name;
    int first_age = 0;
    int omega = 0;  // limiting age: first age with zero survivorship

    // q[i] is the probability of death within a year for age first_age + i,
    // i = 0 .. omega - first_age - 1.
    std::vector<double> q;
    // l[i] is survivorship at age first_age + i, i = 0 .. omega - first_age.
    std::vector<double> l;

    // Survivorship at a real-valued age, linear within each year.
    // Zero at and beyond the limiting age.
    double survivorship(double age) const;
};

// Validates q and derives l. The final q must equal 1; use
// load_life_table for documents that still need closure.
LifeTable make_life_table(std::string name, int first_age, std::vector<double> q);

// Age rating in years. Positive means the member is treated as that many
// years older when reading the table; the retirement age shifts by the
// same amount, keeping the deferral period unchanged.
struct AgeRating {
    double years = 0.0;
};

// One weighted age-rating scenario of a mortality basis.
struct MortalityScenario {
    AgeRating rating;
    double weight = 1.0;
};

// A weighted set of age-rating scenarios. One scenario with rating 0 is
// the deterministic basis; {(+r, 0.5), (-r, 0.5)} is the symmetric
// two-point basis.
struct MortalityBasis {
    std::vector<MortalityScenario> scenarios;
    std::string label;

    static MortalityBasis deterministic();
    static MortalityBasis two_point(double r);
    static MortalityBasis from_scenarios(std::vector<MortalityScenario> scenarios,
                                         std::string label = "custom");
};

// Outcome of loading a table document, reported on a diagnostics channel
// by callers. closure_appended is set when the document's final q was
// below 1 and a closing q = 1 row was added.
struct LoadReport {
    std::size_t rows_read = 0;
    bool closure_appended = false;
    int closure_age = 0;
    std::string message;
};

struct LoadedTable {
    LifeTable table;
    LoadReport report;
};

// Parses a CSV document with header "age,qx", one row per contiguous
// integer age. Throws DataError on malformed rows, non-contiguous ages,
// q outside [0,1], or an empty table.
LoadedTable load_life_table(std::istream& in, std::string name);
LoadedTable load_life_table_file(const std::string& path);

// duration-year survival probability from a real-valued age under UDD.
// Returns 0 when age + duration reaches the limiting age. Throws
// std::invalid_argument for ages below the table start or negative
// durations.
double survival_probability(const LifeTable& table, double age, double duration);

// Survival probability read at the rated age. Identical to
// survival_probability(table, age + rating, duration).
double rated_survival(const LifeTable& table, AgeRating rating, double age,
                      double duration);

}  // namespace penrisk
