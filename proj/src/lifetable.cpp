#include "penrisk/lifetable.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace penrisk {

namespace {

std::string trimmed(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

double LifeTable::survivorship(double age) const {
    double offset = age - static_cast<double>(first_age);
    if (offset <= 0.0) return l.front();
    double span = static_cast<double>(omega - first_age);
    if (offset >= span) return 0.0;
    double ipart = std::floor(offset);
    auto i = static_cast<std::size_t>(ipart);
    double frac = offset - ipart;
    return l[i] + frac * (l[i + 1] - l[i]);
}

LifeTable make_life_table(std::string name, int first_age, std::vector<double> q) {
    if (q.empty()) throw DataError("life table is empty");
    for (std::size_t i = 0; i < q.size(); ++i) {
        double qi = q[i];
        if (!(qi >= 0.0 && qi <= 1.0)) {
            throw DataError("q outside [0,1] at age " +
                            std::to_string(first_age + static_cast<int>(i)));
        }
    }
    if (q.back() != 1.0) {
        throw DataError("life table does not close: final q must equal 1");
    }

    LifeTable table;
    table.name = std::move(name);
    table.first_age = first_age;
    table.omega = first_age + static_cast<int>(q.size());
    table.l.resize(q.size() + 1);
    table.l[0] = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        table.l[i + 1] = table.l[i] * (1.0 - q[i]);
        if (i + 1 < q.size() && table.l[i + 1] <= 0.0) {
            throw DataError("survivorship reaches zero before the limiting age (q = 1 at age " +
                            std::to_string(first_age + static_cast<int>(i)) + ")");
        }
    }
    table.q = std::move(q);
    return table;
}

LoadedTable load_life_table(std::istream& in, std::string name) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("life table document is empty");
    // tolerate a UTF-8 BOM on the header row
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    {
        std::string header = trimmed(line);
        auto comma = header.find(',');
        if (comma == std::string::npos || trimmed(header.substr(0, comma)) != "age" ||
            trimmed(header.substr(comma + 1)) != "qx") {
            throw DataError("expected CSV header \"age,qx\", got \"" + header + "\"");
        }
    }

    std::vector<double> q;
    int first_age = 0;
    int expected_age = 0;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        std::string body = trimmed(line);
        if (body.empty()) continue;
        auto comma = body.find(',');
        if (comma == std::string::npos) {
            throw DataError("malformed row " + std::to_string(row) + ": missing comma");
        }
        std::string age_text = trimmed(body.substr(0, comma));
        std::string q_text = trimmed(body.substr(comma + 1));
        int age = 0;
        double qx = 0.0;
        try {
            std::size_t used = 0;
            age = std::stoi(age_text, &used);
            if (used != age_text.size()) throw std::invalid_argument(age_text);
        } catch (const std::exception&) {
            throw DataError("malformed row " + std::to_string(row) + ": bad age \"" +
                            age_text + "\"");
        }
        try {
            std::size_t used = 0;
            qx = std::stod(q_text, &used);
            if (used != q_text.size()) throw std::invalid_argument(q_text);
        } catch (const std::exception&) {
            throw DataError("malformed row " + std::to_string(row) + ": bad qx \"" +
                            q_text + "\"");
        }
        if (q.empty()) {
            first_age = age;
        } else if (age != expected_age) {
            throw DataError("non-contiguous ages: expected " + std::to_string(expected_age) +
                            ", got " + std::to_string(age) + " at row " + std::to_string(row));
        }
        if (!(qx >= 0.0 && qx <= 1.0)) {
            throw DataError("q outside [0,1] at age " + std::to_string(age));
        }
        q.push_back(qx);
        expected_age = age + 1;
    }
    if (q.empty()) throw DataError("life table document has no data rows");

    LoadReport report;
    report.rows_read = q.size();
    if (q.back() < 1.0) {
        report.closure_appended = true;
        report.closure_age = first_age + static_cast<int>(q.size());
        report.message = "table closed by appending q = 1 at age " +
                         std::to_string(report.closure_age);
        q.push_back(1.0);
    } else {
        report.message = "table closes at the published final age";
    }

    LoadedTable out{make_life_table(std::move(name), first_age, std::move(q)), report};
    return out;
}

LoadedTable load_life_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open life table file: " + path);
    std::string name = path;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return load_life_table(in, name);
}

double survival_probability(const LifeTable& table, double age, double duration) {
    if (!(age >= static_cast<double>(table.first_age))) {
        throw std::invalid_argument("age below the table's first age");
    }
    if (!(duration >= 0.0)) throw std::invalid_argument("negative duration");
    if (duration == 0.0) return 1.0;
    if (age + duration >= static_cast<double>(table.omega)) return 0.0;
    double l_now = table.survivorship(age);
    if (l_now <= 0.0) return 0.0;
    return table.survivorship(age + duration) / l_now;
}

double rated_survival(const LifeTable& table, AgeRating rating, double age,
                      double duration) {
    if (!std::isfinite(rating.years)) throw std::invalid_argument("non-finite age rating");
    double rated_age = age + rating.years;
    if (!(rated_age >= static_cast<double>(table.first_age))) {
        throw std::invalid_argument("rated age outside table domain");
    }
    return survival_probability(table, rated_age, duration);
}

MortalityBasis MortalityBasis::deterministic() {
    MortalityBasis basis;
    basis.scenarios = {{AgeRating{0.0}, 1.0}};
    basis.label = "deterministic";
    return basis;
}

MortalityBasis MortalityBasis::two_point(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("two-point basis needs a positive rating r");
    }
    MortalityBasis basis;
    basis.scenarios = {{AgeRating{+r}, 0.5}, {AgeRating{-r}, 0.5}};
    std::ostringstream label;
    label << "r=" << r;
    basis.label = label.str();
    return basis;
}

MortalityBasis MortalityBasis::from_scenarios(std::vector<MortalityScenario> scenarios,
                                              std::string label) {
    if (scenarios.empty()) throw std::invalid_argument("basis needs at least one scenario");
    double total = 0.0;
    for (const auto& s : scenarios) {
        if (!(s.weight > 0.0)) throw std::invalid_argument("scenario weights must be positive");
        if (!std::isfinite(s.rating.years)) {
            throw std::invalid_argument("non-finite age rating in basis");
        }
        total += s.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("scenario weights must sum to 1");
    }
    MortalityBasis basis;
    basis.scenarios = std::move(scenarios);
    basis.label = std::move(label);
    return basis;
}

}  // namespace penrisk
