#include "twotier/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace twotier {

namespace {

double parse_double(std::string_view s)
{
    // std::from_chars for double is available from GCC 11.
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidParams("bad number in sweep spec: " + std::string(s));
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

}  // namespace

SweepAxis SweepAxis::parse(std::string_view text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 4 && parts.size() != 5) {
        throw InvalidParams("sweep spec must be var:min:max:points[:log]");
    }
    SweepAxis a;
    a.variable = std::string(parts[0]);
    if (!is_sweepable(a.variable)) {
        throw InvalidParams("cannot sweep variable '" + a.variable + "'");
    }
    a.min = parse_double(parts[1]);
    a.max = parse_double(parts[2]);
    const double points = parse_double(parts[3]);
    if (points != std::floor(points) || points < 2) {
        throw InvalidParams("sweep needs an integer number of points >= 2");
    }
    a.points = static_cast<int>(points);
    if (parts.size() == 5) {
        if (parts[4] != "log" && parts[4] != "linear") {
            throw InvalidParams("sweep scale must be 'log' or 'linear'");
        }
        a.log = parts[4] == "log";
    }
    if (!(a.min > 0.0 && a.max > a.min)) {
        throw InvalidParams("sweep bounds must satisfy 0 < min < max");
    }
    return a;
}

std::vector<double> SweepAxis::values() const
{
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        v[static_cast<std::size_t>(i)] =
            log ? min * std::exp(t * std::log(max / min)) : min + t * (max - min);
    }
    v.back() = max;
    return v;
}

bool is_sweepable(std::string_view v)
{
    return v == "z1" || v == "z2" || v == "gamma2" || v == "theta2";
}

void set_variable(EconomyParams& p, std::string_view v, double value)
{
    if (v == "z1") p.z1 = value;
    else if (v == "z2") p.z2 = value;
    else if (v == "gamma2") p.gamma2 = value;
    else if (v == "theta2") p.theta2 = value;
    else throw InvalidParams("unknown sweep variable '" + std::string(v) + "'");
}

void set_variable(CrraParams& p, std::string_view v, double value)
{
    if (v == "z1") p.z1 = value;
    else if (v == "z2") p.z2 = value;
    else if (v == "gamma2") p.gamma2 = value;
    else if (v == "theta2") p.theta2 = value;
    else throw InvalidParams("unknown sweep variable '" + std::string(v) + "'");
}

std::string format_number(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        return "0";  // no "-0"
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<Figure1Row> figure1_rows(const EconomyParams& base, const SweepAxis& z1_axis)
{
    if (z1_axis.variable != "z1") {
        throw InvalidParams("figure1 sweeps z1");
    }
    std::vector<Figure1Row> rows;
    EconomyParams p = base;
    for (double z1 : z1_axis.values()) {
        p.z1 = z1;
        const SaturatingSolution s = solve(p);
        rows.push_back({z1, s.regime, s.optimal_eq.utility_per_capita,
                        s.equal_wage_eq.utility_per_capita, s.g_min, s.g_un});
    }
    return rows;
}

void write_figure1_csv(std::ostream& os, const std::vector<Figure1Row>& rows)
{
    os << "z1,regime,u_per_n_optimal,u_per_n_equal,g_min,g_un\n";
    for (const Figure1Row& r : rows) {
        os << format_number(r.z1) << ',' << phase_letter(r.regime) << ','
           << format_number(r.u_per_n_optimal) << ',' << format_number(r.u_per_n_equal) << ','
           << format_number(r.g_min) << ',' << (r.g_un ? format_number(*r.g_un) : "") << '\n';
    }
}

std::vector<PhaseRow> phase_rows(const EconomyParams& base, const SweepAxis& z1_axis,
                                 const SweepAxis& z2_axis, bool restrict_lower)
{
    if (z1_axis.variable != "z1" || z2_axis.variable != "z2") {
        throw InvalidParams("phase diagram needs a z1 axis and a z2 axis");
    }
    const auto z1s = z1_axis.values();
    const auto z2s = z2_axis.values();
    std::vector<PhaseRow> rows;
    rows.reserve(z1s.size() * z2s.size());
    EconomyParams p = base;
    for (double z2 : z2s) {
        for (double z1 : z1s) {
            if (restrict_lower && !(z2 < z1)) {
                continue;
            }
            p.z1 = z1;
            p.z2 = z2;
            rows.push_back({z1, z2, classify_regime(p)});
        }
    }
    return rows;
}

void write_phase_csv(std::ostream& os, const std::vector<PhaseRow>& rows)
{
    os << "z1,z2,regime\n";
    for (const PhaseRow& r : rows) {
        os << format_number(r.z1) << ',' << format_number(r.z2) << ',' << phase_letter(r.regime)
           << '\n';
    }
}

}  // namespace twotier
