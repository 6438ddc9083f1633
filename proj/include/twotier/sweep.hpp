#pragma once

#include "twotier/crra.hpp"
#include "twotier/economy.hpp"
#include "twotier/saturating.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twotier {

// One swept variable, parsed from "var:min:max:points[:log]".
struct SweepAxis {
    std::string variable;
    double min = 0.0;
    double max = 1.0;
    int points = 2;
    bool log = false;

    static SweepAxis parse(std::string_view text);
    std::vector<double> values() const;
};

// Variables that may be swept: z1, z2, gamma2, theta2.
bool is_sweepable(std::string_view variable);
void set_variable(EconomyParams& p, std::string_view variable, double value);
void set_variable(CrraParams& p, std::string_view variable, double value);

// 12 significant digits, "inf" / "-inf" for infinities.
std::string format_number(double x);

struct Figure1Row {
    double z1 = 0.0;
    RegimeLabel regime = RegimeLabel::Primitive;
    double u_per_n_optimal = 0.0;
    double u_per_n_equal = 0.0;
    double g_min = 0.0;
    std::optional<double> g_un;
};

std::vector<Figure1Row> figure1_rows(const EconomyParams& base, const SweepAxis& z1_axis);
void write_figure1_csv(std::ostream& os, const std::vector<Figure1Row>& rows);

struct PhaseRow {
    double z1 = 0.0;
    double z2 = 0.0;
    RegimeLabel regime = RegimeLabel::Primitive;
};

// Row-major over z2 (outer) then z1 (inner). With restrict_lower, only
// points with z2 < z1 are emitted.
std::vector<PhaseRow> phase_rows(const EconomyParams& base, const SweepAxis& z1_axis,
                                 const SweepAxis& z2_axis, bool restrict_lower);
void write_phase_csv(std::ostream& os, const std::vector<PhaseRow>& rows);

}  // namespace twotier
