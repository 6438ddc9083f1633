#include "commands.hpp"

#include "twotier/crra.hpp"
#include "twotier/economy.hpp"
#include "twotier/oracle.hpp"
#include "twotier/saturating.hpp"
#include "twotier/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace twotier::cli {

namespace {

using nlohmann::json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json number(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

json bundle_json(const Bundle& b) { return json{{"c1", number(b.c1)}, {"c2", number(b.c2)}}; }

json equilibrium_json(const Equilibrium& e)
{
    return json{{"n1", number(e.n1)},
                {"n2", number(e.n2)},
                {"employment", number(e.employment)},
                {"c_low", bundle_json(e.c_low)},
                {"c_high", bundle_json(e.c_high)},
                {"utility_per_capita", number(e.utility_per_capita)},
                {"gini", number(e.gini)},
                {"regime", regime_name(e.regime)},
                {"part_time", e.part_time},
                {"oversupplied", e.oversupplied}};
}

json wage_json(const WageStructure& ws)
{
    return json{{"r_low", number(ws.r_low)},
                {"r_high", number(ws.r_high)},
                {"f_low", number(ws.f_low)},
                {"f_high", number(ws.f_high)}};
}

// Command-line values, config-file values and defaults, in that order.
struct Options {
    std::string config_path;
    std::optional<std::string> model;
    std::map<std::string, double> numbers;  // set on the command line
    std::vector<std::string> sweeps;
    std::optional<std::string> out;
    std::optional<std::string> format;
    json file = json::object();

    void load_file()
    {
        if (config_path.empty()) {
            return;
        }
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError("cannot open config file " + config_path);
        }
        try {
            file = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad config file: ") + e.what());
        }
        if (!file.is_object()) {
            throw ConfigError("config file must hold a JSON object");
        }
    }

    bool has(const std::string& key) const { return numbers.count(key) || file.contains(key); }

    double get(const std::string& key, double fallback) const
    {
        if (auto it = numbers.find(key); it != numbers.end()) {
            return it->second;
        }
        if (file.contains(key)) {
            if (!file[key].is_number()) {
                throw ConfigError("config key '" + key + "' must be a number");
            }
            return file[key].get<double>();
        }
        return fallback;
    }

    std::string get_string(const std::optional<std::string>& flag, const std::string& key,
                           const std::string& fallback) const
    {
        if (flag) {
            return *flag;
        }
        if (file.contains(key)) {
            if (!file[key].is_string()) {
                throw ConfigError("config key '" + key + "' must be a string");
            }
            return file[key].get<std::string>();
        }
        return fallback;
    }

    std::string model_name() const { return get_string(model, "model", "saturating"); }
    std::string format_name(const std::string& fallback) const
    {
        return get_string(format, "format", fallback);
    }

    std::vector<SweepAxis> sweep_axes() const
    {
        std::vector<std::string> specs = sweeps;
        if (specs.empty() && file.contains("sweep")) {
            const json& s = file["sweep"];
            if (s.is_string()) {
                specs.push_back(s.get<std::string>());
            } else if (s.is_array()) {
                for (const json& item : s) {
                    specs.push_back(item.get<std::string>());
                }
            } else {
                throw ConfigError("config key 'sweep' must be a string or array");
            }
        }
        std::vector<SweepAxis> axes;
        for (const std::string& spec : specs) {
            axes.push_back(SweepAxis::parse(spec));
        }
        return axes;
    }

    EconomyParams economy() const
    {
        EconomyParams p;
        p.z1 = get("z1", p.z1);
        p.z2 = get("z2", p.z2);
        p.theta1 = get("theta1", p.theta1);
        p.theta2 = get("theta2", p.theta2);
        p.Gamma1 = get("Gamma1", p.Gamma1);
        p.Gamma2 = get("Gamma2", p.Gamma2);
        p.gamma1 = get("gamma1", p.gamma1);
        p.gamma2 = get("gamma2", p.gamma2);
        p.w = get("w", p.w);
        return p;
    }

    CrraParams crra() const
    {
        CrraParams p;
        p.z1 = get("z1", p.z1);
        p.z2 = get("z2", p.z2);
        p.theta1 = get("theta1", p.theta1);
        p.theta2 = get("theta2", p.theta2);
        p.gamma2 = get("gamma2", p.gamma2);
        p.sigma = get("sigma", p.sigma);
        return p;
    }
};

void add_common(CLI::App* cmd, Options& o, bool with_sweep)
{
    static const char* const kParams[] = {"z1",     "z2",     "theta1", "theta2", "Gamma1",
                                          "Gamma2", "gamma1", "gamma2", "w",      "sigma"};
    for (const char* name : kParams) {
        const std::string key = name;
        cmd->add_option_function<double>(
            "--" + key, [&o, key](double v) { o.numbers[key] = v; }, "parameter " + key);
    }
    cmd->add_option("--model", o.model, "saturating or crra")
        ->check(CLI::IsMember({"saturating", "crra"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", o.config_path, "JSON config file; flags take precedence");
    if (with_sweep) {
        cmd->add_option("--sweep", o.sweeps, "var:min:max:points[:log]");
    }
}

// Writes to --out when given, else to `out`.
class Sink {
public:
    Sink(const std::optional<std::string>& path, std::ostream& fallback) : os_(&fallback)
    {
        if (path && !path->empty()) {
            file_.open(*path, std::ios::binary);
            if (!file_) {
                throw ConfigError("cannot open output file " + *path);
            }
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void warn_ordering(const EconomyParams& p, std::ostream& err)
{
    if (!productivity_ordered(p)) {
        err << "warning: z1 <= z2, outside the essential/non-essential ordering\n";
    }
}

json saturating_json(const EconomyParams& p, const SaturatingSolution& s)
{
    const Thresholds t = viability_thresholds(p);
    const XiFractions xi = xi_fractions(p);
    json j{{"model", "saturating"},
           {"regime", regime_name(s.regime)},
           {"phase", phase_letter(s.regime)},
           {"xi1", number(xi.xi1)},
           {"xi2", number(xi.xi2)},
           {"z1_star", number(t.z1_star)},
           {"z2_star", number(t.z2_star)},
           {"g_min", number(s.g_min)},
           {"g_un", s.g_un ? number(*s.g_un) : json(nullptr)},
           {"equal_wage", equilibrium_json(s.equal_wage_eq)},
           {"optimal", equilibrium_json(s.optimal_eq)},
           {"wage_structure", s.wage_structure ? wage_json(*s.wage_structure) : json(nullptr)}};
    return j;
}

json crra_json(const CrraSolution& s)
{
    return json{{"model", "crra"},
                {"psi1", number(s.psi1)},
                {"psi2", number(s.psi2)},
                {"beta", number(s.beta)},
                {"r_high_star", number(s.r_high_star)},
                {"r_low_star", s.r_low_star ? number(*s.r_low_star) : json(nullptr)},
                {"f_high", number(s.f_high)},
                {"gini", number(s.gini)},
                {"beneficial", s.beneficial},
                {"status", status_name(s.status)},
                {"u_uniform", number(s.u_uniform)},
                {"u_optimal", number(s.u_optimal)},
                {"n1", number(s.n1)},
                {"n2", number(s.n2)}};
}

// Flat "key: value" rendering of a JSON object, nested keys dotted.
void print_report(std::ostream& os, const json& j, const std::string& prefix = "")
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            print_report(os, *it, key);
        } else if (it->is_number()) {
            os << key << ": " << format_number(it->get<double>()) << '\n';
        } else if (it->is_string()) {
            os << key << ": " << it->get<std::string>() << '\n';
        } else if (it->is_null()) {
            os << key << ": none\n";
        } else {
            os << key << ": " << it->dump() << '\n';
        }
    }
}

void emit(const Options& o, std::ostream& out, const json& j, bool as_json)
{
    Sink sink(o.out, out);
    if (as_json) {
        sink.stream() << j.dump(2) << '\n';
    } else {
        print_report(sink.stream(), j);
    }
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err)
{
    if (!o.sweep_axes().empty()) {
        throw ConfigError("solve takes a single parameter point, not a sweep");
    }
    const bool as_json = o.format_name("csv") == "json";
    if (o.model_name() == "crra") {
        emit(o, out, crra_json(solve_crra(o.crra())), as_json);
        return kExitOk;
    }
    const EconomyParams p = o.economy();
    validate(p);
    warn_ordering(p, err);
    emit(o, out, saturating_json(p, solve(p)), as_json);
    return kExitOk;
}

int cmd_figure1(const Options& o, std::ostream& out, std::ostream& err)
{
    if (o.model_name() != "saturating") {
        throw ConfigError("figure1 uses the saturating model");
    }
    auto axes = o.sweep_axes();
    if (axes.size() > 1) {
        throw ConfigError("figure1 takes one z1 sweep");
    }
    const SweepAxis axis = axes.empty() ? SweepAxis::parse("z1:0.1:5:491") : axes.front();
    const EconomyParams p = o.economy();
    validate(p);
    warn_ordering(p, err);
    const auto rows = figure1_rows(p, axis);

    Sink sink(o.out, out);
    if (o.format_name("csv") == "json") {
        json arr = json::array();
        for (const Figure1Row& r : rows) {
            arr.push_back({{"z1", number(r.z1)},
                           {"regime", phase_letter(r.regime)},
                           {"u_per_n_optimal", number(r.u_per_n_optimal)},
                           {"u_per_n_equal", number(r.u_per_n_equal)},
                           {"g_min", number(r.g_min)},
                           {"g_un", r.g_un ? number(*r.g_un) : json(nullptr)}});
        }
        sink.stream() << arr.dump(2) << '\n';
    } else {
        write_figure1_csv(sink.stream(), rows);
    }
    return kExitOk;
}

int cmd_phase(const Options& o, std::ostream& out, bool restrict_lower)
{
    if (o.model_name() != "saturating") {
        throw ConfigError("phase uses the saturating model");
    }
    SweepAxis z1_axis = SweepAxis::parse("z1:0.025:5:200");
    SweepAxis z2_axis = SweepAxis::parse("z2:0.025:5:200");
    for (const SweepAxis& a : o.sweep_axes()) {
        if (a.variable == "z1") {
            z1_axis = a;
        } else if (a.variable == "z2") {
            z2_axis = a;
        } else {
            throw ConfigError("phase sweeps z1 and z2 only");
        }
    }
    EconomyParams p = o.economy();
    validate(p);
    const auto rows = phase_rows(p, z1_axis, z2_axis, restrict_lower);

    Sink sink(o.out, out);
    if (o.format_name("csv") == "json") {
        json arr = json::array();
        for (const PhaseRow& r : rows) {
            arr.push_back({{"z1", number(r.z1)}, {"z2", number(r.z2)}, {"regime", phase_letter(r.regime)}});
        }
        sink.stream() << arr.dump(2) << '\n';
    } else {
        write_phase_csv(sink.stream(), rows);
    }
    return kExitOk;
}

int cmd_gamma2star(const Options& o, std::ostream& out, const ThresholdSearch& search)
{
    if (o.model_name() != "crra") {
        throw ConfigError("gamma2star needs --model crra");
    }
    const CrraParams p = o.crra();
    CrraParams probe = p;
    probe.gamma2 = 1.0;
    validate(probe);

    const auto star = gamma2_star(p.theta2, p.z1, p.theta1, search);
    json j{{"theta1", number(p.theta1)}, {"theta2", number(p.theta2)}, {"z1", number(p.z1)}};
    j["gamma2_star"] = star ? number(*star) : json("not_found");

    if (o.has("gamma2")) {
        validate(p);
        j["gamma2"] = number(p.gamma2);
        if (const auto win = z2_window(p)) {
            j["z2_dagger"] = number(win->first);
            j["z2_star"] = number(win->second);
        } else {
            j["z2_dagger"] = nullptr;
            j["z2_star"] = nullptr;
        }
    }

    const bool as_json = o.format_name("csv") == "json";
    Sink sink(o.out, out);
    if (as_json) {
        sink.stream() << j.dump(2) << '\n';
    } else {
        print_report(sink.stream(), j);
        if (!star) {
            sink.stream() << "no beneficial inequality found on the search grid\n";
        }
    }
    return kExitOk;
}

struct CheckTolerances {
    double step = 0.005;
    std::optional<double> utility;
    std::optional<double> gini;
    std::optional<double> employment;
};

struct CheckRow {
    std::string label;
    double u_analytic, u_oracle;
    double g_analytic, g_oracle;
    double e_analytic, e_oracle;
};

CheckRow check_point_saturating(const EconomyParams& p, double step)
{
    const SaturatingSolution s = solve(p);
    OracleConfig cfg;
    cfg.r_high_grid.step = step;
    cfg.f_high_grid.step = step;
    if (s.wage_structure) {
        cfg.r_high_grid.max = std::max(cfg.r_high_grid.max, s.wage_structure->r_high + 10 * step);
    }
    cfg.tie_tolerance = resolution_tie_tolerance(p, cfg);
    const OracleResult r = search(p, cfg);
    return {"", s.optimal_eq.utility_per_capita, r.best_utility_per_capita, s.g_min, r.best_gini,
            s.optimal_eq.employment, r.employment};
}

CheckRow check_point_crra(const CrraParams& p, double step)
{
    const CrraSolution s = solve_crra(p);
    OracleConfig cfg;
    cfg.utility_kind = UtilityKind::Crra;
    cfg.r_high_grid.step = step;
    cfg.f_high_grid.step = step;
    if (s.beneficial) {
        cfg.r_high_grid.max = std::max(cfg.r_high_grid.max, s.r_high_star + 10 * step);
    }
    const OracleResult r = search(as_economy(p), cfg);
    return {"", s.u_optimal, r.best_utility_per_capita, s.gini, r.best_gini, s.n1 + s.n2, r.employment};
}

int cmd_oracle_check(const Options& o, std::ostream& out, const CheckTolerances& tol)
{
    if (!(tol.step > 0.0)) {
        throw ConfigError("--step must be positive");
    }
    const bool crra = o.model_name() == "crra";
    const double tol_u = tol.utility.value_or(2.0 * tol.step);
    const double tol_g = tol.gini.value_or((crra ? 4.0 : 2.0) * tol.step);
    const double tol_e = tol.employment.value_or(2.0 * tol.step);

    const auto axes = o.sweep_axes();
    if (axes.size() > 1) {
        throw ConfigError("oracle-check takes at most one sweep axis");
    }
    std::vector<double> values{std::nan("")};
    if (!axes.empty()) {
        values = axes.front().values();
    }

    std::vector<CheckRow> rows;
    for (double v : values) {
        CheckRow row{};
        if (crra) {
            CrraParams p = o.crra();
            if (!axes.empty()) set_variable(p, axes.front().variable, v);
            validate(p);
            row = check_point_crra(p, tol.step);
        } else {
            EconomyParams p = o.economy();
            if (!axes.empty()) set_variable(p, axes.front().variable, v);
            validate(p);
            row = check_point_saturating(p, tol.step);
        }
        row.label = axes.empty() ? "point" : axes.front().variable + "=" + format_number(v);
        rows.push_back(row);
    }

    double max_du = 0.0, max_dg = 0.0, max_de = 0.0;
    Sink sink(o.out, out);
    std::ostream& os = sink.stream();
    const bool as_json = o.format_name("csv") == "json";
    json arr = json::array();
    if (!as_json) {
        os << "point,u_analytic,u_oracle,du,g_analytic,g_oracle,dg,emp_analytic,emp_oracle,demp\n";
    }
    for (const CheckRow& r : rows) {
        const double du = r.u_oracle - r.u_analytic;
        const double dg = r.g_oracle - r.g_analytic;
        const double de = r.e_oracle - r.e_analytic;
        max_du = std::max(max_du, std::abs(du));
        max_dg = std::max(max_dg, std::abs(dg));
        max_de = std::max(max_de, std::abs(de));
        if (as_json) {
            arr.push_back({{"point", r.label},
                           {"u_analytic", number(r.u_analytic)},
                           {"u_oracle", number(r.u_oracle)},
                           {"g_analytic", number(r.g_analytic)},
                           {"g_oracle", number(r.g_oracle)},
                           {"employment_analytic", number(r.e_analytic)},
                           {"employment_oracle", number(r.e_oracle)}});
        } else {
            os << r.label << ',' << format_number(r.u_analytic) << ',' << format_number(r.u_oracle)
               << ',' << format_number(du) << ',' << format_number(r.g_analytic) << ','
               << format_number(r.g_oracle) << ',' << format_number(dg) << ','
               << format_number(r.e_analytic) << ',' << format_number(r.e_oracle) << ','
               << format_number(de) << '\n';
        }
    }
    const bool ok = max_du <= tol_u && max_dg <= tol_g && max_de <= tol_e;
    if (as_json) {
        os << json{{"rows", arr},
                   {"max_abs_du", number(max_du)},
                   {"max_abs_dg", number(max_dg)},
                   {"max_abs_demp", number(max_de)},
                   {"pass", ok}}
                  .dump(2)
           << '\n';
    } else {
        os << "# max |du|=" << format_number(max_du) << " (tol " << format_number(tol_u)
           << "), max |dg|=" << format_number(max_dg) << " (tol " << format_number(tol_g)
           << "), max |demp|=" << format_number(max_de) << " (tol " << format_number(tol_e) << ")\n";
        os << (ok ? "# PASS\n" : "# FAIL\n");
    }
    return ok ? kExitOk : kExitToleranceBreach;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Two-good economy solver: equilibria, optimal two-tier wages, minimum Gini", "twotier"};
    app.require_subcommand(1);

    Options o;
    bool restrict_lower = false;
    ThresholdSearch search;
    CheckTolerances tol;

    auto* solve_cmd = app.add_subcommand("solve", "solve one parameter point");
    add_common(solve_cmd, o, true);

    auto* fig1 = app.add_subcommand("figure1", "utility and Gini curves along z1 (CSV)");
    add_common(fig1, o, true);

    auto* phase = app.add_subcommand("phase", "regime labels on a (z1, z2) grid (CSV)");
    add_common(phase, o, true);
    phase->add_flag("--restrict", restrict_lower, "emit only points with z2 < z1");

    auto* g2s = app.add_subcommand("gamma2star", "CRRA threshold gamma2* and z2 window");
    add_common(g2s, o, false);
    g2s->add_option("--z2-points", search.z2_points, "log-grid size in z2")->check(CLI::PositiveNumber);
    g2s->add_option("--rel-tol", search.rel_tol, "relative bisection tolerance")->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("oracle-check", "compare closed forms with brute-force search");
    add_common(check, o, true);
    check->add_option("--step", tol.step, "oracle grid step");
    check->add_option("--tol-utility", tol.utility, "max |du| (default 2*step)");
    check->add_option("--tol-gini", tol.gini, "max |dG| (default 2*step, 4*step for crra)");
    check->add_option("--tol-employment", tol.employment, "max |d employment| (default 2*step)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    try {
        o.load_file();
        if (solve_cmd->parsed()) return cmd_solve(o, out, err);
        if (fig1->parsed()) return cmd_figure1(o, out, err);
        if (phase->parsed()) return cmd_phase(o, out, restrict_lower);
        if (g2s->parsed()) return cmd_gamma2star(o, out, search);
        if (check->parsed()) return cmd_oracle_check(o, out, tol);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    }
    return kExitInvalidConfig;
}

}  // namespace twotier::cli
