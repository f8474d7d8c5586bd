#include "symqfi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "symqfi/circuit.hpp"
#include "symqfi/errors.hpp"
#include "symqfi/report.hpp"
#include "symqfi/symmetry.hpp"

namespace symqfi {

namespace {

using nlohmann::json;

struct CheckViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Emitted {
    Table table;
    std::string title;
    json extra = json::object();
    std::string netlist;
    std::vector<std::string> notes;
    // Largest deviation entering the self-check, and what it measures.
    double check_value = 0.0;
    std::string check_label;
};

bool check_enabled(const RunConfig& cfg) {
    const std::string v = cfg.get_string("check.enabled", "false");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("field 'check.enabled': expected true or false, got '" + v + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
    f << content;
}

std::string read_file(const std::string& path, const std::string& key) {
    std::ifstream f(path);
    if (!f) throw ConfigError("field '" + key + "': cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    return {{"columns", t.columns}, {"rows", rows}};
}

std::vector<double> descending(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

std::string param_column(const std::string& name, std::size_t i, std::size_t j, const ModelFamily& m) {
    if (m.parameter_names.size() == 1) return name;
    return name + "_" + m.parameter_names[i] + "_" + m.parameter_names[j];
}

// ---- qfi ------------------------------------------------------------------

Emitted run_qfi(const RunConfig& cfg) {
    const ModelFamily model = build_model(cfg);
    const ParameterVector theta = model_parameters(cfg, model);
    const RealMatrix f = qfim(model, theta);
    const auto analytic = analytic_case(cfg);
    const RealMatrix a = analytic ? analytic_qfi(*analytic) : RealMatrix{};

    Emitted e;
    e.title = "QFIM for model '" + model.name + "'";
    e.table.columns = {"i", "j", "numeric", "analytic", "diff"};
    double worst = 0.0;
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j) {
            const double an = analytic ? a(i, j) : std::nan("");
            const double d = analytic ? f(i, j) - an : std::nan("");
            if (analytic) worst = std::max(worst, std::abs(d));
            e.table.rows.push_back({double(i), double(j), f(i, j), an, d});
        }
    json params = json::object();
    for (std::size_t i = 0; i < theta.size(); ++i) params[theta.names[i]] = theta.values[i];
    e.extra["parameters"] = params;
    e.extra["has_analytic"] = analytic.has_value();

    if (analytic) {
        e.check_value = worst;
        e.check_label = "max |numeric - analytic|";
    } else {
        e.notes.push_back("no closed form for this configuration; analytic column is nan");
    }

    if (analytic && std::holds_alternative<RectangleCase>(*analytic)) {
        // Two readings of the diagonal symbols: PSF momentum scales, or the
        // source coordinates themselves.
        const auto& rc = std::get<RectangleCase>(*analytic);
        const double x0 = theta.values[0], y0 = theta.values[1];
        const double d_mom = std::max(std::abs(f(0, 0) - 4 * rc.px * rc.px), std::abs(f(1, 1) - 4 * rc.py * rc.py));
        const double d_src = std::max(std::abs(f(0, 0) - 4 * x0 * x0), std::abs(f(1, 1) - 4 * y0 * y0));
        const double off = std::abs(f(0, 1));
        const std::string reading = d_mom <= 1e-5 ? "momentum scales (4 px^2, 4 py^2)"
                                    : d_src <= 1e-5 ? "source coordinates (4 x0^2, 4 y0^2)"
                                                    : "neither";
        e.notes.push_back("rectangle diagonal reading: " + reading + "; |off-diagonal| = " + format_number(off) +
                          ", dev(momentum) = " + format_number(d_mom) + ", dev(source) = " + format_number(d_src));
        e.extra["rectangle_reading"] = {{"confirmed", reading},
                                        {"off_diagonal", off},
                                        {"deviation_momentum_reading", d_mom},
                                        {"deviation_source_reading", d_src}};
    }
    return e;
}

// ---- eigen ----------------------------------------------------------------

Emitted run_eigen(const RunConfig& cfg) {
    const ModelFamily model = build_model(cfg);
    const ParameterVector theta = model_parameters(cfg, model);
    const HermitianEigen eig = eig_hermitian(model(theta).matrix());
    const auto [constellation, psf] = model.geometry(theta.values);
    const SymmetricEigenbasis sym = character_eigenbasis(constellation, psf);

    const std::vector<double> ev = descending(eig.values);
    const std::vector<double> wv = descending(sym.weights);
    Emitted e;
    e.title = "Spectrum of model '" + model.name + "'";
    e.table.columns = {"index", "eigenvalue", "character_weight_sorted", "character", "character_weight"};
    double worst = 0.0;
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const double w = k < wv.size() ? wv[k] : 0.0;
        const double raw = k < sym.weights.size() ? sym.weights[k] : std::nan("");
        worst = std::max(worst, std::abs(ev[k] - w));
        e.table.rows.push_back({double(k), ev[k], w, double(k), raw});
    }
    e.check_value = worst;
    e.check_label = "max |eigenvalue - character weight| (sorted)";
    return e;
}

// ---- simulate -------------------------------------------------------------

Emitted run_simulate(const RunConfig& cfg) {
    const StudyConfig study = study_config(cfg);
    const StudyReport rep = crb_study(study);
    Emitted e;
    e.title = "CRB study, model '" + study.model.name + "', measurement '" + study.measurement + "'";
    e.table.columns = {"M", "trials", "mse", "crb", "ratio"};
    json rows = json::array();
    double worst = 0.0;
    for (const auto& r : rep.rows) {
        e.table.rows.push_back({double(r.photons), double(r.trials), r.mse, r.crb, r.ratio});
        rows.push_back({{"M", r.photons},
                        {"trials", r.trials},
                        {"failures", r.failures},
                        {"mean_estimate", r.mean_estimate},
                        {"mse", r.mse},
                        {"crb", r.crb},
                        {"ratio", r.ratio}});
    }
    if (!rep.rows.empty()) worst = std::abs(rep.rows.back().ratio - 1.0);
    e.extra["truth"] = rep.truth;
    e.extra["qfi"] = rep.qfi;
    e.extra["fisher"] = rep.fisher;
    e.extra["measurement"] = study.measurement;
    e.extra["seed"] = study.seed;
    e.extra["study"] = rows;
    e.notes.push_back("QFI = " + format_number(rep.qfi) + ", classical FI of measurement = " +
                      format_number(rep.fisher));
    e.check_value = worst;
    e.check_label = "|mse*M*QFI - 1| at the largest M";
    return e;
}

// ---- decompose ------------------------------------------------------------

PresetCase parse_preset(const RunConfig& cfg) {
    const std::string name = cfg.get_string("decompose.preset", "pair");
    if (name == "pair") return {PresetKind::pair, 2};
    if (name == "rect") return {PresetKind::rect, 4};
    if (name == "ring") {
        const long long n = cfg.get_int("decompose.n", 4);
        if (n < 2 || n > 64) throw ConfigError("field 'decompose.n': ring size must be in [2, 64]");
        return {PresetKind::ring, static_cast<int>(n)};
    }
    throw ConfigError("field 'decompose.preset': expected pair, rect or ring, got '" + name + "'");
}

json netlist_json(const InterferometerNetlist& net) {
    json elements = json::array();
    for (const auto& el : net.elements) {
        if (const auto* bs = std::get_if<Beamsplitter>(&el))
            elements.push_back({{"type", "BS"}, {"i", bs->i}, {"j", bs->j}, {"angle", bs->angle}, {"phase", bs->phase}});
        else {
            const auto& ps = std::get<Phaseshifter>(el);
            elements.push_back({{"type", "PS"}, {"mode", ps.mode}, {"phase", ps.phase}});
        }
    }
    return {{"modes", net.modes}, {"elements", elements}};
}

Emitted run_decompose(const RunConfig& cfg) {
    Emitted e;
    InterferometerNetlist net;
    double residual = 0.0;
    if (cfg.has("decompose.unitary")) {
        const std::string path = cfg.get_string("decompose.unitary", "");
        ComplexMatrix u;
        try {
            u = parse_matrix_text(read_file(path, "decompose.unitary"));
        } catch (const InvalidArgument& ex) {
            throw ConfigError(path + ": " + ex.what());
        }
        net = reck_decompose(u);
        residual = unitary_distance(netlist_unitary(net), u);
        e.title = "Reck decomposition of " + path;
        e.extra["source"] = "unitary";
    } else {
        const PresetCase pc = parse_preset(cfg);
        net = preset_circuit(pc);
        const Relabeling rl = output_relabeling(netlist_unitary(net), preset_target(pc));
        residual = rl.distance;
        e.title = "Preset circuit '" + cfg.get_string("decompose.preset", "pair") + "' (" +
                  std::to_string(net.modes) + " modes)";
        e.extra["source"] = "preset";
        e.extra["output_relabeling"] = rl.target_row;
    }
    e.table.columns = {"modes", "beamsplitters", "phaseshifters", "residual"};
    e.table.rows.push_back(
        {double(net.modes), double(net.beamsplitter_count()), double(net.phaseshifter_count()), residual});
    e.netlist = netlist_to_text(net);
    e.extra["netlist"] = netlist_json(net);
    e.check_value = residual;
    e.check_label = "round-trip unitary distance";
    return e;
}

// ---- sweep ----------------------------------------------------------------

Emitted run_sweep(const RunConfig& cfg) {
    const ModelFamily model = build_model(cfg);
    const ParameterVector base = model_parameters(cfg, model);
    const std::string pname = cfg.get_string("sweep.parameter", model.parameter_names.front());
    std::size_t idx = 0;
    try {
        idx = base.index_of(pname);
    } catch (const InvalidArgument&) {
        throw ConfigError("field 'sweep.parameter': model '" + model.name + "' has no parameter '" + pname + "'");
    }
    if (!cfg.has("sweep.start") || !cfg.has("sweep.stop"))
        throw ConfigError("fields 'sweep.start'/'sweep.stop': required for sweep");
    const double start = cfg.get_double("sweep.start", 0.0), stop = cfg.get_double("sweep.stop", 0.0);
    const long long count = cfg.get_int("sweep.count", 11);
    if (count < 1) throw ConfigError("field 'sweep.count': sweep range must be nonempty");
    const std::string quantity = cfg.get_string("sweep.quantity", "qfi");
    if (quantity != "qfi" && quantity != "eigenvalues")
        throw ConfigError("field 'sweep.quantity': expected qfi or eigenvalues, got '" + quantity + "'");

    const auto analytic = quantity == "qfi" ? analytic_case(cfg) : std::nullopt;
    Emitted e;
    e.title = "Sweep of " + quantity + " over " + pname + ", model '" + model.name + "'";
    e.table.columns = {pname};
    const std::size_t d = model.parameter_names.size();
    if (quantity == "qfi") {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                e.table.columns.push_back(param_column("qfi", i, j, model));
                if (analytic) e.table.columns.push_back(param_column("analytic", i, j, model));
            }
    } else {
        for (std::size_t k = 0; k < model.dim; ++k) e.table.columns.push_back("lambda_" + std::to_string(k));
    }

    double worst = 0.0;
    const RealMatrix a = analytic ? analytic_qfi(*analytic) : RealMatrix{};
    for (long long s = 0; s < count; ++s) {
        const double v = count == 1 ? start : start + (stop - start) * double(s) / double(count - 1);
        ParameterVector theta = base;
        theta.values[idx] = v;
        std::vector<double> row{v};
        if (quantity == "qfi") {
            const RealMatrix f = qfim(model, theta);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i; j < d; ++j) {
                    row.push_back(f(i, j));
                    if (analytic) {
                        row.push_back(a(i, j));
                        worst = std::max(worst, std::abs(f(i, j) - a(i, j)));
                    }
                }
        } else {
            for (double lam : descending(eig_hermitian(model(theta).matrix()).values)) row.push_back(lam);
        }
        e.table.rows.push_back(std::move(row));
    }
    if (analytic) {
        e.check_value = worst;
        e.check_label = "max |numeric - analytic| over the sweep";
    }
    return e;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
    Emitted e;
    if (cfg.command == "qfi") e = run_qfi(cfg);
    else if (cfg.command == "eigen") e = run_eigen(cfg);
    else if (cfg.command == "simulate") e = run_simulate(cfg);
    else if (cfg.command == "decompose") e = run_decompose(cfg);
    else if (cfg.command == "sweep") e = run_sweep(cfg);
    else throw ConfigError("unknown subcommand '" + cfg.command + "'");

    const std::string hash = cfg.hash();
    out << to_text(e.table, e.title, hash);
    for (const auto& n : e.notes) out << "  " << n << '\n';
    if (!e.netlist.empty()) out << "netlist:\n" << e.netlist;

    if (cfg.has("output.csv")) write_file(cfg.get_string("output.csv", ""), to_csv(e.table, hash));
    if (cfg.has("output.netlist") && !e.netlist.empty()) write_file(cfg.get_string("output.netlist", ""), e.netlist);
    if (cfg.has("output.json")) {
        json j = {{"command", cfg.command}, {"config_hash", hash}, {"table", table_json(e.table)}};
        for (auto it = e.extra.begin(); it != e.extra.end(); ++it) j[it.key()] = it.value();
        json notes = e.notes;
        j["notes"] = notes;
        write_file(cfg.get_string("output.json", ""), j.dump(2) + "\n");
    }

    if (check_enabled(cfg) && !e.check_label.empty()) {
        const double tol = cfg.get_double("check.tolerance", default_check_tolerance(cfg.command));
        const bool ok = e.check_value <= tol;
        out << "check: " << e.check_label << " = " << format_number(e.check_value) << (ok ? " <= " : " > ")
            << format_number(tol) << (ok ? "  PASS" : "  FAIL") << '\n';
        if (!ok) throw CheckViolation(e.check_label + " exceeds tolerance");
    }
    return kExitOk;
}

}  // namespace

double default_check_tolerance(const std::string& command) {
    if (command == "eigen") return 1e-9;
    if (command == "simulate") return 0.15;
    if (command == "decompose") return 1e-9;
    return 1e-5;
}

ComplexMatrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<cplx>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<double> nums;
        for (std::string tok; ls >> tok;) {
            double v = 0.0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
                throw InvalidArgument("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
            nums.push_back(v);
        }
        if (nums.empty()) continue;
        if (nums.size() % 2 != 0)
            throw InvalidArgument("line " + std::to_string(line_no) + ": expected 're im' pairs");
        std::vector<cplx> row;
        for (std::size_t k = 0; k < nums.size(); k += 2) row.emplace_back(nums[k], nums[k + 1]);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidArgument("empty matrix");
    ComplexMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw InvalidArgument("rows have different lengths");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const CheckViolation& e) {
        err << "check failed: " << e.what() << '\n';
        return kExitCheckViolation;
    }
}

}  // namespace symqfi
