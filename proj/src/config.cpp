#include "symqfi/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "symqfi/circuit.hpp"
#include "symqfi/errors.hpp"

namespace symqfi {

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "model.kind",      "model.r",         "model.theta",    "model.x0",        "model.y0",
        "model.n",         "model.phase",     "model.points",   "model.symmetry",  "model.scale",
        "psf.p",           "psf.phase",       "psf.px",         "psf.py",          "psf.momenta",
        "measurement.basis", "measurement.netlist",
        "sweep.parameter", "sweep.start",     "sweep.stop",     "sweep.count",     "sweep.quantity",
        "study.truth",     "study.photons",   "study.trials",   "study.seed",      "study.lower",
        "study.upper",     "study.threads",
        "decompose.preset", "decompose.n",    "decompose.unitary",
        "output.csv",      "output.json",     "output.netlist",
        "check.enabled",   "check.tolerance",
    };
    return keys;
}

namespace {

void require_known(const std::string& key) {
    const auto& keys = known_config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown config field '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError("field '" + key + "': expected a number, got '" + text + "'");
    return v;
}

}  // namespace

RunConfig RunConfig::defaults(const std::string& command) {
    static const std::vector<std::string> commands = {"qfi", "eigen", "simulate", "decompose", "sweep"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
        throw ConfigError("unknown subcommand '" + command + "'");
    RunConfig c;
    c.command = command;
    return c;
}

RunConfig RunConfig::parse(const std::string& command, const std::string& text, const std::string& source) {
    RunConfig c = defaults(command);
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        std::ostringstream os;
        os << source << ":" << e.line() << ": " << e.message();
        throw ConfigError(os.str());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            if (!body.data().empty())
                throw ConfigError(source + ": key '" + section + "' must be inside a [section]");
            continue;
        }
        for (const auto& [key, node] : body) {
            const std::string full = section + "." + key;
            require_known(full);
            c.values_[full] = trim(node.data());
        }
    }
    return c;
}

RunConfig RunConfig::load(const std::string& command, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(command, ss.str(), path);
}

void RunConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::set(const std::string& key, const std::string& value) {
    require_known(key);
    values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : to_double(it->second, key);
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string t = trim(it->second);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError("field '" + key + "': expected an integer, got '" + it->second + "'");
    return v;
}

std::vector<double> RunConfig::get_list(const std::string& key, std::vector<double> fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream in(it->second);
    while (std::getline(in, item, ',')) out.push_back(to_double(item, key));
    if (out.empty()) throw ConfigError("field '" + key + "': empty list");
    return out;
}

std::string RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
    };
    feed(command);
    feed("\n");
    for (const auto& [k, v] : values_) feed(k + "=" + v + "\n");
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::vector<Point2> parse_point_list(const std::string& text, const std::string& key) {
    std::vector<Point2> pts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';')) {
        if (trim(item).empty()) continue;
        std::istringstream is(item);
        std::string xs, ys, extra;
        if (!(is >> xs >> ys) || (is >> extra))
            throw ConfigError("field '" + key + "': expected 'x y' pairs separated by ';', got '" + item + "'");
        pts.push_back({to_double(xs, key), to_double(ys, key)});
    }
    if (pts.empty()) throw ConfigError("field '" + key + "': no points");
    return pts;
}

namespace {

SymmetrySpec parse_symmetry(const std::string& text) {
    if (text == "reflection" || text == "reflection_1d") return SymmetrySpec::reflection();
    if (text == "rect" || text == "rect_reflections") return SymmetrySpec::rect();
    if (text.rfind("cyclic:", 0) == 0) {
        const std::string n = text.substr(7);
        int v = 0;
        const auto res = std::from_chars(n.data(), n.data() + n.size(), v);
        if (res.ec == std::errc{} && res.ptr == n.data() + n.size() && v >= 2) return SymmetrySpec::cyclic(v);
    }
    throw ConfigError("field 'model.symmetry': expected reflection, rect or cyclic:N, got '" + text + "'");
}

std::string model_kind(const RunConfig& cfg) {
    const std::string kind = cfg.get_string("model.kind", "pair");
    if (kind == "offaxis") return "pair";
    if (kind != "pair" && kind != "rectangle" && kind != "ring" && kind != "points")
        throw ConfigError("field 'model.kind': expected pair, offaxis, rectangle, ring or points, got '" + kind + "'");
    return kind;
}

int ring_size(const RunConfig& cfg) {
    const long long n = cfg.get_int("model.n", 4);
    if (n < 2 || n > 64) throw ConfigError("field 'model.n': ring size must be in [2, 64]");
    return static_cast<int>(n);
}

double positive(const RunConfig& cfg, const std::string& key, double fallback) {
    const double v = cfg.get_double(key, fallback);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("field '" + key + "': must be positive");
    return v;
}

double nonnegative(const RunConfig& cfg, const std::string& key, double fallback) {
    const double v = cfg.get_double(key, fallback);
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("field '" + key + "': must be nonnegative");
    return v;
}

}  // namespace

ModelFamily build_model(const RunConfig& cfg) {
    const std::string kind = model_kind(cfg);
    const double p = positive(cfg, "psf.p", 1.0);
    const double psf_phase = cfg.get_double("psf.phase", 0.0);
    if (kind == "pair") return pair_model(p, cfg.get_double("model.theta", 0.0), psf_phase);
    if (kind == "rectangle") return rectangle_model(positive(cfg, "psf.px", p), positive(cfg, "psf.py", p));
    if (kind == "ring") return ring_model(ring_size(cfg), p, cfg.get_double("model.phase", 0.0), psf_phase);

    if (!cfg.has("model.points")) throw ConfigError("field 'model.points': required for kind = points");
    Constellation c{parse_point_list(cfg.get_string("model.points", ""), "model.points"),
                    parse_symmetry(cfg.get_string("model.symmetry", "reflection"))};
    DiscretePSF psf;
    if (cfg.has("psf.momenta")) psf.momenta = parse_point_list(cfg.get_string("psf.momenta", ""), "psf.momenta");
    else psf = matching_psf(c, p, psf_phase);
    return scaled_points_model(std::move(c), std::move(psf));
}

ParameterVector model_parameters(const RunConfig& cfg, const ModelFamily& model) {
    const std::string kind = model_kind(cfg);
    if (kind == "rectangle")
        return model.parameters({nonnegative(cfg, "model.x0", 0.4), nonnegative(cfg, "model.y0", 0.7)});
    if (kind == "points") return model.parameters({nonnegative(cfg, "model.scale", 1.0)});
    return model.parameters({nonnegative(cfg, "model.r", 0.3)});
}

std::optional<AnalyticCase> analytic_case(const RunConfig& cfg) {
    const std::string kind = model_kind(cfg);
    const double p = positive(cfg, "psf.p", 1.0);
    const double psf_phase = cfg.get_double("psf.phase", 0.0);
    if (kind == "pair") {
        const double theta = cfg.get_double("model.theta", 0.0);
        if (theta == 0.0 && psf_phase == 0.0) return PairOnAxis{p};
        return PairOffAxis{p, theta, psf_phase};
    }
    if (kind == "rectangle") return RectangleCase{positive(cfg, "psf.px", p), positive(cfg, "psf.py", p)};
    if (kind == "ring" && cfg.get_double("model.phase", 0.0) == psf_phase) return RingCase{ring_size(cfg), p};
    return std::nullopt;
}

ComplexMatrix measurement_basis(const RunConfig& cfg, const ModelFamily& model, const ParameterVector& theta) {
    const std::string basis = cfg.get_string("measurement.basis", "eigenbasis");
    if (basis == "eigenbasis") return eigenbasis(model, theta);
    if (basis == "character") return symmetric_basis(model, theta);
    if (basis == "direct") return momentum_basis(model.dim);
    if (basis == "netlist") {
        const std::string path = cfg.get_string("measurement.netlist", "");
        if (path.empty()) throw ConfigError("field 'measurement.netlist': required for basis = netlist");
        std::ifstream f(path);
        if (!f) throw ConfigError("field 'measurement.netlist': cannot open '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        InterferometerNetlist net;
        try {
            net = netlist_from_text(ss.str(), model.dim);
        } catch (const InvalidArgument& e) {
            throw ConfigError(path + ": " + e.what());
        }
        return basis_from_unitary(netlist_unitary(net));
    }
    throw ConfigError("field 'measurement.basis': expected eigenbasis, character, direct or netlist, got '" + basis +
                      "'");
}

StudyConfig study_config(const RunConfig& cfg) {
    StudyConfig s;
    s.model = build_model(cfg);
    if (s.model.parameter_names.size() != 1)
        throw ConfigError("field 'model.kind': simulate needs a single-parameter model");
    const ParameterVector base = model_parameters(cfg, s.model);
    s.truth = cfg.get_double("study.truth", base.values[0]);
    const ParameterVector truth = s.model.parameters({s.truth});
    s.measurement = cfg.get_string("measurement.basis", "eigenbasis");
    s.basis = measurement_basis(cfg, s.model, truth);
    for (double m : cfg.get_list("study.photons", {100, 1000, 10000})) {
        if (!(m >= 1.0) || m != std::floor(m)) throw ConfigError("field 'study.photons': counts must be integers >= 1");
        s.photons.push_back(static_cast<std::uint64_t>(m));
    }
    const long long trials = cfg.get_int("study.trials", 200);
    if (trials < 1) throw ConfigError("field 'study.trials': must be >= 1");
    s.trials = static_cast<std::size_t>(trials);
    s.seed = static_cast<std::uint64_t>(cfg.get_int("study.seed", 1));
    const double p = positive(cfg, "psf.p", 1.0);
    s.bounds = {cfg.get_double("study.lower", 1e-3), cfg.get_double("study.upper", std::numbers::pi / (2.0 * p) - 1e-3)};
    if (!(s.bounds.lo < s.truth && s.truth < s.bounds.hi))
        throw ConfigError("fields 'study.lower'/'study.upper': bounds must contain study.truth");
    const long long threads = cfg.get_int("study.threads", 1);
    if (threads < 1) throw ConfigError("field 'study.threads': must be >= 1");
    s.threads = static_cast<unsigned>(threads);
    return s;
}

}  // namespace symqfi
