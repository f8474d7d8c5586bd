#include "symqfi/circuit.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symqfi/errors.hpp"
#include "symqfi/group.hpp"

namespace symqfi {

namespace {

constexpr double kPi = std::numbers::pi;

template <class T>
std::size_t count_of(const std::vector<CircuitElement>& elements) {
    std::size_t n = 0;
    for (const auto& e : elements) n += std::holds_alternative<T>(e);
    return n;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

std::size_t InterferometerNetlist::beamsplitter_count() const { return count_of<Beamsplitter>(elements); }
std::size_t InterferometerNetlist::phaseshifter_count() const { return count_of<Phaseshifter>(elements); }

ComplexMatrix beamsplitter_block(double angle, double phase) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {{c, std::polar(s, phase)}, {-std::polar(s, -phase), c}};
}

ComplexMatrix netlist_unitary(const InterferometerNetlist& net) {
    ComplexMatrix u = ComplexMatrix::identity(net.modes);
    const auto& k = kernels();
    for (std::size_t idx = 0; idx < net.elements.size(); ++idx) {
        const auto& el = net.elements[idx];
        if (const auto* bs = std::get_if<Beamsplitter>(&el)) {
            if (bs->i >= bs->j || bs->j >= net.modes) {
                std::ostringstream os;
                os << "netlist element " << idx << ": invalid beamsplitter modes (" << bs->i << ", " << bs->j
                   << ") for " << net.modes << " modes";
                throw InvalidArgument(os.str());
            }
            const ComplexMatrix b = beamsplitter_block(bs->angle, bs->phase);
            k.mix_pair(b(0, 0), b(0, 1), b(1, 0), b(1, 1), u.row(bs->i).data(), u.row(bs->j).data(), net.modes);
        } else {
            const auto& ps = std::get<Phaseshifter>(el);
            if (ps.mode >= net.modes) {
                std::ostringstream os;
                os << "netlist element " << idx << ": invalid phaseshifter mode " << ps.mode;
                throw InvalidArgument(os.str());
            }
            const cplx f = std::polar(1.0, ps.phase);
            for (auto& x : u.row(ps.mode)) x *= f;
        }
    }
    return u;
}

InterferometerNetlist reck_decompose(const ComplexMatrix& u) {
    if (!u.square()) throw InvalidArgument("reck_decompose: matrix is not square");
    const double res = unitarity_residual(u);
    if (res > 1e-10) {
        std::ostringstream os;
        os << "reck_decompose: input is not unitary (max |U^dagger U - I| = " << res << ")";
        throw InvalidArgument(os.str());
    }
    const std::size_t n = u.rows();
    InterferometerNetlist net{n, {}};
    ComplexMatrix w = u;
    // Right-multiply by rotations T on columns (c, r) to clear row r left of
    // the diagonal; W ends diagonal and U = D T_k^dagger ... T_1^dagger.
    for (std::size_t r = n; r-- > 1;) {
        for (std::size_t c = 0; c < r; ++c) {
            const cplx a = w(r, c);
            const cplx b = w(r, r);
            const double theta = std::atan2(std::abs(a), std::abs(b));
            if (theta < kNullRotation) continue;
            const double phi = std::arg(b) - std::arg(a);
            const double cs = std::cos(theta), sn = std::sin(theta);
            const cplx t_rc = -std::polar(sn, -phi);
            const cplx t_cr = std::polar(sn, phi);
            for (std::size_t k = 0; k < n; ++k) {
                const cplx wc = w(k, c);
                const cplx wr = w(k, r);
                w(k, c) = cs * wc + t_rc * wr;
                w(k, r) = t_cr * wc + cs * wr;
            }
            w(r, c) = 0.0;
            // B(theta, phi)^dagger = B(-theta, phi)
            net.elements.emplace_back(Beamsplitter{c, r, -theta, phi});
        }
    }
    for (std::size_t m = 0; m < n; ++m) {
        const double phase = std::arg(w(m, m));
        if (std::abs(phase) >= kNullRotation) net.elements.emplace_back(Phaseshifter{m, phase});
    }
    return net;
}

ComplexMatrix preset_target(const PresetCase& c) {
    switch (c.kind) {
        case PresetKind::pair:
            return qft_matrix(AbelianGroupSpec({2}));
        case PresetKind::rect:
            return qft_matrix(AbelianGroupSpec({2, 2}));
        case PresetKind::ring:
            return qft_matrix(AbelianGroupSpec({c.n}));
    }
    return {};
}

InterferometerNetlist preset_circuit(const PresetCase& c) {
    // A real Hadamard on (lo, hi): 50:50 splitter, then a pi phase on hi.
    auto hadamard = [](InterferometerNetlist& net, std::size_t lo, std::size_t hi, double extra_phase) {
        net.elements.emplace_back(Beamsplitter{lo, hi, kPi / 4.0, 0.0});
        net.elements.emplace_back(Phaseshifter{hi, kPi + extra_phase});
    };
    switch (c.kind) {
        case PresetKind::pair: {
            InterferometerNetlist net{2, {}};
            hadamard(net, 0, 1, 0.0);
            return net;
        }
        case PresetKind::rect: {
            InterferometerNetlist net{4, {}};
            hadamard(net, 0, 1, 0.0);
            hadamard(net, 2, 3, 0.0);
            hadamard(net, 0, 2, 0.0);
            hadamard(net, 1, 3, 0.0);
            return net;
        }
        case PresetKind::ring: {
            if (c.n < 2) throw InvalidArgument("preset_circuit: ring needs N >= 2");
            const auto n = static_cast<std::size_t>(c.n);
            if (!is_power_of_two(c.n)) return reck_decompose(preset_target(c));
            InterferometerNetlist net{n, {}};
            // diag(w^g) shifts the transform's output labels by one.
            for (std::size_t g = 1; g < n; ++g)
                net.elements.emplace_back(Phaseshifter{g, 2.0 * kPi * static_cast<double>(g) / c.n});
            // Decimation in frequency; outputs come out in bit-reversed order.
            for (std::size_t len = n; len >= 2; len /= 2)
                for (std::size_t start = 0; start < n; start += len)
                    for (std::size_t k = 0; k < len / 2; ++k)
                        hadamard(net, start + k, start + k + len / 2,
                                 -2.0 * kPi * static_cast<double>(k) / static_cast<double>(len));
            return net;
        }
    }
    return {};
}

Relabeling output_relabeling(const ComplexMatrix& u, const ComplexMatrix& target) {
    if (u.rows() != target.rows() || u.cols() != target.cols() || !u.square())
        throw InvalidArgument("output_relabeling: shape mismatch");
    const std::size_t n = u.rows();
    Relabeling out{std::vector<std::size_t>(n, n), 0.0};
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            if (used[l]) continue;
            const double a = std::abs(dot_conj(target.row(l), u.row(k)));
            const double nu = std::sqrt(norm_sq(u.row(k)));
            const double nt = std::sqrt(norm_sq(target.row(l)));
            if (std::abs(a - nu * nt) <= 1e-8 * std::max(1.0, nu * nt)) {
                out.target_row[k] = l;
                used[l] = true;
                break;
            }
        }
        if (out.target_row[k] == n) {
            std::ostringstream os;
            os << "output_relabeling: output " << k << " matches no target row";
            throw InvalidArgument(os.str());
        }
    }
    ComplexMatrix permuted(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < n; ++c) permuted(out.target_row[k], c) = u(k, c);
    out.distance = unitary_distance(permuted, target);
    return out;
}

std::string netlist_to_text(const InterferometerNetlist& net) {
    std::string out;
    for (const auto& el : net.elements) {
        if (const auto* bs = std::get_if<Beamsplitter>(&el)) {
            out += "BS " + std::to_string(bs->i) + ' ' + std::to_string(bs->j) + ' ' + format_double(bs->angle) + ' ' +
                   format_double(bs->phase) + '\n';
        } else {
            const auto& ps = std::get<Phaseshifter>(el);
            out += "PS " + std::to_string(ps.mode) + ' ' + format_double(ps.phase) + '\n';
        }
    }
    return out;
}

namespace {

template <class T>
T parse_field(const std::string& tok, std::size_t line, const char* what) {
    T v{};
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        std::ostringstream os;
        os << "netlist line " << line << ": bad " << what << " '" << tok << "'";
        throw InvalidArgument(os.str());
    }
    return v;
}

}  // namespace

InterferometerNetlist netlist_from_text(const std::string& text, std::size_t modes) {
    InterferometerNetlist net{modes, {}};
    std::size_t max_mode = 0;
    bool any = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "BS" && tok.size() == 5) {
            Beamsplitter bs{parse_field<std::size_t>(tok[1], line_no, "mode"),
                            parse_field<std::size_t>(tok[2], line_no, "mode"),
                            parse_field<double>(tok[3], line_no, "angle"), parse_field<double>(tok[4], line_no, "phase")};
            if (bs.i >= bs.j) {
                std::ostringstream os;
                os << "netlist line " << line_no << ": beamsplitter modes must satisfy i < j";
                throw InvalidArgument(os.str());
            }
            max_mode = std::max(max_mode, bs.j);
            net.elements.emplace_back(bs);
        } else if (tok[0] == "PS" && tok.size() == 3) {
            Phaseshifter ps{parse_field<std::size_t>(tok[1], line_no, "mode"),
                            parse_field<double>(tok[2], line_no, "phase")};
            max_mode = std::max(max_mode, ps.mode);
            net.elements.emplace_back(ps);
        } else {
            std::ostringstream os;
            os << "netlist line " << line_no << ": expected 'BS i j angle phase' or 'PS i phase'";
            throw InvalidArgument(os.str());
        }
        any = true;
    }
    if (modes == 0) net.modes = any ? max_mode + 1 : 0;
    else if (any && max_mode >= modes) throw InvalidArgument("netlist references a mode beyond the declared count");
    return net;
}

}  // namespace symqfi
