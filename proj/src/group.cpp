#include "symqfi/group.hpp"

#include <cmath>
#include <numbers>

#include "symqfi/errors.hpp"

namespace symqfi {

AbelianGroupSpec::AbelianGroupSpec(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("AbelianGroupSpec: need at least one factor");
    for (int f : factors_) {
        if (f < 2) throw InvalidArgument("AbelianGroupSpec: every cyclic factor must be >= 2");
        order_ *= static_cast<std::size_t>(f);
    }
}

std::vector<int> AbelianGroupSpec::digits(std::size_t g) const {
    if (g >= order_) throw InvalidArgument("AbelianGroupSpec: element index out of range");
    std::vector<int> d(factors_.size());
    for (std::size_t f = factors_.size(); f-- > 0;) {
        const auto n = static_cast<std::size_t>(factors_[f]);
        d[f] = static_cast<int>(g % n);
        g /= n;
    }
    return d;
}

std::size_t AbelianGroupSpec::index(const std::vector<int>& digits) const {
    if (digits.size() != factors_.size()) throw InvalidArgument("AbelianGroupSpec: digit count mismatch");
    std::size_t g = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        const int n = factors_[f];
        const int d = ((digits[f] % n) + n) % n;
        g = g * static_cast<std::size_t>(n) + static_cast<std::size_t>(d);
    }
    return g;
}

std::size_t AbelianGroupSpec::multiply(std::size_t g, std::size_t h) const {
    auto a = digits(g);
    const auto b = digits(h);
    for (std::size_t f = 0; f < a.size(); ++f) a[f] += b[f];
    return index(a);
}

std::size_t AbelianGroupSpec::inverse(std::size_t g) const {
    auto a = digits(g);
    for (auto& d : a) d = -d;
    return index(a);
}

CharacterTable characters(const AbelianGroupSpec& spec) {
    const std::size_t n = spec.order();
    CharacterTable table(n, n);
    for (std::size_t lam = 0; lam < n; ++lam) {
        const auto ld = spec.digits(lam);
        for (std::size_t g = 0; g < n; ++g) {
            const auto gd = spec.digits(g);
            // Phase reduced mod N_f per factor so table entries are exact roots of unity.
            double turns = 0.0;
            for (std::size_t f = 0; f < ld.size(); ++f) {
                const int nf = spec.factors()[f];
                turns += static_cast<double>((ld[f] * gd[f]) % nf) / nf;
            }
            table(lam, g) = std::polar(1.0, 2.0 * std::numbers::pi * turns);
        }
    }
    return table;
}

ComplexMatrix qft_matrix(const AbelianGroupSpec& spec) {
    const CharacterTable chi = characters(spec);
    const std::size_t n = spec.order();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix u(n, n);
    for (std::size_t lam = 0; lam < n; ++lam)
        for (std::size_t g = 0; g < n; ++g) u(lam, g) = chi(lam, spec.inverse(g)) * scale;
    return u;
}

}  // namespace symqfi
