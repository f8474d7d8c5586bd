#include "symqfi/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "symqfi/errors.hpp"

namespace symqfi {

OutcomeCounts sample_outcomes(std::span<const double> probabilities, std::uint64_t m, std::uint64_t seed) {
    if (probabilities.empty()) throw InvalidArgument("sample_outcomes: no outcomes");
    std::vector<double> p(probabilities.begin(), probabilities.end());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p[i]) || p[i] < -1e-9) {
            std::ostringstream os;
            os << "sample_outcomes: probability " << i << " is " << p[i];
            throw InvalidArgument(os.str());
        }
        p[i] = std::max(p[i], 0.0);
        total += p[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("sample_outcomes: probabilities do not sum to 1");

    std::mt19937_64 rng(seed);
    OutcomeCounts out{std::vector<std::uint64_t>(p.size(), 0), m};
    std::uint64_t remaining = m;
    double mass = total;
    for (std::size_t i = 0; i + 1 < p.size() && remaining > 0; ++i) {
        const double q = mass > 0.0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, q);
        const std::uint64_t k = q >= 1.0 ? remaining : draw(rng);
        out.counts[i] = k;
        remaining -= k;
        mass -= p[i];
    }
    out.counts.back() += remaining;
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ trial);
}

double log_likelihood(const OutcomeCounts& counts, const ModelFamily& model, const ComplexMatrix& basis,
                      double theta) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const std::vector<double> v{theta};
    if (!model.valid(v)) return kNegInf;
    const std::vector<double> q = outcome_probabilities(model.build(v), basis);
    double ll = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) {
        if (counts.counts[n] == 0) continue;
        if (q[n] <= 0.0) return kNegInf;
        ll += static_cast<double>(counts.counts[n]) * std::log(q[n]);
    }
    return ll;
}

double mle_1d(const OutcomeCounts& counts, const ModelFamily& model, const ComplexMatrix& basis, Interval bounds) {
    if (model.parameter_names.size() != 1) throw InvalidArgument("mle_1d: model must have exactly one parameter");
    if (counts.counts.size() != basis.cols()) throw InvalidArgument("mle_1d: outcome count does not match the basis");
    if (!(bounds.lo < bounds.hi)) throw InvalidArgument("mle_1d: empty interval");

    auto ll = [&](double t) { return log_likelihood(counts, model, basis, t); };

    const double step = (bounds.hi - bounds.lo) / (kMleGridPoints - 1);
    std::vector<double> grid(kMleGridPoints);
    int best = -1;
    double best_ll = -std::numeric_limits<double>::infinity();
    double worst_ll = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kMleGridPoints; ++i) {
        const double t = i + 1 == kMleGridPoints ? bounds.hi : bounds.lo + i * step;
        grid[static_cast<std::size_t>(i)] = t;
        const double v = ll(t);
        if (!std::isfinite(v)) continue;
        worst_ll = std::min(worst_ll, v);
        if (v > best_ll) {
            best_ll = v;
            best = i;
        }
    }
    if (best < 0) throw NumericalFailure("mle_1d: likelihood vanishes on the whole interval");
    if (best_ll - worst_ll <= 1e-10 * std::max(1.0, std::abs(best_ll)))
        throw NumericalFailure("mle_1d: flat likelihood, the measurement carries no information");

    double lo = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
    double hi = grid[static_cast<std::size_t>(std::min(best + 1, kMleGridPoints - 1))];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = ll(x1), f2 = ll(x2);
    while (hi - lo > kMleTolerance) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = ll(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = ll(x2);
        }
    }
    const double refined = f1 >= f2 ? x1 : x2;
    const double refined_ll = std::max(f1, f2);
    // Golden section never evaluates the bracket ends, so a maximum sitting on
    // a bound stays with the grid point.
    return refined_ll >= best_ll ? refined : grid[static_cast<std::size_t>(best)];
}

StudyReport crb_study(const StudyConfig& cfg) {
    if (cfg.model.parameter_names.size() != 1) throw InvalidArgument("crb_study: model must have one parameter");
    if (cfg.photons.empty()) throw InvalidArgument("crb_study: no photon counts");
    for (auto m : cfg.photons)
        if (m < 1) throw InvalidArgument("crb_study: photon counts must be >= 1");
    if (cfg.trials < 1) throw InvalidArgument("crb_study: trials must be >= 1");
    if (!(cfg.bounds.lo < cfg.truth && cfg.truth < cfg.bounds.hi))
        throw InvalidArgument("crb_study: estimator bounds must contain the true value");

    const ParameterVector truth = cfg.model.parameters({cfg.truth});
    StudyReport report;
    report.truth = cfg.truth;
    report.qfi = qfim(cfg.model, truth)(0, 0);
    report.fisher = classical_fi(cfg.model, truth, cfg.basis)(0, 0);
    const std::vector<double> q = outcome_probabilities(cfg.model(truth), cfg.basis);

    for (std::size_t mi = 0; mi < cfg.photons.size(); ++mi) {
        const std::uint64_t m = cfg.photons[mi];
        std::vector<std::optional<double>> est(cfg.trials);
        std::vector<std::string> failure_reason(cfg.trials);
        std::exception_ptr fatal;
        std::mutex fatal_mutex;

        auto run_range = [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                try {
                    const auto counts = sample_outcomes(q, m, trial_seed(cfg.seed, mi, t));
                    est[t] = mle_1d(counts, cfg.model, cfg.basis, cfg.bounds);
                } catch (const NumericalFailure& e) {
                    failure_reason[t] = e.what();
                } catch (...) {
                    std::lock_guard lock(fatal_mutex);
                    if (!fatal) fatal = std::current_exception();
                }
            }
        };

        const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
        if (threads == 1) {
            run_range(0, cfg.trials);
        } else {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (cfg.trials + threads - 1) / threads;
            for (unsigned w = 0; w < threads; ++w) {
                const std::size_t b = w * chunk;
                const std::size_t e = std::min(cfg.trials, b + chunk);
                if (b < e) pool.emplace_back(run_range, b, e);
            }
        }
        if (fatal) std::rethrow_exception(fatal);

        StudyRow row;
        row.photons = m;
        row.trials = cfg.trials;
        std::vector<double> ok;
        ok.reserve(cfg.trials);
        std::string first_reason;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            if (est[t]) {
                ok.push_back(*est[t]);
            } else {
                ++row.failures;
                if (first_reason.empty()) first_reason = failure_reason[t];
            }
        }
        if (row.failures * 100 >= cfg.trials && row.failures > 0) {
            std::ostringstream os;
            os << "crb_study: " << row.failures << " of " << cfg.trials << " estimator failures at M = " << m
               << " (" << first_reason << ")";
            throw NumericalFailure(os.str());
        }
        double sum = 0.0, sq = 0.0;
        for (double e : ok) {
            sum += e;
            sq += (e - cfg.truth) * (e - cfg.truth);
        }
        row.mean_estimate = sum / static_cast<double>(ok.size());
        row.mse = sq / static_cast<double>(ok.size());
        row.crb = 1.0 / (static_cast<double>(m) * report.qfi);
        row.ratio = row.mse * static_cast<double>(m) * report.qfi;
        report.rows.push_back(row);
        report.estimates.push_back(std::move(ok));
    }
    return report;
}

}  // namespace symqfi
