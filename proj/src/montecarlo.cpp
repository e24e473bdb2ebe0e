#include "podsum/montecarlo.hpp"

#include "podsum/errors.hpp"
#include "podsum/parallel.hpp"
#include "podsum/rng.hpp"
#include "podsum/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace podsum {

namespace {

const std::vector<double>& explicit_values_of(const WeightSequence& seq)
{
    static const std::vector<double> empty;
    if (seq.is_zero()) {
        return empty;
    }
    const auto* e = std::get_if<WeightSequence::Explicit>(&seq.law());
    if (!e) {
        throw InvalidArgument("Monte Carlo checks need an explicit finite-support sequence");
    }
    return e->values;
}

bool all_distinct(std::vector<std::size_t>& draws)
{
    std::sort(draws.begin(), draws.end());
    return std::adjacent_find(draws.begin(), draws.end()) == draws.end();
}

} // namespace

McEstimate distinctness_estimate(const McConfig& cfg)
{
    if (cfg.ell == 0) {
        throw InvalidArgument("ell must be at least 1");
    }
    if (cfg.n_samples == 0) {
        throw InvalidArgument("n_samples must be positive");
    }
    const auto& values = explicit_values_of(cfg.seq);
    std::vector<double> cumulative(values.size());
    CompensatedSum running;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        running.add(values[i]);
        cumulative[i] = running.value();
        if (values[i] > 0.0) {
            last_positive = i;
        }
    }
    const double total = values.empty() ? 0.0 : cumulative.back();
    if (!(total > 0.0)) {
        throw InvalidArgument("sampling distribution needs zeta_1 > 0");
    }

    const std::size_t batches = (cfg.n_samples + kMcBatchSize - 1) / kMcBatchSize;
    std::vector<std::size_t> hits(batches, 0);
    parallel_for(
        batches,
        [&](std::size_t b) {
            SplitMix64 rng(stream_seed(cfg.seed, b));
            const std::size_t begin = b * kMcBatchSize;
            const std::size_t count = std::min(kMcBatchSize, cfg.n_samples - begin);
            std::vector<std::size_t> draws(cfg.ell);
            std::size_t local = 0;
            for (std::size_t s = 0; s < count; ++s) {
                for (auto& x : draws) {
                    const double u = rng.uniform() * total;
                    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
                    x = it == cumulative.end() ? last_positive : static_cast<std::size_t>(it - cumulative.begin());
                }
                local += all_distinct(draws) ? 1 : 0;
            }
            hits[b] = local;
        },
        cfg.workers == 0 ? default_worker_count() : cfg.workers);

    McEstimate out;
    out.samples = cfg.n_samples;
    for (std::size_t h : hits) {
        out.hits += h;
    }
    const double n = static_cast<double>(out.samples);
    out.estimate = static_cast<double>(out.hits) / n;
    out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
    return out;
}

double distinctness_exact(const WeightSequence& seq, std::size_t ell)
{
    if (ell == 0) {
        throw InvalidArgument("ell must be at least 1");
    }
    const auto& values = explicit_values_of(seq);
    CompensatedSum total;
    std::size_t positive = 0;
    for (double x : values) {
        total.add(x);
        positive += x > 0.0 ? 1 : 0;
    }
    if (!(total.value() > 0.0)) {
        throw InvalidArgument("distinctness probability needs zeta_1 > 0");
    }
    if (ell > positive) {
        return 0.0;
    }
    if (ell == 1) {
        return 1.0;
    }
    const auto row = sym_row(values, ell);
    const double log_p = log_factorial(static_cast<double>(ell)) + row[ell] -
                         static_cast<double>(ell) * std::log(total.value());
    return std::clamp(std::exp(log_p), 0.0, 1.0);
}

ChainReport chain_bound_check(const WeightSequence& seq, std::size_t ell)
{
    if (ell == 0) {
        throw InvalidArgument("ell must be at least 1");
    }
    const auto& values = explicit_values_of(seq);
    const auto tails = seq.tail_sums(ell);
    for (std::size_t J = 1; J <= ell; ++J) {
        if (!(tails[J - 1].lo > 0.0)) {
            throw ZeroTail("zeta_" + std::to_string(J) + " = 0 with ell = " + std::to_string(ell) +
                           ": fewer than ell atoms carry mass past J - 1");
        }
    }

    ChainReport r;
    r.exact = distinctness_exact(seq, ell);
    const double l = static_cast<double>(ell);
    double log_bound = 0.0;
    double lhs = l * std::log(tails[0].lo);
    double rhs = 0.0;
    for (std::size_t J = 1; J <= ell; ++J) {
        const double upsilon = J <= values.size() ? values[J - 1] : 0.0;
        const double ratio = upsilon / tails[J - 1].lo;
        const double power = static_cast<double>(ell - J);
        log_bound += std::log1p(power * ratio);
        if (power > 0.0) {
            log_bound += power * std::log1p(-ratio);
            lhs += power * std::log1p(-ratio);
        }
        rhs += std::log(tails[J - 1].lo);
    }
    r.log_product_bound = log_bound;
    r.product_bound = std::exp(log_bound);
    r.dominated = r.exact <= r.product_bound * (1.0 + 1e-12);
    r.identity_residual = std::abs(std::expm1(lhs - rhs));
    r.identity_holds = r.identity_residual <= 1e-10;
    return r;
}

} // namespace podsum
