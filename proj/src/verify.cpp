#include "podsum/verify.hpp"

#include "podsum/errors.hpp"
#include "podsum/montecarlo.hpp"
#include "podsum/parallel.hpp"
#include "podsum/podsum.hpp"
#include "podsum/rng.hpp"
#include "podsum/spod.hpp"
#include "podsum/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>

namespace podsum::verify {

namespace {

// Stream namespaces keep the suites' random instances independent.
constexpr std::uint64_t kLemma2Stream = 1ULL << 32;
constexpr std::uint64_t kDominanceStream = 2ULL << 32;
constexpr std::uint64_t kSpodStream = 3ULL << 32;
constexpr std::uint64_t kMcStream = 4ULL << 32;

// Logs may differ from an exact comparison by rounding; allow 1e-12 relative.
constexpr double kLogSlack = 1e-12;

std::string fmt(const char* format, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

std::string count_text(std::size_t bad, std::size_t total, const char* what = "violations")
{
    return std::to_string(bad) + " " + what + " in " + std::to_string(total);
}

bool log_le(double a, double b)
{
    return a == kNegInf || a - b <= kLogSlack * std::max(1.0, std::abs(b));
}

std::vector<double> random_weights(SplitMix64& rng, std::size_t d, double zero_share = 0.15)
{
    const double rho = rng.uniform(1.1, 3.0);
    std::vector<double> v(d);
    for (std::size_t j = 1; j <= d; ++j) {
        v[j - 1] = rng.uniform() < zero_share ? 0.0 : rng.uniform() * std::pow(static_cast<double>(j), -rho);
    }
    return v;
}

OrderProfile random_gamma(SplitMix64& rng, std::size_t max_order)
{
    if (rng.below(3) == 0) {
        std::vector<double> g(max_order + 1);
        for (auto& x : g) {
            x = rng.uniform(0.0, 3.0);
        }
        g[0] = 1.0;
        return OrderProfile::explicit_values(std::move(g));
    }
    static constexpr double kSigmas[] = {0.0, 0.5, 1.0, 1.5};
    return OrderProfile::factorial_power(kSigmas[rng.below(4)]);
}

SPODSpec random_spod(SplitMix64& rng, std::size_t alpha, std::size_t d)
{
    std::vector<WeightSequence> grid;
    for (std::size_t k = 1; k <= alpha; ++k) {
        grid.push_back(WeightSequence::explicit_values(random_weights(rng, d)));
    }
    return SPODSpec(alpha, random_gamma(rng, alpha * d), std::move(grid));
}

struct Lemma2Outcome {
    bool fine_ok = true;
    bool coarse_ok = true;
    bool identity_checked = false;
    bool identity_ok = true;
    double residual = 0.0;
};

Lemma2Outcome lemma2_instance(const WeightSequence& seq, std::size_t order)
{
    Lemma2Outcome o;
    const std::size_t d = seq.support_size().value_or(0);
    const double exact = order <= d ? sym_row(seq, d, order)[order] : kNegInf;
    const auto tails = seq.tail_sums(order + 1);
    const double fine = lemma2_bound_fine(seq, order, tails);
    const double coarse = lemma2_bound_coarse(seq, order, tails);
    o.fine_ok = log_le(exact, fine);
    o.coarse_ok = log_le(fine, coarse);
    try {
        const ChainReport r = chain_bound_check(seq, order);
        o.identity_checked = true;
        o.identity_ok = r.identity_holds;
        o.residual = r.identity_residual;
    } catch (const ZeroTail&) {
        // chain undefined: fewer than `order` atoms with mass
    }
    return o;
}

struct DominanceOutcome {
    bool ok = true;
    bool certified = false;
    double gap = kNegInf; // truncated - theorem1, in logs
};

DominanceOutcome dominance_instance(const PODSpec& spec, double m, std::size_t d, std::size_t max_order)
{
    DominanceOutcome o;
    const double lower = truncated_sum(spec, m, d, max_order);
    const auto cert = theorem1_certificate_order(spec, m);
    const std::size_t order = cert ? std::max<std::size_t>(*cert, max_order) : max_order;
    if (order > 5000) {
        return o;
    }
    const Theorem1Bound t1 = theorem1_bound(spec, m, order);
    o.certified = t1.certified;
    o.gap = lower - t1.log_value;
    o.ok = log_le(lower, t1.log_value);
    return o;
}

PODSpec random_summable_pod(SplitMix64& rng)
{
    if (rng.below(2) == 0) {
        const std::size_t d = 1 + rng.below(30);
        return {random_gamma(rng, d), WeightSequence::explicit_values(random_weights(rng, d))};
    }
    static constexpr double kSigmas[] = {0.0, 0.5, 1.0};
    const double sigma = kSigmas[rng.below(3)];
    const double rho = std::max(1.3, sigma + rng.uniform(0.5, 3.0));
    return {OrderProfile::factorial_power(sigma), WeightSequence::poly_decay(rng.uniform(0.1, 2.0), rho)};
}

double log_uniform(SplitMix64& rng, double lo, double hi)
{
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

void enumerate_spod(const SPODSpec& spec, std::size_t j, std::size_t d, std::size_t size, std::size_t weight,
                    double product, std::size_t max_order, const std::vector<double>& m_pow,
                    const std::vector<double>& gamma, double& acc)
{
    if (j > d) {
        if (size <= max_order) {
            acc += gamma[weight] * m_pow[size] * product;
        }
        return;
    }
    enumerate_spod(spec, j + 1, d, size, weight, product, max_order, m_pow, gamma, acc);
    if (size == max_order) {
        return;
    }
    for (std::size_t k = 1; k <= spec.alpha(); ++k) {
        enumerate_spod(spec, j + 1, d, size + 1, weight + k, product * spec.upsilon(k).term(j), max_order, m_pow,
                       gamma, acc);
    }
}

} // namespace

double spod_enumerate(const SPODSpec& spec, double m, std::size_t d, std::size_t max_order)
{
    std::vector<double> m_pow(max_order + 1, 1.0);
    for (std::size_t l = 1; l <= max_order; ++l) {
        m_pow[l] = m_pow[l - 1] * m;
    }
    const auto log_gamma = spec.gamma().log_values(spec.alpha() * max_order);
    std::vector<double> gamma(log_gamma.size());
    std::transform(log_gamma.begin(), log_gamma.end(), gamma.begin(), [](double x) { return std::exp(x); });
    double acc = 0.0;
    enumerate_spod(spec, 1, d, 0, 0, 1.0, max_order, m_pow, gamma, acc);
    return safe_log(acc);
}

std::vector<CheckResult> lemma2_suite(const Options& opts)
{
    std::vector<CheckResult> out;
    const std::size_t n = opts.n;

    std::vector<Lemma2Outcome> chain(n);
    parallel_for(n, [&](std::size_t i) {
        SplitMix64 rng(stream_seed(opts.seed, kLemma2Stream + i));
        const std::size_t d = 1 + rng.below(30);
        const auto seq = WeightSequence::explicit_values(random_weights(rng, d));
        chain[i] = lemma2_instance(seq, 1 + rng.below(d));
    });
    std::size_t fine_bad = 0, coarse_bad = 0, identity_bad = 0, identity_n = 0;
    double worst_residual = 0.0;
    for (const auto& o : chain) {
        fine_bad += o.fine_ok ? 0 : 1;
        coarse_bad += o.coarse_ok ? 0 : 1;
        if (o.identity_checked) {
            ++identity_n;
            identity_bad += o.identity_ok ? 0 : 1;
            worst_residual = std::max(worst_residual, o.residual);
        }
    }
    out.push_back({"lemma2.exact_le_fine", fine_bad == 0, count_text(fine_bad, n), "0 violations"});
    out.push_back({"lemma2.fine_le_coarse", coarse_bad == 0, count_text(coarse_bad, n), "0 violations"});
    out.push_back({"lemma2.telescoping_identity", identity_bad == 0,
                   "max residual " + fmt("%.3e", worst_residual) + " over " + std::to_string(identity_n),
                   "residual <= 1e-10"});

    std::vector<DominanceOutcome> dom(n);
    parallel_for(n, [&](std::size_t i) {
        SplitMix64 rng(stream_seed(opts.seed, kDominanceStream + i));
        const PODSpec spec = random_summable_pod(rng);
        const double m = log_uniform(rng, 0.01, 20.0);
        const std::size_t d = 1 + rng.below(40);
        const std::size_t order = 1 + rng.below(std::min<std::size_t>(d, 20));
        dom[i] = dominance_instance(spec, m, d, order);
    });
    std::size_t dom_bad = 0, certified = 0;
    for (const auto& o : dom) {
        dom_bad += o.ok ? 0 : 1;
        certified += o.certified ? 1 : 0;
    }
    out.push_back({"theorem1.dominates_truncated", dom_bad == 0,
                   count_text(dom_bad, n) + " (" + std::to_string(certified) + " certified finite)",
                   "0 violations"});

    if (opts.spec) {
        if (const auto* pod = std::get_if<PODSpec>(&*opts.spec)) {
            if (pod->upsilon.is_zero()) {
                out.push_back({"spec.lemma2", true, "zero weights: e_l = 0 for l >= 1", "trivial"});
            } else {
                std::size_t bad = 0;
                const std::size_t max_l = std::min<std::size_t>(8, pod->upsilon.support_size().value_or(8));
                for (std::size_t l = 1; l <= max_l; ++l) {
                    const auto tails = pod->upsilon.tail_sums(l + 1);
                    const double fine = lemma2_bound_fine(pod->upsilon, l, tails);
                    const double coarse = lemma2_bound_coarse(pod->upsilon, l, tails);
                    const std::size_t d = pod->upsilon.support_size().value_or(4096);
                    const double head = sym_row(pod->upsilon, d, l)[l];
                    bad += (log_le(head, fine) && log_le(fine, coarse)) ? 0 : 1;
                }
                out.push_back({"spec.lemma2", bad == 0, count_text(bad, max_l), "0 violations"});
            }
            std::size_t bad = 0;
            for (double m : {0.5, 1.0, 2.0}) {
                const std::size_t d = std::max<std::size_t>(1, pod->upsilon.support_size().value_or(64));
                bad += dominance_instance(*pod, m, d, std::min<std::size_t>(d, 16)).ok ? 0 : 1;
            }
            out.push_back({"spec.theorem1_dominance", bad == 0, count_text(bad, 3), "0 violations"});
        }
    }
    return out;
}

std::vector<CheckResult> spod_reduction_suite(const Options& opts)
{
    std::vector<CheckResult> out;

    // Exhaustive injectivity over v in {1..5}, alpha <= 3.
    std::size_t pairs = 0, collisions = 0, size_bad = 0;
    for (std::size_t alpha = 1; alpha <= 3; ++alpha) {
        std::set<std::vector<std::size_t>> images;
        for (unsigned mask = 0; mask < 32; ++mask) {
            std::vector<std::size_t> v;
            for (std::size_t j = 1; j <= 5; ++j) {
                if (mask & (1u << (j - 1))) {
                    v.push_back(j);
                }
            }
            std::vector<std::size_t> nu(v.size(), 1);
            for (;;) {
                const auto image = reduction_map(v, nu, alpha);
                ++pairs;
                collisions += images.insert(image).second ? 0 : 1;
                size_bad += image.size() == std::accumulate(nu.begin(), nu.end(), std::size_t{0}) ? 0 : 1;
                std::size_t pos = 0;
                while (pos < nu.size() && nu[pos] == alpha) {
                    nu[pos++] = 1;
                }
                if (pos == nu.size()) {
                    break;
                }
                ++nu[pos];
            }
        }
    }
    out.push_back({"spod.reduction_injective", collisions == 0, count_text(collisions, pairs, "collisions"),
                   "0 collisions"});
    out.push_back({"spod.reduction_cardinality", size_bad == 0, count_text(size_bad, pairs), "|v'| = |nu|"});

    // Per-term domination for m in [1, 10].
    const std::size_t n = opts.n;
    std::vector<double> gaps(n);
    parallel_for(n, [&](std::size_t i) {
        SplitMix64 rng(stream_seed(opts.seed, kSpodStream + i));
        const std::size_t alpha = 1 + rng.below(3);
        const std::size_t d = 1 + rng.below(6);
        const SPODSpec spec = random_spod(rng, alpha, d);
        const WeightSequence reduced = reduced_upsilon(spec);
        std::vector<std::size_t> v;
        while (v.empty()) {
            for (std::size_t j = 1; j <= d; ++j) {
                if (rng.below(2)) {
                    v.push_back(j);
                }
            }
        }
        std::vector<std::size_t> nu(v.size());
        for (auto& x : nu) {
            x = 1 + rng.below(alpha);
        }
        const DominationSample s = domination_terms(spec, reduced, v, nu, rng.uniform(1.0, 10.0));
        gaps[i] = s.log_lhs == kNegInf ? kNegInf : s.log_lhs - s.log_rhs;
    });
    const std::size_t dom_bad =
        static_cast<std::size_t>(std::count_if(gaps.begin(), gaps.end(), [](double g) { return g > kLogSlack; }));
    out.push_back({"spod.per_term_domination", dom_bad == 0, count_text(dom_bad, n), "0 violations, m in [1, 10]"});

    // Aggregate domination and agreement with enumeration on small instances.
    const std::size_t small = std::max<std::size_t>(1, n / 10);
    std::vector<char> agg_ok(small), dp_ok(small);
    std::vector<double> rel_err(small);
    parallel_for(small, [&](std::size_t i) {
        SplitMix64 rng(stream_seed(opts.seed, kSpodStream + n + i));
        const std::size_t alpha = 1 + rng.below(3);
        const std::size_t d = 1 + rng.below(6);
        const SPODSpec spec = random_spod(rng, alpha, d);
        const SpodTable table = build_spod_table(spec, d, d);
        const WeightSequence reduced = reduced_upsilon(spec);
        const std::size_t dd = alpha * d;
        const auto row = sym_row(reduced, dd, dd);
        bool ok = true;
        for (std::size_t l = 1; l <= d; ++l) {
            for (std::size_t w = l; w <= alpha * l; ++w) {
                ok = ok && log_le(table.entry(l, w), row[w]);
            }
        }
        agg_ok[i] = ok;
        const double m = log_uniform(rng, 0.1, 10.0);
        const double dp = spod_truncated_sum(spec, m, d, d);
        const double brute = spod_enumerate(spec, m, d, d);
        rel_err[i] = std::abs(std::expm1(dp - brute));
        dp_ok[i] = rel_err[i] <= 1e-10;
    });
    const auto bad_of = [](const std::vector<char>& v) {
        return static_cast<std::size_t>(std::count(v.begin(), v.end(), 0));
    };
    out.push_back({"spod.aggregate_domination", bad_of(agg_ok) == 0, count_text(bad_of(agg_ok), small),
                   "0 violations"});
    out.push_back({"spod.table_matches_enumeration", bad_of(dp_ok) == 0,
                   "max rel err " + fmt("%.3e", *std::max_element(rel_err.begin(), rel_err.end())) + " over " +
                       std::to_string(small),
                   "rel err <= 1e-10"});

    if (opts.spec) {
        if (const auto* sp = std::get_if<SPODSpec>(&*opts.spec)) {
            const SpodSummability s = spod_summability(*sp, opts.seed, std::min<std::size_t>(n, 1000));
            if (s.holds) {
                out.push_back({"spec.per_term_domination", s.violations == 0,
                               count_text(s.violations, s.samples_checked), "0 violations"});
            } else {
                out.push_back({"spec.per_term_domination", true,
                               "sufficient condition fails; domination not applicable", "trivial"});
            }
        }
    }
    return out;
}

std::vector<CheckResult> mc_suite(const Options& opts)
{
    std::vector<CheckResult> out;
    constexpr std::size_t kRuns = 100;
    constexpr std::size_t kAtoms = 20;
    std::size_t within = 0, chain_bad = 0;
    double worst_z = 0.0;
    McEstimate first;
    McConfig first_cfg;
    for (std::size_t i = 0; i < kRuns; ++i) {
        SplitMix64 rng(stream_seed(opts.seed, kMcStream + i));
        std::vector<double> atoms(kAtoms);
        for (auto& x : atoms) {
            x = rng.uniform(0.05, 1.0);
        }
        McConfig cfg;
        cfg.n_samples = opts.mc_samples;
        cfg.seed = stream_seed(opts.seed, kMcStream + kRuns + i);
        cfg.ell = 2 + i % 3;
        cfg.seq = WeightSequence::explicit_values(atoms);
        const McEstimate est = distinctness_estimate(cfg);
        const double exact = distinctness_exact(cfg.seq, cfg.ell);
        const double z = est.standard_error > 0.0 ? std::abs(est.estimate - exact) / est.standard_error
                                                  : (est.estimate == exact ? 0.0 : kPosInf);
        worst_z = std::max(worst_z, z);
        within += z <= 3.0 ? 1 : 0;
        chain_bad += chain_bound_check(cfg.seq, cfg.ell).dominated ? 0 : 1;
        if (i == 0) {
            first = est;
            first_cfg = cfg;
        }
    }
    out.push_back({"mc.within_3_stderr", within >= 99,
                   std::to_string(within) + " of " + std::to_string(kRuns) + " runs (max |z| " +
                       fmt("%.3f", worst_z) + ")",
                   ">= 99 of 100"});
    out.push_back({"mc.chain_dominance", chain_bad == 0, count_text(chain_bad, kRuns), "0 violations"});

    first_cfg.workers = 1;
    const McEstimate again = distinctness_estimate(first_cfg);
    out.push_back({"mc.seed_determinism", again.hits == first.hits,
                   std::to_string(first.hits) + " vs " + std::to_string(again.hits) + " hits (parallel vs 1 worker)",
                   "identical hit counts"});

    if (opts.spec) {
        const WeightSequence* seq = nullptr;
        if (const auto* pod = std::get_if<PODSpec>(&*opts.spec)) {
            seq = &pod->upsilon;
        }
        const bool sampleable = seq && !seq->is_zero() &&
                                std::holds_alternative<WeightSequence::Explicit>(seq->law()) &&
                                seq->tail_sum(1).lo > 0.0;
        if (!sampleable) {
            out.push_back({"spec.mc", true, "no explicit positive-mass weights to sample", "trivial"});
        } else {
            McConfig cfg;
            cfg.n_samples = opts.mc_samples;
            cfg.seed = opts.seed;
            cfg.ell = std::min<std::size_t>(2, *seq->support_size());
            cfg.seq = *seq;
            const McEstimate est = distinctness_estimate(cfg);
            const double exact = distinctness_exact(cfg.seq, cfg.ell);
            const double diff = std::abs(est.estimate - exact);
            const bool ok = diff <= 4.0 * est.standard_error || diff == 0.0;
            out.push_back({"spec.mc", ok, "|estimate - exact| = " + fmt("%.3e", diff) + ", stderr " +
                                              fmt("%.3e", est.standard_error),
                           "within 4 stderr"});
        }
    }
    return out;
}

std::vector<CheckResult> run_suite(std::string_view suite, const Options& opts)
{
    if (suite == "lemma2") {
        return lemma2_suite(opts);
    }
    if (suite == "spod-reduction") {
        return spod_reduction_suite(opts);
    }
    if (suite == "mc") {
        return mc_suite(opts);
    }
    if (suite == "all") {
        auto out = lemma2_suite(opts);
        for (auto&& part : {spod_reduction_suite(opts), mc_suite(opts)}) {
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw InvalidArgument("unknown suite '" + std::string(suite) + "' (expected lemma2, spod-reduction, mc or all)");
}

} // namespace podsum::verify
