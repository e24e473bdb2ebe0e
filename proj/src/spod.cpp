#include "podsum/spod.hpp"

#include "podsum/asymptotics.hpp"
#include "podsum/errors.hpp"
#include "podsum/parallel.hpp"
#include "podsum/rng.hpp"
#include "podsum/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

namespace podsum {

namespace {

void require_positive_m(double m)
{
    if (!std::isfinite(m) || !(m > 0.0)) {
        throw InvalidArgument("evaluation point m must be finite and positive");
    }
}

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<double> log_terms_at(const SPODSpec& spec, std::size_t j)
{
    std::vector<double> out(spec.alpha());
    for (std::size_t k = 1; k <= spec.alpha(); ++k) {
        out[k - 1] = safe_log(spec.upsilon(k).term(j));
    }
    return out;
}

// Longest support over the grid, or nullopt if some row has infinite support.
std::optional<std::size_t> grid_support(const SPODSpec& spec)
{
    std::size_t n = 0;
    for (const auto& row : spec.grid()) {
        const auto s = row.support_size();
        if (!s) {
            return std::nullopt;
        }
        n = std::max(n, *s);
    }
    return n;
}

// log of the order-l, weight-l' slice summed against Gamma, from a table and
// optional corrections for coordinates beyond the prefix.
struct TailCorrections {
    std::vector<double> log_single; // index k: log of a lower bound on sum_{j>d} Upsilon_{j,k}
    std::vector<double> log_pair;   // index s: pairs beyond d with nu weights summing to s
};

TailCorrections tail_corrections(const SPODSpec& spec, std::size_t d)
{
    const std::size_t alpha = spec.alpha();
    TailCorrections c;
    std::vector<double> single(alpha + 1, 0.0);
    for (std::size_t k = 1; k <= alpha; ++k) {
        single[k] = spec.upsilon(k).tail_sum(d + 1).lo;
    }
    std::vector<double> pair(2 * alpha + 1, 0.0);
    for (std::size_t k1 = 1; k1 <= alpha; ++k1) {
        for (std::size_t k2 = 1; k2 <= alpha; ++k2) {
            const auto prod = spec.upsilon(k1).product_with(spec.upsilon(k2));
            if (!prod) {
                continue;
            }
            // Ordered pairs of distinct coordinates count each (set, nu) twice.
            const double diag = prod->tail_sum(d + 1).hi;
            pair[k1 + k2] += 0.5 * std::max(0.0, single[k1] * single[k2] - diag);
        }
    }
    c.log_single.resize(alpha + 1);
    c.log_pair.resize(2 * alpha + 1);
    std::transform(single.begin(), single.end(), c.log_single.begin(), safe_log);
    std::transform(pair.begin(), pair.end(), c.log_pair.begin(), safe_log);
    c.log_single[0] = kNegInf;
    return c;
}

double corrected_value(const SpodTable& table, std::span<const double> log_gamma, double log_m,
                       const TailCorrections& corr, double* top_share)
{
    const std::size_t alpha = table.alpha();
    const std::size_t max_order = table.max_order();
    double acc = log_gamma[0];
    double top = kNegInf;
    for (std::size_t l = 1; l <= max_order; ++l) {
        double inner = kNegInf;
        for (std::size_t w = l; w <= alpha * l; ++w) {
            double slice = table.entry(l, w);
            for (std::size_t k = 1; k <= alpha && k <= w; ++k) {
                slice = log_add_exp(slice, corr.log_single[k] + table.entry(l - 1, w - k));
            }
            if (l >= 2) {
                for (std::size_t s = 2; s <= 2 * alpha && s <= w; ++s) {
                    slice = log_add_exp(slice, corr.log_pair[s] + table.entry(l - 2, w - s));
                }
            }
            inner = log_add_exp(inner, log_gamma[w] + slice);
        }
        top = static_cast<double>(l) * log_m + inner;
        acc = log_add_exp(acc, top);
    }
    if (top_share) {
        *top_share = acc == kNegInf ? 0.0 : std::exp(top - acc);
    }
    return acc;
}

} // namespace

SpodTable::SpodTable(std::size_t alpha, std::size_t max_order)
    : alpha_(alpha), max_order_(max_order), values_((max_order + 1) * (alpha * max_order + 1), kNegInf)
{
    if (alpha == 0) {
        throw InvalidArgument("alpha must be at least 1");
    }
    values_[0] = 0.0;
}

double SpodTable::entry(std::size_t order, std::size_t weight) const
{
    if (order > max_order_ || weight < order || weight > alpha_ * order) {
        return kNegInf;
    }
    return values_[order * width() + weight];
}

void SpodTable::push(std::span<const double> log_terms)
{
    if (log_terms.size() != alpha_) {
        throw InvalidArgument("one log term per smoothness index k is required");
    }
    ++d_;
    const std::size_t w = width();
    for (std::size_t l = std::min(d_, max_order_); l > 0; --l) {
        double* row = values_.data() + l * w;
        const double* prev = values_.data() + (l - 1) * w;
        for (std::size_t lp = alpha_ * l; lp >= l; --lp) {
            double acc = row[lp];
            for (std::size_t k = 1; k <= alpha_; ++k) {
                if (lp < k || lp - k < l - 1 || lp - k > alpha_ * (l - 1)) {
                    continue;
                }
                const double lt = log_terms[k - 1];
                if (lt == kNegInf) {
                    continue;
                }
                acc = log_add_exp(acc, lt + prev[lp - k]);
            }
            row[lp] = acc;
        }
    }
}

SpodTable build_spod_table(const SPODSpec& spec, std::size_t d, std::size_t max_order)
{
    if (max_order > d) {
        throw InvalidArgument("max_order L must not exceed prefix length d");
    }
    SpodTable table(spec.alpha(), max_order);
    for (std::size_t j = 1; j <= d; ++j) {
        table.push(log_terms_at(spec, j));
    }
    return table;
}

double spod_truncated_sum(const SPODSpec& spec, double m, std::size_t d, std::size_t max_order)
{
    require_positive_m(m);
    const SpodTable table = build_spod_table(spec, d, max_order);
    const std::size_t alpha = spec.alpha();
    const auto log_gamma = spec.gamma().log_values(alpha * max_order);
    const double log_m = std::log(m);
    double acc = log_gamma[0];
    for (std::size_t l = 1; l <= max_order; ++l) {
        double inner = log_gamma[l] + table.entry(l, l);
        for (std::size_t w = l + 1; w <= alpha * l; ++w) {
            inner = log_add_exp(inner, log_gamma[w] + table.entry(l, w));
        }
        acc = log_add_exp(acc, static_cast<double>(l) * log_m + inner);
    }
    return acc;
}

AdaptiveResult spod_adaptive_sum(const SPODSpec& spec, double m, double rtol, std::size_t max_d)
{
    require_positive_m(m);
    if (!(rtol > 0.0)) {
        throw InvalidArgument("rtol must be positive");
    }
    const SpodClassification cls = spod_classify(spec);
    if (cls.status != SpodClass::Summable) {
        throw NotSummable(cls.reason);
    }
    if (const auto n = grid_support(spec)) {
        const std::size_t d = std::max<std::size_t>(1, *n);
        return {spod_truncated_sum(spec, m, d, d), Truncation{d, d, 0.0}};
    }

    const double log_m = std::log(m);
    std::size_t d = 1;
    std::size_t order = 1;
    double prev = kNegInf;
    bool have_prev = false;
    int streak = 0;
    for (;;) {
        const SpodTable table = build_spod_table(spec, d, order);
        const auto log_gamma = spec.gamma().log_values(spec.alpha() * order);
        double top_share = 0.0;
        const double value = corrected_value(table, log_gamma, log_m, tail_corrections(spec, d), &top_share);
        if (have_prev) {
            const double rel = (value == prev) ? 0.0 : std::abs(std::expm1(prev - value));
            streak = rel < rtol ? streak + 1 : 0;
            if (streak >= 2) {
                return {value, Truncation{d, order, rel}};
            }
        }
        prev = value;
        have_prev = true;
        if (2 * d > max_d) {
            throw BudgetExceeded("adaptive SPOD sum did not reach rtol " + format_number(rtol) +
                                     " within d <= " + std::to_string(max_d),
                                 value, d, order);
        }
        d *= 2;
        order = std::min(d, top_share > rtol ? 2 * order : order + 8);
    }
}

SpodClassification spod_classify(const SPODSpec& spec)
{
    if (spec.gamma().support_size()) {
        return {SpodClass::Summable, "Gamma has finite support, so S_gamma(m) is a polynomial in m"};
    }
    try {
        const PODSpec reduced{spec.gamma(), reduced_upsilon(spec)};
        const Classification c = classify(reduced);
        if (c.summable) {
            return {SpodClass::Summable, "the reduced POD family dominates and is summable: " + c.reason};
        }
    } catch (const NotSummable&) {
        // fall through to the embedded k = 1 family
    }
    const auto sigma = spec.gamma().sigma();
    if (const auto* p = std::get_if<WeightSequence::PolyDecay>(&spec.upsilon(1).law()); sigma && p) {
        if (p->rho <= *sigma) {
            return {SpodClass::NotSummable,
                    "the embedded k = 1 POD family has rho = " + format_number(p->rho) + " <= sigma = " +
                        format_number(*sigma) + "; S_gamma(m) diverges for large m (requires rho > sigma)"};
        }
    }
    return {SpodClass::Undetermined,
            "neither the reduced-family sufficient condition nor the embedded k = 1 divergence applies"};
}

std::vector<std::size_t> reduction_map(std::span<const std::size_t> v, std::span<const std::size_t> nu,
                                       std::size_t alpha)
{
    if (v.size() != nu.size()) {
        throw InvalidArgument("v and nu must have the same length");
    }
    if (alpha == 0) {
        throw InvalidArgument("alpha must be at least 1");
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) {
            throw InvalidArgument("coordinates are 1-based");
        }
        if (nu[i] < 1 || nu[i] > alpha) {
            throw InvalidArgument("nu_j must lie in {1, ..., alpha}");
        }
        for (std::size_t k = 1; k <= nu[i]; ++k) {
            out.push_back(alpha * (v[i] - 1) + k);
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw InvalidArgument("v must not repeat a coordinate");
    }
    return out;
}

WeightSequence reduced_upsilon(const SPODSpec& spec)
{
    const std::size_t alpha = spec.alpha();
    if (alpha == 1) {
        return spec.upsilon(1);
    }
    if (const auto n = grid_support(spec)) {
        if (*n == 0) {
            return WeightSequence::zero();
        }
        std::vector<double> values(alpha * *n);
        for (std::size_t j = 1; j <= *n; ++j) {
            double best = 0.0;
            for (std::size_t k = 1; k <= alpha; ++k) {
                best = std::max(best, std::pow(spec.upsilon(k).term(j), 1.0 / static_cast<double>(k)));
            }
            std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(alpha * (j - 1)), alpha, best);
        }
        return WeightSequence::explicit_values(std::move(values));
    }

    // Common decay exponent and scale over the decaying rows.
    double rho = kPosInf;
    double c_max = 0.0;
    for (std::size_t k = 1; k <= alpha; ++k) {
        const double inv_k = 1.0 / static_cast<double>(k);
        const auto& law = spec.upsilon(k).law();
        if (const auto* p = std::get_if<WeightSequence::PolyDecay>(&law)) {
            rho = std::min(rho, p->rho * inv_k);
            c_max = std::max(c_max, std::pow(p->c, inv_k));
        } else if (const auto* b = std::get_if<WeightSequence::Blocked>(&law)) {
            rho = std::min(rho, b->rho * inv_k);
            c_max = std::max(c_max, std::pow(b->c * std::pow(static_cast<double>(b->block), b->rho), inv_k));
        }
    }
    if (!(rho > 1.0)) {
        throw NotSummable("reduced sequence decays like j^-" + format_number(rho) +
                          ", which is not summable (sum_j Upsilon_{j,k}^(1/k) diverges)");
    }
    for (std::size_t k = 1; k <= alpha; ++k) {
        const auto* e = std::get_if<WeightSequence::Explicit>(&spec.upsilon(k).law());
        if (!e) {
            continue;
        }
        for (std::size_t j = 1; j <= e->values.size(); ++j) {
            const double root = std::pow(e->values[j - 1], 1.0 / static_cast<double>(k));
            c_max = std::max(c_max, root * std::pow(static_cast<double>(j), rho) * (1.0 + 4.0 * kUnitRoundoff));
        }
    }
    return WeightSequence::blocked(c_max, rho, alpha);
}

DominationSample domination_terms(const SPODSpec& spec, const WeightSequence& reduced,
                                  std::span<const std::size_t> v, std::span<const std::size_t> nu, double m)
{
    const auto vp = reduction_map(v, nu, spec.alpha());
    DominationSample s;
    s.v.assign(v.begin(), v.end());
    s.nu.assign(nu.begin(), nu.end());
    s.m = m;
    const double log_m = std::log(m);
    const std::size_t weight = std::accumulate(nu.begin(), nu.end(), std::size_t{0});
    s.log_lhs = log_factorial(static_cast<double>(weight)) + static_cast<double>(v.size()) * log_m;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s.log_lhs += safe_log(spec.upsilon(nu[i]).term(v[i]));
    }
    s.log_rhs = log_factorial(static_cast<double>(vp.size())) + static_cast<double>(vp.size()) * log_m;
    for (std::size_t jp : vp) {
        s.log_rhs += safe_log(reduced.term(jp));
    }
    return s;
}

SpodSummability spod_summability(const SPODSpec& spec, std::uint64_t seed, std::size_t samples)
{
    const std::size_t alpha = spec.alpha();
    SpodSummability out;
    Interval total{0.0, 0.0};
    bool finite = true;
    for (std::size_t k = 1; k <= alpha; ++k) {
        const double inv_k = 1.0 / static_cast<double>(k);
        const auto& law = spec.upsilon(k).law();
        if (const auto* e = std::get_if<WeightSequence::Explicit>(&law)) {
            CompensatedSum acc;
            for (double x : e->values) {
                acc.add(std::pow(x, inv_k));
            }
            total = total + Interval{acc.value(), acc.value()};
        } else if (const auto* p = std::get_if<WeightSequence::PolyDecay>(&law)) {
            if (p->rho * inv_k > 1.0) {
                total = total + power_tail(std::pow(p->c, inv_k), p->rho * inv_k, 1);
            } else {
                finite = false;
            }
        } else if (const auto* b = std::get_if<WeightSequence::Blocked>(&law)) {
            if (b->rho * inv_k > 1.0) {
                total = total + static_cast<double>(b->block) * power_tail(std::pow(b->c, inv_k), b->rho * inv_k, 1);
            } else {
                finite = false;
            }
        }
    }
    if (!finite) {
        out.holds = false;
        out.value = {total.lo, kPosInf};
        return out;
    }
    out.holds = true;
    out.value = total;

    const WeightSequence reduced = reduced_upsilon(spec);
    const std::size_t coords = grid_support(spec).value_or(50);
    const std::size_t pool = std::max<std::size_t>(1, coords);
    SplitMix64 rng(stream_seed(seed, 0));
    double worst_gap = kNegInf;
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t size = 1 + rng.below(std::min<std::size_t>(pool, 5));
        std::vector<std::size_t> all(pool);
        std::iota(all.begin(), all.end(), std::size_t{1});
        std::vector<std::size_t> v;
        for (std::size_t t = 0; t < size; ++t) {
            const std::size_t pick = t + rng.below(pool - t);
            std::swap(all[t], all[pick]);
            v.push_back(all[t]);
        }
        std::vector<std::size_t> nu(size);
        for (auto& x : nu) {
            x = 1 + rng.below(alpha);
        }
        const double m = rng.uniform(1.0, 10.0);
        DominationSample s = domination_terms(spec, reduced, v, nu, m);
        ++out.samples_checked;
        const double gap = s.log_lhs - s.log_rhs;
        // Relative slack 1e-12, i.e. an absolute slack of about 1e-12 in log space.
        if (s.log_lhs != kNegInf && gap > 1e-12) {
            ++out.violations;
        }
        if (s.log_lhs != kNegInf && gap > worst_gap) {
            worst_gap = gap;
            out.worst = std::move(s);
        }
    }
    return out;
}

double spod_c_prime(std::size_t alpha, double rho)
{
    if (alpha == 0 || !(rho > 1.0)) {
        throw InvalidArgument("C' needs alpha >= 1 and rho > 1");
    }
    const double a = static_cast<double>(alpha);
    // For J > 10 alpha, n = floor(J/alpha) + 1 >= 11 and J/alpha < n, so
    // (J/alpha)^(rho-1) zeta(rho, n) <= n^(rho-1) (n^-rho + n^(1-rho)/(rho-1)) <= 1/11 + 1/(rho-1).
    double sup = 1.0 / (rho - 1.0) + 0.1;
    for (std::size_t J = 1; J <= 10 * alpha; ++J) {
        const double ratio = static_cast<double>(J) / a;
        const double tail = power_tail(1.0, rho, J / alpha + 1).hi;
        sup = std::max(sup, std::pow(ratio, rho - 1.0) * tail);
    }
    return std::max(1.0, a * sup);
}

SpodGrowthConstants SpodGrowthConstants::make(std::size_t alpha, double rho, double sigma,
                                              std::vector<double> c_values)
{
    if (alpha == 0) {
        throw InvalidArgument("alpha must be at least 1");
    }
    if (c_values.size() != alpha) {
        throw InvalidArgument("need one constant c_k per k = 1..alpha");
    }
    for (double c : c_values) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw InvalidArgument("constants c_k must be positive");
        }
    }
    if (!(rho > 1.0) || !std::isfinite(rho)) {
        throw InvalidArgument("rho must exceed 1");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("sigma must be nonnegative");
    }
    if (rho <= sigma) {
        throw NotSummable("rho <= sigma: the embedded k = 1 POD family diverges for large m (requires rho > sigma)");
    }
    SpodGrowthConstants g;
    g.alpha = alpha;
    g.rho = rho;
    g.sigma = sigma;
    g.c_values = std::move(c_values);
    for (std::size_t k = 1; k <= alpha; ++k) {
        g.c_max = std::max(g.c_max, std::pow(g.c_values[k - 1], 1.0 / static_cast<double>(k)));
    }
    g.c_prime = spod_c_prime(alpha, rho);
    g.c_alpha_rho = std::exp(1.0) * std::pow(static_cast<double>(alpha), rho) * g.c_prime;
    const double e = 1.0 / (rho - sigma);
    const double star = std::ceil(std::pow(2.0 * g.c_alpha_rho * g.c_max, e));
    if (star > 1e6) {
        throw InvalidArgument("l_* = " + format_number(star) + " is too large to evaluate the upper bracket");
    }
    g.ell_star = static_cast<std::uint64_t>(star);
    g.lower_const = (rho - sigma) * std::pow(g.c_values[0], e);
    g.upper_const = (rho - sigma) * std::pow(g.c_alpha_rho * g.c_max, e);
    return g;
}

SPODSpec SpodGrowthConstants::family() const
{
    std::vector<WeightSequence> grid;
    for (std::size_t k = 1; k <= alpha; ++k) {
        grid.push_back(WeightSequence::poly_decay(c_values[k - 1], static_cast<double>(k) * rho));
    }
    return SPODSpec(alpha, OrderProfile::factorial_power(sigma), std::move(grid));
}

namespace {

SpodGrowthReport growth_points(const SpodGrowthConstants& g, std::span<const double> m_grid, std::size_t d,
                               std::size_t max_order, bool with_truncated)
{
    if (m_grid.empty()) {
        throw InvalidArgument("m grid must not be empty");
    }
    const ThetaSeries ts(g.rho - g.sigma);
    const double x = g.c_alpha_rho * g.c_max;
    // log sum_{l' >= l} x^l' / (l'!)^theta for l = 1..l_*, independent of m.
    std::vector<double> inner_tails(g.ell_star + 1, kNegInf);
    for (std::uint64_t l = 1; l <= g.ell_star; ++l) {
        inner_tails[l] = theta_series_tail(ts, x, l).log_upper();
    }
    const std::optional<SPODSpec> family = with_truncated ? std::optional<SPODSpec>(g.family()) : std::nullopt;

    SpodGrowthReport report;
    report.constants = g;
    report.points.resize(m_grid.size());
    parallel_for(m_grid.size(), [&](std::size_t i) {
        const double m = m_grid[i];
        require_positive_m(m);
        const double log_m = std::log(m);
        const double scale = std::exp(-log_m / ts.theta());
        SpodGrowthPoint p;
        p.m = m;
        p.lower = scale * theta_series_eval(ts, g.c_values[0] * m);

        double poly = kNegInf;
        for (std::uint64_t l = 1; l <= g.ell_star; ++l) {
            poly = log_add_exp(poly, static_cast<double>(l) * log_m + inner_tails[l]);
        }
        const double head = log_add_exp(0.0, 1.0 + poly);
        const double tail = std::log(2.0) + 1.0 + theta_series_tail(ts, x * m, g.ell_star + 1).log_upper();
        p.upper = scale * log_add_exp(head, tail);
        if (family) {
            p.truncated = scale * spod_truncated_sum(*family, m, d, max_order);
        }
        report.points[i] = p;
    });
    return report;
}

} // namespace

SpodGrowthReport spod_growth_bracket(const SpodGrowthConstants& constants, std::span<const double> m_grid)
{
    return growth_points(constants, m_grid, 0, 0, false);
}

SpodGrowthReport spod_growth_bracket(const SpodGrowthConstants& constants, std::span<const double> m_grid,
                                     std::size_t d, std::size_t max_order)
{
    if (max_order > d) {
        throw InvalidArgument("max_order L must not exceed prefix length d");
    }
    return growth_points(constants, m_grid, d, max_order, true);
}

ProbeReport divergence_probe(std::size_t k, const RawSequence& seq, std::span<const double> m_grid,
                             std::size_t max_order, std::size_t d)
{
    if (k == 0) {
        throw InvalidArgument("k must be at least 1");
    }
    if (max_order == 0 || max_order > d) {
        throw InvalidArgument("need 1 <= L <= d");
    }
    std::vector<double> terms(d);
    for (std::size_t j = 1; j <= d; ++j) {
        terms[j - 1] = seq.term(j);
    }
    const auto row = sym_row(terms, max_order);
    const double kk = static_cast<double>(k);

    ProbeReport report;
    report.k = k;
    report.d = d;
    for (double m : m_grid) {
        require_positive_m(m);
        const double log_m = std::log(m);
        double value = 0.0;
        double device = 0.0;
        bool increasing = true;
        for (std::size_t l = 1; l <= max_order; ++l) {
            const double dl = static_cast<double>(l);
            const double base = dl * log_m + row[l];
            const double next = log_add_exp(value, log_factorial(kk * dl) + base);
            device = log_add_exp(device, kk * log_factorial(dl) + base);
            increasing = increasing && next > value;
            value = next;
            report.device_holds = report.device_holds && value >= device;
            report.rows.push_back({m, l, value, device});
        }
        report.strictly_increasing.push_back(increasing);
    }
    return report;
}

} // namespace podsum
