#include "podsum/podsum.hpp"

#include "podsum/errors.hpp"
#include "podsum/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
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

// (c, rho) of a decaying law, with c scaled so that Upsilon_j <= c j^-rho.
struct DecayEnvelope {
    double c;
    double rho;
};

std::optional<DecayEnvelope> decay_envelope(const WeightSequence& seq)
{
    if (const auto* p = std::get_if<WeightSequence::PolyDecay>(&seq.law())) {
        return DecayEnvelope{p->c, p->rho};
    }
    if (const auto* b = std::get_if<WeightSequence::Blocked>(&seq.law())) {
        // ceil(j / block) >= j / block
        return DecayEnvelope{b->c * std::pow(static_cast<double>(b->block), b->rho), b->rho};
    }
    return std::nullopt;
}

// Order beyond which every term of the bounding series vanishes, if finite.
std::optional<std::size_t> terminating_order(const PODSpec& spec)
{
    std::optional<std::size_t> end = spec.upsilon.support_size();
    if (const auto g = spec.gamma.support_size()) {
        end = end ? std::min(*end, *g) : *g;
    }
    return end;
}

// Sum of head subsets plus those with one or two coordinates beyond d.
double tail_corrected_sum(const PODSpec& spec, double m, std::size_t d, std::size_t max_order,
                          std::span<const double> log_gamma, double* top_share)
{
    const auto row = sym_row(spec.upsilon, d, max_order);
    const double t1 = spec.upsilon.tail_sum(d + 1).lo;
    double t2 = 0.0;
    if (const auto sq = spec.upsilon.product_with(spec.upsilon)) {
        const double p2 = sq->tail_sum(d + 1).hi;
        t2 = std::max(0.0, 0.5 * (t1 * t1 - p2));
    }
    const double log_t1 = safe_log(t1);
    const double log_t2 = safe_log(t2);
    const double log_m = std::log(m);

    double acc = log_gamma[0];
    double top = kNegInf;
    for (std::size_t l = 1; l <= max_order; ++l) {
        double inner = log_add_exp(row[l], row[l - 1] + log_t1);
        if (l >= 2) {
            inner = log_add_exp(inner, row[l - 2] + log_t2);
        }
        top = static_cast<double>(l) * log_m + (log_gamma[l] + inner);
        acc = log_add_exp(acc, top);
    }
    if (top_share) {
        *top_share = acc == kNegInf ? 0.0 : std::exp(top - acc);
    }
    return acc;
}

} // namespace

Classification classify(const PODSpec& spec)
{
    if (const auto n = spec.upsilon.support_size()) {
        return {true, "Upsilon has finite support (" + std::to_string(*n) + " nonzero coordinates)"};
    }
    if (spec.gamma.support_size()) {
        return {true, "Gamma has finite support, so S_gamma(m) is a polynomial in m"};
    }
    const double sigma = *spec.gamma.sigma();
    const auto env = decay_envelope(spec.upsilon);
    if (env->rho > sigma) {
        return {true, "rho = " + format_number(env->rho) + " > sigma = " + format_number(sigma)};
    }
    return {false, "rho = " + format_number(env->rho) + " <= sigma = " + format_number(sigma) +
                       ": S_gamma(m) diverges for large m; summability for all m > 0 requires rho > sigma"};
}

double truncated_sum(const PODSpec& spec, double m, std::size_t d, std::size_t max_order)
{
    require_positive_m(m);
    if (max_order > d) {
        throw InvalidArgument("max_order L must not exceed prefix length d");
    }
    const auto row = sym_row(spec.upsilon, d, max_order);
    const auto log_gamma = spec.gamma.log_values(max_order);
    const double log_m = std::log(m);
    double acc = log_gamma[0];
    for (std::size_t l = 1; l <= max_order; ++l) {
        acc = log_add_exp(acc, static_cast<double>(l) * log_m + (log_gamma[l] + row[l]));
    }
    return acc;
}

AdaptiveResult adaptive_sum(const PODSpec& spec, double m, double rtol, std::size_t max_d)
{
    require_positive_m(m);
    if (!(rtol > 0.0)) {
        throw InvalidArgument("rtol must be positive");
    }
    const Classification cls = classify(spec);
    if (!cls.summable) {
        throw NotSummable(cls.reason);
    }
    if (const auto n = spec.upsilon.support_size()) {
        const std::size_t d = std::max<std::size_t>(1, *n);
        return {truncated_sum(spec, m, d, d), Truncation{d, d, 0.0}};
    }

    std::size_t d = 1;
    std::size_t order = 1;
    double prev = kNegInf;
    bool have_prev = false;
    int streak = 0;
    for (;;) {
        const auto log_gamma = spec.gamma.log_values(order);
        double top_share = 0.0;
        const double value = tail_corrected_sum(spec, m, d, order, log_gamma, &top_share);
        double rel = kPosInf;
        if (have_prev) {
            rel = (value == prev) ? 0.0 : std::abs(std::expm1(prev - value));
            streak = rel < rtol ? streak + 1 : 0;
            if (streak >= 2) {
                return {value, Truncation{d, order, rel}};
            }
        }
        prev = value;
        have_prev = true;
        if (2 * d > max_d) {
            throw BudgetExceeded("adaptive sum did not reach rtol " + format_number(rtol) +
                                     " within d <= " + std::to_string(max_d),
                                 value, d, order);
        }
        d *= 2;
        order = std::min(d, top_share > rtol ? 2 * order : order + 8);
    }
}

Interval product_weight_sum(const WeightSequence& seq, double m)
{
    require_positive_m(m);
    if (const auto n = seq.support_size()) {
        CompensatedSum acc;
        for (std::size_t j = 1; j <= *n; ++j) {
            acc.add(std::log1p(m * seq.term(j)));
        }
        const double v = acc.value();
        return {v, v};
    }
    double c = 0.0;
    double rho = 0.0;
    double copies = 1.0;
    if (const auto* p = std::get_if<WeightSequence::PolyDecay>(&seq.law())) {
        c = p->c;
        rho = p->rho;
    } else {
        const auto& b = std::get<WeightSequence::Blocked>(seq.law());
        c = b.c;
        rho = b.rho;
        copies = static_cast<double>(b.block);
    }

    // Partial sum below J, then x - x^2/2 <= log1p(x) <= x - x^2/2 + x^3/3
    // on the remainder with tail power sums p_k = sum_{j>=J} Upsilon_j^k.
    CompensatedSum partial;
    std::size_t next = 1;
    Interval result{};
    for (std::size_t first = 64;; first *= 2) {
        for (; next < first; ++next) {
            partial.add(std::log1p(m * c * std::pow(static_cast<double>(next), -rho)));
        }
        const Interval p1 = power_tail(c, rho, first);
        const Interval p2 = power_tail(c * c, 2.0 * rho, first);
        const Interval p3 = power_tail(c * c * c, 3.0 * rho, first);
        const double head = partial.value();
        const double lo = head + m * p1.lo - 0.5 * m * m * p2.hi;
        const double hi = head + m * p1.hi - 0.5 * m * m * p2.lo + m * m * m * p3.hi / 3.0;
        // Each log1p and pow carries a few ulps; compensation keeps the summation error at O(u).
        const double pad = 16.0 * kUnitRoundoff * std::abs(hi);
        result = {std::max(head, lo - pad), hi + pad};
        if (result.width() <= 1e-12 * std::max(result.lo, 1e-300) || first >= (std::size_t{1} << 24)) {
            break;
        }
    }
    return copies * result;
}

NaiveBound naive_bound(const PODSpec& spec, double m)
{
    require_positive_m(m);
    if (!spec.gamma.is_factorial_power(1.0)) {
        throw InvalidArgument("the geometric-series bound applies only to Gamma_l = l!");
    }
    const Interval zeta = spec.upsilon.tail_sum(1);
    if (m * zeta.hi < 1.0) {
        return {NaiveBound::Status::Finite, -std::log1p(-m * zeta.hi)};
    }
    if (m * zeta.lo >= 1.0) {
        return {NaiveBound::Status::Diverged, kPosInf};
    }
    return {NaiveBound::Status::Indeterminate, kPosInf};
}

std::optional<std::size_t> theorem1_certificate_order(const PODSpec& spec, double m)
{
    require_positive_m(m);
    if (terminating_order(spec)) {
        return std::size_t{1};
    }
    const double sigma = *spec.gamma.sigma();
    const auto env = decay_envelope(spec.upsilon);
    if (!(env->rho > sigma)) {
        return std::nullopt;
    }
    // Ratio of consecutive terms at order l is at most
    //   e m (l+1)^sigma max(Upsilon_{l+1}, zeta_{l+2}/(l+1)) <= e m c (l+1)^(sigma-rho) / min(rho-1, 1),
    // which decreases in l.
    const double log_k = 1.0 + std::log(m) + std::log(env->c) - std::log(std::min(env->rho - 1.0, 1.0));
    const double target = std::log(0.5) - 1e-12;
    const auto ratio_ok = [&](std::size_t l) {
        return log_k + (sigma - env->rho) * std::log(static_cast<double>(l + 1)) < target;
    };
    const double guess = std::exp((log_k - target) / (env->rho - sigma)) - 1.0;
    std::size_t l = guess < 1.0 ? 1 : static_cast<std::size_t>(std::min(guess, 1e15));
    while (l > 1 && ratio_ok(l - 1)) {
        --l;
    }
    while (!ratio_ok(l)) {
        ++l;
    }
    return l;
}

Theorem1Bound theorem1_bound(const PODSpec& spec, double m, std::size_t max_order)
{
    require_positive_m(m);
    if (max_order == 0) {
        throw InvalidArgument("max_order L must be positive");
    }
    const auto end = terminating_order(spec);
    const std::size_t last = end ? std::max(max_order, *end) : max_order;
    const auto log_gamma = spec.gamma.log_values(last);
    const auto tails = spec.upsilon.tail_sums(last + 1);
    const double log_m = std::log(m);

    Theorem1Bound out;
    out.max_order = max_order;
    double acc = log_gamma[0];
    double remainder = kNegInf;
    double log_prod = 0.0;
    double last_term = kNegInf;
    for (std::size_t l = 1; l <= last; ++l) {
        log_prod += safe_log(std::max(spec.upsilon.term(l), tails[l].hi / static_cast<double>(l)));
        const double t = static_cast<double>(l + 1) + log_gamma[l] + static_cast<double>(l) * log_m + log_prod;
        if (l <= max_order) {
            acc = log_add_exp(acc, t);
            last_term = t;
        } else {
            remainder = log_add_exp(remainder, t);
        }
    }
    out.log_partial = acc;

    if (end) {
        out.certified = true;
        out.ratio_certified_from = std::size_t{1};
        out.log_value = log_add_exp(acc, remainder);
        return out;
    }
    out.ratio_certified_from = theorem1_certificate_order(spec, m);
    if (out.ratio_certified_from && *out.ratio_certified_from <= max_order) {
        out.certified = true;
        // t_{L+k} <= 2^-k t_L, so the remainder is at most t_L.
        out.log_value = log_add_exp(acc, last_term);
    }
    return out;
}

SummabilityCertificate summability_classifier(const OrderProfile& gamma, const RawSequence& seq,
                                              std::span<const std::size_t> orders, double m)
{
    require_positive_m(m);
    if (!gamma.is_factorial_power(1.0)) {
        throw InvalidArgument("this classifier covers Gamma_l = l!; use the rate bracket for (l!)^sigma");
    }
    SummabilityCertificate cert;
    const auto finite = seq.as_weight_sequence();
    if (!finite) {
        cert.summable = false;
        cert.reason = "sum of Upsilon_j diverges; S_gamma(m) >= prod_j (1 + m Upsilon_j) = infinity";
        CompensatedSum log_prod;
        std::size_t next_mark = 10;
        for (std::size_t j = 1; j <= 1'000'000; ++j) {
            log_prod.add(std::log1p(m * seq.term(j)));
            if (j == next_mark) {
                cert.product_witness.emplace_back(j, log_prod.value());
                next_mark *= 10;
            }
        }
        return cert;
    }

    cert.summable = true;
    cert.reason = "sum of Upsilon_j is finite; the root-test sequence tends to 0";
    std::size_t max_l = 0;
    for (std::size_t l : orders) {
        max_l = std::max(max_l, l);
    }
    const auto tails = finite->tail_sums(max_l + 1);
    std::vector<double> prefix_log(max_l + 1, 0.0);
    for (std::size_t J = 1; J <= max_l; ++J) {
        const double factor = std::max(static_cast<double>(J) * finite->term(J), tails[J].hi);
        prefix_log[J] = prefix_log[J - 1] + safe_log(factor);
    }
    for (std::size_t l : orders) {
        if (l == 0) {
            throw InvalidArgument("root-test orders start at 1");
        }
        cert.root_test.emplace_back(l, std::exp(prefix_log[l] / static_cast<double>(l)));
    }
    return cert;
}

SummabilityCertificate summability_classifier(const PODSpec& spec, std::span<const std::size_t> orders, double m)
{
    return summability_classifier(spec.gamma, RawSequence(spec.upsilon), orders, m);
}

std::optional<std::size_t> product_witness_index(const RawSequence& seq, double m, double log_threshold,
                                                 std::size_t max_terms)
{
    require_positive_m(m);
    CompensatedSum log_prod;
    for (std::size_t j = 1; j <= max_terms; ++j) {
        log_prod.add(std::log1p(m * seq.term(j)));
        if (log_prod.value() > log_threshold) {
            return j;
        }
    }
    return std::nullopt;
}

BoundReport evaluate_bounds(const PODSpec& spec, double m, std::size_t max_order, double rtol, std::size_t max_d)
{
    BoundReport report;
    report.m = m;
    report.classification = classify(spec);
    if (!report.classification.summable) {
        throw NotSummable(report.classification.reason);
    }
    try {
        const AdaptiveResult r = adaptive_sum(spec, m, rtol, max_d);
        report.exact_lo = r.log_value;
        report.truncation = r.truncation;
    } catch (const BudgetExceeded& e) {
        report.exact_lo = e.last_log_value();
        report.exact_converged = false;
        report.truncation = Truncation{e.prefix_length(), e.max_order(), kPosInf};
    }
    report.theorem1 = theorem1_bound(spec, m, max_order);
    if (spec.gamma.is_factorial_power(1.0)) {
        report.naive = naive_bound(spec, m);
    }
    return report;
}

} // namespace podsum
