#ifndef QTEL_ANDREWS_HPP
#define QTEL_ANDREWS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include <qtel/errors.hpp>
#include <qtel/partition.hpp>
#include <qtel/qalgebra.hpp>
#include <qtel/telescope.hpp>

// Triples (tau, lambda, mu) whose signed weighted count is the k-th summand of
//
//   sum_{k=0}^{n} (q^{n-k+1}; q)_{2k} / (q^2; q^2)_k * q^{binom(n-k, 2)}
//     = (-1)^n q^{n^2} sum_{j=-n}^{n} (-1)^j q^{-j^2},
//
// together with the bijections and involutions proving
//
//   F_n + (q^{2n-1} - 1) F_{n-1} - q^{2n-3} F_{n-2} = 0     (n >= 2).
//
// P(n,k) for 0 <= k <= n:
//   tau    = staircase(n-k) = (n-k-1, ..., 1, 0)
//   lambda distinct, every part in [n-k+1, n+k]
//   mu     even parts, mu_1 <= 2k (any length)
// Weight: (-1)^{l(lambda)} q^{|tau| + |lambda| + |mu|}.
namespace qtel::andrews
{

struct Triple {
    Partition tau;
    Partition lambda;
    Partition mu;

    int size() const
    {
        return tau.weight() + lambda.weight() + mu.weight();
    }

    friend auto operator<=>(const Triple &, const Triple &) = default;
};

inline Monomial weight_of(const Triple &t)
{
    return {t.lambda.length() % 2 == 0 ? 1 : -1, 0, t.size()};
}

inline void to_json(nlohmann::json &j, const Triple &t)
{
    j = {{"tau", t.tau}, {"lambda", t.lambda}, {"mu", t.mu}};
}

using AndrewsObject = Marked<Triple>;

inline bool is_member(int n, int k, const Triple &t)
{
    if (k < 0 || k > n) {
        return false;
    }
    if (t.tau != staircase(n - k)) {
        return false;
    }
    if (!t.lambda.empty()) {
        if (!t.lambda.is_distinct() || t.lambda.largest() > n + k || t.lambda.smallest() < n - k + 1) {
            return false;
        }
    }
    return t.mu.is_even() && t.mu.largest() <= 2 * k;
}

// Members of P(n,k) with |tau| + |lambda| + |mu| <= cap, in lexicographic order.
inline std::vector<Triple> enum_P(int n, int k, int cap)
{
    qtel::detail::require(cap >= 0, "andrews::enum_P: cap must be nonnegative");
    std::vector<Triple> out;
    if (k < 0 || k > n) {
        return out;
    }
    Partition tau = staircase(n - k);
    const int tw = tau.weight();
    if (tw > cap) {
        return out;
    }
    const auto mus = enum_even_capped(2 * k, cap - tw);
    for (const auto &lambda : enum_distinct_range(n - k + 1, n + k)) {
        const int budget = cap - tw - lambda.weight();
        if (budget < 0) {
            continue;
        }
        for (const auto &mu : mus) {
            if (mu.weight() <= budget) {
                out.push_back({tau, lambda, mu});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Number of objects visited and the signed weighted count of
// P(n,0) u ... u P(n,n), truncated at q^cap.
struct SeriesCount {
    TruncatedSeries series;
    std::size_t members = 0;
};

inline SeriesCount F_trunc_counted(int n, int cap)
{
    qtel::detail::require(n >= 0, "andrews::F_trunc: n must be nonnegative");
    qtel::detail::require(cap >= 0, "andrews::F_trunc: cap must be nonnegative");
    std::vector<long long> acc(static_cast<std::size_t>(cap) + 1, 0);
    std::size_t members = 0;
    for (int k = 0; k <= n; ++k) {
        const int tw = (n - k) * (n - k - 1) / 2;
        if (tw > cap) {
            continue;
        }
        auto mus = enum_even_capped(2 * k, cap - tw);
        std::vector<int> mu_weights;
        mu_weights.reserve(mus.size());
        for (const auto &mu : mus) {
            mu_weights.push_back(mu.weight());
        }
        std::sort(mu_weights.begin(), mu_weights.end());
        for (const auto &lambda : enum_distinct_range(n - k + 1, n + k)) {
            const int base = tw + lambda.weight();
            if (base > cap) {
                continue;
            }
            const long long sign = lambda.length() % 2 == 0 ? 1 : -1;
            for (int w : mu_weights) {
                if (base + w > cap) {
                    break;
                }
                acc[static_cast<std::size_t>(base + w)] += sign;
                ++members;
            }
        }
    }
    TruncatedSeries s(cap);
    for (int e = 0; e <= cap; ++e) {
        s.add(e, Integer(acc[static_cast<std::size_t>(e)]));
    }
    return {std::move(s), members};
}

inline TruncatedSeries F_trunc(int n, int cap)
{
    return F_trunc_counted(n, cap).series;
}

// --- classification

enum class ClassTag {
    embedded, // lambda_1 <= n+k-2, mu_1 <= 2k-2: the copy of P(n-1,k-1)
    A,        // lambda_1 <= n+k-2, mu_1 = 2k
    B,        // exactly one of n+k, n+k-1 in lambda
    C,        // both n+k and n+k-1 in lambda
    A_prime,  // (in P(n-2,k)) lambda_l >= n-k+1
    B_prime,  // exactly one of n-k, n-k-1 in lambda
    C_prime,  // both n-k and n-k-1 in lambda, mu_1 = 2k
    D,        // both n-k and n-k-1 in lambda, mu_1 < 2k
};

inline std::string_view to_string(ClassTag t)
{
    switch (t) {
        case ClassTag::embedded:
            return "embedded";
        case ClassTag::A:
            return "A";
        case ClassTag::B:
            return "B";
        case ClassTag::C:
            return "C";
        case ClassTag::A_prime:
            return "A'";
        case ClassTag::B_prime:
            return "B'";
        case ClassTag::C_prime:
            return "C'";
        case ClassTag::D:
            return "D";
    }
    return "?";
}

// Class of a member of P(n,k), 1 <= k <= n.
inline ClassTag classify(int n, int k, const Triple &t)
{
    qtel::detail::require(k >= 1 && k <= n, "andrews::classify: need 1 <= k <= n");
    qtel::detail::require(is_member(n, k, t), "andrews::classify: triple is not in P(n,k)");
    const bool top = t.lambda.contains(n + k);
    const bool second = t.lambda.contains(n + k - 1);
    if (top && second) {
        return ClassTag::C;
    }
    if (top || second) {
        return ClassTag::B;
    }
    return t.mu.largest() == 2 * k ? ClassTag::A : ClassTag::embedded;
}

// Class of a member of P(n-2,k), 0 <= k <= n-2.
inline ClassTag classify_codomain(int n, int k, const Triple &t)
{
    qtel::detail::require(k >= 0 && k <= n - 2, "andrews::classify_codomain: need 0 <= k <= n-2");
    qtel::detail::require(is_member(n - 2, k, t), "andrews::classify_codomain: triple is not in P(n-2,k)");
    const bool low = t.lambda.contains(n - k - 1);
    const bool second = t.lambda.contains(n - k);
    if (low && second) {
        return t.mu.largest() == 2 * k ? ClassTag::C_prime : ClassTag::D;
    }
    if (low || second) {
        return ClassTag::B_prime;
    }
    return ClassTag::A_prime;
}

// --- phi_{n,k}: P(n,k) u {2n-1} x P(n-1,k-1) -> P(n-1,k-1) u {2n-3} x P(n-2,k), 0 <= k <= n-2

enum class Rule { staircase, embedded, phi_A, phi_B, phi_C, phi_D };

inline std::string_view to_string(Rule r)
{
    switch (r) {
        case Rule::staircase:
            return "staircase";
        case Rule::embedded:
            return "embedded";
        case Rule::phi_A:
            return "phi_A";
        case Rule::phi_B:
            return "phi_B";
        case Rule::phi_C:
            return "phi_C";
        case Rule::phi_D:
            return "phi_D";
    }
    return "?";
}

struct PhiStep {
    Rule rule;
    AndrewsObject value;
};

inline Marker incoming_marker(int n)
{
    return Marker{2 * n - 1, 0};
}

inline Marker outgoing_marker(int n)
{
    return Marker{2 * n - 3, 0};
}

inline PhiStep phi_step(int n, int k, const AndrewsObject &x)
{
    qtel::detail::require(n >= 2 && k >= 0 && k <= n - 2, "andrews::phi: need 0 <= k <= n-2");
    const Triple &t = x.object;
    const Marker out = outgoing_marker(n);

    if (x.is_marked()) {
        qtel::detail::require(*x.marker == incoming_marker(n), "andrews::phi: marker must be 2n-1");
        qtel::detail::require(is_member(n - 1, k - 1, t), "andrews::phi: marked triple is not in P(n-1,k-1)");
        Partition lambda = t.lambda.with_part(n - k).with_part(n - k - 1);
        return {Rule::phi_D, AndrewsObject(out, Triple{t.tau.without_first_rows(2), std::move(lambda), t.mu})};
    }

    qtel::detail::require(is_member(n, k, t), "andrews::phi: triple is not in P(n,k)");
    Partition tau = t.tau.without_first_rows(2);
    if (k == 0) {
        return {Rule::staircase, AndrewsObject(out, Triple{std::move(tau), t.lambda, t.mu})};
    }
    switch (classify(n, k, t)) {
        case ClassTag::embedded:
            return {Rule::embedded, x};
        case ClassTag::A:
            return {Rule::phi_A, AndrewsObject(out, Triple{std::move(tau), t.lambda, t.mu.without_first_rows(1)})};
        case ClassTag::B: {
            const int top = t.lambda.largest();
            Partition lambda = t.lambda.without_part(top).with_part(top - 2 * k);
            return {Rule::phi_B, AndrewsObject(out, Triple{std::move(tau), std::move(lambda), t.mu})};
        }
        case ClassTag::C: {
            Partition lambda = t.lambda.without_part(n + k)
                                   .without_part(n + k - 1)
                                   .with_part(n - k)
                                   .with_part(n - k - 1);
            return {Rule::phi_C, AndrewsObject(out, Triple{std::move(tau), std::move(lambda), t.mu.with_part(2 * k)})};
        }
        default:
            break;
    }
    throw precondition_error("andrews::phi: unreachable classification");
}

inline AndrewsObject phi(int n, int k, const AndrewsObject &x)
{
    return phi_step(n, k, x).value;
}

inline std::vector<AndrewsObject> marked(const std::vector<Triple> &ts, Marker m)
{
    std::vector<AndrewsObject> out;
    out.reserve(ts.size());
    for (const auto &t : ts) {
        out.emplace_back(m, t);
    }
    return out;
}

inline std::vector<AndrewsObject> unmarked(const std::vector<Triple> &ts)
{
    return std::vector<AndrewsObject>(ts.begin(), ts.end());
}

// P(n,k) u {2n-1} x P(n-1,k-1), both at total weight <= cap (marker included).
inline std::vector<AndrewsObject> domain_slice(int n, int k, int cap)
{
    auto out = unmarked(enum_P(n, k, cap));
    const int mcap = cap - (2 * n - 1);
    if (mcap >= 0) {
        for (auto &x : marked(enum_P(n - 1, k - 1, mcap), incoming_marker(n))) {
            out.push_back(std::move(x));
        }
    }
    return out;
}

// P(n-1,k-1) u {2n-3} x P(n-2,k), both at total weight <= cap.
inline std::vector<AndrewsObject> codomain_slice(int n, int k, int cap)
{
    auto out = unmarked(enum_P(n - 1, k - 1, cap));
    const int mcap = cap - (2 * n - 3);
    if (mcap >= 0) {
        for (auto &x : marked(enum_P(n - 2, k, mcap), outgoing_marker(n))) {
            out.push_back(std::move(x));
        }
    }
    return out;
}

inline Certificate check_phi(int n, int k, int cap)
{
    return check_graded_bijection<AndrewsObject>([&](const AndrewsObject &x) { return phi(n, k, x); },
                                                 domain_slice(n, k, cap), codomain_slice(n, k, cap), cap,
                                                 "andrews-phi", {{"n", n}, {"k", k}});
}

// --- I_{n,k} for k in {n-1, n}: sign-reversing involution on
// P(n,k) u {2n-1} x P(n-1,k-1) with fixed set P(n-1,k-1).
//
// The toggle part is 2k (2n for k = n, 2n-2 for k = n-1) and the marker part
// is 2n-1. Rules are tried in order:
//   toggle in lambda        -> move it to mu
//   mu_1 = toggle           -> move one copy to lambda
//   lambda_1 = 2n-1         -> strip it, mark with 2n-1
//   marked                  -> unmark, insert 2n-1 into lambda
//   otherwise               -> fixed

enum class InvolutionRule { toggle_to_mu, toggle_to_lambda, strip_to_marker, marker_to_part, fixed };

inline std::string_view to_string(InvolutionRule r)
{
    switch (r) {
        case InvolutionRule::toggle_to_mu:
            return "toggle_to_mu";
        case InvolutionRule::toggle_to_lambda:
            return "toggle_to_lambda";
        case InvolutionRule::strip_to_marker:
            return "strip_to_marker";
        case InvolutionRule::marker_to_part:
            return "marker_to_part";
        case InvolutionRule::fixed:
            return "fixed";
    }
    return "?";
}

struct InvolutionStep {
    InvolutionRule rule;
    AndrewsObject value;
};

inline InvolutionStep involution_step(int n, int k, const AndrewsObject &x)
{
    qtel::detail::require(n >= 2 && (k == n - 1 || k == n), "andrews::involution: need n >= 2, k in {n-1, n}");
    const Triple &t = x.object;
    const int toggle = 2 * k;
    const int marker_part = 2 * n - 1;

    if (x.is_marked()) {
        qtel::detail::require(*x.marker == incoming_marker(n), "andrews::involution: marker must be 2n-1");
        qtel::detail::require(is_member(n - 1, k - 1, t), "andrews::involution: marked triple is not in P(n-1,k-1)");
        return {InvolutionRule::marker_to_part, AndrewsObject(Triple{t.tau, t.lambda.with_part(marker_part), t.mu})};
    }
    qtel::detail::require(is_member(n, k, t), "andrews::involution: triple is not in P(n,k)");
    if (t.lambda.contains(toggle)) {
        return {InvolutionRule::toggle_to_mu,
                AndrewsObject(Triple{t.tau, t.lambda.without_part(toggle), t.mu.with_part(toggle)})};
    }
    if (t.mu.largest() == toggle) {
        return {InvolutionRule::toggle_to_lambda,
                AndrewsObject(Triple{t.tau, t.lambda.with_part(toggle), t.mu.without_part(toggle)})};
    }
    if (t.lambda.largest() == marker_part) {
        return {InvolutionRule::strip_to_marker,
                AndrewsObject(incoming_marker(n), Triple{t.tau, t.lambda.without_part(marker_part), t.mu})};
    }
    return {InvolutionRule::fixed, x};
}

inline AndrewsObject involution(int n, int k, const AndrewsObject &x)
{
    return involution_step(n, k, x).value;
}

inline Certificate check_involution(int n, int k, int cap)
{
    return check_sign_reversing_involution<AndrewsObject>(
        [&](const AndrewsObject &x) { return involution(n, k, x); }, domain_slice(n, k, cap),
        unmarked(enum_P(n - 1, k - 1, cap)), cap, "andrews-involution", {{"n", n}, {"k", k}});
}

// --- series-level verification

enum class Which { identity, rec_fn, gn };

inline std::string_view to_string(Which w)
{
    switch (w) {
        case Which::identity:
            return "identity";
        case Which::rec_fn:
            return "rec_fn";
        case Which::gn:
            return "gn";
    }
    return "?";
}

// Coefficientwise comparison on [0, window].
inline Certificate compare_series(std::string check, nlohmann::json params, const TruncatedSeries &lhs,
                                  const TruncatedSeries &rhs, int window, int cap)
{
    Certificate cert;
    cert.check = std::move(check);
    cert.params = std::move(params);
    cert.params["window"] = window;
    cert.cap = cap;
    cert.codomain_size = static_cast<std::size_t>(window + 1);
    if (auto e = lhs.first_mismatch(rhs, window)) {
        cert.fail({{"q_exponent", *e}, {"lhs", lhs.coefficient(*e).str()}}, {{"rhs", rhs.coefficient(*e).str()}},
                  "coefficient-mismatch");
    }
    return cert;
}

// identity: F_n = (-1)^n q^{n^2} sum_j (-1)^j q^{-j^2} on [0, cap]
// rec_fn:   F_n + (q^{2n-1} - 1) F_{n-1} - q^{2n-3} F_{n-2} = 0 on [0, cap-(2n-1)]
// gn:       F_n + q^{2n-1} F_{n-1} = 2 on [0, cap-(2n-1)]
// Every F is taken from enumeration.
inline Certificate verify_andrews(int n, int cap, Which which)
{
    qtel::detail::require(n >= 0, "verify_andrews: n must be nonnegative");
    qtel::detail::require(cap >= n * n, "verify_andrews: cap must be at least n^2");
    qtel::detail::stopwatch clock;
    nlohmann::json params = {{"n", n}, {"which", std::string(to_string(which))}};
    Certificate cert;
    switch (which) {
        case Which::identity: {
            auto f = F_trunc_counted(n, cap);
            cert = compare_series("andrews-identity", params, f.series, truncate(rhs_andrews(n), cap), cap, cap);
            cert.domain_size = f.members;
            break;
        }
        case Which::rec_fn: {
            qtel::detail::require(n >= 2, "verify_andrews: rec_fn needs n >= 2");
            auto f0 = F_trunc_counted(n, cap);
            auto f1 = F_trunc_counted(n - 1, cap);
            auto f2 = F_trunc_counted(n - 2, cap);
            const TruncatedSeries lhs = f0.series + f1.series.shifted(2 * n - 1) - f1.series
                                        - f2.series.shifted(2 * n - 3);
            cert = compare_series("andrews-rec-fn", params, lhs, TruncatedSeries(cap), cap - (2 * n - 1), cap);
            cert.domain_size = f0.members + f1.members + f2.members;
            break;
        }
        case Which::gn: {
            qtel::detail::require(n >= 1, "verify_andrews: gn needs n >= 1");
            auto f0 = F_trunc_counted(n, cap);
            auto f1 = F_trunc_counted(n - 1, cap);
            const TruncatedSeries lhs = f0.series + f1.series.shifted(2 * n - 1);
            cert = compare_series("andrews-gn", params, lhs, TruncatedSeries(cap, {{0, 2}}), cap - (2 * n - 1),
                                  cap);
            cert.domain_size = f0.members + f1.members;
            break;
        }
    }
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

} // namespace qtel::andrews

#endif
