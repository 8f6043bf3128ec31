#ifndef QTEL_MACMAHON_HPP
#define QTEL_MACMAHON_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include <qtel/errors.hpp>
#include <qtel/partition.hpp>
#include <qtel/qalgebra.hpp>
#include <qtel/telescope.hpp>

// Families of (square, even-part partition) pairs and the two bijections that
// telescope MacMahon's finite form of the triple product identity
//
//   sum_{k=-m}^{n} z^k q^{k^2} [m+n, m+k]_{q^2} = (-q/z; q^2)_m (-zq; q^2)_n.
//
// P(n,m,k): lambda = S_k, mu even, mu_1 <= 2m+2k, l(mu) <= n-k.
// G(n,m,k): members of P(n,m,k) with mu_1 = 2m+2k.
// Q(n,k):   lambda = S_k, mu even, l(mu) <= k, mu_1 <= 2n-2k.
// H(n,k):   members of Q(n,k) with mu_1 = 2n-2k.
//
// The largest part of the empty partition is 0, so the boundary conditions
// above are met by mu = () whenever the bound is 0.
namespace qtel::macmahon
{

struct MacPair {
    SquareSide side;
    Partition mu;

    friend auto operator<=>(const MacPair &, const MacPair &) = default;
};

// z^k q^(k^2 + |mu|).
inline Monomial weight_of(const MacPair &p)
{
    return {1, p.side.k, p.side.weight() + p.mu.weight()};
}

inline void to_json(nlohmann::json &j, const MacPair &p)
{
    j = {{"side", p.side}, {"mu", p.mu}};
}

using MacObject = Marked<MacPair>;

enum class Family { P, G, Q, H };

inline std::string_view to_string(Family f)
{
    switch (f) {
        case Family::P:
            return "P";
        case Family::G:
            return "G";
        case Family::Q:
            return "Q";
        case Family::H:
            return "H";
    }
    return "?";
}

inline bool in_P(int n, int m, int k, const MacPair &x)
{
    const int bound = 2 * m + 2 * k;
    return x.side.k == k && k <= n && bound >= 0 && x.mu.is_even() && x.mu.largest() <= bound
           && x.mu.length() <= n - k;
}

inline bool in_G(int n, int m, int k, const MacPair &x)
{
    return in_P(n, m, k, x) && x.mu.largest() == 2 * m + 2 * k;
}

inline bool in_Q(int n, int k, const MacPair &x)
{
    const int bound = 2 * n - 2 * k;
    return x.side.k == k && k >= 0 && bound >= 0 && x.mu.is_even() && x.mu.length() <= k
           && x.mu.largest() <= bound;
}

inline bool in_H(int n, int k, const MacPair &x)
{
    return in_Q(n, k, x) && x.mu.largest() == 2 * n - 2 * k;
}

// The complete finite family. `m` is ignored for Q and H. Index
// combinations outside the defining inequalities give the empty set.
inline std::vector<MacPair> enum_family(Family which, int n, int m, int k)
{
    std::vector<MacPair> out;
    if (which == Family::P || which == Family::G) {
        const int bound = 2 * m + 2 * k;
        if (bound < 0 || k > n) {
            return out;
        }
        for (auto &mu : enum_even_bounded(bound, n - k)) {
            if (which == Family::P || mu.largest() == bound) {
                out.push_back({SquareSide{k}, std::move(mu)});
            }
        }
    } else {
        const int bound = 2 * n - 2 * k;
        if (bound < 0 || k < 0) {
            return out;
        }
        for (auto &mu : enum_even_bounded(bound, k)) {
            if (which == Family::Q || mu.largest() == bound) {
                out.push_back({SquareSide{k}, std::move(mu)});
            }
        }
    }
    return out;
}

inline std::vector<MacObject> as_objects(const std::vector<MacPair> &pairs, std::optional<Marker> marker = {})
{
    std::vector<MacObject> out;
    out.reserve(pairs.size());
    for (const auto &p : pairs) {
        out.push_back(marker ? MacObject(*marker, p) : MacObject(p));
    }
    return out;
}

// F_{n,m} as the weighted count of the union of P(n,m,k) over k.
inline LaurentPoly enumerated_F(int n, int m, std::size_t *objects = nullptr)
{
    LaurentPoly f;
    for (int k = -m; k <= n; ++k) {
        const auto fam = enum_family(Family::P, n, m, k);
        if (objects) {
            *objects += fam.size();
        }
        f += weighted_count(fam);
    }
    return f;
}

// F_{n,0} as the weighted count of the union of Q(n,k) over k.
inline LaurentPoly enumerated_F_initial(int n, std::size_t *objects = nullptr)
{
    LaurentPoly f;
    for (int k = 0; k <= n; ++k) {
        const auto fam = enum_family(Family::Q, n, 0, k);
        if (objects) {
            *objects += fam.size();
        }
        f += weighted_count(fam);
    }
    return f;
}

// Left-hand side from the Gaussian coefficients.
inline LaurentPoly closed_form_lhs(int n, int m)
{
    LaurentPoly s;
    for (int k = -m; k <= n; ++k) {
        s += gaussian_binomial(m + n, m + k, 2).shifted(k, k * k);
    }
    return s;
}

// (-q/z; q^2)_m (-zq; q^2)_n.
inline LaurentPoly closed_form_rhs(int n, int m)
{
    return factor_product(m, +1, -1, 1, 2) * factor_product(n, +1, 1, 1, 2);
}

// --- phi_{n,m,k}: P(n,m,k) u G(n,m,k-1) -> P(n,m-1,k) u {2m-1} x P(n,m-1,k) u G(n,m,k)

enum class PhiCase {
    boundary, // mu_1 = 2m+2k: stays, now read as a member of G(n,m,k)
    lower,    // mu_1 < 2m+2k: stays, now read as a member of P(n,m-1,k)
    shift,    // from G(n,m,k-1): grow the square, drop mu's first row, mark 2m-1
};

inline std::string_view to_string(PhiCase c)
{
    switch (c) {
        case PhiCase::boundary:
            return "boundary";
        case PhiCase::lower:
            return "lower";
        case PhiCase::shift:
            return "shift";
    }
    return "?";
}

struct PhiStep {
    PhiCase rule;
    MacObject value;
};

inline Marker phi_marker(int m)
{
    return Marker{2 * m - 1, -1};
}

inline Marker psi_marker(int n)
{
    return Marker{2 * n - 1, 1};
}

namespace detail
{

inline Partition drop_first_row(const Partition &mu)
{
    return mu.empty() ? mu : mu.without_first_rows(1);
}

} // namespace detail

inline PhiStep phi_step(int n, int m, int k, const MacObject &x)
{
    qtel::detail::require(m >= 0, "macmahon::phi_step: m must be nonnegative");
    qtel::detail::require(!x.is_marked(), "macmahon::phi_step: marked objects are not in the domain");
    const MacPair &p = x.object;
    if (in_P(n, m, k, p)) {
        if (p.mu.largest() == 2 * m + 2 * k) {
            return {PhiCase::boundary, x};
        }
        return {PhiCase::lower, x};
    }
    if (in_G(n, m, k - 1, p)) {
        return {PhiCase::shift, MacObject(phi_marker(m), MacPair{SquareSide{k}, detail::drop_first_row(p.mu)})};
    }
    throw precondition_error("macmahon::phi_step: object is in neither P(n,m,k) nor G(n,m,k-1)");
}

inline std::vector<MacObject> phi_domain(int n, int m, int k)
{
    auto out = as_objects(enum_family(Family::P, n, m, k));
    for (auto &x : as_objects(enum_family(Family::G, n, m, k - 1))) {
        out.push_back(std::move(x));
    }
    return out;
}

inline std::vector<MacObject> phi_codomain(int n, int m, int k)
{
    const auto lower = enum_family(Family::P, n, m - 1, k);
    auto out = as_objects(lower);
    for (auto &x : as_objects(lower, phi_marker(m))) {
        out.push_back(std::move(x));
    }
    for (auto &x : as_objects(enum_family(Family::G, n, m, k))) {
        out.push_back(std::move(x));
    }
    return out;
}

inline Certificate check_phi_bijection(int n, int m, int k)
{
    return check_graded_bijection<MacObject>([&](const MacObject &x) { return phi_step(n, m, k, x).value; },
                                             phi_domain(n, m, k), phi_codomain(n, m, k), std::nullopt,
                                             "macmahon-phi", {{"n", n}, {"m", m}, {"k", k}});
}

// --- psi_{n,k}: Q(n,k) u H(n,k+1) -> Q(n-1,k) u {2n-1} x Q(n-1,k) u H(n,k)

inline PhiStep psi_step(int n, int k, const MacObject &x)
{
    qtel::detail::require(n >= 0, "macmahon::psi_step: n must be nonnegative");
    qtel::detail::require(!x.is_marked(), "macmahon::psi_step: marked objects are not in the domain");
    const MacPair &p = x.object;
    if (in_Q(n, k, p)) {
        if (p.mu.largest() == 2 * n - 2 * k) {
            return {PhiCase::boundary, x};
        }
        return {PhiCase::lower, x};
    }
    if (in_H(n, k + 1, p)) {
        return {PhiCase::shift, MacObject(psi_marker(n), MacPair{SquareSide{k}, detail::drop_first_row(p.mu)})};
    }
    throw precondition_error("macmahon::psi_step: object is in neither Q(n,k) nor H(n,k+1)");
}

inline std::vector<MacObject> psi_domain(int n, int k)
{
    auto out = as_objects(enum_family(Family::Q, n, 0, k));
    for (auto &x : as_objects(enum_family(Family::H, n, 0, k + 1))) {
        out.push_back(std::move(x));
    }
    return out;
}

inline std::vector<MacObject> psi_codomain(int n, int k)
{
    const auto lower = enum_family(Family::Q, n - 1, 0, k);
    auto out = as_objects(lower);
    for (auto &x : as_objects(lower, psi_marker(n))) {
        out.push_back(std::move(x));
    }
    for (auto &x : as_objects(enum_family(Family::H, n, 0, k))) {
        out.push_back(std::move(x));
    }
    return out;
}

inline Certificate check_psi_bijection(int n, int k)
{
    return check_graded_bijection<MacObject>([&](const MacObject &x) { return psi_step(n, k, x).value; },
                                             psi_domain(n, k), psi_codomain(n, k), std::nullopt, "macmahon-psi",
                                             {{"n", n}, {"k", k}});
}

// The phi family in telescoping form, indexed by i = k + m for -m <= k <= n:
// f(i) = |P(n,m,k)|, h(i) = |G(n,m,k-1)|, g(i) = (1 + q^(2m-1)/z) |P(n,m-1,k)|.
inline Certificate check_phi_telescoping(int n, int m)
{
    qtel::detail::require(n >= 0 && m >= 1, "macmahon::check_phi_telescoping: need n >= 0, m >= 1");
    std::vector<LaurentPoly> f, g, h;
    const LaurentPoly factor = LaurentPoly(1) + LaurentPoly::monomial(1, -1, 2 * m - 1);
    for (int k = -m; k <= n; ++k) {
        f.push_back(weighted_count(enum_family(Family::P, n, m, k)));
        h.push_back(weighted_count(enum_family(Family::G, n, m, k - 1)));
        g.push_back(factor * weighted_count(enum_family(Family::P, n, m - 1, k)));
    }
    return telescoping_sum_check(f, g, h, n + m, "macmahon-telescoping", {{"n", n}, {"m", m}});
}

// --- cancelation: iterate the combined phi over all k until the orbit leaves H.

enum class Role { A, H, B };

struct CancelNode {
    Role role;
    MacObject object;

    friend auto operator<=>(const CancelNode &, const CancelNode &) = default;
};

inline Monomial weight_of(const CancelNode &c)
{
    return weight_of(c.object);
}

inline void to_json(nlohmann::json &j, const CancelNode &c)
{
    static constexpr const char *names[] = {"A", "H", "B"};
    j = {{"role", names[static_cast<int>(c.role)]}, {"object", c.object}};
}

// phi on A u H -> B u H with A = u_k P(n,m,k), H = u_k G(n,m,k),
// B = u_k (P(n,m-1,k) u {2m-1} x P(n,m-1,k)).
inline CancelNode combined_phi(int n, int m, const CancelNode &c)
{
    switch (c.role) {
        case Role::A: {
            auto step = phi_step(n, m, c.object.object.side.k, c.object);
            return {step.rule == PhiCase::boundary ? Role::H : Role::B, std::move(step.value)};
        }
        case Role::H: {
            auto step = phi_step(n, m, c.object.object.side.k + 1, c.object);
            qtel::detail::require(step.rule == PhiCase::shift, "macmahon::combined_phi: H element not shifted");
            return {Role::B, std::move(step.value)};
        }
        case Role::B:
            break;
    }
    throw precondition_error("macmahon::combined_phi: B is not in the domain");
}

inline std::vector<CancelNode> cancelation_domain(int n, int m)
{
    std::vector<CancelNode> out;
    for (int k = -m; k <= n; ++k) {
        for (auto &p : enum_family(Family::P, n, m, k)) {
            out.push_back({Role::A, MacObject(std::move(p))});
        }
    }
    return out;
}

inline std::vector<CancelNode> cancelation_codomain(int n, int m)
{
    std::vector<CancelNode> out;
    for (int k = -(m - 1); k <= n; ++k) {
        for (const auto &p : enum_family(Family::P, n, m - 1, k)) {
            out.push_back({Role::B, MacObject(p)});
            out.push_back({Role::B, MacObject(phi_marker(m), p)});
        }
    }
    return out;
}

inline std::size_t cancelation_h_size(int n, int m)
{
    std::size_t s = 0;
    for (int k = -m; k <= n; ++k) {
        s += enum_family(Family::G, n, m, k).size();
    }
    return s;
}

// psi: A -> B, the first B element on the combined-phi orbit.
inline CancelationResult<CancelNode> cancelation_image(int n, int m, const CancelNode &a, int budget)
{
    return cancelation_psi([&](const CancelNode &c) { return combined_phi(n, m, c); }, a,
                           [](const CancelNode &c) { return c.role == Role::B; }, budget);
}

inline Certificate check_cancelation(int n, int m)
{
    qtel::detail::require(n >= 0 && m >= 1, "macmahon::check_cancelation: need n >= 0, m >= 1");
    const auto domain = cancelation_domain(n, m);
    const auto codomain = cancelation_codomain(n, m);
    const int budget = static_cast<int>(domain.size() + cancelation_h_size(n, m)) + 1;
    return check_graded_bijection<CancelNode>(
        [&](const CancelNode &a) { return cancelation_image(n, m, a, budget).value; }, domain, codomain,
        std::nullopt, "macmahon-cancelation", {{"n", n}, {"m", m}, {"budget", budget}});
}

// Verifies, as exact polynomial identities:
//   rec-ex1         F_{n,j} = (1 + q^(2j-1)/z) F_{n,j-1}      for 1 <= j <= m
//   rec-initial     F_{i,0} = (1 + z q^(2i-1)) F_{i-1,0}      for 1 <= i <= n
//   weighted-count  enumerated F_{n,m} equals the Gaussian-coefficient sum
//   identity        the Gaussian-coefficient sum equals the product side
// with every F on the left of a recurrence taken from enumerated sets.
inline Certificate verify_macmahon(int n, int m)
{
    qtel::detail::require(n >= 0 && m >= 0, "verify_macmahon: n and m must be nonnegative");
    qtel::detail::stopwatch clock;
    Certificate cert;
    cert.check = "macmahon";
    cert.params = {{"n", n}, {"m", m}};

    std::size_t objects = 0;
    auto fail_with = [&](const char *sub, nlohmann::json where, const LaurentPoly &lhs, const LaurentPoly &rhs) {
        where["sub_check"] = sub;
        cert.fail(std::move(where), {{"lhs", lhs}, {"rhs", rhs}}, std::string(sub) + "-violation");
    };

    std::vector<LaurentPoly> fm;
    for (int j = 0; j <= m; ++j) {
        fm.push_back(enumerated_F(n, j, &objects));
    }
    for (int j = 1; j <= m && cert.verified(); ++j) {
        const LaurentPoly rhs = (LaurentPoly(1) + LaurentPoly::monomial(1, -1, 2 * j - 1)) * fm[j - 1];
        if (fm[j] != rhs) {
            fail_with("rec-ex1", {{"m", j}}, fm[j], rhs);
        }
    }

    std::vector<LaurentPoly> fi;
    for (int i = 0; i <= n && cert.verified(); ++i) {
        fi.push_back(enumerated_F_initial(i, &objects));
    }
    for (int i = 1; i <= n && cert.verified(); ++i) {
        const LaurentPoly rhs = (LaurentPoly(1) + LaurentPoly::monomial(1, 1, 2 * i - 1)) * fi[i - 1];
        if (fi[i] != rhs) {
            fail_with("rec-initial", {{"n", i}}, fi[i], rhs);
        }
    }
    if (cert.verified() && fi.back() != fm.front()) {
        fail_with("initial-value", {{"n", n}}, fi.back(), fm.front());
    }

    const LaurentPoly lhs = closed_form_lhs(n, m);
    if (cert.verified() && fm.back() != lhs) {
        fail_with("weighted-count", {{"n", n}, {"m", m}}, fm.back(), lhs);
    }
    const LaurentPoly rhs = closed_form_rhs(n, m);
    if (cert.verified() && lhs != rhs) {
        fail_with("identity", {{"n", n}, {"m", m}}, lhs, rhs);
    }

    cert.domain_size = objects;
    cert.codomain_size = rhs.size();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

} // namespace qtel::macmahon

#endif
