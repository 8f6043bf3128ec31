#ifndef QTEL_TELESCOPE_HPP
#define QTEL_TELESCOPE_HPP

#include <chrono>
#include <concepts>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include <qtel/errors.hpp>
#include <qtel/qalgebra.hpp>

namespace qtel
{

// An object with a signed monomial weight that can be stored in ordered
// containers and serialized into certificates.
template <typename T>
concept Weighted = std::totally_ordered<T> && requires(const T &t, nlohmann::json &j) {
    { weight_of(t) } -> std::same_as<Monomial>;
    to_json(j, t);
};

// Extra weight z^z q^q attached to an object, modelling a factor {c} x X.
struct Marker {
    int q = 0;
    int z = 0;

    friend auto operator<=>(const Marker &, const Marker &) = default;
};

// An object of some family, optionally tagged with a marker. The marker adds
// weight but never sign.
template <typename T>
struct Marked {
    std::optional<Marker> marker;
    T object;

    Marked() = default;
    Marked(T obj) : object(std::move(obj)) {}
    Marked(Marker m, T obj) : marker(m), object(std::move(obj)) {}

    bool is_marked() const
    {
        return marker.has_value();
    }

    friend auto operator<=>(const Marked &, const Marked &) = default;
    friend bool operator==(const Marked &, const Marked &) = default;
};

template <typename T>
Monomial weight_of(const Marked<T> &m)
{
    Monomial w = weight_of(m.object);
    if (m.marker) {
        w.z += m.marker->z;
        w.q += m.marker->q;
    }
    return w;
}

template <typename T>
void to_json(nlohmann::json &j, const Marked<T> &m)
{
    if (m.marker) {
        nlohmann::json mk = {{"q", m.marker->q}};
        if (m.marker->z != 0) {
            mk["z"] = m.marker->z;
        }
        j = {{"marker", mk}, {"object", m.object}};
    } else {
        j = m.object;
    }
}

inline void to_json(nlohmann::json &j, const Monomial &m)
{
    j = {{"sign", m.sign}, {"z", m.z}, {"q", m.q}};
}

// Weighted count of a list of objects.
template <Weighted T>
LaurentPoly weighted_count(std::span<const T> objects)
{
    LaurentPoly p;
    for (const auto &x : objects) {
        p.add_term(weight_of(x));
    }
    return p;
}

template <Weighted T>
LaurentPoly weighted_count(const std::vector<T> &objects)
{
    return weighted_count(std::span<const T>(objects));
}

enum class Status { verified, failed };

struct Counterexample {
    nlohmann::json element;
    nlohmann::json image;
    std::string reason;
};

// Verdict of one exhaustive check over a (possibly weight-capped) slice.
struct Certificate {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    std::optional<int> cap;
    Status status = Status::verified;
    std::size_t domain_size = 0;
    std::size_t codomain_size = 0;
    std::optional<Counterexample> counterexample;
    long long elapsed_ms = 0;

    bool verified() const
    {
        return status == Status::verified;
    }

    void fail(nlohmann::json element, nlohmann::json image, std::string reason)
    {
        status = Status::failed;
        counterexample = Counterexample{std::move(element), std::move(image), std::move(reason)};
    }

    nlohmann::json to_json(bool with_timing = true) const
    {
        nlohmann::json j = {{"check", check},
                            {"params", params},
                            {"cap", cap ? nlohmann::json(*cap) : nlohmann::json(nullptr)},
                            {"status", verified() ? "verified" : "failed"},
                            {"domain_size", domain_size},
                            {"codomain_size", codomain_size}};
        if (counterexample) {
            j["counterexample"] = {{"element", counterexample->element},
                                   {"image", counterexample->image},
                                   {"reason", counterexample->reason}};
        }
        if (with_timing) {
            j["elapsed_ms"] = elapsed_ms;
        }
        return j;
    }
};

// Exit status for a batch of certificates: 0 iff every one verified.
inline int exit_code_for(std::span<const Certificate> certs)
{
    for (const auto &c : certs) {
        if (!c.verified()) {
            return 1;
        }
    }
    return 0;
}

namespace detail
{

class stopwatch
{
public:
    long long elapsed_ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline bool within_cap(const Monomial &w, std::optional<int> cap)
{
    return !cap || w.q <= *cap;
}

} // namespace detail

// Checks that `map` is a weight-preserving bijection from `domain` onto the
// part of `codomain` of q-degree <= cap (all of it when cap is empty). Reasons
// on failure: not-in-codomain, collision, weight-mismatch, not-surjective.
template <Weighted T, typename Map>
Certificate check_graded_bijection(Map &&map, std::span<const T> domain, std::span<const T> codomain,
                                   std::optional<int> cap, std::string check = "bijection",
                                   nlohmann::json params = nlohmann::json::object())
{
    detail::stopwatch clock;
    Certificate cert;
    cert.check = std::move(check);
    cert.params = std::move(params);
    cert.cap = cap;
    cert.domain_size = domain.size();
    cert.codomain_size = codomain.size();

    const std::set<T> target(codomain.begin(), codomain.end());
    std::map<T, T> preimage;
    for (const auto &x : domain) {
        T y;
        try {
            y = map(x);
        } catch (const std::exception &e) {
            cert.fail(x, e.what(), "not-in-codomain");
            break;
        }
        if (!target.contains(y)) {
            cert.fail(x, y, "not-in-codomain");
            break;
        }
        if (weight_of(x) != weight_of(y)) {
            cert.fail(x, y, "weight-mismatch");
            break;
        }
        auto [it, inserted] = preimage.try_emplace(y, x);
        if (!inserted) {
            cert.fail(x, y, "collision");
            cert.counterexample->image = {{"image", y}, {"other_preimage", it->second}};
            break;
        }
    }
    if (cert.verified()) {
        for (const auto &y : codomain) {
            if (detail::within_cap(weight_of(y), cap) && !preimage.contains(y)) {
                cert.fail(nullptr, y, "not-surjective");
                break;
            }
        }
    }
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

template <Weighted T, typename Map>
Certificate check_graded_bijection(Map &&map, const std::vector<T> &domain, const std::vector<T> &codomain,
                                   std::optional<int> cap, std::string check = "bijection",
                                   nlohmann::json params = nlohmann::json::object())
{
    return check_graded_bijection<T>(std::forward<Map>(map), std::span<const T>(domain),
                                     std::span<const T>(codomain), cap, std::move(check), std::move(params));
}

// Checks that `map` is a sign-reversing involution on `domain` whose fixed
// points are exactly `expected_fixed`. Reasons on failure: not-closed,
// not-involutive, sign-not-reversed, weight-mismatch, fixed-set-mismatch.
template <Weighted T, typename Map>
Certificate check_sign_reversing_involution(Map &&map, const std::vector<T> &domain,
                                            const std::vector<T> &expected_fixed, std::optional<int> cap,
                                            std::string check = "involution",
                                            nlohmann::json params = nlohmann::json::object())
{
    detail::stopwatch clock;
    Certificate cert;
    cert.check = std::move(check);
    cert.params = std::move(params);
    cert.cap = cap;
    cert.domain_size = domain.size();
    cert.codomain_size = expected_fixed.size();

    const std::set<T> members(domain.begin(), domain.end());
    std::set<T> fixed;
    for (const auto &x : domain) {
        T y;
        try {
            y = map(x);
        } catch (const std::exception &e) {
            cert.fail(x, e.what(), "not-closed");
            break;
        }
        if (!members.contains(y)) {
            cert.fail(x, y, "not-closed");
            break;
        }
        if (y == x) {
            fixed.insert(x);
            continue;
        }
        const Monomial wx = weight_of(x);
        const Monomial wy = weight_of(y);
        if (wx.z != wy.z || wx.q != wy.q) {
            cert.fail(x, y, "weight-mismatch");
            break;
        }
        if (wx.sign != -wy.sign) {
            cert.fail(x, y, "sign-not-reversed");
            break;
        }
        T back;
        try {
            back = map(y);
        } catch (const std::exception &e) {
            cert.fail(y, e.what(), "not-involutive");
            break;
        }
        if (back != x) {
            cert.fail(x, back, "not-involutive");
            break;
        }
    }
    if (cert.verified()) {
        const std::set<T> expected(expected_fixed.begin(), expected_fixed.end());
        for (const auto &x : fixed) {
            if (!expected.contains(x)) {
                cert.fail(x, x, "fixed-set-mismatch");
                break;
            }
        }
        if (cert.verified()) {
            for (const auto &x : expected) {
                if (!fixed.contains(x)) {
                    cert.fail(x, nullptr, "fixed-set-mismatch");
                    break;
                }
            }
        }
    }
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

// Checks f(k) + h(k) = g(k) + h(k+1) for 0 <= k <= k_max, with h(k_max+1) = 0,
// and that sum f = sum g. All three sequences are indexed 0..k_max.
inline Certificate telescoping_sum_check(std::span<const LaurentPoly> f, std::span<const LaurentPoly> g,
                                         std::span<const LaurentPoly> h, int k_max,
                                         std::string check = "telescoping-sum",
                                         nlohmann::json params = nlohmann::json::object())
{
    detail::require(k_max >= 0, "telescoping_sum_check: k_max must be nonnegative");
    const auto n = static_cast<std::size_t>(k_max) + 1;
    detail::require(f.size() == n && g.size() == n && h.size() == n,
                    "telescoping_sum_check: sequences must have k_max + 1 entries");
    detail::stopwatch clock;
    Certificate cert;
    cert.check = std::move(check);
    cert.params = std::move(params);
    cert.domain_size = n;
    cert.codomain_size = n;

    if (!h[0].is_zero()) {
        cert.fail({{"k", 0}, {"h", h[0]}}, nullptr, "h-not-vanishing-at-zero");
    }
    LaurentPoly sum_f, sum_g;
    for (std::size_t k = 0; k < n && cert.verified(); ++k) {
        const LaurentPoly lhs = f[k] + h[k];
        const LaurentPoly rhs = g[k] + (k + 1 < n ? h[k + 1] : LaurentPoly{});
        if (lhs != rhs) {
            cert.fail({{"k", k}, {"lhs", lhs}}, {{"rhs", rhs}}, "telescoping-violation");
        }
        sum_f += f[k];
        sum_g += g[k];
    }
    if (cert.verified() && sum_f != sum_g) {
        cert.fail({{"sum_f", sum_f}}, {{"sum_g", sum_g}}, "sum-mismatch");
    }
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

inline Certificate telescoping_sum_check(const std::vector<LaurentPoly> &f, const std::vector<LaurentPoly> &g,
                                         const std::vector<LaurentPoly> &h, int k_max,
                                         std::string check = "telescoping-sum",
                                         nlohmann::json params = nlohmann::json::object())
{
    return telescoping_sum_check(std::span<const LaurentPoly>(f), std::span<const LaurentPoly>(g),
                                 std::span<const LaurentPoly>(h), k_max, std::move(check), std::move(params));
}

template <typename T>
struct CancelationResult {
    T value;
    int applications = 0;
};

// Iterates phi from `start` and returns the first iterate inside B.
template <typename T, typename Phi, typename InB>
CancelationResult<T> cancelation_psi(Phi &&phi, const T &start, InB &&in_b, int max_iter)
{
    detail::require(max_iter >= 1, "cancelation_psi: max_iter must be at least 1");
    T current = start;
    for (int i = 1; i <= max_iter; ++i) {
        current = phi(current);
        if (in_b(current)) {
            return {std::move(current), i};
        }
    }
    throw iteration_budget_exceeded("cancelation_psi: no element of B reached after " + std::to_string(max_iter)
                                    + " applications");
}

} // namespace qtel

#endif
