#ifndef QTEL_QALGEBRA_HPP
#define QTEL_QALGEBRA_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include <qtel/errors.hpp>

namespace qtel
{

using Integer = boost::multiprecision::cpp_int;

// Exponent pair of a bivariate Laurent monomial z^z q^q. Ordered
// lexicographically by (z, q), which is also the serialization order.
struct Exponent {
    int z = 0;
    int q = 0;

    friend auto operator<=>(const Exponent &, const Exponent &) = default;
};

// A signed monomial sign * z^z * q^q. This is the weight carried by every
// combinatorial object; it converts to a one-term LaurentPoly.
struct Monomial {
    int sign = 1;
    int z = 0;
    int q = 0;

    friend auto operator<=>(const Monomial &, const Monomial &) = default;

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        return {a.sign * b.sign, a.z + b.z, a.q + b.q};
    }

    Monomial negated() const
    {
        return {-sign, z, q};
    }
};

// Exact sparse Laurent polynomial in z and q with arbitrary-precision
// coefficients. Zero coefficients are never stored, so structural equality
// is polynomial equality.
class LaurentPoly
{
public:
    using term_map = std::map<Exponent, Integer>;

    LaurentPoly() = default;

    LaurentPoly(const Integer &c)
    {
        add_term(Exponent{}, c);
    }

    LaurentPoly(long long c) : LaurentPoly(Integer(c)) {}

    LaurentPoly(const Monomial &m)
    {
        add_term(Exponent{m.z, m.q}, Integer(m.sign));
    }

    static LaurentPoly monomial(const Integer &c, int z_exp, int q_exp)
    {
        LaurentPoly p;
        p.add_term(Exponent{z_exp, q_exp}, c);
        return p;
    }

    static LaurentPoly q_power(int e)
    {
        return monomial(1, 0, e);
    }

    const term_map &terms() const
    {
        return terms_;
    }

    bool is_zero() const
    {
        return terms_.empty();
    }

    std::size_t size() const
    {
        return terms_.size();
    }

    Integer coefficient(int z_exp, int q_exp) const
    {
        auto it = terms_.find(Exponent{z_exp, q_exp});
        return it == terms_.end() ? Integer(0) : it->second;
    }

    bool is_z_free() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.first.z == 0; });
    }

    // Degree bounds in q over all terms. Undefined (nullopt) for the zero polynomial.
    std::optional<int> min_q() const
    {
        if (is_zero()) {
            return std::nullopt;
        }
        int r = terms_.begin()->first.q;
        for (const auto &[e, c] : terms_) {
            r = std::min(r, e.q);
        }
        return r;
    }

    std::optional<int> max_q() const
    {
        if (is_zero()) {
            return std::nullopt;
        }
        int r = terms_.begin()->first.q;
        for (const auto &[e, c] : terms_) {
            r = std::max(r, e.q);
        }
        return r;
    }

    // Value at z = q = 1.
    Integer coefficient_sum() const
    {
        Integer s = 0;
        for (const auto &[e, c] : terms_) {
            s += c;
        }
        return s;
    }

    // Substitutes q -> q^factor.
    LaurentPoly scale_q(int factor) const
    {
        LaurentPoly r;
        for (const auto &[e, c] : terms_) {
            r.add_term(Exponent{e.z, e.q * factor}, c);
        }
        return r;
    }

    // Multiplies by z^dz q^dq.
    LaurentPoly shifted(int dz, int dq) const
    {
        LaurentPoly r;
        for (const auto &[e, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), Exponent{e.z + dz, e.q + dq}, c);
        }
        return r;
    }

    void add_term(const Exponent &e, const Integer &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    void add_term(const Monomial &m)
    {
        add_term(Exponent{m.z, m.q}, Integer(m.sign));
    }

    LaurentPoly &operator+=(const LaurentPoly &other)
    {
        for (const auto &[e, c] : other.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    LaurentPoly &operator-=(const LaurentPoly &other)
    {
        for (const auto &[e, c] : other.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly r = *this;
        for (auto &[e, c] : r.terms_) {
            c = -c;
        }
        return r;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b)
    {
        a += b;
        return a;
    }

    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b)
    {
        a -= b;
        return a;
    }

    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
    {
        LaurentPoly r;
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                r.add_term(Exponent{ea.z + eb.z, ea.q + eb.q}, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly &operator*=(const LaurentPoly &other)
    {
        *this = *this * other;
        return *this;
    }

    friend bool operator==(const LaurentPoly &, const LaurentPoly &) = default;

    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[e, c] : terms_) {
            Integer mag = c < 0 ? Integer(-c) : c;
            if (first) {
                if (c < 0) {
                    os << "-";
                }
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            const bool unit = (e.z == 0 && e.q == 0);
            if (mag != 1 || unit) {
                os << mag;
                if (!unit) {
                    os << "*";
                }
            }
            bool wrote = false;
            if (e.z != 0) {
                os << "z";
                if (e.z != 1) {
                    os << "^" << e.z;
                }
                wrote = true;
            }
            if (e.q != 0) {
                if (wrote) {
                    os << "*";
                }
                os << "q";
                if (e.q != 1) {
                    os << "^" << e.q;
                }
            }
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const LaurentPoly &p)
    {
        return os << p.to_string();
    }

private:
    term_map terms_;
};

// [{z, q, c}] sorted by (z, q); c is a decimal string so the encoding does not
// depend on the platform's integer width.
inline void to_json(nlohmann::json &j, const LaurentPoly &p)
{
    j = nlohmann::json::array();
    for (const auto &[e, c] : p.terms()) {
        j.push_back({{"z", e.z}, {"q", e.q}, {"c", c.str()}});
    }
}

inline void from_json(const nlohmann::json &j, LaurentPoly &p)
{
    p = LaurentPoly{};
    for (const auto &t : j) {
        p.add_term(Exponent{t.at("z").get<int>(), t.at("q").get<int>()}, Integer(t.at("c").get<std::string>()));
    }
}

// Coefficients of a z-free q-series, kept for exponents 0..cap.
class TruncatedSeries
{
public:
    TruncatedSeries() = default;

    explicit TruncatedSeries(int cap) : cap_(cap)
    {
        detail::require(cap >= 0, "TruncatedSeries: cap must be nonnegative");
    }

    TruncatedSeries(int cap, const std::map<int, Integer> &coeffs) : TruncatedSeries(cap)
    {
        for (const auto &[e, c] : coeffs) {
            add(e, c);
        }
    }

    int cap() const
    {
        return cap_;
    }

    const std::map<int, Integer> &coeffs() const
    {
        return coeffs_;
    }

    bool is_zero() const
    {
        return coeffs_.empty();
    }

    Integer coefficient(int e) const
    {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Integer(0) : it->second;
    }

    // Adds c*q^e; exponents outside [0, cap] are dropped.
    void add(int e, const Integer &c)
    {
        if (e < 0 || e > cap_ || c == 0) {
            return;
        }
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                coeffs_.erase(it);
            }
        }
    }

    TruncatedSeries with_cap(int cap) const
    {
        TruncatedSeries r(std::min(cap, cap_));
        for (const auto &[e, c] : coeffs_) {
            r.add(e, c);
        }
        return r;
    }

    // Multiplies by q^s (s >= 0). The cap is unchanged, so the result is
    // exact on [0, cap].
    TruncatedSeries shifted(int s) const
    {
        detail::require(s >= 0, "TruncatedSeries::shifted: negative shift");
        TruncatedSeries r(cap_);
        for (const auto &[e, c] : coeffs_) {
            r.add(e + s, c);
        }
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        TruncatedSeries r = a.with_cap(b.cap_);
        for (const auto &[e, c] : b.coeffs_) {
            r.add(e, c);
        }
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        TruncatedSeries r = a.with_cap(b.cap_);
        for (const auto &[e, c] : b.coeffs_) {
            r.add(e, -c);
        }
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        TruncatedSeries r(std::min(a.cap_, b.cap_));
        for (const auto &[ea, ca] : a.coeffs_) {
            for (const auto &[eb, cb] : b.coeffs_) {
                r.add(ea + eb, ca * cb);
            }
        }
        return r;
    }

    // First exponent in [0, window] where the two series differ.
    std::optional<int> first_mismatch(const TruncatedSeries &other, int window) const
    {
        for (int e = 0; e <= window; ++e) {
            if (coefficient(e) != other.coefficient(e)) {
                return e;
            }
        }
        return std::nullopt;
    }

    LaurentPoly to_poly() const
    {
        LaurentPoly p;
        for (const auto &[e, c] : coeffs_) {
            p.add_term(Exponent{0, e}, c);
        }
        return p;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

    friend std::ostream &operator<<(std::ostream &os, const TruncatedSeries &s)
    {
        return os << s.to_poly() << " + O(q^" << s.cap_ + 1 << ")";
    }

private:
    int cap_ = 0;
    std::map<int, Integer> coeffs_;
};

inline void to_json(nlohmann::json &j, const TruncatedSeries &s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto &[e, c] : s.coeffs()) {
        coeffs.push_back({{"q", e}, {"c", c.str()}});
    }
    j = {{"cap", s.cap()}, {"coeffs", coeffs}};
}

// Keeps the coefficients of q^0 .. q^cap of a z-free polynomial with no
// negative q-exponents.
inline TruncatedSeries truncate(const LaurentPoly &p, int cap)
{
    detail::require(cap >= 0, "truncate: cap must be nonnegative");
    TruncatedSeries r(cap);
    for (const auto &[e, c] : p.terms()) {
        detail::require(e.z == 0, "truncate: polynomial is not z-free");
        detail::require(e.q >= 0, "truncate: negative q-exponent");
        r.add(e.q, c);
    }
    return r;
}

// Gaussian coefficient [n choose k] in base q^step, via
// [n,k] = [n-1,k-1] + q^(step*k) [n-1,k]. Zero outside 0 <= k <= n.
inline LaurentPoly gaussian_binomial(int n, int k, int step = 1)
{
    detail::require(n >= 0, "gaussian_binomial: n must be nonnegative");
    detail::require(step >= 1, "gaussian_binomial: step must be positive");
    if (k < 0 || k > n) {
        return LaurentPoly{};
    }
    // row[j] holds [i, j] for the current i.
    std::vector<LaurentPoly> row(static_cast<std::size_t>(k) + 1);
    row[0] = LaurentPoly(1);
    for (int i = 1; i <= n; ++i) {
        const int top = std::min(i, k);
        for (int j = top; j >= 1; --j) {
            // row[j] is still [i-1, j] here; row[j-1] is [i-1, j-1].
            row[j] = row[j - 1] + row[j].shifted(0, step * j);
        }
    }
    return row[k];
}

// prod_{i=0}^{count-1} (1 + sign * z^z_exp * q^(q_offset + i*q_step)).
inline LaurentPoly factor_product(int count, int sign, int z_exp, int q_offset, int q_step)
{
    detail::require(count >= 0, "factor_product: count must be nonnegative");
    detail::require(sign == 1 || sign == -1, "factor_product: sign must be +1 or -1");
    detail::require(q_step >= 1, "factor_product: q_step must be positive");
    LaurentPoly r(1);
    for (int i = 0; i < count; ++i) {
        r *= LaurentPoly(1) + LaurentPoly::monomial(sign, z_exp, q_offset + i * q_step);
    }
    return r;
}

// (-1)^n q^(n^2) sum_{j=-n}^{n} (-1)^j q^(-j^2).
inline LaurentPoly rhs_andrews(int n)
{
    detail::require(n >= 0, "rhs_andrews: n must be nonnegative");
    LaurentPoly r;
    const int outer = (n % 2 == 0) ? 1 : -1;
    for (int j = -n; j <= n; ++j) {
        const int inner = (j % 2 == 0) ? 1 : -1;
        r.add_term(Exponent{0, n * n - j * j}, Integer(outer * inner));
    }
    return r;
}

} // namespace qtel

#endif
