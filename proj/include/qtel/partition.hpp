#ifndef QTEL_PARTITION_HPP
#define QTEL_PARTITION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include <qtel/errors.hpp>

namespace qtel
{

// Nonincreasing sequence of nonnegative parts. Zero parts are kept and count
// towards the length, so (0) and the empty partition are different objects.
class Partition
{
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            detail::require(parts_[i] >= 0, "Partition: negative part");
            detail::require(i == 0 || parts_[i - 1] >= parts_[i], "Partition: parts must be nonincreasing");
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    std::span<const int> parts() const
    {
        return parts_;
    }

    bool empty() const
    {
        return parts_.empty();
    }

    // Number of parts, zeros included.
    int length() const
    {
        return static_cast<int>(parts_.size());
    }

    int weight() const
    {
        return std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    // Largest part, 0 for the empty partition.
    int largest() const
    {
        return parts_.empty() ? 0 : parts_.front();
    }

    // Smallest part, 0 for the empty partition.
    int smallest() const
    {
        return parts_.empty() ? 0 : parts_.back();
    }

    // i-th part, 1-based as in the usual lambda_i notation; 0 past the end.
    int part(int i) const
    {
        return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
    }

    bool contains(int p) const
    {
        return std::find(parts_.begin(), parts_.end(), p) != parts_.end();
    }

    int count(int p) const
    {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), p));
    }

    // Strictly decreasing positive parts.
    bool is_distinct() const
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0 || (i > 0 && parts_[i - 1] == parts_[i])) {
                return false;
            }
        }
        return true;
    }

    // All parts positive and even.
    bool is_even() const
    {
        return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p > 0 && p % 2 == 0; });
    }

    Partition with_part(int p) const
    {
        detail::require(p >= 0, "Partition::with_part: negative part");
        std::vector<int> v = parts_;
        v.insert(std::upper_bound(v.begin(), v.end(), p, std::greater<>{}), p);
        return Partition(std::move(v));
    }

    // Removes one occurrence of p.
    Partition without_part(int p) const
    {
        std::vector<int> v = parts_;
        auto it = std::find(v.begin(), v.end(), p);
        detail::require(it != v.end(), "Partition::without_part: part not present");
        v.erase(it);
        return Partition(std::move(v));
    }

    // Drops the first `rows` parts.
    Partition without_first_rows(int rows = 1) const
    {
        detail::require(rows >= 0 && rows <= length(), "Partition::without_first_rows: not enough rows");
        return Partition(std::vector<int>(parts_.begin() + rows, parts_.end()));
    }

    friend auto operator<=>(const Partition &, const Partition &) = default;

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> parts_;
};

inline void to_json(nlohmann::json &j, const Partition &p)
{
    j = nlohmann::json::array();
    for (int x : p.parts()) {
        j.push_back(x);
    }
}

inline void from_json(const nlohmann::json &j, Partition &p)
{
    p = Partition(j.get<std::vector<int>>());
}

// Square partition S_k: k rows of length |k|; a negative k is the negative
// square of the same shape. |S_k| = k^2.
struct SquareSide {
    int k = 0;

    int weight() const
    {
        return k * k;
    }

    Partition shape() const
    {
        const int a = k < 0 ? -k : k;
        return Partition(std::vector<int>(static_cast<std::size_t>(a), a));
    }

    friend auto operator<=>(const SquareSide &, const SquareSide &) = default;
};

inline void to_json(nlohmann::json &j, const SquareSide &s)
{
    j = s.k;
}

inline void from_json(const nlohmann::json &j, SquareSide &s)
{
    s.k = j.get<int>();
}

// (r-1, r-2, ..., 1, 0): r parts, ending in an explicit zero.
inline Partition staircase(int r)
{
    detail::require(r >= 0, "staircase: r must be nonnegative");
    std::vector<int> v(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        v[static_cast<std::size_t>(i)] = r - 1 - i;
    }
    return Partition(std::move(v));
}

// All strictly decreasing partitions with parts in [lo, hi], in lexicographic
// order. An empty range yields exactly the empty partition.
inline std::vector<Partition> enum_distinct_range(int lo, int hi)
{
    detail::require(lo >= 1, "enum_distinct_range: lo must be positive");
    std::vector<Partition> out;
    if (hi < lo) {
        out.emplace_back();
        return out;
    }
    const int width = hi - lo + 1;
    detail::require(width < 31, "enum_distinct_range: range too wide to enumerate");
    out.reserve(std::size_t{1} << width);
    for (unsigned mask = 0; mask < (1u << width); ++mask) {
        std::vector<int> v;
        for (int p = hi; p >= lo; --p) {
            if (mask & (1u << (p - lo))) {
                v.push_back(p);
            }
        }
        out.emplace_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail
{

// Appends every even-part partition with parts <= max_part, at most max_len
// more parts and weight <= budget, extending `prefix`.
inline void even_parts_rec(std::vector<int> &prefix, int max_part, int max_len, int budget,
                           std::vector<Partition> &out)
{
    out.emplace_back(prefix);
    if (max_len == 0) {
        return;
    }
    for (int p = std::min(max_part, budget - budget % 2); p >= 2; p -= 2) {
        prefix.push_back(p);
        even_parts_rec(prefix, p, max_len - 1, budget - p, out);
        prefix.pop_back();
    }
}

inline std::vector<Partition> enum_even(int max_part, int max_len, int weight_cap)
{
    require(max_part >= 0, "even-part enumeration: max_part must be nonnegative");
    require(max_len >= 0, "even-part enumeration: max_len must be nonnegative");
    require(weight_cap >= 0, "even-part enumeration: weight cap must be nonnegative");
    std::vector<Partition> out;
    std::vector<int> prefix;
    even_parts_rec(prefix, max_part - max_part % 2, max_len, weight_cap, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Even-part partitions in a max_len x max_part box.
inline std::vector<Partition> enum_even_bounded(int max_part, int max_len)
{
    return detail::enum_even(max_part, max_len, max_part * max_len);
}

// Even-part partitions with largest part <= max_part and weight <= weight_cap.
inline std::vector<Partition> enum_even_capped(int max_part, int weight_cap)
{
    return detail::enum_even(max_part, weight_cap / 2, weight_cap);
}

} // namespace qtel

#endif
