#ifndef QTEL_RENDER_HPP
#define QTEL_RENDER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <qtel/andrews.hpp>
#include <qtel/macmahon.hpp>
#include <qtel/partition.hpp>
#include <qtel/telescope.hpp>

// Plain-text Young diagrams, one line per part. A zero part prints as
// "(0-row)". Each nonempty component is labelled on its first row and the
// remaining rows are aligned under it; an object whose components are all
// empty prints as "(empty)". Marked objects get a "[marker w] " prefix.
namespace qtel
{

namespace detail
{

// Display width of a UTF-8 string (code points).
inline std::size_t display_width(std::string_view s)
{
    std::size_t w = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) {
            ++w;
        }
    }
    return w;
}

inline std::string cells(int length, std::string_view cell)
{
    if (length == 0) {
        return "(0-row)";
    }
    std::string s;
    for (int i = 0; i < length; ++i) {
        s += cell;
    }
    return s;
}

inline void render_block(std::vector<std::string> &lines, std::string_view label, std::span<const int> rows,
                         std::string_view cell = "■")
{
    const std::string indent(display_width(label) + 2, ' ');
    for (std::size_t i = 0; i < rows.size(); ++i) {
        lines.push_back((i == 0 ? std::string(label) + ": " : indent) + cells(rows[i], cell));
    }
}

inline std::string join(const std::vector<std::string> &lines, std::string_view prefix)
{
    if (lines.empty()) {
        return std::string(prefix) + "(empty)\n";
    }
    std::string out;
    const std::string indent(display_width(prefix), ' ');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += (i == 0 ? std::string(prefix) : indent) + lines[i] + "\n";
    }
    return out;
}

inline std::string marker_prefix(const std::optional<Marker> &m)
{
    if (!m) {
        return {};
    }
    std::string s = "[marker " + std::to_string(m->q);
    if (m->z != 0) {
        s += ", z^" + std::to_string(m->z);
    }
    return s + "] ";
}

} // namespace detail

inline std::string render_diagram(const andrews::Triple &t, const std::optional<Marker> &marker = {})
{
    std::vector<std::string> lines;
    detail::render_block(lines, "τ", t.tau.parts());
    detail::render_block(lines, "λ", t.lambda.parts());
    detail::render_block(lines, "μ", t.mu.parts());
    return detail::join(lines, detail::marker_prefix(marker));
}

// The square S_k is drawn with filled cells for k > 0 and hollow cells for
// the negative square S_{-|k|}.
inline std::string render_diagram(const macmahon::MacPair &p, const std::optional<Marker> &marker = {})
{
    std::vector<std::string> lines;
    const std::string label = "S_" + std::to_string(p.side.k);
    const Partition square = p.side.shape();
    detail::render_block(lines, label, square.parts(), p.side.k < 0 ? "□" : "■");
    detail::render_block(lines, "μ", p.mu.parts());
    return detail::join(lines, detail::marker_prefix(marker));
}

template <typename T>
std::string render_diagram(const Marked<T> &x)
{
    return render_diagram(x.object, x.marker);
}

} // namespace qtel

#endif
