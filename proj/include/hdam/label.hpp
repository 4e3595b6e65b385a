#pragma once

#include <compare>
#include <set>
#include <string>
#include <utility>

namespace hdam {

/// An action label.
///
/// Plain atoms only use `name`. Labels coming from program graphs also carry
/// a 1-based process ID. Composition (tensor, interleaving, coproduct) makes
/// alphabets disjoint by prefixing a side marker to `tags`: 'L' for the left
/// operand, 'R' for the right one, outermost composition first.
struct Label {
    std::string tags;
    int process = 0;
    std::string name;

    static Label atom(std::string name) { return {{}, 0, std::move(name)}; }
    static Label action(int process, std::string name) { return {{}, process, std::move(name)}; }

    auto operator<=>(const Label&) const = default;
};

using Alphabet = std::set<Label>;
using LabelPair = std::pair<Label, Label>;
using Relation = std::set<LabelPair>;

inline Label tag_left(Label l)
{
    l.tags.insert(l.tags.begin(), 'L');
    return l;
}

inline Label tag_right(Label l)
{
    l.tags.insert(l.tags.begin(), 'R');
    return l;
}

enum class Origin { left, right, untagged };

/// Strips the outermost side marker.
inline std::pair<Origin, Label> untag(Label l)
{
    if (l.tags.empty())
        return {Origin::untagged, l};
    const Origin side = l.tags.front() == 'L' ? Origin::left : Origin::right;
    l.tags.erase(l.tags.begin());
    return {side, l};
}

/// Human-readable form, e.g. "L.(1,x++)" or "a".
inline std::string to_string(const Label& l)
{
    std::string out;
    for (char c : l.tags) {
        out += c;
        out += '.';
    }
    if (l.process > 0)
        out += "(" + std::to_string(l.process) + "," + l.name + ")";
    else
        out += l.name;
    return out;
}

inline Alphabet tag_alphabets(const Alphabet& a, const Alphabet& b)
{
    Alphabet out;
    for (const Label& l : a)
        out.insert(tag_left(l));
    for (const Label& l : b)
        out.insert(tag_right(l));
    return out;
}

} // namespace hdam
