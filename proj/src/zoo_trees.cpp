#include "snlab/errors.hpp"
#include "snlab/zoo.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <queue>
#include <unordered_map>

namespace snlab {

namespace {

constexpr int length_shift = 58;
constexpr std::size_t depth_limit = 31;

int bits_for(int alphabet) {
    return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(alphabet - 1))));
}

}

WordTreeSpace::WordTreeSpace(Kind kind, int alphabet, int root_children, int other_children, const Rational& base)
    : kind_(kind), alphabet_(alphabet), root_children_(root_children), other_children_(other_children), base_(base),
      bits_(bits_for(alphabet)), max_depth_(std::min<std::size_t>(depth_limit, length_shift / bits_for(alphabet))) {
    depth_weights_.push_back(Rational(0));
    Rational edge = 1;
    for (std::size_t j = 0; j < max_depth_; ++j) {
        Rational step = kind_ == Kind::weighted_tree ? edge : Rational(1);
        depth_weights_.push_back(depth_weights_.back() + step);
        edge *= base_;
    }
}

std::shared_ptr<WordTreeSpace> WordTreeSpace::regular_tree(int degree) {
    if (degree < 2) {
        throw PreconditionError("regular tree degree must be at least 2");
    }
    return std::shared_ptr<WordTreeSpace>(new WordTreeSpace(Kind::regular_tree, degree, degree, degree - 1, 1));
}

std::shared_ptr<WordTreeSpace> WordTreeSpace::free_group(int rank) {
    if (rank < 1 || rank > 13) {
        throw PreconditionError("free group rank must be between 1 and 13");
    }
    return std::shared_ptr<WordTreeSpace>(
        new WordTreeSpace(Kind::free_group, 2 * rank, 2 * rank, 2 * rank - 1, 1));
}

std::shared_ptr<WordTreeSpace> WordTreeSpace::weighted_tree(int branching, const Rational& base) {
    if (branching < 1) {
        throw PreconditionError("weighted tree branching must be at least 1");
    }
    if (base <= 0) {
        throw PreconditionError("weighted tree weight base must be positive");
    }
    return std::shared_ptr<WordTreeSpace>(
        new WordTreeSpace(Kind::weighted_tree, branching, branching, branching, base));
}

std::string WordTreeSpace::id() const {
    switch (kind_) {
    case Kind::regular_tree: return "regular-tree";
    case Kind::free_group: return "free-group";
    case Kind::weighted_tree: return "weighted-tree";
    }
    return "tree";
}

std::string WordTreeSpace::description() const {
    switch (kind_) {
    case Kind::regular_tree:
        return std::to_string(root_children_) + "-regular tree";
    case Kind::free_group:
        return "Cayley graph of the free group of rank " + std::to_string(alphabet_ / 2);
    case Kind::weighted_tree:
        return "rooted tree with " + std::to_string(alphabet_) + " children per vertex, edge weight " +
               to_string(base_) + "^j below depth j";
    }
    return {};
}

bool WordTreeSpace::letter_allowed(int previous, int letter, bool at_root) const {
    if (letter < 0) {
        return false;
    }
    switch (kind_) {
    case Kind::regular_tree: return letter < (at_root ? root_children_ : other_children_);
    case Kind::free_group: return letter < alphabet_ && (at_root || letter != (previous ^ 1));
    case Kind::weighted_tree: return letter < alphabet_;
    }
    return false;
}

std::size_t WordTreeSpace::depth(PointId p) const {
    return static_cast<std::size_t>(p.value >> length_shift);
}

std::vector<int> WordTreeSpace::letters(PointId p) const {
    std::size_t n = depth(p);
    std::vector<int> out(n);
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<int>((p.value >> (i * static_cast<std::size_t>(bits_))) & mask);
    }
    return out;
}

PointId WordTreeSpace::word(std::span<const int> letters) const {
    if (letters.size() > max_depth_) {
        throw HorizonExceeded("word of length " + std::to_string(letters.size()) + " exceeds depth limit " +
                              std::to_string(max_depth_) + " of " + id());
    }
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (!letter_allowed(i ? letters[i - 1] : -1, letters[i], i == 0)) {
            throw PreconditionError("letter sequence is not a vertex of " + id());
        }
        packed |= static_cast<std::uint64_t>(letters[i]) << (i * static_cast<std::size_t>(bits_));
    }
    return PointId{packed | (static_cast<std::uint64_t>(letters.size()) << length_shift)};
}

PointId WordTreeSpace::word(std::initializer_list<int> letters) const {
    return word(std::span<const int>(letters.begin(), letters.size()));
}

bool WordTreeSpace::is_point(PointId p) const {
    std::size_t n = depth(p);
    if (n > max_depth_) {
        return false;
    }
    std::uint64_t payload = p.value & ((std::uint64_t{1} << length_shift) - 1);
    if (n * static_cast<std::size_t>(bits_) < static_cast<std::size_t>(length_shift) &&
        (payload >> (n * static_cast<std::size_t>(bits_))) != 0) {
        return false;
    }
    auto l = letters(p);
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (!letter_allowed(i ? l[i - 1] : -1, l[i], i == 0)) {
            return false;
        }
    }
    return true;
}

void WordTreeSpace::append_children(PointId p, std::vector<PointId>& out) const {
    std::size_t n = depth(p);
    if (n + 1 > max_depth_) {
        throw HorizonExceeded("tree depth limit " + std::to_string(max_depth_) + " reached in " + id());
    }
    const auto shift = static_cast<std::size_t>(bits_);
    int previous = n ? static_cast<int>((p.value >> ((n - 1) * shift)) & ((std::uint64_t{1} << shift) - 1)) : -1;
    std::uint64_t payload = p.value & ((std::uint64_t{1} << length_shift) - 1);
    for (int l = 0; l < alphabet_; ++l) {
        if (letter_allowed(previous, l, n == 0)) {
            std::uint64_t v = payload | (static_cast<std::uint64_t>(l) << (n * shift));
            out.push_back(PointId{v | (static_cast<std::uint64_t>(n + 1) << length_shift)});
        }
    }
}

std::vector<PointId> WordTreeSpace::children(PointId p) const {
    std::vector<PointId> out;
    append_children(p, out);
    return out;
}

std::optional<PointId> WordTreeSpace::parent(PointId p) const {
    std::size_t n = depth(p);
    if (n == 0) {
        return std::nullopt;
    }
    std::uint64_t keep = (n - 1) * static_cast<std::size_t>(bits_);
    std::uint64_t payload = p.value & ((std::uint64_t{1} << keep) - 1);
    return PointId{payload | (static_cast<std::uint64_t>(n - 1) << length_shift)};
}

std::size_t WordTreeSpace::common_prefix(PointId a, PointId b) const {
    auto la = letters(a);
    auto lb = letters(b);
    std::size_t c = 0;
    while (c < la.size() && c < lb.size() && la[c] == lb[c]) {
        ++c;
    }
    return c;
}

Rational WordTreeSpace::depth_weight(std::size_t n) const {
    return depth_weights_.at(n);
}

Rational WordTreeSpace::distance(PointId a, PointId b) const {
    std::size_t c = common_prefix(a, b);
    return depth_weights_[depth(a)] + depth_weights_[depth(b)] - 2 * depth_weights_[c];
}

void WordTreeSpace::neighbors(PointId p, std::vector<PointId>& out) const {
    std::size_t first = out.size();
    if (auto up = parent(p)) {
        out.push_back(*up);
    }
    append_children(p, out);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

const GraphStructure* WordTreeSpace::graph_structure() const {
    return kind_ == Kind::weighted_tree ? nullptr : this;
}

std::vector<PointDistance> WordTreeSpace::neighborhood(const PointSet& seeds, const Rational& radius,
                                                       std::size_t point_cap) const {
    if (kind_ != Kind::weighted_tree) {
        return GraphSpace::neighborhood(seeds, radius, point_cap);
    }
    if (seeds.empty()) {
        throw PreconditionError("neighborhood of an empty set");
    }
    if (radius < 0) {
        return {};
    }
    // multi-source Dijkstra with exact weights
    using Entry = std::pair<Rational, std::uint64_t>;
    auto later = [](const Entry& a, const Entry& b) {
        int c = cmp(a.first, b.first);
        return c != 0 ? c > 0 : a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
    std::unordered_map<std::uint64_t, Rational> settled;
    for (auto s : seeds) {
        queue.emplace(Rational(0), s.value);
    }
    std::vector<PointDistance> out;
    std::vector<PointId> nbrs;
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (settled.count(v)) {
            continue;
        }
        settled.emplace(v, d);
        out.push_back({PointId{v}, d});
        if (out.size() > point_cap) {
            throw HorizonExceeded("weighted tree neighborhood exceeds point cap of " + std::to_string(point_cap));
        }
        PointId p{v};
        std::size_t n = depth(p);
        if (auto up = parent(p); up && !settled.count(up->value)) {
            Rational nd = d + (depth_weights_[n] - depth_weights_[n - 1]);
            if (nd <= radius) {
                queue.emplace(std::move(nd), up->value);
            }
        }
        if (n + 1 <= max_depth_) {
            Rational step = depth_weights_[n + 1] - depth_weights_[n];
            Rational nd = d + step;
            if (nd <= radius) {
                for (auto c : children(p)) {
                    if (!settled.count(c.value)) {
                        queue.emplace(nd, c.value);
                    }
                }
            }
        } else if (d + 1 <= radius) {
            throw HorizonExceeded("tree depth limit reached in " + id());
        }
    }
    sort_by_distance(out);
    return out;
}

std::string WordTreeSpace::format_point(PointId p) const {
    auto l = letters(p);
    if (l.empty()) {
        return "e";
    }
    std::string out;
    if (kind_ == Kind::free_group) {
        for (int x : l) {
            char c = static_cast<char>('a' + x / 2);
            out += (x & 1) ? static_cast<char>(c - 'a' + 'A') : c;
        }
        return out;
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
        out += (i ? "." : "") + std::to_string(l[i]);
    }
    return out;
}

PointId WordTreeSpace::parse_point(std::string_view text) const {
    if (text == "e" || text.empty()) {
        return root();
    }
    std::vector<int> l;
    if (kind_ == Kind::free_group) {
        // letters a, b, ...; inverses as A, B, ... or a^-1
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == ' ' || c == '*' || c == '.') {
                continue;
            }
            int letter;
            if (c >= 'a' && c <= 'z') {
                letter = 2 * (c - 'a');
            } else if (c >= 'A' && c <= 'Z') {
                letter = 2 * (c - 'A') + 1;
            } else {
                throw ParseError("bad free-group word '" + std::string(text) + "'");
            }
            if (text.substr(i + 1).starts_with("^-1")) {
                letter ^= 1;
                i += 3;
            }
            if (!l.empty() && l.back() == (letter ^ 1)) {
                l.pop_back();
            } else {
                l.push_back(letter);
            }
        }
    } else {
        std::string_view rest = text;
        while (!rest.empty()) {
            auto dot = rest.find('.');
            std::string_view field = rest.substr(0, dot);
            int v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                throw ParseError("bad tree vertex '" + std::string(text) + "'");
            }
            l.push_back(v);
            if (dot == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(dot + 1);
        }
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (!letter_allowed(i ? l[i - 1] : -1, l[i], i == 0)) {
            throw ParseError("'" + std::string(text) + "' is not a vertex of " + id());
        }
    }
    return word(l);
}

namespace {

constexpr std::uint64_t ray_flag = std::uint64_t{1} << 63;

}

TreeWithRaySpace::TreeWithRaySpace(int degree) {
    if (degree < 3) {
        throw PreconditionError("tree-plus-ray needs degree at least 3");
    }
    tree_ = WordTreeSpace::regular_tree(degree);
}

std::string TreeWithRaySpace::description() const {
    return tree_->description() + " with a one-sided integer ray glued at the root";
}

PointId TreeWithRaySpace::ray(std::uint64_t i) {
    if (i == 0) {
        throw PreconditionError("ray points start at 1; 0 is the tree root");
    }
    return PointId{ray_flag | i};
}

bool TreeWithRaySpace::on_ray(PointId p) {
    return (p.value & ray_flag) != 0;
}

bool TreeWithRaySpace::is_point(PointId p) const {
    if (on_ray(p)) {
        return (p.value & ~ray_flag) >= 1;
    }
    return tree_->is_point(p);
}

Rational TreeWithRaySpace::distance(PointId a, PointId b) const {
    bool ra = on_ray(a);
    bool rb = on_ray(b);
    std::uint64_t ia = a.value & ~ray_flag;
    std::uint64_t ib = b.value & ~ray_flag;
    if (ra && rb) {
        return Rational(ia > ib ? ia - ib : ib - ia);
    }
    if (ra) {
        return Rational(ia) + Rational(tree_->depth(b));
    }
    if (rb) {
        return Rational(ib) + Rational(tree_->depth(a));
    }
    return tree_->distance(a, b);
}

void TreeWithRaySpace::neighbors(PointId p, std::vector<PointId>& out) const {
    std::size_t first = out.size();
    if (on_ray(p)) {
        std::uint64_t i = p.value & ~ray_flag;
        out.push_back(i == 1 ? tree_->root() : ray(i - 1));
        out.push_back(ray(i + 1));
    } else {
        tree_->neighbors(p, out);
        if (p == tree_->root()) {
            out.push_back(ray(1));
        }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

std::string TreeWithRaySpace::format_point(PointId p) const {
    if (on_ray(p)) {
        return "r" + std::to_string(p.value & ~ray_flag);
    }
    return tree_->format_point(p);
}

PointId TreeWithRaySpace::parse_point(std::string_view text) const {
    if (text.starts_with("r")) {
        std::uint64_t i = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), i);
        if (ec != std::errc() || ptr != text.data() + text.size() || i == 0) {
            throw ParseError("bad ray point '" + std::string(text) + "'");
        }
        return ray(i);
    }
    return tree_->parse_point(text);
}

}
