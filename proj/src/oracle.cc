#include "rematch/oracle.hh"

#include <algorithm>
#include <unordered_map>

#include "rematch/errors.hh"

namespace rematch {

namespace {

UnifiedWord join(const UnifiedWord& lhs, const UnifiedWord& rhs) {
    UnifiedWord out;
    out.reserve(lhs.size() + rhs.size());
    out.insert(out.end(), lhs.begin(), lhs.end());
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
}

Language concat_bounded(const Language& lhs, const Language& rhs, std::size_t max_len) {
    std::vector<std::vector<const UnifiedWord*>> by_length(max_len + 1);
    for (const auto& w : rhs) by_length[w.size()].push_back(&w);
    Language out;
    for (const auto& x : lhs) {
        for (std::size_t len = 0; len + x.size() <= max_len; ++len) {
            for (const auto* y : by_length[len]) out.insert(join(x, *y));
        }
    }
    return out;
}

// Kleene closure restricted to words of length <= max_len. Iterates until no
// new word appears, so a nullable body cannot loop forever.
Language star_bounded(const Language& body, std::size_t max_len) {
    Language result{UnifiedWord{}};
    Language frontier = result;
    while (!frontier.empty()) {
        Language next;
        for (const auto& x : frontier) {
            for (const auto& y : body) {
                if (y.empty() || x.size() + y.size() > max_len) continue;
                auto z = join(x, y);
                if (result.insert(z).second) next.insert(std::move(z));
            }
        }
        frontier = std::move(next);
    }
    return result;
}

// Ends of matches of a sub-expression starting at a fixed offset of the
// input. `out` describes the last letter consumed by the match.
constexpr int kNothingConsumed = -2;
constexpr int kNoOutput = -1;

struct End {
    std::size_t pos;
    int out;
    auto operator<=>(const End&) const = default;
};

class EndMatcher {
public:
    EndMatcher(const Word& word, const std::vector<OutputSymbol>& outputs)
        : word_(word), outputs_(outputs) {}

    const std::vector<End>& ends(const Expr& e, std::size_t start) {
        Key key{e.id(), start, false};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<End> result = compute(e, start);
        return memo_.emplace(key, std::move(result)).first->second;
    }

private:
    struct Key {
        const void* node;
        std::size_t start;
        bool star_of_body;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            auto h = std::hash<const void*>{}(k.node);
            h ^= k.start * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h ^ static_cast<std::size_t>(k.star_of_body);
        }
    };

    static void normalize(std::vector<End>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    int output_index(const std::optional<OutputSymbol>& out) const {
        if (!out) return kNoOutput;
        auto it = std::lower_bound(outputs_.begin(), outputs_.end(), *out);
        return static_cast<int>(it - outputs_.begin());
    }

    // Matches of `lhs_ends` followed by matches of `rhs` from each end.
    void append_then(const std::vector<End>& lhs_ends, const Expr& rhs, std::vector<End>& out) {
        for (End first : lhs_ends) {
            for (End second : ends(rhs, first.pos)) {
                out.push_back({second.pos, second.pos == first.pos ? first.out : second.out});
            }
        }
    }

    // Zero or more repetitions of `body` from `start`.
    const std::vector<End>& star_ends(const Expr& body, std::size_t start) {
        Key key{body.id(), start, true};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<End> result{{start, kNothingConsumed}};
        // Copy: the recursive calls below may insert into memo_.
        const std::vector<End> once = ends(body, start);
        for (End first : once) {
            if (first.pos == start) continue;
            result.push_back(first);
            for (End rest : star_ends(body, first.pos)) {
                if (rest.pos == first.pos) continue;
                result.push_back(rest);
            }
        }
        normalize(result);
        return memo_.emplace(key, std::move(result)).first->second;
    }

    std::vector<End> compute(const Expr& e, std::size_t start) {
        std::vector<End> result;
        switch (e.kind()) {
        case Expr::Kind::Epsilon: result.push_back({start, kNothingConsumed}); break;
        case Expr::Kind::Atom:
            if (start < word_.size() && word_[start] == e.symbol().input)
                result.push_back({start + 1, output_index(e.symbol().output)});
            break;
        case Expr::Kind::Union: {
            const std::vector<End> left = ends(e.lhs(), start);
            result = left;
            const auto& right = ends(e.rhs(), start);
            result.insert(result.end(), right.begin(), right.end());
            break;
        }
        case Expr::Kind::Concat: {
            const std::vector<End> left = ends(e.lhs(), start);
            append_then(left, e.rhs(), result);
            break;
        }
        case Expr::Kind::Star: result = star_ends(e.body(), start); break;
        case Expr::Kind::Plus: {
            const std::vector<End> once = ends(e.body(), start);
            for (End first : once) {
                result.push_back(first);
                const std::vector<End> rest = star_ends(e.body(), first.pos);
                for (End more : rest) {
                    if (more.pos != first.pos) result.push_back(more);
                }
            }
            break;
        }
        }
        normalize(result);
        return result;
    }

    const Word& word_;
    const std::vector<OutputSymbol>& outputs_;
    std::unordered_map<Key, std::vector<End>, KeyHash> memo_;
};

std::vector<OutputSymbol> sorted_outputs(const Expr& e) {
    auto set = e.output_alphabet();
    return {set.begin(), set.end()};
}

} // namespace

Language enumerate_language(const Expr& e, std::size_t max_len) {
    switch (e.kind()) {
    case Expr::Kind::Epsilon: return {UnifiedWord{}};
    case Expr::Kind::Atom:
        if (max_len == 0) return {};
        return {UnifiedWord{e.symbol()}};
    case Expr::Kind::Union: {
        Language out = enumerate_language(e.lhs(), max_len);
        out.merge(enumerate_language(e.rhs(), max_len));
        return out;
    }
    case Expr::Kind::Concat:
        return concat_bounded(enumerate_language(e.lhs(), max_len),
                              enumerate_language(e.rhs(), max_len), max_len);
    case Expr::Kind::Star: return star_bounded(enumerate_language(e.body(), max_len), max_len);
    case Expr::Kind::Plus: {
        Language body = enumerate_language(e.body(), max_len);
        return concat_bounded(body, star_bounded(body, max_len), max_len);
    }
    }
    return {};
}

BehaviourTable behaviour_of(const Expr& e, std::size_t max_len) {
    BehaviourTable table;
    table.horizon = max_len;
    // The empty-word clause never contributes: every letter of a pattern
    // regexp carries an input symbol, so (ε, γ) cannot be in L(e).
    for (const auto& u : enumerate_language(e, max_len)) {
        if (u.empty() || !u.back().output) continue;
        table.add(input_part(u), *u.back().output);
    }
    return table;
}

OutputSet match_outputs(const Expr& e, const Word& w) {
    OutputSet result;
    if (w.empty()) return result;
    const auto outputs = sorted_outputs(e);
    EndMatcher matcher(w, outputs);
    for (End end : matcher.ends(e, 0)) {
        if (end.pos == w.size() && end.out >= 0) result.insert(outputs[end.out]);
    }
    return result;
}

std::vector<OutputSet> complete_oracle(const Expr& e, const Word& w) {
    const auto sigma = e.input_alphabet();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!sigma.contains(w[i])) throw UnknownSymbolError(w[i], i + 1);
    }
    const auto outputs = sorted_outputs(e);
    std::vector<OutputSet> result(w.size());
    EndMatcher matcher(w, outputs);
    for (std::size_t start = 0; start < w.size(); ++start) {
        for (End end : matcher.ends(e, start)) {
            if (end.pos > start && end.out >= 0) result[end.pos - 1].insert(outputs[end.out]);
        }
    }
    return result;
}

} // namespace rematch
