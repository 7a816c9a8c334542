#include <algorithm>

#include "doctest.h"
#include "fixtures.hh"
#include "generators.hh"
#include "rematch/oracle.hh"

using namespace rematch;

namespace {

// "ab<A>" style shorthand: every character is an input symbol, `<X>` tags
// the preceding one.
UnifiedWord uw(std::string_view text) {
    UnifiedWord out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '<') {
            const auto close = text.find('>', i);
            out.back().output = std::string(text.substr(i + 1, close - i - 1));
            i = close;
        } else {
            out.push_back(UnifiedSymbol{text[i], std::nullopt});
        }
    }
    return out;
}

Language words(std::initializer_list<std::string_view> items) {
    Language l;
    for (auto w : items) l.insert(uw(w));
    return l;
}

// Positions (1-based) of the non-empty entries.
std::vector<std::size_t> event_positions(const std::vector<OutputSet>& outs) {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < outs.size(); ++i)
        if (!outs[i].empty()) at.push_back(i + 1);
    return at;
}

} // namespace

TEST_CASE("rematch::enumerate_language") {
    CHECK(enumerate_language(parse("a<A>|a"), 1) == words({"a<A>", "a"}));
    CHECK(enumerate_language(parse("(b|c)+"), 2) == words({"b", "c", "bb", "bc", "cb", "cc"}));
    CHECK(enumerate_language(parse("a(b|c)+d<A>"), 4) ==
          words({"abd<A>", "acd<A>", "abbd<A>", "abcd<A>", "acbd<A>", "accd<A>"}));
    CHECK(enumerate_language(parse("()"), 3) == words({""}));
    CHECK(enumerate_language(parse("(()|a)*"), 2) == words({"", "a", "aa"}));
    CHECK(enumerate_language(parse("a"), 0).empty());
}

TEST_CASE("rematch::behaviour_of") {
    BehaviourTable t = behaviour_of(parse("a<A>"), 1);
    CHECK(t.entries == std::map<Word, OutputSet>{{"a", {"A"}}});
    t = behaviour_of(parse("a<A>|a<B>"), 1);
    CHECK(t.entries == std::map<Word, OutputSet>{{"a", {"A", "B"}}});
    t = behaviour_of(parse("a(b|c)+d<A>"), 4);
    CHECK(t.entries == std::map<Word, OutputSet>{{"abd", {"A"}},
                                                  {"acd", {"A"}},
                                                  {"abbd", {"A"}},
                                                  {"abcd", {"A"}},
                                                  {"acbd", {"A"}},
                                                  {"accd", {"A"}}});
    CHECK(behaviour_of(parse("ab"), 4).empty());
}

TEST_CASE("rematch::behaviour_of language monotonicity") {
    testing::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const Expr e = testing::random_expr(rng);
        CAPTURE(e.to_string());
        Language prev = enumerate_language(e, 0);
        for (std::size_t n = 1; n <= 5; ++n) {
            const Language next = enumerate_language(e, n);
            CHECK(std::includes(next.begin(), next.end(), prev.begin(), prev.end()));
            for (const auto& w : next) CHECK(w.size() <= n);
            prev = next;
        }
    }
}

TEST_CASE("rematch::behaviour_of only depends on words of the same length") {
    testing::Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const Expr e = testing::random_expr(rng);
        CAPTURE(e.to_string());
        const BehaviourTable full = behaviour_of(e, 5);
        for (const auto& [w, outs] : full.entries) {
            const BehaviourTable at = behaviour_of(e, w.size());
            REQUIRE(at.find(w));
            CHECK(*at.find(w) == outs);
            CHECK(match_outputs(e, w) == outs);
        }
    }
}

TEST_CASE("rematch::behaviour_of language vs behaviour") {
    const Expr tagged = parse("a<A>");
    for (std::size_t n = 0; n <= 6; ++n) {
        CAPTURE(n);
        // different languages, same behaviour
        const Expr mixed = parse("a|a<A>");
        if (n > 0) CHECK(enumerate_language(tagged, n) != enumerate_language(mixed, n));
        CHECK(behaviour_of(tagged, n) == behaviour_of(mixed, n));
    }
    // a<A>a* also accepts aa, aaa, ... where nothing is emitted: only the
    // outputting behaviour is recorded, so the tables coincide
    const Expr looped = parse("a<A>a*");
    for (std::size_t n = 0; n <= 6; ++n) {
        CAPTURE(n);
        if (n > 1) CHECK(enumerate_language(tagged, n) != enumerate_language(looped, n));
        CHECK(behaviour_of(tagged, n) == behaviour_of(looped, n));
    }
    for (const Word w : {"", "a", "aa", "aaaa", "aaaaaaa"}) {
        CHECK(complete_oracle(tagged, w) == complete_oracle(looped, w));
    }
}

TEST_CASE("rematch::complete_oracle") {
    const Expr e3 = parse(testing::e3_text);
    const auto outs = complete_oracle(e3, testing::trace_s);
    REQUIRE(outs.size() == testing::trace_s.size());
    CHECK(event_positions(outs) == std::vector<std::size_t>{3, 11, 13});
    CHECK(outs[2] == OutputSet{"alpha"});
    CHECK(outs[10] == OutputSet{"alpha", "beta"});
    CHECK(outs[12] == OutputSet{"beta"});

    const auto pulse = complete_oracle(parse("lh+l<P>"), "lhlhlhl");
    CHECK(event_positions(pulse) == std::vector<std::size_t>{3, 5, 7});
    for (std::size_t p : {3, 5, 7}) CHECK(pulse[p - 1] == OutputSet{"P"});

    CHECK(complete_oracle(e3, "").empty());
    CHECK(event_positions(complete_oracle(parse("a<A>"), "aaa")) == std::vector<std::size_t>{1, 2, 3});
    CHECK_THROWS_AS(complete_oracle(e3, "abx"), UnknownSymbolError);
    try {
        complete_oracle(e3, "abx");
    } catch (const UnknownSymbolError& err) {
        CHECK(err.position() == 3);
        CHECK(err.symbol() == 'x');
    }
}

TEST_CASE("rematch::complete_oracle agrees with the enumerated behaviour of every suffix") {
    testing::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const Expr e = testing::random_expr(rng);
        const auto sigma_set = e.input_alphabet();
        if (sigma_set.empty()) continue;
        const std::vector<InputSymbol> sigma(sigma_set.begin(), sigma_set.end());
        const Word w = testing::random_word(rng, sigma, 0, 7);
        // enumeration-based reference, independent of the matcher
        const BehaviourTable table = behaviour_of(e, w.size());
        CAPTURE(e.to_string());
        CAPTURE(w);
        const auto outs = complete_oracle(e, w);
        REQUIRE(outs.size() == w.size());
        for (std::size_t k = 1; k <= w.size(); ++k) {
            OutputSet expected;
            for (std::size_t j = 0; j < k; ++j) {
                if (const OutputSet* m = table.find(w.substr(j, k - j))) expected.insert(m->begin(), m->end());
            }
            CHECK(outs[k - 1] == expected);
            // suffix-closure: position k only depends on the k-prefix
            CHECK(complete_oracle(e, w.substr(0, k)).back() == outs[k - 1]);
        }
    }
}
