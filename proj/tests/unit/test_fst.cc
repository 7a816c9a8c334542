#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hh"
#include "generators.hh"
#include "rematch/fst.hh"
#include "rematch/oracle.hh"

using namespace rematch;

namespace {

bool subset_of(const StateSet& a, const StateSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Every U-word of length <= n spelled by a path from an initial to a final
// state. Words are extended one letter at a time, each carrying the set of
// states it can be in, closed under ε/ε edges.
Language spelled(const Fst& m, std::size_t n) {
    auto close = [&](std::set<StateId> states) {
        std::vector<StateId> stack(states.begin(), states.end());
        while (!stack.empty()) {
            const StateId s = stack.back();
            stack.pop_back();
            for (const FstTransition& t : m.transitions_from(s)) {
                if (t.input) continue;
                // ε/γ cannot occur in a compiled expression
                REQUIRE_FALSE(t.output);
                if (states.insert(t.to).second) stack.push_back(t.to);
            }
        }
        return states;
    };
    Language out;
    std::map<UnifiedWord, std::set<StateId>> level{{{}, close({m.initials().begin(), m.initials().end()})}};
    for (std::size_t len = 0;; ++len) {
        for (const auto& [word, states] : level)
            for (StateId f : m.finals())
                if (states.contains(f)) out.insert(word);
        if (len == n) break;
        std::map<UnifiedWord, std::set<StateId>> next;
        for (const auto& [word, states] : level) {
            for (StateId s : states) {
                for (const FstTransition& t : m.transitions_from(s)) {
                    if (!t.input) continue;
                    UnifiedWord longer = word;
                    longer.push_back(UnifiedSymbol{*t.input, t.output});
                    next[longer].insert(t.to);
                }
            }
        }
        level.clear();
        for (auto& [word, states] : next) level.emplace(word, close(std::move(states)));
    }
    return out;
}

// Input projection plus the output of the last letter: annotations that can
// never end a word are silenced in the transducer, so only these survive.
std::set<std::pair<Word, std::optional<OutputSymbol>>> endings(const Language& l) {
    std::set<std::pair<Word, std::optional<OutputSymbol>>> out;
    for (const auto& u : l) out.emplace(input_part(u), u.empty() ? std::nullopt : u.back().output);
    return out;
}

} // namespace

TEST_CASE("rematch::thompson base cases") {
    const Fst eps = thompson(Expr::epsilon());
    CHECK(eps.state_count() == 2);
    REQUIRE(eps.transition_count() == 1);
    const FstTransition t = eps.transitions().front();
    CHECK(t.from == eps.initials().front());
    CHECK(t.to == eps.finals().front());
    CHECK_FALSE(t.input);
    CHECK_FALSE(t.output);

    const Fst atom = thompson(parse("a<A>"));
    CHECK(atom.state_count() == 2);
    REQUIRE(atom.transition_count() == 1);
    CHECK(atom.transitions().front() == FstTransition{atom.initials().front(), 'a', "A", atom.finals().front()});
    CHECK(atom.initials().size() == 1);
    CHECK(atom.finals().size() == 1);
}

TEST_CASE("rematch::thompson language of e3") {
    const Expr e3 = parse(testing::e3_text);
    const Fst m = thompson(e3);
    CHECK(spelled(m, 5) == enumerate_language(e3, 5));
    CHECK(m.input_alphabet() == e3.input_alphabet());
    CHECK(m.output_alphabet() == e3.output_alphabet());

    // an annotation that can never end a word stays silent
    const Fst mid = thompson(parse("a<X>b"));
    REQUIRE(mid.transition_count() == 3);
    for (const auto& t : mid.transitions()) CHECK_FALSE(t.output);
    CHECK(mid.output_alphabet() == std::set<OutputSymbol>{"X"});
    CHECK(fst_output(mid, 3).empty());
    CHECK(behaviour_of(parse("a<X>b"), 3).empty());
}

TEST_CASE("rematch::thompson is sound and linear") {
    testing::Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        const Expr e = testing::random_expr(rng);
        CAPTURE(e.to_string());
        const Fst m = thompson(e);
        CHECK(fst_output(m, 5) == behaviour_of(e, 5));
        CHECK(endings(spelled(m, 4)) == endings(enumerate_language(e, 4)));
        CHECK(m.state_count() <= 2 * e.size());
        CHECK(m.transition_count() <= 4 * e.size());
        // outputs are never emitted before the first input symbol
        const StateSet start = eps_closure(m, m.initials());
        CHECK(epsilon_outputs(m, start).empty());
    }
}

TEST_CASE("rematch::eps_closure") {
    const Fst m = thompson(parse("a|b"));
    CHECK(eps_closure(m, StateSet{}).empty());

    const StateSet closure = eps_closure(m, m.initials());
    CHECK(closure.size() == 3);
    CHECK(closure.front() == m.initials().front());
    CHECK(move(m, closure, 'a').size() == 1);
    CHECK(move(m, closure, 'b').size() == 1);

    // a state without ε-moves closes to itself
    for (StateId s = 0; s < m.state_count(); ++s) {
        if (m.epsilon_from(s).empty()) CHECK(eps_closure(m, StateSet{s}) == StateSet{s});
    }
}

TEST_CASE("rematch::eps_closure is a closure operator") {
    testing::Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const Fst m = thompson(testing::random_expr(rng));
        StateSet x, y;
        for (StateId s = 0; s < m.state_count(); ++s) {
            if (rng() % 3 == 0) x.push_back(s);
            if (rng() % 3 == 0 || std::binary_search(x.begin(), x.end(), s)) y.push_back(s);
        }
        const StateSet cx = eps_closure(m, x);
        CHECK(subset_of(x, cx));                   // extensive
        CHECK(eps_closure(m, cx) == cx);           // idempotent
        CHECK(subset_of(cx, eps_closure(m, y)));   // monotone, x ⊆ y
        CHECK(std::is_sorted(cx.begin(), cx.end()));
    }
}

TEST_CASE("rematch::state_behaviour and fst_output") {
    const Fst atom = thompson(parse("a<A>"));
    const BehaviourTable at_initial = state_behaviour(atom, atom.initials().front(), 1);
    CHECK(at_initial.entries == std::map<Word, OutputSet>{{"a", {"A"}}});
    CHECK(state_behaviour(atom, atom.finals().front(), 4).empty());
    CHECK(fst_output(atom, 3) == state_behaviour(atom, atom.initials().front(), 3));

    const Expr e3 = parse(testing::e3_text);
    const Fst m = thompson(e3);
    CHECK(fst_output(m, 4) == behaviour_of(e3, 4));
    CHECK(state_behaviour(m, m.initials().front(), 4) == behaviour_of(e3, 4));

    // two initial states: pointwise union
    Fst two;
    for (int i = 0; i < 4; ++i) two.add_state();
    two.add_initial(0);
    two.add_initial(1);
    two.add_final(2);
    two.add_final(3);
    two.add_transition({0, 'a', "A", 2});
    two.add_transition({1, 'a', "B", 3});
    two.add_transition({1, std::nullopt, std::nullopt, 0});
    two.add_transition({0, 'b', std::nullopt, 2});
    BehaviourTable expected = state_behaviour(two, 0, 3);
    expected.merge(state_behaviour(two, 1, 3));
    CHECK(fst_output(two, 3) == expected);
    CHECK(fst_output(two, 3).entries == std::map<Word, OutputSet>{{"a", {"A", "B"}}});
}
