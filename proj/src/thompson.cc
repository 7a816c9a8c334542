#include <vector>

#include "rematch/fst.hh"

namespace rematch {

namespace {

struct Fragment {
    StateId entry;
    StateId exit;
};

// Atoms of an alternation built only from atoms, in left-to-right order.
bool collect_symbol_class(const Expr& e, std::vector<UnifiedSymbol>& atoms) {
    switch (e.kind()) {
    case Expr::Kind::Atom: atoms.push_back(e.symbol()); return true;
    case Expr::Kind::Union: return collect_symbol_class(e.lhs(), atoms) && collect_symbol_class(e.rhs(), atoms);
    default: return false;
    }
}

class ThompsonBuilder {
public:
    Fst take() { return std::move(fst_); }

    Fragment build(const Expr& e) {
        switch (e.kind()) {
        case Expr::Kind::Epsilon: {
            Fragment f{fst_.add_state(), fst_.add_state()};
            epsilon(f.entry, f.exit);
            return f;
        }
        case Expr::Kind::Atom: {
            Fragment f{fst_.add_state(), fst_.add_state()};
            fst_.add_transition({f.entry, e.symbol().input, e.symbol().output, f.exit});
            return f;
        }
        case Expr::Kind::Concat: {
            Fragment lhs = build(e.lhs());
            Fragment rhs = build(e.rhs());
            epsilon(lhs.exit, rhs.entry);
            return {lhs.entry, rhs.exit};
        }
        case Expr::Kind::Union: return build_union(e);
        case Expr::Kind::Star:
        case Expr::Kind::Plus: {
            StateId entry = fst_.add_state();
            Fragment body = build(e.body());
            StateId exit = fst_.add_state();
            epsilon(entry, body.entry);
            epsilon(body.exit, body.entry);
            epsilon(body.exit, exit);
            if (e.kind() == Expr::Kind::Star) epsilon(entry, exit);
            return {entry, exit};
        }
        }
        return {};
    }

private:
    void epsilon(StateId from, StateId to) { fst_.add_transition({from, std::nullopt, std::nullopt, to}); }

    Fragment build_union(const Expr& e) {
        std::vector<UnifiedSymbol> atoms;
        if (collect_symbol_class(e, atoms)) {
            StateId fork = fst_.add_state();
            std::vector<StateId> entries;
            for (std::size_t i = 0; i < atoms.size(); ++i) entries.push_back(fst_.add_state());
            StateId join = fst_.add_state();
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                epsilon(fork, entries[i]);
                fst_.add_transition({entries[i], atoms[i].input, atoms[i].output, join});
            }
            return {fork, join};
        }
        StateId fork = fst_.add_state();
        Fragment lhs = build(e.lhs());
        Fragment rhs = build(e.rhs());
        StateId join = fst_.add_state();
        epsilon(fork, lhs.entry);
        epsilon(fork, rhs.entry);
        epsilon(lhs.exit, join);
        epsilon(rhs.exit, join);
        return {fork, join};
    }

    Fst fst_;
};

// States from which `exit` is reachable by ε-moves alone.
std::vector<bool> ends_here(const Fst& m, StateId exit) {
    std::vector<std::vector<StateId>> back(m.state_count());
    for (StateId s = 0; s < m.state_count(); ++s)
        for (const FstTransition& t : m.epsilon_from(s)) back[t.to].push_back(s);
    std::vector<bool> seen(m.state_count(), false);
    std::vector<StateId> stack{exit};
    seen[exit] = true;
    while (!stack.empty()) {
        const StateId s = stack.back();
        stack.pop_back();
        for (StateId p : back[s])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

} // namespace

Fst thompson(const Expr& e) {
    ThompsonBuilder builder;
    Fragment f = builder.build(e);
    const Fst raw = builder.take();

    // An annotation only counts when its atom can be the last letter of a
    // word: σ<γ> emits γ iff the word read so far, ending in σ, is in the
    // language. Annotated edges that can never end a word stay silent.
    const std::vector<bool> can_end = ends_here(raw, f.exit);
    Fst fst;
    for (std::size_t s = 0; s < raw.state_count(); ++s) fst.add_state();
    for (InputSymbol c : raw.input_alphabet()) fst.add_input_symbol(c);
    for (const auto& o : raw.output_alphabet()) fst.add_output_symbol(o);
    for (FstTransition t : raw.transitions()) {
        if (t.output && !can_end[t.to]) t.output.reset();
        fst.add_transition(std::move(t));
    }
    fst.add_initial(f.entry);
    fst.add_final(f.exit);
    return fst;
}

} // namespace rematch
