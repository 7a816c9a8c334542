#include "rematch/minimize.hh"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace rematch {

bool DfaView::is_complete() const {
    return std::none_of(delta.begin(), delta.end(), [](StateId t) { return t == kNoState; });
}

Partition Partition::canonical() const {
    Partition out;
    out.blocks = blocks;
    for (auto& b : out.blocks) std::sort(b.begin(), b.end());
    std::sort(out.blocks.begin(), out.blocks.end());
    out.block_of.assign(block_of.size(), 0);
    for (std::size_t i = 0; i < out.blocks.size(); ++i) {
        for (StateId s : out.blocks[i]) out.block_of[s] = i;
    }
    return out;
}

bool Partition::operator==(const Partition& other) const { return canonical().blocks == other.canonical().blocks; }

Mealy complete_with_sink(const Mealy& m) {
    if (m.is_complete() && m.state_count() > 0) return m;
    Mealy out = m;
    const StateId sink = out.add_state();
    if (m.state_count() == 0) out.set_initial(sink);
    for (StateId s = 0; s < out.state_count(); ++s) {
        for (std::size_t k = 0; k < out.input_alphabet().size(); ++k) {
            if (!out.entry(s, k).defined()) out.set_transition(s, k, sink, LabelId{0});
        }
    }
    if (m.provenance()) {
        auto subsets = *m.provenance();
        subsets.emplace_back();
        out.set_provenance(std::move(subsets));
    }
    return out;
}

DfaView to_dfa_view(const Mealy& m) {
    DfaView view;
    view.state_count = m.state_count();
    view.initial = m.initial();
    view.finals.assign(m.state_count(), true);
    const std::size_t width = m.input_alphabet().size();
    std::set<DfaView::Letter> letters;
    for (StateId s = 0; s < m.state_count(); ++s) {
        for (std::size_t k = 0; k < width; ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (e.defined()) letters.insert({k, e.label});
        }
    }
    view.letters.assign(letters.begin(), letters.end());
    view.delta.assign(view.state_count * view.letters.size(), kNoState);
    for (StateId s = 0; s < m.state_count(); ++s) {
        for (std::size_t k = 0; k < width; ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            auto it = std::lower_bound(view.letters.begin(), view.letters.end(), DfaView::Letter{k, e.label});
            view.delta[s * view.letters.size() + static_cast<std::size_t>(it - view.letters.begin())] = e.target;
        }
    }
    return view;
}

DfaView complete_dfa(const DfaView& a) {
    if (a.is_complete()) return a;
    DfaView out;
    const std::size_t width = a.letters.size();
    const StateId sink = static_cast<StateId>(a.state_count);
    out.state_count = a.state_count + 1;
    out.letters = a.letters;
    out.initial = a.initial;
    out.finals = a.finals;
    out.finals.push_back(false);
    out.delta = a.delta;
    out.delta.resize(out.state_count * width, sink);
    for (auto& t : out.delta) {
        if (t == kNoState) t = sink;
    }
    return out;
}

namespace {

// Refinable partition over a permutation of the states: block b owns
// elems[first[b], end[b]), and its currently marked members sit at the front.
class Refiner {
public:
    explicit Refiner(std::size_t n) : elems_(n), loc_(n), block_of_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) {
            elems_[i] = static_cast<StateId>(i);
            loc_[i] = i;
        }
        if (n > 0) {
            first_.push_back(0);
            end_.push_back(n);
            marked_.push_back(0);
        }
    }

    std::size_t block_count() const { return first_.size(); }
    std::size_t block_of(StateId s) const { return block_of_[s]; }
    std::size_t size(std::size_t b) const { return end_[b] - first_[b]; }

    std::vector<StateId> members(std::size_t b) const {
        return {elems_.begin() + static_cast<std::ptrdiff_t>(first_[b]),
                elems_.begin() + static_cast<std::ptrdiff_t>(end_[b])};
    }

    void mark(StateId s) {
        const std::size_t b = block_of_[s];
        const std::size_t boundary = first_[b] + marked_[b];
        if (loc_[s] < boundary) return;
        std::swap(elems_[loc_[s]], elems_[boundary]);
        loc_[elems_[loc_[s]]] = loc_[s];
        loc_[s] = boundary;
        if (marked_[b]++ == 0) touched_.push_back(b);
    }

    // Splits every touched block into its marked and unmarked parts. The
    // smaller part becomes the new block; `on_new` receives its index.
    template <typename F>
    void split_touched(F&& on_new) {
        for (std::size_t b : touched_) {
            const std::size_t marked = marked_[b];
            marked_[b] = 0;
            const std::size_t total = end_[b] - first_[b];
            if (marked == total) continue;
            const std::size_t cut = first_[b] + marked;
            const std::size_t fresh = first_.size();
            if (marked <= total - marked) {
                first_.push_back(first_[b]);
                end_.push_back(cut);
                first_[b] = cut;
            } else {
                first_.push_back(cut);
                end_.push_back(end_[b]);
                end_[b] = cut;
            }
            marked_.push_back(0);
            for (std::size_t i = first_[fresh]; i < end_[fresh]; ++i) block_of_[elems_[i]] = fresh;
            on_new(fresh);
        }
        touched_.clear();
    }

    Partition to_partition() const {
        Partition p;
        p.block_of.assign(block_of_.begin(), block_of_.end());
        for (std::size_t b = 0; b < block_count(); ++b) p.blocks.push_back(members(b));
        return p;
    }

private:
    std::vector<StateId> elems_;
    std::vector<std::size_t> loc_;
    std::vector<std::size_t> block_of_;
    std::vector<std::size_t> first_, end_, marked_;
    std::vector<std::size_t> touched_;
};

} // namespace

Partition hopcroft_partition(const DfaView& a) {
    const std::size_t n = a.state_count;
    const std::size_t width = a.letters.size();

    // Predecessors by (letter, target), compressed row storage.
    std::vector<std::size_t> offset(width * n + 1, 0);
    for (StateId s = 0; s < n; ++s) {
        for (std::size_t c = 0; c < width; ++c) ++offset[c * n + a.next(s, c) + 1];
    }
    for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
    std::vector<StateId> sources(offset.back());
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (StateId s = 0; s < n; ++s) {
            for (std::size_t c = 0; c < width; ++c) sources[fill[c * n + a.next(s, c)]++] = s;
        }
    }

    Refiner refiner(n);
    std::deque<std::pair<std::size_t, std::size_t>> work;
    auto schedule = [&](std::size_t block) {
        for (std::size_t c = 0; c < width; ++c) work.emplace_back(block, c);
    };

    // Initial split into final and non-final states; only the smaller side
    // needs to be used as a splitter.
    for (StateId s = 0; s < n; ++s) {
        if (a.finals[s]) refiner.mark(s);
    }
    refiner.split_touched(schedule);

    while (!work.empty()) {
        auto [block, c] = work.front();
        work.pop_front();
        for (StateId t : refiner.members(block)) {
            for (std::size_t i = offset[c * n + t]; i < offset[c * n + t + 1]; ++i) refiner.mark(sources[i]);
        }
        // Whether or not (y, c') was pending, queueing the smaller half is
        // enough: the larger half keeps y's index and its pending entries.
        refiner.split_touched(schedule);
    }
    return refiner.to_partition();
}

DfaView minimize_dfa(const DfaView& a) {
    const Partition p = hopcroft_partition(a);
    const std::size_t width = a.letters.size();
    DfaView out;
    out.letters = a.letters;
    if (a.state_count == 0) return out;

    std::vector<StateId> renumber(p.blocks.size(), kNoState);
    std::vector<std::size_t> order;
    auto visit = [&](std::size_t block) {
        if (renumber[block] != kNoState) return;
        renumber[block] = static_cast<StateId>(order.size());
        order.push_back(block);
    };
    visit(p.block_of[a.initial]);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId rep = p.blocks[order[i]].front();
        for (std::size_t c = 0; c < width; ++c) visit(p.block_of[a.next(rep, c)]);
    }

    out.state_count = order.size();
    out.initial = 0;
    out.finals.resize(order.size());
    out.delta.resize(order.size() * width);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId rep = p.blocks[order[i]].front();
        out.finals[i] = a.finals[rep];
        for (std::size_t c = 0; c < width; ++c) out.delta[i * width + c] = renumber[p.block_of[a.next(rep, c)]];
    }
    return out;
}

Mealy min_comp(const Mealy& m) {
    if (m.state_count() == 0) return m;
    const Mealy complete = complete_with_sink(m);
    const DfaView view = to_dfa_view(complete);
    const DfaView full = complete_dfa(view);
    const Partition p = hopcroft_partition(full);

    // The rejecting sink, if present, is the only non-final state; its block
    // is dropped. Real states are final, so none of them shares that block.
    const bool has_reject = full.state_count > view.state_count;
    [[maybe_unused]] const std::size_t reject_block = has_reject ? p.block_of[full.state_count - 1] : p.blocks.size();

    const std::size_t width = complete.input_alphabet().size();
    Mealy out(complete.input_alphabet(), complete.output_alphabet());
    std::vector<StateId> renumber(p.blocks.size(), kNoState);
    std::vector<std::size_t> order;
    auto visit = [&](std::size_t block) {
        if (renumber[block] == kNoState) {
            renumber[block] = out.add_state();
            order.push_back(block);
        }
        return renumber[block];
    };
    out.set_initial(visit(p.block_of[complete.initial()]));
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId rep = p.blocks[order[i]].front();
        for (std::size_t k = 0; k < width; ++k) {
            const MealyEntry& e = complete.entry(rep, k);
            const std::size_t target_block = p.block_of[e.target];
            assert(target_block != reject_block);
            const StateId target = visit(target_block);
            out.set_transition(renumber[order[i]], k, target, complete.label(e.label));
        }
    }
    return out;
}

TrimResult trim_sink(const Mealy& m) {
    const std::size_t n = m.state_count();
    const std::size_t width = m.input_alphabet().size();
    std::vector<std::vector<StateId>> preds(n);
    std::vector<bool> live(n, false);
    std::vector<StateId> stack;
    for (StateId s = 0; s < n; ++s) {
        for (std::size_t k = 0; k < width; ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            preds[e.target].push_back(s);
            if (!m.label(e.label).empty() && !live[s]) {
                live[s] = true;
                stack.push_back(s);
            }
        }
    }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : preds[q]) {
            if (!live[p]) {
                live[p] = true;
                stack.push_back(p);
            }
        }
    }

    if (std::all_of(live.begin(), live.end(), [](bool b) { return b; })) return {m, TrimStatus::NoSink};
    if (n > 0 && !live[m.initial()]) return {m, TrimStatus::InitialIsSink};

    // A dead state stays only as the arrival point of an emitting transition.
    std::vector<bool> keep = live;
    for (StateId s = 0; s < n; ++s) {
        if (!live[s]) continue;
        for (std::size_t k = 0; k < width; ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (e.defined() && !m.label(e.label).empty()) keep[e.target] = true;
        }
    }
    std::vector<StateId> renumber(n, kNoState);
    Mealy out(m.input_alphabet(), m.output_alphabet());
    std::vector<StateSet> subsets;
    for (StateId s = 0; s < n; ++s) {
        if (!keep[s]) continue;
        renumber[s] = out.add_state();
        if (m.provenance()) subsets.push_back((*m.provenance())[s]);
    }
    out.set_initial(renumber[m.initial()]);
    for (StateId s = 0; s < n; ++s) {
        if (!live[s]) continue;
        for (std::size_t k = 0; k < width; ++k) {
            const MealyEntry& e = m.entry(s, k);
            if (!e.defined()) continue;
            const OutputSet& outs = m.label(e.label);
            if (!live[e.target] && outs.empty()) continue;
            out.set_transition(renumber[s], k, renumber[e.target], outs);
        }
    }
    if (m.provenance()) out.set_provenance(std::move(subsets));
    return {std::move(out), TrimStatus::Trimmed};
}

bool is_isomorphic(const Mealy& lhs, const Mealy& rhs) {
    if (lhs.input_alphabet() != rhs.input_alphabet()) return false;
    if (lhs.state_count() != rhs.state_count()) return false;
    const std::size_t n = lhs.state_count();
    if (n == 0) return true;
    const std::size_t width = lhs.input_alphabet().size();
    std::vector<StateId> fwd(n, kNoState), back(n, kNoState);
    std::deque<StateId> queue;

    auto bind = [&](StateId a, StateId b) {
        if (fwd[a] == kNoState && back[b] == kNoState) {
            fwd[a] = b;
            back[b] = a;
            queue.push_back(a);
            return true;
        }
        return fwd[a] == b;
    };
    auto propagate = [&]() {
        while (!queue.empty()) {
            StateId a = queue.front();
            queue.pop_front();
            StateId b = fwd[a];
            for (std::size_t k = 0; k < width; ++k) {
                const MealyEntry& ea = lhs.entry(a, k);
                const MealyEntry& eb = rhs.entry(b, k);
                if (ea.defined() != eb.defined()) return false;
                if (!ea.defined()) continue;
                if (lhs.label(ea.label) != rhs.label(eb.label)) return false;
                if (!bind(ea.target, eb.target)) return false;
            }
        }
        return true;
    };

    if (!bind(lhs.initial(), rhs.initial()) || !propagate()) return false;
    // States unreachable from the initial state are paired in index order.
    StateId next_b = 0;
    for (StateId a = 0; a < n; ++a) {
        if (fwd[a] != kNoState) continue;
        while (next_b < n && back[next_b] != kNoState) ++next_b;
        if (next_b == n || !bind(a, next_b) || !propagate()) return false;
    }
    return true;
}

std::vector<StateId> bfs_order(const Mealy& m) {
    std::vector<StateId> order;
    if (m.state_count() == 0) return order;
    std::vector<bool> seen(m.state_count(), false);
    order.push_back(m.initial());
    seen[m.initial()] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t k = 0; k < m.input_alphabet().size(); ++k) {
            const MealyEntry& e = m.entry(order[i], k);
            if (e.defined() && !seen[e.target]) {
                seen[e.target] = true;
                order.push_back(e.target);
            }
        }
    }
    return order;
}

} // namespace rematch
