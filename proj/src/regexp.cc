#include "rematch/regexp.hh"

#include <cassert>
#include <cctype>
#include <sstream>
#include <vector>

namespace rematch {

SyntaxError::SyntaxError(const std::string& what, std::size_t offset)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

UnknownSymbolError::UnknownSymbolError(char symbol, std::uint64_t position)
    : std::runtime_error(
          "unknown symbol '" + std::string(1, symbol) + "'" +
          (position ? " at position " + std::to_string(position) : std::string())),
      symbol_(symbol),
      position_(position) {}

StuckError::StuckError(std::uint32_t state, char symbol, std::uint64_t position)
    : std::runtime_error("no transition from state " + std::to_string(state) + " on '" +
                         std::string(1, symbol) + "' at position " + std::to_string(position)),
      state_(state),
      symbol_(symbol),
      position_(position) {}

Word input_part(const UnifiedWord& word) {
    Word result;
    result.reserve(word.size());
    for (const auto& sym : word) result.push_back(sym.input);
    return result;
}

bool is_identifier(const std::string& name) {
    if (name.empty()) return false;
    auto head = static_cast<unsigned char>(name.front());
    if (!std::isalpha(head) && head != '_') return false;
    for (char c : name) {
        auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && u != '_') return false;
    }
    return true;
}

void BehaviourTable::add(const Word& word, const OutputSet& symbols) {
    if (symbols.empty()) return;
    entries[word].insert(symbols.begin(), symbols.end());
}

void BehaviourTable::merge(const BehaviourTable& other) {
    assert(horizon == other.horizon);
    for (const auto& [word, set] : other.entries) add(word, set);
}

const OutputSet* BehaviourTable::find(const Word& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
}

std::string format_output_set(const OutputSet& set) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : set) {
        if (!first) out += ',';
        out += s;
        first = false;
    }
    return out + "}";
}

std::optional<Word> first_difference(const BehaviourTable& lhs, const BehaviourTable& rhs) {
    auto a = lhs.entries.begin();
    auto b = rhs.entries.begin();
    while (a != lhs.entries.end() || b != rhs.entries.end()) {
        if (a == lhs.entries.end()) return b->first;
        if (b == rhs.entries.end()) return a->first;
        if (a->first != b->first) return std::min(a->first, b->first);
        if (a->second != b->second) return a->first;
        ++a;
        ++b;
    }
    return std::nullopt;
}

struct Expr::Node {
    Kind kind;
    UnifiedSymbol symbol;
    std::optional<Expr> lhs;
    std::optional<Expr> rhs;
};

Expr Expr::epsilon() { return Expr(std::make_shared<const Node>(Node{Kind::Epsilon, {}, {}, {}})); }

Expr Expr::atom(InputSymbol input, std::optional<OutputSymbol> output) {
    return Expr(std::make_shared<const Node>(
        Node{Kind::Atom, UnifiedSymbol{input, std::move(output)}, {}, {}}));
}

Expr Expr::concat(Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Kind::Concat, {}, std::move(lhs), std::move(rhs)}));
}

Expr Expr::alt(Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Kind::Union, {}, std::move(lhs), std::move(rhs)}));
}

Expr Expr::star(Expr body) {
    return Expr(std::make_shared<const Node>(Node{Kind::Star, {}, std::move(body), {}}));
}

Expr Expr::plus(Expr body) {
    return Expr(std::make_shared<const Node>(Node{Kind::Plus, {}, std::move(body), {}}));
}

Expr Expr::optional(Expr body) { return alt(epsilon(), std::move(body)); }

Expr::Kind Expr::kind() const { return node_->kind; }

const UnifiedSymbol& Expr::symbol() const {
    assert(node_->kind == Kind::Atom);
    return node_->symbol;
}

const Expr& Expr::lhs() const {
    assert(node_->lhs);
    return *node_->lhs;
}

const Expr& Expr::rhs() const {
    assert(node_->rhs);
    return *node_->rhs;
}

std::size_t Expr::size() const {
    switch (kind()) {
    case Kind::Epsilon:
    case Kind::Atom: return 1;
    case Kind::Concat:
    case Kind::Union: return 1 + lhs().size() + rhs().size();
    case Kind::Star:
    case Kind::Plus: return 1 + body().size();
    }
    return 0;
}

namespace {

void collect_alphabets(const Expr& e, std::set<InputSymbol>* inputs, std::set<OutputSymbol>* outputs) {
    switch (e.kind()) {
    case Expr::Kind::Epsilon: return;
    case Expr::Kind::Atom:
        if (inputs) inputs->insert(e.symbol().input);
        if (outputs && e.symbol().output) outputs->insert(*e.symbol().output);
        return;
    case Expr::Kind::Concat:
    case Expr::Kind::Union:
        collect_alphabets(e.lhs(), inputs, outputs);
        collect_alphabets(e.rhs(), inputs, outputs);
        return;
    case Expr::Kind::Star:
    case Expr::Kind::Plus: collect_alphabets(e.body(), inputs, outputs); return;
    }
}

// Binding strength used when printing: union < concat < postfix < atom.
int precedence(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::Union: return 0;
    case Expr::Kind::Concat: return 1;
    case Expr::Kind::Star:
    case Expr::Kind::Plus: return 2;
    case Expr::Kind::Epsilon:
    case Expr::Kind::Atom: return 3;
    }
    return 3;
}

void print(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_prec, std::string& out) {
    if (precedence(e) < min_prec) {
        out += '(';
        print(e, out);
        out += ')';
    } else {
        print(e, out);
    }
}

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case Expr::Kind::Epsilon: out += "()"; return;
    case Expr::Kind::Atom:
        out += e.symbol().input;
        if (e.symbol().output) out += "<" + *e.symbol().output + ">";
        return;
    case Expr::Kind::Concat:
        // Concatenation folds to the right when parsed.
        print_at(e.lhs(), 2, out);
        print_at(e.rhs(), 1, out);
        return;
    case Expr::Kind::Union:
        // Union folds to the left when parsed.
        print_at(e.lhs(), 0, out);
        out += '|';
        print_at(e.rhs(), 1, out);
        return;
    case Expr::Kind::Star:
        print_at(e.body(), 2, out);
        out += '*';
        return;
    case Expr::Kind::Plus:
        print_at(e.body(), 2, out);
        out += '+';
        return;
    }
}

} // namespace

std::set<InputSymbol> Expr::input_alphabet() const {
    std::set<InputSymbol> result;
    collect_alphabets(*this, &result, nullptr);
    return result;
}

std::set<OutputSymbol> Expr::output_alphabet() const {
    std::set<OutputSymbol> result;
    collect_alphabets(*this, nullptr, &result);
    return result;
}

bool Expr::nullable() const {
    switch (kind()) {
    case Kind::Epsilon:
    case Kind::Star: return true;
    case Kind::Atom: return false;
    case Kind::Concat: return lhs().nullable() && rhs().nullable();
    case Kind::Union: return lhs().nullable() || rhs().nullable();
    case Kind::Plus: return body().nullable();
    }
    return false;
}

std::string Expr::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

bool operator==(const Expr& lhs, const Expr& rhs) {
    if (lhs.node_ == rhs.node_) return true;
    if (lhs.kind() != rhs.kind()) return false;
    switch (lhs.kind()) {
    case Expr::Kind::Epsilon: return true;
    case Expr::Kind::Atom: return lhs.symbol() == rhs.symbol();
    case Expr::Kind::Concat:
    case Expr::Kind::Union: return lhs.lhs() == rhs.lhs() && lhs.rhs() == rhs.rhs();
    case Expr::Kind::Star:
    case Expr::Kind::Plus: return lhs.body() == rhs.body();
    }
    return false;
}

bool is_reserved(char c) {
    switch (c) {
    case '(': case ')': case '|': case '*': case '+': case '?': case '<': case '>':
        return true;
    default:
        return std::isspace(static_cast<unsigned char>(c)) != 0;
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        skip_space();
        if (at_end()) throw SyntaxError("empty expression", pos_);
        Expr e = parse_alt();
        skip_space();
        if (!at_end()) {
            if (peek() == ')') throw SyntaxError("unbalanced ')'", pos_);
            throw SyntaxError(std::string("unexpected '") + peek() + "'", pos_);
        }
        return e;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    Expr parse_alt() {
        Expr result = parse_cat();
        skip_space();
        while (!at_end() && peek() == '|') {
            ++pos_;
            result = Expr::alt(std::move(result), parse_cat());
            skip_space();
        }
        return result;
    }

    bool starts_rep() {
        skip_space();
        return !at_end() && peek() != ')' && peek() != '|';
    }

    Expr parse_cat() {
        if (!starts_rep()) throw SyntaxError("empty alternative (write () for the empty word)", pos_);
        std::vector<Expr> parts;
        while (starts_rep()) parts.push_back(parse_rep());
        Expr result = parts.back();
        for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) result = Expr::concat(*it, result);
        return result;
    }

    Expr parse_rep() {
        Expr result = parse_atom();
        for (;;) {
            skip_space();
            if (at_end()) break;
            char c = peek();
            if (c == '*') {
                result = Expr::star(std::move(result));
            } else if (c == '+') {
                result = Expr::plus(std::move(result));
            } else if (c == '?') {
                result = Expr::optional(std::move(result));
            } else {
                break;
            }
            ++pos_;
        }
        return result;
    }

    Expr parse_atom() {
        skip_space();
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '(') {
            ++pos_;
            skip_space();
            Expr inner = Expr::epsilon();
            if (at_end()) throw SyntaxError("unbalanced '('", start);
            if (peek() != ')') inner = parse_alt();
            skip_space();
            if (at_end() || peek() != ')') throw SyntaxError("unbalanced '('", start);
            ++pos_;
            skip_space();
            if (!at_end() && peek() == '<')
                throw SyntaxError("annotation must follow an input symbol, not a group", pos_);
            return inner;
        }
        switch (c) {
        case ')': throw SyntaxError("unbalanced ')'", start);
        case '<': throw SyntaxError("annotation not preceded by an input symbol", start);
        case '*':
        case '+':
        case '?': throw SyntaxError(std::string("nothing to repeat before '") + c + "'", start);
        default: break;
        }
        if (is_reserved(c) || !std::isgraph(static_cast<unsigned char>(c)))
            throw SyntaxError("invalid input symbol", start);
        ++pos_;
        skip_space();
        std::optional<OutputSymbol> output;
        if (!at_end() && peek() == '<') output = parse_annotation();
        return Expr::atom(c, std::move(output));
    }

    OutputSymbol parse_annotation() {
        const std::size_t open = pos_;
        ++pos_;
        const std::size_t name_start = pos_;
        while (!at_end() && peek() != '>' && !is_reserved(peek())) ++pos_;
        if (at_end() || peek() != '>') throw SyntaxError("unterminated output annotation", open);
        std::string name(text_.substr(name_start, pos_ - name_start));
        if (!is_identifier(name)) throw SyntaxError("output name must be an identifier", open);
        ++pos_;
        return name;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text) { return Parser(text).parse(); }

} // namespace rematch
