#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "rematch/errors.hh"
#include "rematch/symbols.hh"

namespace rematch {

/// Immutable pattern-regexp tree. Copies share nodes, so an Expr is cheap to
/// pass by value and safe to read from several threads.
///
/// Concrete syntax accepted by parse():
///
///     expr  := alt
///     alt   := cat ('|' cat)*
///     cat   := rep+
///     rep   := atom ('*' | '+' | '?')*
///     atom  := CHAR annot? | '(' alt? ')'
///     annot := '<' IDENT '>'
///
/// `()` is the empty word, `x?` is sugar for `()|x`. `x+` is kept as its own
/// node (same language as `x x*`) so that compiled transducers contain a
/// single copy of `x`.
class Expr {
public:
    enum class Kind { Epsilon, Atom, Concat, Union, Star, Plus };

    static Expr epsilon();
    static Expr atom(InputSymbol input, std::optional<OutputSymbol> output = std::nullopt);
    static Expr concat(Expr lhs, Expr rhs);
    static Expr alt(Expr lhs, Expr rhs);
    static Expr star(Expr body);
    static Expr plus(Expr body);
    static Expr optional(Expr body);

    Kind kind() const;
    /// Valid for Atom nodes only.
    const UnifiedSymbol& symbol() const;
    /// Left operand of Concat/Union, body of Star/Plus.
    const Expr& lhs() const;
    const Expr& rhs() const;
    const Expr& body() const { return lhs(); }

    /// Number of AST nodes.
    std::size_t size() const;
    std::set<InputSymbol> input_alphabet() const;
    std::set<OutputSymbol> output_alphabet() const;
    /// True iff the empty word is in the language.
    bool nullable() const;

    /// Concrete syntax that parses back to a structurally equal tree.
    std::string to_string() const;

    /// Node identity, stable for the lifetime of the tree.
    const void* id() const { return node_.get(); }

    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Characters that cannot be used as input atoms.
bool is_reserved(char c);

/// Parse the concrete syntax above. Throws SyntaxError.
Expr parse(std::string_view text);

} // namespace rematch
