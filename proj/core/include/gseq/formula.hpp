#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gseq/ordinal.hpp"
#include "gseq/signature.hpp"

namespace gseq {

struct SymbolRef {
  std::string name;
  Copy copy = Copy::None;

  friend bool operator==(const SymbolRef&, const SymbolRef&) = default;
  friend auto operator<=>(const SymbolRef&, const SymbolRef&) = default;
};

struct Term {
  enum class Kind { Var, Const, Func, Literal };

  Kind kind = Kind::Var;
  std::string var;        // Var
  SymbolRef symbol;       // Const, Func
  std::vector<Term> args; // Func
  Ordinal literal;        // Literal

  static Term variable(std::string name);
  static Term constant(std::string name, Copy copy = Copy::None);
  static Term function(std::string name, Copy copy, std::vector<Term> args);
  static Term lit(Ordinal value);
  static Term lit(std::uint64_t value) { return lit(Ordinal::finite(value)); }

  friend bool operator==(const Term&, const Term&) = default;
};

class Formula;

struct FormulaNode {
  enum class Kind { Equal, Apply, Not, And, Exists };

  Kind kind;
  SymbolRef relation;          // Apply
  std::vector<Term> terms;     // Equal (2), Apply
  std::string var;             // Exists
  std::shared_ptr<const FormulaNode> left;   // Not, And, Exists
  std::shared_ptr<const FormulaNode> right;  // And
};

// Immutable first-order formula over the core connectives {=, R, ~, &, exists}.
// Copies share structure; nodes are never mutated after construction.
class Formula {
 public:
  using Kind = FormulaNode::Kind;

  Formula();  // the closed truth 0 = 0

  static Formula equal(Term a, Term b);
  static Formula apply(std::string relation, Copy copy, std::vector<Term> args);
  static Formula apply(std::string relation, std::vector<Term> args) {
    return apply(std::move(relation), Copy::None, std::move(args));
  }
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula exists(std::string var, Formula f);

  // Sugar, expanded into the core immediately.
  static Formula truth();
  static Formula falsity();
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(std::string var, Formula f);
  // Empty lists give truth / falsity.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);

  Kind kind() const noexcept { return node_->kind; }
  const SymbolRef& relation() const noexcept { return node_->relation; }
  const std::vector<Term>& terms() const noexcept { return node_->terms; }
  const std::string& var() const noexcept { return node_->var; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }

  const FormulaNode* node() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

// Formula whose non-logical symbols all carry a copy index 0 or 1.
struct BinaryFormula {
  Formula formula;

  friend bool operator==(const BinaryFormula&, const BinaryFormula&) = default;
};

// Free variables in order of first occurrence.
std::vector<std::string> free_vars(const Formula& f);
bool is_closed(const Formula& f);

Formula substitute(const Formula& f, const std::string& var, const Ordinal& value);
Formula substitute_term(const Formula& f, const std::string& var, const Term& value);
// Renames free occurrences of variables, avoiding capture by renaming binders.
Formula rename_free(const Formula& f, const std::string& from, const std::string& to);

std::size_t quantifier_rank(const Formula& f);
std::set<Ordinal> support_constants(const Formula& f);
std::size_t formula_size(const Formula& f);

// Every (symbol, copy) occurrence in relation, constant and function position.
std::set<SymbolRef> symbols_used(const Formula& f);

// Rewrites every symbol reference; used for renaming apart and copy changes.
Formula map_symbols(const Formula& f, const std::function<SymbolRef(const SymbolRef&)>& fn);
Formula with_copy(const Formula& f, Copy copy);

// Replaces an atom R(args) by fn(args) for the given relation (any copy).
Formula replace_atoms(const Formula& f, const SymbolRef& relation,
                      const std::function<Formula(const std::vector<Term>&)>& fn);

// Bounds every quantifier: exists y. phi becomes exists y. (bound(y) & phi).
Formula relativize(const Formula& f, const std::function<Formula(const std::string&)>& bound);

// Eliminates function applications: an atom mentioning f(u) becomes
// exists z. (f(u, z) & atom[z]) with f read as its graph relation.
Formula desugar_functions(const Formula& f);

// Fresh variable name not occurring anywhere in the given formulas.
std::string fresh_var(const std::vector<Formula>& avoid, const std::string& hint = "v");

}  // namespace gseq
