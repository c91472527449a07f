#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kripkelab/universe.hpp"

namespace kripkelab {

/// A variable or a parameter naming a set by id.
class Term {
 public:
  static Term variable(std::string name);
  static Term parameter(SetId id);

  bool is_variable() const noexcept { return is_variable_; }
  const std::string& name() const noexcept { return name_; }
  SetId id() const noexcept { return id_; }

  bool operator==(const Term&) const = default;

 private:
  bool is_variable_ = false;
  std::string name_;
  SetId id_;
};

enum class FormulaKind {
  bottom,
  mem,
  eq,
  conj,
  disj,
  imp,
  forall,
  exists,
  bounded_forall,
  bounded_exists,
};

/// Immutable intuitionistic first-order formula over `in` and `=`.
///
/// Negation is not a node of its own: neg(p) is imp(p, bottom). Bounded
/// quantifiers are first-class so that Delta_0-ness is syntactic.
class Formula {
 public:
  static Formula bottom();
  static Formula mem(Term lhs, Term rhs);
  static Formula eq(Term lhs, Term rhs);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula neg(Formula f);
  /// (l -> r) & (r -> l)
  static Formula iff(Formula l, Formula r);
  /// ~false
  static Formula top();
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula bounded_forall(std::string var, Term bound, Formula body);
  static Formula bounded_exists(std::string var, Term bound, Formula body);

  FormulaKind kind() const noexcept;
  bool is_atomic() const noexcept;
  bool is_negation() const noexcept;
  bool is_quantifier() const noexcept;
  bool is_binary() const noexcept;

  /// Atoms only.
  const Term& lhs() const;
  const Term& rhs() const;
  /// Binary connectives only.
  const Formula& left() const;
  const Formula& right() const;
  /// Quantifiers only.
  const std::string& var() const;
  const Formula& body() const;
  /// Bounded quantifiers only.
  const Term& bound() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Text form accepted back by parse(), fully parenthesized.
std::string render(const Formula& f);

/// Parses the formula grammar; throws ParseError with the offending column.
Formula parse(std::string_view text);
/// As parse(), additionally rejecting parameters that are not in `u`.
Formula parse(std::string_view text, const Universe& u);

bool is_delta0(const Formula& f);
std::set<std::string> free_variables(const Formula& f);
bool is_closed(const Formula& f);
std::set<SetId> parameters(const Formula& f);
/// Number of AST nodes.
std::size_t formula_size(const Formula& f);

/// Replaces free occurrences of `var` by the parameter `id`. Parameters are
/// closed, so no capture can occur.
Formula substitute(const Formula& f, const std::string& var, SetId id);

/// The transformation that disjoins the closed sentence psi onto every atom
/// (and onto bottom), mapping connectives and unbounded quantifiers
/// homomorphically. Bounded quantifiers are treated as the guarded
/// unbounded forms they abbreviate:
///   (forall x in t . p)*  =  forall x in t . p*
///   (exists x in t . p)*  =  (exists x in t . p*) | psi
/// Throws ArityError if psi has free variables.
Formula star_transform(const Formula& f, const Formula& psi);

}  // namespace kripkelab
