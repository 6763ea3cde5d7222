#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gseq {

enum class SymbolKind { Relation, Function, Constant };
enum class Role { None, Membership, In, Out };

struct SymbolDecl {
  std::string name;
  SymbolKind kind = SymbolKind::Relation;
  std::size_t arity = 0;
  Role role = Role::None;

  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

// Copy index of a symbol occurrence in a formula over the doubled signature.
enum class Copy { None, Zero, One };

std::string_view to_string(SymbolKind kind);
std::string_view to_string(Role role);

// Ordered list of declarations with unique names. Declaration order is kept;
// it fixes the order of assembled conjunctions.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<SymbolDecl> decls);

  // Throws Validation on duplicate names, bad arities or misplaced roles.
  void add(SymbolDecl decl);

  const std::vector<SymbolDecl>& decls() const noexcept { return decls_; }
  std::size_t size() const noexcept { return decls_.size(); }
  bool empty() const noexcept { return decls_.empty(); }

  const SymbolDecl* find(std::string_view name) const noexcept;
  const SymbolDecl& at(std::string_view name) const;  // throws UnknownSymbol
  bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }

  // Name of the symbol with the given role, or empty.
  std::string name_of(Role role) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<SymbolDecl> decls_;
};

// Copy names are "X@0" and "X@1".
std::string copy_name(std::string_view name, Copy copy);
Signature double_signature(const Signature& sigma);

}  // namespace gseq
