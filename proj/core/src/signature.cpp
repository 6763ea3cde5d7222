#include "gseq/signature.hpp"

#include "gseq/error.hpp"

namespace gseq {

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Relation: return "rel";
    case SymbolKind::Function: return "fun";
    case SymbolKind::Constant: return "const";
  }
  return "?";
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::None: return "none";
    case Role::Membership: return "membership";
    case Role::In: return "in";
    case Role::Out: return "out";
  }
  return "?";
}

Signature::Signature(std::vector<SymbolDecl> decls) {
  for (auto& d : decls) add(std::move(d));
}

void Signature::add(SymbolDecl decl) {
  if (decl.name.empty()) throw Error(ErrorCode::Validation, "empty symbol name");
  if (contains(decl.name)) throw Error(ErrorCode::Validation, "duplicate symbol", decl.name);
  if (decl.kind == SymbolKind::Constant && decl.arity != 0) {
    throw Error(ErrorCode::ArityMismatch, "constants have arity 0", decl.name);
  }
  if (decl.kind != SymbolKind::Constant && decl.arity == 0) {
    throw Error(ErrorCode::ArityMismatch, "relations and functions need positive arity", decl.name);
  }
  if (decl.role != Role::None) {
    if (decl.kind != SymbolKind::Relation) {
      throw Error(ErrorCode::Validation, "distinguished symbols are relations", decl.name);
    }
    std::size_t want = decl.role == Role::Membership ? 2 : 1;
    if (decl.arity != want) throw Error(ErrorCode::ArityMismatch, "wrong arity for distinguished symbol", decl.name);
    if (!name_of(decl.role).empty()) {
      throw Error(ErrorCode::Validation, "role declared twice", decl.name);
    }
  }
  decls_.push_back(std::move(decl));
}

const SymbolDecl* Signature::find(std::string_view name) const noexcept {
  for (const auto& d : decls_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const SymbolDecl& Signature::at(std::string_view name) const {
  if (const auto* d = find(name)) return *d;
  throw Error(ErrorCode::UnknownSymbol, "unknown symbol " + std::string(name), std::string(name));
}

std::string Signature::name_of(Role role) const {
  for (const auto& d : decls_) {
    if (d.role == role) return d.name;
  }
  return {};
}

std::string copy_name(std::string_view name, Copy copy) {
  std::string out(name);
  if (copy == Copy::Zero) out += "@0";
  if (copy == Copy::One) out += "@1";
  return out;
}

Signature double_signature(const Signature& sigma) {
  Signature out;
  for (const auto& d : sigma.decls()) {
    for (Copy c : {Copy::Zero, Copy::One}) {
      SymbolDecl copy = d;
      copy.name = copy_name(d.name, c);
      // The copies keep kind and arity; roles stay unique on copy 0 only.
      if (c == Copy::One) copy.role = Role::None;
      out.add(std::move(copy));
    }
  }
  return out;
}

}  // namespace gseq
