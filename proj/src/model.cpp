/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "semdiff/java.hpp"
#include "semdiff/model.hpp"

namespace semdiff {

const char *declKindName(DeclKind K) {
  switch (K) {
  case DeclKind::Type:
    return "type";
  case DeclKind::Method:
    return "method";
  case DeclKind::Field:
    return "field";
  case DeclKind::EnumConstant:
    return "enum-constant";
  case DeclKind::Initializer:
    return "initializer";
  case DeclKind::Import:
    return "import";
  case DeclKind::Package:
    return "package";
  case DeclKind::CompilationUnit:
    return "compilation-unit";
  }
  return "";
}

const char *mappingTagName(MappingTag T) {
  switch (T) {
  case MappingTag::Declaration:
    return "declaration";
  case MappingTag::Multi:
    return "multi";
  case MappingTag::IntraFileMove:
    return "intra-file-move";
  case MappingTag::InterFileMove:
    return "inter-file-move";
  case MappingTag::SubExpression:
    return "sub-expression";
  }
  return "";
}

std::string Signature::key() const {
  switch (kind) {
  case DeclKind::Method: {
    std::string K = constructor ? "<init>" : qualifiedName.substr(
                                                 qualifiedName.rfind('.') + 1);
    K += "(";
    for (std::size_t I = 0; I < parameterTypeLabels.size(); ++I)
      K += (I ? "," : "") + parameterTypeLabels[I];
    return K + ")";
  }
  case DeclKind::Field:
  case DeclKind::EnumConstant:
  case DeclKind::Initializer:
    return std::string(declKindName(kind)) + ":" +
           qualifiedName.substr(qualifiedName.rfind('.') + 1);
  default:
    return std::string(declKindName(kind)) + ":" + qualifiedName;
  }
}

std::string Signature::shortForm() const {
  std::string Name = qualifiedName.substr(qualifiedName.rfind('.') + 1);
  if (kind != DeclKind::Method)
    return kind == DeclKind::Type || kind == DeclKind::Import ||
                   kind == DeclKind::Package
               ? qualifiedName
               : Name;
  Name += "(";
  for (std::size_t I = 0; I < parameterTypeLabels.size(); ++I)
    Name += (I ? ", " : "") + parameterTypeLabels[I];
  return Name + ")";
}

std::string packageOf(const Node *N) {
  while (N->parent)
    N = N->parent;
  for (const Node *C : N->children)
    if (C->type == "PackageDeclaration")
      if (const Node *Name = C->child(Slot::Name))
        return printFull(Name);
  return "";
}

Node *enclosingType(const Node *N) {
  for (Node *P = N->parent; P; P = P->parent)
    if (isTypeDeclaration(P))
      return P;
  return nullptr;
}

std::string qualifiedTypeName(const Node *T) {
  std::string Name;
  for (const Node *C = T; C; C = enclosingType(C)) {
    const Node *Id = C->child(Slot::Name);
    std::string Simple = Id ? Id->value : "";
    Name = Name.empty() ? Simple : Simple + "." + Name;
  }
  std::string Pkg = packageOf(T);
  return Pkg.empty() ? Name : Pkg + "." + Name;
}

Signature signatureOf(const Node *D) {
  Signature S;
  const Node *Owner = enclosingType(D);
  std::string Prefix = Owner ? qualifiedTypeName(Owner) + "." : "";
  auto NameOf = [](const Node *N) {
    const Node *Id = N->child(Slot::Name);
    return Id ? Id->value : std::string();
  };
  if (isTypeDeclaration(D)) {
    S.kind = DeclKind::Type;
    S.qualifiedName = qualifiedTypeName(D);
  } else if (D->type == "MethodDeclaration") {
    S.kind = DeclKind::Method;
    S.constructor = D->constructor;
    S.qualifiedName = Prefix + NameOf(D);
    for (const Node *P : D->childrenIn(Slot::Parameter)) {
      const Node *T = P->child(Slot::Type);
      S.parameterTypeLabels.push_back((T ? T->value : "") + P->value);
    }
    if (const Node *R = D->child(Slot::ReturnType))
      S.returnType = R->value;
  } else if (D->type == "FieldDeclaration") {
    S.kind = DeclKind::Field;
    std::string Names;
    for (const Node *C : D->children)
      if (C->type == "VariableDeclarationFragment")
        Names += (Names.empty() ? "" : ",") + NameOf(C);
    S.qualifiedName = Prefix + Names;
    if (const Node *T = D->child(Slot::Type))
      S.returnType = T->value;
  } else if (D->type == "EnumConstantDeclaration") {
    S.kind = DeclKind::EnumConstant;
    S.qualifiedName = Prefix + NameOf(D);
  } else if (D->type == "Initializer") {
    S.kind = DeclKind::Initializer;
    bool Static = false;
    for (const Node *C : D->children)
      Static |= C->type == "Modifier" && C->value == "static";
    S.qualifiedName = Prefix + (Static ? "static{}" : "{}");
  } else if (D->type == "ImportDeclaration") {
    S.kind = DeclKind::Import;
    const Node *Name = D->child(Slot::Name);
    S.qualifiedName = Name ? printFull(Name) : "";
    if (D->value.find('*') != std::string::npos)
      S.qualifiedName += ".*";
    if (D->value.rfind("static", 0) == 0)
      S.qualifiedName = "static " + S.qualifiedName;
  } else if (D->type == "PackageDeclaration") {
    S.kind = DeclKind::Package;
    const Node *Name = D->child(Slot::Name);
    S.qualifiedName = Name ? printFull(Name) : "";
  } else if (D->type == "CompilationUnit") {
    S.kind = DeclKind::CompilationUnit;
    S.qualifiedName = D->file ? D->file->path : "";
  }
  return S;
}

} // namespace semdiff
