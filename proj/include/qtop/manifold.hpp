#pragma once
// Text descriptions of 3-manifolds:
//
//   manifold lens { n = 5, q = 1 }
//   manifold heegaard { genus = 2, word = "a1 b1^-1 c1" }
//   manifold plumbing { vertices = [(1,-2),(2,-2)], edges = [(1,2)],
//                       meridians = [(1,2)] }
//   manifold mapping_torus { genus = 1, word = "a1" }
//   manifold connected_sum { lens { n = 5, q = 1 }, heegaard { ... } }
//
// Whitespace is free and '#' starts a comment running to the end of line.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qtop/mcgrep.hpp"
#include "qtop/surgery.hpp"

namespace qtop {

struct LensDesc {
  long n = 0;
  long q = 1;
};

struct HeegaardDesc {
  int genus = 0;
  MCGWord word;
};

struct MappingTorusDesc {
  int genus = 0;
  MCGWord word;
};

struct ConnectedSumDesc {
  std::vector<std::variant<LensDesc, HeegaardDesc>> parts;
};

struct ManifoldDesc {
  std::variant<LensDesc, HeegaardDesc, PlumbingTree, MappingTorusDesc, ConnectedSumDesc> body;

  std::string kind() const;
};

// Throws ParseError carrying the line and column of the offending token.
ManifoldDesc parse_manifold(const std::string& text);
ManifoldDesc load_manifold(const std::string& path);

// Gluing word and genus, for lens spaces, Heegaard words and connected
// sums of those.
struct HeegaardPresentation {
  MCGWord word;
  int genus = 0;
};
std::optional<HeegaardPresentation> heegaard_presentation(const ManifoldDesc& m);

// Plumbing, or the continued-fraction chain of a lens space with n >= 1.
std::optional<PlumbingTree> surgery_presentation(const ManifoldDesc& m);

}  // namespace qtop
