#ifndef COVKIT_IO_HPP
#define COVKIT_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covkit/bratteli.hpp"
#include "covkit/covering.hpp"
#include "covkit/errors.hpp"
#include "covkit/structured.hpp"

namespace covkit {

// On-disk form of a covering prefix: one JSON object per line.  The first
// line is a header carrying format_version, kind and mode; then one line per
// level (vertices, edges, and for circuit modes the center and circuits);
// then one line per cover, where {"cover": n} maps level n onto level n-1.
// Words are never stored; they are recomputed from the covers.
struct CoveringDocument {
  int format_version = 1;
  CoveringMode mode = CoveringMode::Plain;

  struct Level {
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    std::optional<VertexId> center;
    std::vector<std::vector<VertexId>> circuits;
  };
  std::vector<Level> levels;
  std::vector<std::map<VertexId, VertexId>> covers;
};

struct BratteliDocument {
  int format_version = 1;
  BratteliPrefix diagram;
};

enum class DocumentKind { Covering, Bratteli };

struct AnyDocument {
  DocumentKind kind = DocumentKind::Covering;
  CoveringDocument covering;
  BratteliDocument bratteli;
};

// Canonical text: compact JSON with alphabetical keys, vertices and edges
// sorted, one trailing newline.  Saving a loaded document reproduces the
// bytes exactly.
std::string to_text(const CoveringDocument& doc);
std::string to_text(const BratteliDocument& doc);
std::string to_text(const AnyDocument& doc);

// Throws ParseError with the absolute byte offset of the problem, or
// UnsupportedVersion when the header's format_version is not 1.
AnyDocument parse_document(const std::string& text);

AnyDocument load_document(const std::string& path);
void save_document(const AnyDocument& doc, const std::string& path);

CoveringDocument document_from(const CoveringPrefix& c);
CoveringDocument document_from(const StructuredCovering& sc);
BratteliDocument document_from(const BratteliPrefix& b);

// Rebuilds the in-memory objects.  to_covering throws DomainError when the
// cover maps cannot even be formed (missing or unknown vertices); weaker
// defects are left for validate_covering.  to_structured recomputes the word
// table, collecting decomposition failures into `diagnostics` when given.
CoveringPrefix to_covering(const CoveringDocument& doc);
StructuredCovering to_structured(const CoveringDocument& doc,
                                 std::vector<std::string>* diagnostics = nullptr);

}  // namespace covkit

#endif  // COVKIT_IO_HPP
