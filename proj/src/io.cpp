#include "covkit/io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "json.hpp"

namespace covkit {

namespace {

using nlohmann::json;

json graph_json(std::vector<VertexId> vertices, std::vector<Edge> edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  json j;
  j["vertices"] = vertices;
  json edge_list = json::array();
  for (const auto& [u, v] : edges) edge_list.push_back({u, v});
  j["edges"] = std::move(edge_list);
  return j;
}

}  // namespace

std::string to_text(const CoveringDocument& doc) {
  std::string out;
  json header;
  header["format_version"] = doc.format_version;
  header["kind"] = "covering";
  header["mode"] = to_string(doc.mode);
  out += header.dump() + "\n";
  for (std::size_t k = 0; k < doc.levels.size(); ++k) {
    const auto& level = doc.levels[k];
    json j = graph_json(level.vertices, level.edges);
    j["level"] = static_cast<int>(k);
    if (level.center) {
      j["center"] = *level.center;
      j["circuits"] = level.circuits;
    }
    out += j.dump() + "\n";
  }
  for (std::size_t n = 0; n < doc.covers.size(); ++n) {
    json j;
    j["cover"] = static_cast<int>(n) + 1;
    j["map"] = doc.covers[n];
    out += j.dump() + "\n";
  }
  return out;
}

std::string to_text(const BratteliDocument& doc) {
  std::string out;
  json header;
  header["format_version"] = doc.format_version;
  header["kind"] = "bratteli";
  header["ordered"] = doc.diagram.ordered;
  out += header.dump() + "\n";
  for (std::size_t n = 0; n < doc.diagram.level_sizes.size(); ++n) {
    json j;
    j["level"] = static_cast<int>(n);
    j["vertex_count"] = doc.diagram.level_sizes[n];
    out += j.dump() + "\n";
  }
  for (std::size_t n = 0; n < doc.diagram.edges.size(); ++n) {
    std::vector<BrEdge> sorted = doc.diagram.edges[n];
    std::sort(sorted.begin(), sorted.end());
    json j;
    j["edge_level"] = static_cast<int>(n) + 1;
    json edge_list = json::array();
    for (const BrEdge& e : sorted) edge_list.push_back({e.source, e.range, e.order});
    j["edges"] = std::move(edge_list);
    out += j.dump() + "\n";
  }
  return out;
}

std::string to_text(const AnyDocument& doc) {
  return doc.kind == DocumentKind::Covering ? to_text(doc.covering)
                                            : to_text(doc.bratteli);
}

namespace {

struct DocLine {
  std::size_t offset = 0;
  json value;
};

std::vector<DocLine> parse_lines(const std::string& text) {
  std::vector<DocLine> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (end > pos) {
      DocLine line;
      line.offset = pos;
      try {
        line.value = json::parse(text.substr(pos, end - pos));
      } catch (const json::parse_error& e) {
        std::size_t within = e.byte > 0 ? static_cast<std::size_t>(e.byte) - 1 : 0;
        throw ParseError(pos + within, e.what());
      }
      if (!line.value.is_object())
        throw ParseError(pos, "expected a JSON object");
      lines.push_back(std::move(line));
    }
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError(0, "empty document");
  return lines;
}

const json& field(const DocLine& line, const char* name) {
  auto it = line.value.find(name);
  if (it == line.value.end())
    throw ParseError(line.offset, std::string("missing field \"") + name + "\"");
  return *it;
}

AnyDocument parse_covering(const std::vector<DocLine>& lines, CoveringMode mode,
                           int version, std::size_t end_offset) {
  AnyDocument doc;
  doc.kind = DocumentKind::Covering;
  doc.covering.format_version = version;
  doc.covering.mode = mode;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const DocLine& line = lines[k];
    try {
      if (line.value.contains("level")) {
        int n = field(line, "level").get<int>();
        if (n != static_cast<int>(doc.covering.levels.size()))
          throw ParseError(line.offset,
                           "expected level " +
                               std::to_string(doc.covering.levels.size()) +
                               ", found " + std::to_string(n));
        CoveringDocument::Level level;
        level.vertices = field(line, "vertices").get<std::vector<VertexId>>();
        for (const auto& e : field(line, "edges")) {
          if (!e.is_array() || e.size() != 2)
            throw ParseError(line.offset, "edges must be [source, target] pairs");
          level.edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
        }
        if (line.value.contains("center") || line.value.contains("circuits")) {
          level.center = field(line, "center").get<VertexId>();
          level.circuits =
              field(line, "circuits").get<std::vector<std::vector<VertexId>>>();
        }
        doc.covering.levels.push_back(std::move(level));
      } else if (line.value.contains("cover")) {
        int n = field(line, "cover").get<int>();
        if (n != static_cast<int>(doc.covering.covers.size()) + 1)
          throw ParseError(line.offset,
                           "expected cover " +
                               std::to_string(doc.covering.covers.size() + 1) +
                               ", found " + std::to_string(n));
        doc.covering.covers.push_back(
            field(line, "map").get<std::map<VertexId, VertexId>>());
      } else {
        throw ParseError(line.offset, "unrecognized line in covering document");
      }
    } catch (const json::exception& e) {
      throw ParseError(line.offset, e.what());
    }
  }
  if (doc.covering.levels.empty())
    throw ParseError(end_offset, "covering document has no levels");
  if (doc.covering.covers.size() + 1 != doc.covering.levels.size())
    throw ParseError(end_offset,
                     "expected " + std::to_string(doc.covering.levels.size() - 1) +
                         " covers, found " + std::to_string(doc.covering.covers.size()));
  return doc;
}

AnyDocument parse_bratteli(const std::vector<DocLine>& lines, bool ordered,
                           int version, std::size_t end_offset) {
  AnyDocument doc;
  doc.kind = DocumentKind::Bratteli;
  doc.bratteli.format_version = version;
  doc.bratteli.diagram.ordered = ordered;
  auto& diagram = doc.bratteli.diagram;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const DocLine& line = lines[k];
    try {
      if (line.value.contains("level")) {
        int n = field(line, "level").get<int>();
        if (n != static_cast<int>(diagram.level_sizes.size()))
          throw ParseError(line.offset,
                           "expected level " +
                               std::to_string(diagram.level_sizes.size()) +
                               ", found " + std::to_string(n));
        diagram.level_sizes.push_back(field(line, "vertex_count").get<int>());
      } else if (line.value.contains("edge_level")) {
        int n = field(line, "edge_level").get<int>();
        if (n != static_cast<int>(diagram.edges.size()) + 1)
          throw ParseError(line.offset,
                           "expected edge_level " +
                               std::to_string(diagram.edges.size() + 1) +
                               ", found " + std::to_string(n));
        std::vector<BrEdge> level;
        for (const auto& e : field(line, "edges")) {
          if (!e.is_array() || e.size() != 3)
            throw ParseError(line.offset,
                             "edges must be [source, range, order] triples");
          level.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
        }
        diagram.edges.push_back(std::move(level));
      } else {
        throw ParseError(line.offset, "unrecognized line in diagram document");
      }
    } catch (const json::exception& e) {
      throw ParseError(line.offset, e.what());
    }
  }
  if (diagram.level_sizes.empty())
    throw ParseError(end_offset, "diagram document has no levels");
  if (diagram.edges.size() + 1 != diagram.level_sizes.size())
    throw ParseError(end_offset,
                     "expected " + std::to_string(diagram.level_sizes.size() - 1) +
                         " edge sets, found " + std::to_string(diagram.edges.size()));
  return doc;
}

}  // namespace

AnyDocument parse_document(const std::string& text) {
  std::vector<DocLine> lines = parse_lines(text);
  const DocLine& header = lines.front();

  int version = 0;
  std::string kind;
  try {
    version = field(header, "format_version").get<int>();
    kind = field(header, "kind").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(header.offset, e.what());
  }
  if (version != 1) throw UnsupportedVersion(version);

  if (kind == "covering") {
    std::string mode_name;
    try {
      mode_name = field(header, "mode").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(header.offset, e.what());
    }
    std::optional<CoveringMode> mode = parse_mode(mode_name);
    if (!mode) throw ParseError(header.offset, "unknown mode \"" + mode_name + "\"");
    return parse_covering(lines, *mode, version, text.size());
  }
  if (kind == "bratteli") {
    bool ordered = false;
    try {
      ordered = field(header, "ordered").get<bool>();
    } catch (const json::exception& e) {
      throw ParseError(header.offset, e.what());
    }
    return parse_bratteli(lines, ordered, version, text.size());
  }
  throw ParseError(header.offset, "unknown kind \"" + kind + "\"");
}

AnyDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_document(text);
}

void save_document(const AnyDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << to_text(doc);
  if (!out) throw std::runtime_error("failed writing " + path);
}

CoveringDocument document_from(const CoveringPrefix& c) {
  CoveringDocument doc;
  doc.mode = CoveringMode::Plain;
  for (const DirectedGraph& g : c.levels) {
    CoveringDocument::Level level;
    level.vertices = g.vertices;
    level.edges = g.edges;
    doc.levels.push_back(std::move(level));
  }
  for (const GraphHom& h : c.covers) doc.covers.push_back(h.vertex_map);
  return doc;
}

CoveringDocument document_from(const StructuredCovering& sc) {
  CoveringDocument doc = document_from(sc.base);
  doc.mode = sc.mode;
  for (std::size_t n = 0; n < sc.levels.size() && n + 1 < doc.levels.size(); ++n) {
    doc.levels[n + 1].center = sc.levels[n].center;
    doc.levels[n + 1].circuits = sc.levels[n].circuits;
  }
  return doc;
}

BratteliDocument document_from(const BratteliPrefix& b) {
  BratteliDocument doc;
  doc.diagram = b;
  for (auto& level : doc.diagram.edges) std::sort(level.begin(), level.end());
  return doc;
}

CoveringPrefix to_covering(const CoveringDocument& doc) {
  if (doc.levels.empty())
    throw DomainError(Errc::InvalidInput, "document has no levels");
  if (doc.covers.size() + 1 != doc.levels.size())
    throw DomainError(Errc::InvalidInput, "document cover count does not fit");
  CoveringPrefix c;
  for (const auto& level : doc.levels)
    c.levels.push_back(make_graph(level.vertices, level.edges));
  for (std::size_t n = 0; n < doc.covers.size(); ++n)
    c.covers.push_back(make_hom(c.levels[n + 1], c.levels[n], doc.covers[n]));
  return c;
}

StructuredCovering to_structured(const CoveringDocument& doc,
                                 std::vector<std::string>* diagnostics) {
  StructuredCovering sc;
  sc.base = to_covering(doc);
  sc.mode = doc.mode;
  if (doc.mode == CoveringMode::Plain) return sc;

  const int N = sc.depth();
  for (int n = 1; n <= N; ++n) {
    const auto& level = doc.levels[n];
    if (!level.center)
      throw DomainError(Errc::InvalidInput,
                        "level " + std::to_string(n) + " has no circuit structure");
    sc.levels.push_back(Figure8Level{*level.center, level.circuits});
  }
  sc.words.assign(std::max(N, 0), {});
  for (int n = 1; n <= N; ++n) {
    for (int i = 1; i <= sc.circuit_count(n); ++i) {
      CircuitWord w;
      w.level = n;
      w.circuit_index = i;
      try {
        w = circuit_decomposition(sc, n, i);
      } catch (const DomainError& e) {
        if (diagnostics) diagnostics->push_back(e.what());
      }
      sc.words[n - 1].push_back(std::move(w));
    }
  }
  return sc;
}

}  // namespace covkit
