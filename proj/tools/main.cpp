#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "covkit/bratteli.hpp"
#include "covkit/covering.hpp"
#include "covkit/io.hpp"
#include "covkit/structured.hpp"
#include "covkit/symbolic.hpp"
#include "covkit/transform.hpp"

using json = nlohmann::json;
using namespace covkit;

namespace {

struct Options {
  std::string file;
  std::string output;
  bool as_json = false;
  int threads = 1;

  int level = 0;
  int circuit = 1;
  int offset = 0;
  int rows = 0;
  int half_width = 0;
  int length = 1;
  int depth = 1;
  int wmax = 63;
  int from = 0;
  int to = 0;
  int terminal = 1;
  int max_steps = 1000;
  bool wrap = false;
  std::string keep;
  std::string orders;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

void emit_document(const AnyDocument& doc, const Options& opt) {
  if (opt.output.empty())
    std::cout << to_text(doc);
  else
    save_document(doc, opt.output);
}

StructuredCovering structured_input(const AnyDocument& doc) {
  if (doc.kind != DocumentKind::Covering)
    throw DomainError(Errc::InvalidInput, "command needs a covering document");
  if (doc.covering.mode == CoveringMode::Plain)
    throw DomainError(Errc::InvalidInput, "command needs a tower with circuits");
  return to_structured(doc.covering);
}

const BratteliPrefix& diagram_input(const AnyDocument& doc) {
  if (doc.kind != DocumentKind::Bratteli)
    throw DomainError(Errc::InvalidInput, "command needs a diagram document");
  return doc.bratteli.diagram;
}

int cmd_validate(const AnyDocument& doc, const Options& opt) {
  std::vector<std::string> violations;
  if (doc.kind == DocumentKind::Bratteli) {
    violations = validate_bratteli(doc.bratteli.diagram);
  } else {
    try {
      if (doc.covering.mode == CoveringMode::Plain) {
        violations = validate_covering(to_covering(doc.covering));
      } else {
        std::vector<std::string> diagnostics;
        StructuredCovering sc = to_structured(doc.covering, &diagnostics);
        violations = validate_structured(sc);
        violations.insert(violations.end(), diagnostics.begin(), diagnostics.end());
      }
    } catch (const DomainError& e) {
      violations.push_back(e.what());
    }
  }
  if (opt.as_json) {
    json j;
    j["ok"] = violations.empty();
    j["violations"] = violations;
    std::cout << j.dump() << "\n";
  } else if (violations.empty()) {
    std::cout << "ok\n";
  } else {
    for (const auto& v : violations) std::cout << v << "\n";
  }
  return violations.empty() ? 0 : 1;
}

int cmd_rank(const AnyDocument& doc, const Options& opt) {
  if (doc.kind == DocumentKind::Bratteli) {
    const BratteliPrefix& b = doc.bratteli.diagram;
    const int N = b.depth();
    if (N < 1) throw DomainError(Errc::BadLevel, "diagram has no edge sets");
    int window_start = std::max(1, N / 2);
    int hi = 0, lo = 0;
    for (int n = window_start; n <= N; ++n) {
      hi = std::max(hi, b.level_sizes[n]);
      lo = lo == 0 ? b.level_sizes[n] : std::min(lo, b.level_sizes[n]);
    }
    if (opt.as_json) {
      json j;
      j["level_sizes"] = std::vector<int>(b.level_sizes.begin() + 1,
                                          b.level_sizes.end());
      j["window_start"] = window_start;
      j["limsup_proxy"] = hi;
      j["liminf_proxy"] = lo;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "window start " << window_start << ", limsup proxy " << hi
                << ", liminf proxy " << lo << "\n";
    }
    return 0;
  }
  RankProfile r = rank_profile(structured_input(doc));
  if (opt.as_json) {
    json j;
    j["circuit_counts"] = r.circuit_counts;
    j["window_start"] = r.window_start;
    j["kr_prefix_rank"] = r.kr_prefix_rank;
    j["gm_prefix_rank"] = r.gm_prefix_rank;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "window start " << r.window_start << ", kr proxy "
              << r.kr_prefix_rank << ", gm proxy " << r.gm_prefix_rank << "\n";
  }
  return 0;
}

int cmd_telescope(const AnyDocument& doc, const Options& opt) {
  if (doc.kind == DocumentKind::Bratteli) {
    AnyDocument out;
    out.kind = DocumentKind::Bratteli;
    out.bratteli =
        document_from(telescope_bratteli(doc.bratteli.diagram, opt.from, opt.to));
    emit_document(out, opt);
    return 0;
  }
  if (opt.keep.empty())
    throw DomainError(Errc::BadIndexSet, "telescoping a covering needs --keep");
  std::vector<int> keep = parse_int_list(opt.keep);
  CoveringPrefix squeezed = telescope(to_covering(doc.covering), keep);

  AnyDocument out;
  out.kind = DocumentKind::Covering;
  out.covering.mode = doc.covering.mode;
  for (std::size_t k = 0; k < keep.size(); ++k)
    out.covering.levels.push_back(doc.covering.levels.at(keep[k]));
  for (const GraphHom& h : squeezed.covers)
    out.covering.covers.push_back(h.vertex_map);
  emit_document(out, opt);
  return 0;
}

int cmd_to_bratteli(const AnyDocument& doc, const Options& opt) {
  AnyDocument out;
  out.kind = DocumentKind::Bratteli;
  out.bratteli = document_from(kr_to_bratteli(structured_input(doc)));
  emit_document(out, opt);
  return 0;
}

int cmd_from_bratteli(const AnyDocument& doc, const Options& opt) {
  TowerFromDiagram res = bratteli_to_kr(diagram_input(doc));
  AnyDocument out;
  out.kind = DocumentKind::Covering;
  out.covering = document_from(res.tower);
  emit_document(out, opt);
  return 0;
}

int cmd_gm_to_kr(const AnyDocument& doc, const Options& opt) {
  GmToKrResult res = gm_to_kr(structured_input(doc));
  AnyDocument out;
  out.kind = DocumentKind::Covering;
  out.covering = document_from(res.output);
  emit_document(out, opt);
  return 0;
}

json path_json(const BratteliPrefix& b, const PathPrefix& p) {
  json j;
  std::vector<int> orders;
  for (int n = 1; n <= b.depth(); ++n)
    orders.push_back(b.edges[n - 1][p.edge_index[n - 1]].order);
  j["orders"] = orders;
  j["terminal"] = path_terminal(b, p);
  return j;
}

std::string path_text(const BratteliPrefix& b, const PathPrefix& p) {
  std::string line;
  for (int n = 1; n <= b.depth(); ++n) {
    if (n > 1) line += ",";
    line += std::to_string(b.edges[n - 1][p.edge_index[n - 1]].order);
  }
  line += " -> " + std::to_string(path_terminal(b, p));
  return line;
}

int cmd_vershik_orbit(const AnyDocument& doc, const Options& opt) {
  const BratteliPrefix& b = diagram_input(doc);

  PathPrefix start;
  if (opt.orders.empty()) {
    start = extremal_paths(b).min_paths.at(opt.terminal - 1);
  } else {
    std::vector<int> orders = parse_int_list(opt.orders);
    if (static_cast<int>(orders.size()) != b.depth())
      throw DomainError(Errc::InvalidPath, "need one order per level");
    start.edge_index.assign(b.depth(), 0);
    int at = opt.terminal;
    for (int n = b.depth(); n >= 1; --n) {
      std::vector<BrEdge> fiber = incoming_fiber(b, n, at);
      int found = -1;
      for (std::size_t k = 0; k < fiber.size(); ++k)
        if (fiber[k].order == orders[n - 1]) {
          for (std::size_t t = 0; t < b.edges[n - 1].size(); ++t)
            if (b.edges[n - 1][t] == fiber[k]) found = static_cast<int>(t);
        }
      if (found < 0)
        throw DomainError(Errc::InvalidPath,
                          "no edge of order " + std::to_string(orders[n - 1]) +
                              " into vertex " + std::to_string(at) + " at level " +
                              std::to_string(n));
      start.edge_index[n - 1] = found;
      at = b.edges[n - 1][found].source;
    }
  }

  std::vector<PathPrefix> orbit = vershik_orbit(b, start, opt.max_steps, opt.wrap);
  bool at_max = vershik_step(b, orbit.back(), false).at_maximum;
  if (opt.as_json) {
    json j;
    j["orbit"] = json::array();
    for (const PathPrefix& p : orbit) j["orbit"].push_back(path_json(b, p));
    j["at_maximum"] = at_max;
    j["wrap"] = opt.wrap;
    std::cout << j.dump() << "\n";
  } else {
    for (const PathPrefix& p : orbit) std::cout << path_text(b, p) << "\n";
    if (at_max) std::cout << "at maximum\n";
  }
  return 0;
}

int cmd_language(const AnyDocument& doc, const Options& opt) {
  LevelLanguage lang = language_of_level(structured_input(doc), opt.level, opt.length);
  if (opt.as_json) {
    json j;
    j["level"] = lang.level;
    j["length"] = lang.length;
    j["words"] = json::array();
    for (const auto& w : lang.words) {
      json entry;
      entry["word"] = w;
      entry["circuit"] = lang.witness.at(w).first;
      entry["position"] = lang.witness.at(w).second;
      j["words"].push_back(std::move(entry));
    }
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& w : lang.words) {
      std::string line;
      for (std::size_t k = 0; k < w.size(); ++k)
        line += (k ? " " : "") + std::to_string(w[k]);
      auto [ci, pos] = lang.witness.at(w);
      std::cout << line << "   (circuit " << ci << ", position " << pos << ")\n";
    }
  }
  return 0;
}

int cmd_symbol(const AnyDocument& doc, const Options& opt) {
  NSymbol sym = expand_symbol(structured_input(doc), opt.level, opt.circuit);
  if (opt.as_json) {
    json j;
    j["level"] = sym.level;
    j["circuit"] = sym.circuit_index;
    j["width"] = sym.width();
    j["rows"] = sym.rows;
    j["starts"] = sym.starts;
    std::cout << j.dump() << "\n";
  } else {
    for (int m = sym.level; m >= 0; --m) {
      std::cout << "row " << m << ":";
      for (std::size_t k = 0; k < sym.rows[m].size(); ++k)
        std::cout << " " << sym.rows[m][k] << "@" << sym.starts[m][k];
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_window(const AnyDocument& doc, const Options& opt) {
  WindowSeed seed{opt.level, opt.circuit, opt.offset};
  ArrayWindow win =
      window_of_thread(structured_input(doc), seed, opt.rows, opt.half_width);
  if (opt.as_json) {
    json j;
    j["seed"] = {{"level", seed.level}, {"circuit", seed.circuit},
                 {"offset", seed.offset}};
    j["rows"] = win.rows;
    j["half_width"] = win.half_width;
    j["letter_rows"] = win.letter_rows;
    j["vertex_rows"] = win.vertex_rows;
    j["cuts"] = win.cuts;
    std::cout << j.dump() << "\n";
  } else {
    for (int m = win.rows; m >= 0; --m) {
      std::cout << "row " << m << ": ";
      std::size_t next_cut = 0;
      for (std::size_t c = 0; c < win.letter_rows[m].size(); ++c) {
        bool cut = next_cut < win.cuts[m].size() &&
                   win.cuts[m][next_cut] == static_cast<int>(c);
        if (cut) ++next_cut;
        std::cout << (cut ? "|" : " ") << win.letter_rows[m][c];
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_probe(const AnyDocument& doc, const Options& opt) {
  ProbeResult res =
      expansiveness_probe(structured_input(doc), opt.depth, opt.wmax, opt.threads);
  if (opt.as_json) {
    json j;
    j["depth"] = res.depth;
    j["found"] = res.found;
    j["window"] = res.window;
    j["examined_max"] = res.examined_max;
    j["ambiguous_word"] = res.ambiguous_word;
    std::cout << j.dump() << "\n";
  } else if (res.found) {
    std::cout << "window " << res.window << "\n";
  } else {
    std::cout << "NoWindow up to " << res.examined_max << "\n";
  }
  return 0;
}

int cmd_fibers(const AnyDocument& doc, const Options& opt) {
  FiberReport rep = fiber_analysis(structured_input(doc), opt.depth);
  if (opt.as_json) {
    json j;
    j["depth"] = rep.depth;
    j["thread_count"] = rep.threads.size();
    j["central_index"] = rep.central_index;
    j["central_predecessors"] = rep.central_predecessors;
    j["rank_bound"] = rep.rank_bound;
    j["noncentral_all_one"] = rep.noncentral_all_one;
    j["central_within_bound"] = rep.central_within_bound;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << rep.threads.size() << " threads, central has "
              << rep.central_predecessors << " predecessors (bound "
              << rep.rank_bound << "), noncentral "
              << (rep.noncentral_all_one ? "all single" : "not all single") << "\n";
  }
  return 0;
}

int cmd_merge(const AnyDocument& doc, const Options& opt) {
  MergeOutcome res = merge_equal_symbols(structured_input(doc), opt.level);
  AnyDocument out;
  out.kind = DocumentKind::Covering;
  out.covering = document_from(res.tower);
  emit_document(out, opt);
  if (!opt.output.empty()) {
    if (opt.as_json) {
      json j;
      j["level"] = opt.level;
      j["changed"] = res.changed;
      j["classes"] = res.classes;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << (res.changed ? "merged" : "nothing to merge") << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph covering and Bratteli diagram toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.as_json, "structured output");
  app.add_option("--threads", opt.threads, "worker threads for the probe");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "input document")->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", opt.output, "write the document here");
  };

  add_input(app.add_subcommand("validate", "check a document"));
  add_input(app.add_subcommand("rank", "rank proxies over the deep window"));

  CLI::App* telescope = app.add_subcommand("telescope", "drop levels");
  add_input(telescope);
  add_output(telescope);
  telescope->add_option("--keep", opt.keep, "levels to keep, e.g. 0,2,4");
  telescope->add_option("--from", opt.from, "first level of the collapsed block");
  telescope->add_option("--to", opt.to, "last level of the collapsed block");

  CLI::App* tob = app.add_subcommand("to-bratteli", "tower to ordered diagram");
  add_input(tob);
  add_output(tob);

  CLI::App* fromb = app.add_subcommand("from-bratteli", "ordered diagram to tower");
  add_input(fromb);
  add_output(fromb);

  CLI::App* gmkr = app.add_subcommand("gm-to-kr", "unglue shared interiors");
  add_input(gmkr);
  add_output(gmkr);

  CLI::App* orbit = app.add_subcommand("vershik-orbit", "walk the successor map");
  add_input(orbit);
  orbit->add_option("--terminal", opt.terminal, "terminal vertex of the start path");
  orbit->add_option("--orders", opt.orders, "edge orders of the start path");
  orbit->add_option("--max-steps", opt.max_steps, "step limit");
  orbit->add_flag("--wrap", opt.wrap, "jump from the maximum to the minimum");

  CLI::App* language = app.add_subcommand("language", "letter words of a row");
  add_input(language);
  language->add_option("--level", opt.level, "row level")->required();
  language->add_option("--length", opt.length, "word length")->required();

  CLI::App* symbol = app.add_subcommand("symbol", "stacked rows of a circuit");
  add_input(symbol);
  symbol->add_option("--level", opt.level, "circuit level")->required();
  symbol->add_option("--circuit", opt.circuit, "circuit index")->required();

  CLI::App* window = app.add_subcommand("window", "clipped array view");
  add_input(window);
  window->add_option("--level", opt.level, "seed level")->required();
  window->add_option("--circuit", opt.circuit, "seed circuit")->required();
  window->add_option("--offset", opt.offset, "seed position")->required();
  window->add_option("--rows", opt.rows, "deepest row")->required();
  window->add_option("--half-width", opt.half_width, "columns each side")->required();

  CLI::App* probe = app.add_subcommand("probe", "search a recognizability width");
  add_input(probe);
  probe->add_option("--depth", opt.depth, "symbol level")->required();
  probe->add_option("--wmax", opt.wmax, "widest window to try")->required();

  CLI::App* fibers = app.add_subcommand("fibers", "successor fiber counts");
  add_input(fibers);
  fibers->add_option("--depth", opt.depth, "thread depth")->required();

  CLI::App* merge = app.add_subcommand("merge", "identify circuits with equal words");
  add_input(merge);
  add_output(merge);
  merge->add_option("--level", opt.level, "level to merge")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    AnyDocument doc = load_document(opt.file);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "validate") return cmd_validate(doc, opt);
    if (name == "rank") return cmd_rank(doc, opt);
    if (name == "telescope") return cmd_telescope(doc, opt);
    if (name == "to-bratteli") return cmd_to_bratteli(doc, opt);
    if (name == "from-bratteli") return cmd_from_bratteli(doc, opt);
    if (name == "gm-to-kr") return cmd_gm_to_kr(doc, opt);
    if (name == "vershik-orbit") return cmd_vershik_orbit(doc, opt);
    if (name == "language") return cmd_language(doc, opt);
    if (name == "symbol") return cmd_symbol(doc, opt);
    if (name == "window") return cmd_window(doc, opt);
    if (name == "probe") return cmd_probe(doc, opt);
    if (name == "fibers") return cmd_fibers(doc, opt);
    if (name == "merge") return cmd_merge(doc, opt);
    std::cerr << "unknown command " << name << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const UnsupportedVersion& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
