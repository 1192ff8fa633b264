// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "arctext/canonicalizer.hpp"
#include "arctext/codec.hpp"
#include "arctext/diff.hpp"
#include "arctext/dot.hpp"
#include "arctext/error.hpp"
#include "arctext/graph_file.hpp"
#include "arctext/lint.hpp"
#include "arctext/sha224.hpp"
#include "arctext/vectorizer.hpp"
#include "json.hpp"

namespace arctext::cli {
namespace {

struct Globals {
  std::size_t max_paths = kDefaultMaxPaths;
  bool quiet = false;
};

class Session {
 public:
  Session(const Globals& globals, std::ostream& out, std::ostream& err) : g_(globals), out_(out), err_(err) {}

  // Writes to `path`, or to stdout when it is empty.
  void emit(const std::string& path, std::string_view text) {
    if (path.empty()) {
      out_ << text;
    } else {
      write_text_file(path, text);
    }
  }

  void note(const std::string& line) {
    if (!g_.quiet) err_ << line << '\n';
  }

  // Loads and validates a graph file. Returns nullopt after reporting errors.
  std::optional<ArchGraph> load_valid_graph(const std::string& path) {
    ArchGraph g = load_graph_file(path);
    return check(std::move(g)) ? std::optional<ArchGraph>(std::move(g)) : std::nullopt;
  }

  bool check(const ArchGraph& g) {
    const Diagnostics d = validate_graph(g);
    for (const auto& f : d.findings) {
      if (f.severity == Severity::Error) {
        err_ << format_finding(f) << '\n';
      } else {
        note(format_finding(f));
      }
    }
    return !d.has_errors();
  }

  CanonicalizerOptions options() const { return {g_.max_paths}; }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  bool quiet() const { return g_.quiet; }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

bool looks_like_text(std::string_view content) { return content.rfind("id:", 0) == 0; }

int canonicalize(Session& s, const std::string& input, const std::string& output) {
  auto g = s.load_valid_graph(input);
  if (!g) return kExitFindings;
  s.emit(output, render_description(*g, s.options()).text);
  return kExitOk;
}

int parse(Session& s, const std::string& input, const std::string& output) {
  const auto parsed = parse_description(read_text_file(input));
  s.emit(output, graph_to_json_text(parsed.graph, &parsed.order));
  return kExitOk;
}

int validate(Session& s, const std::string& input) {
  const std::string content = read_text_file(input);
  // ArcText always opens with "id:", a graph file with '{' (after optional
  // whitespace), so the two never overlap
  std::optional<ArchGraph> g;
  const char* format = nullptr;
  if (looks_like_text(content)) {
    g = parse_description(content).graph;
    format = "arctext";
  } else {
    g = graph_from_json_text(content, input);
    format = "graph file";
  }
  if (!s.check(*g)) return kExitFindings;
  assign_positions(*g, s.options());
  if (!s.quiet()) s.out() << input << ": valid " << format << ", " << g->size() << " nodes\n";
  return kExitOk;
}

int lint(Session& s, const std::string& input) {
  auto g = s.load_valid_graph(input);
  if (!g) return kExitFindings;
  const ShapeReport report = lint_shapes(*g);
  if (!s.quiet()) {
    for (const auto& e : report.entries) {
      s.out() << e.node << ": " << to_string(e.status);
      if (e.status == ShapeStatus::Mismatch || e.status == ShapeStatus::Unchecked) s.out() << " (" << e.note << ")";
      s.out() << '\n';
    }
  }
  for (const auto& f : report.warnings.findings) s.err() << format_finding(f) << '\n';
  if (!s.quiet()) {
    s.out() << report.mismatch_count() << " mismatch(es), " << report.warnings.findings.size() << " warning(s)\n";
  }
  return report.clean() ? kExitOk : kExitFindings;
}

int digest(Session& s, const std::string& input) {
  const auto parsed = parse_description(read_text_file(input));
  const auto canonical = render_description(parsed.graph, s.options());
  s.out() << to_hex(sha224(canonical.text)) << '\n';
  return kExitOk;
}

int diff(Session& s, const std::string& a, const std::string& b) {
  const auto left = parse_description(read_text_file(a)).description;
  const auto right = parse_description(read_text_file(b)).description;
  const auto d = diff_descriptions(left, right);
  s.out() << format_diff(d);
  if (!s.quiet()) {
    s.out() << a << ": " << d.a_lines << " lines, " << b << ": " << d.b_lines << " lines, " << d.entries.size()
            << " difference(s)\n";
  }
  return kExitOk;
}

int dot(Session& s, const std::string& input, const std::string& output) {
  auto g = s.load_valid_graph(input);
  if (!g) return kExitFindings;
  s.emit(output, export_dot(*g, assign_positions(*g, s.options())));
  return kExitOk;
}

int vectorize(Session& s, const std::string& input, const std::string& output, const std::string& vocab_path,
              const std::string& tokens_path, const std::string& save_vocab) {
  const auto parsed = parse_description(read_text_file(input));
  Vocabulary vocab = vocab_path.empty() ? Vocabulary::standard()
                                        : Vocabulary::from_json_text(read_text_file(vocab_path), /*closed=*/true);
  const TokenStream stream = tokenize(parsed.description, vocab);
  s.emit(output, vectors_csv(parsed.description));

  if (!tokens_path.empty()) {
    nlohmann::json units = nlohmann::json::array();
    for (const auto& unit : stream.units) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& t : unit) {
        if (t.value) {
          row.push_back(nlohmann::json::array({t.id, *t.value}));
        } else {
          row.push_back(t.id);
        }
      }
      units.push_back(std::move(row));
    }
    write_text_file(tokens_path, nlohmann::json{{"units", units}}.dump() + "\n");
  }
  if (!save_vocab.empty()) write_text_file(save_vocab, vocab.to_json_text());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical text descriptions of CNN architecture graphs", "arctext"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--max-paths", globals.max_paths, "Limit on longest candidate paths per ordering step")
      ->envname("ARCTEXT_MAX_PATHS")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", globals.quiet, "Suppress warnings and summaries");

  std::string input, output, second, vocab, tokens, save_vocab;
  std::function<int(Session&)> action;

  auto* c = app.add_subcommand("canonicalize", "Graph file -> ArcText");
  c->add_option("-i,--input", input, "Graph file")->required();
  c->add_option("-o,--output", output, "Output text file (default stdout)");
  c->callback([&] { action = [&](Session& s) { return canonicalize(s, input, output); }; });

  auto* p = app.add_subcommand("parse", "ArcText -> graph file");
  p->add_option("-i,--input", input, "ArcText file")->required();
  p->add_option("-o,--output", output, "Output graph file (default stdout)");
  p->callback([&] { action = [&](Session& s) { return parse(s, input, output); }; });

  auto* v = app.add_subcommand("validate", "Check a graph file or ArcText file");
  v->add_option("-i,--input", input, "Graph file or ArcText file")->required();
  v->callback([&] { action = [&](Session& s) { return validate(s, input); }; });

  auto* l = app.add_subcommand("lint", "Check declared shapes against window arithmetic");
  l->add_option("-i,--input", input, "Graph file")->required();
  l->callback([&] { action = [&](Session& s) { return lint(s, input); }; });

  auto* d = app.add_subcommand("digest", "SHA-224 of the canonical description");
  d->add_option("-i,--input", input, "ArcText file")->required();
  d->callback([&] { action = [&](Session& s) { return digest(s, input); }; });

  auto* df = app.add_subcommand("diff", "Compare two ArcText files by unit id");
  df->add_option("a", input, "First ArcText file")->required();
  df->add_option("b", second, "Second ArcText file")->required();
  df->callback([&] { action = [&](Session& s) { return diff(s, input, second); }; });

  auto* g = app.add_subcommand("dot", "Graph file -> Graphviz DOT");
  g->add_option("-i,--input", input, "Graph file")->required();
  g->add_option("-o,--output", output, "Output DOT file (default stdout)");
  g->callback([&] { action = [&](Session& s) { return dot(s, input, output); }; });

  auto* vec = app.add_subcommand("vectorize", "ArcText -> per-unit numeric vectors (CSV)");
  vec->add_option("-i,--input", input, "ArcText file")->required();
  vec->add_option("-o,--output", output, "Output CSV file (default stdout)");
  vec->add_option("--vocab", vocab, "Closed vocabulary file; unknown words are an error");
  vec->add_option("--tokens", tokens, "Also write the token stream (JSON)");
  vec->add_option("--save-vocab", save_vocab, "Write the vocabulary used");
  vec->callback([&] { action = [&](Session& s) { return vectorize(s, input, output, vocab, tokens, save_vocab); }; });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "arctext: " << e.what() << "\n";
    return kExitUsage;
  }

  Session session(globals, out, err);
  try {
    return action(session);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFindings;
  }
}

}  // namespace arctext::cli
