#include "ecm/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <string_view>

namespace ecm {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  auto tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

bool parse_id(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

SimpleGraph EdgeListGraph::to_simple_graph() const { return SimpleGraph::from_edges(vertex_ids.size(), edges); }

EdgeListGraph ingest_edge_list(std::istream& in, const IngestDirectives& directives, const std::string& source) {
  EdgeListGraph g;
  g.provenance.source = source;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;

  std::string line;
  while (std::getline(in, line)) {
    auto& prov = g.provenance;
    ++prov.lines;
    std::string_view rest(line);
    const auto first = next_token(rest);
    if (first.empty()) {
      ++prov.blank;
      continue;
    }
    if (first.front() == '#') {
      ++prov.comments;
      continue;
    }
    const auto second = next_token(rest);
    const bool extra = !next_token(rest).empty();
    std::uint64_t u = 0, v = 0;
    if (!parse_id(first, u) || !parse_id(second, v) || (extra && !directives.allow_extra_columns)) {
      if (directives.strict)
        throw ParseError(source + ":" + std::to_string(prov.lines) + ": malformed edge line '" + line + "'",
                         prov.lines);
      ++prov.malformed;
      continue;
    }
    ++prov.parsed;
    if (u == v) {
      ++prov.self_loops;
      continue;
    }
    raw.emplace_back(std::min(u, v), std::max(u, v));
  }

  std::sort(raw.begin(), raw.end());
  const auto unique_end = std::unique(raw.begin(), raw.end());
  g.provenance.duplicates = static_cast<std::uint64_t>(raw.end() - unique_end);
  raw.erase(unique_end, raw.end());

  for (const auto& [u, v] : raw) {
    g.vertex_ids.push_back(u);
    g.vertex_ids.push_back(v);
  }
  std::sort(g.vertex_ids.begin(), g.vertex_ids.end());
  g.vertex_ids.erase(std::unique(g.vertex_ids.begin(), g.vertex_ids.end()), g.vertex_ids.end());
  if (g.vertex_ids.size() > std::numeric_limits<Vertex>::max())
    throw std::runtime_error("ingest_edge_list: too many vertices");

  auto dense = [&g](std::uint64_t id) {
    return static_cast<Vertex>(std::lower_bound(g.vertex_ids.begin(), g.vertex_ids.end(), id) - g.vertex_ids.begin());
  };
  g.edges.reserve(raw.size());
  for (const auto& [u, v] : raw) g.edges.emplace_back(dense(u), dense(v));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

EdgeListGraph ingest_edge_list(const std::filesystem::path& path, const IngestDirectives& directives) {
  std::ifstream in(path);
  if (!in) throw std::filesystem::filesystem_error("cannot open edge list", path,
                                          std::make_error_code(std::errc::no_such_file_or_directory));
  return ingest_edge_list(in, directives, path.string());
}

}  // namespace ecm
