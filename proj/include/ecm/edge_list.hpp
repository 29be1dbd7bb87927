#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecm/simple_graph.hpp"

namespace ecm {

struct IngestDirectives {
  bool strict = true;                // malformed line -> ParseError; otherwise skip and count
  bool allow_extra_columns = false;  // tolerate trailing tokens (weights, timestamps)
};

struct IngestProvenance {
  std::string source;
  std::uint64_t lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t comments = 0;
  std::uint64_t blank = 0;
  std::uint64_t self_loops = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t malformed = 0;
};

/// Undirected edge list with ids remapped densely in ascending order of the
/// original ids. Vertices seen only on dropped lines are excluded.
struct EdgeListGraph {
  std::vector<std::uint64_t> vertex_ids;  // dense id -> original id
  std::vector<std::pair<Vertex, Vertex>> edges;  // u < v, sorted, unique
  IngestProvenance provenance;

  SimpleGraph to_simple_graph() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::uint64_t line) : std::runtime_error(what), line_(line) {}
  std::uint64_t line() const { return line_; }

 private:
  std::uint64_t line_;
};

EdgeListGraph ingest_edge_list(std::istream& in, const IngestDirectives& directives = {},
                               const std::string& source = "<stream>");

/// Throws std::filesystem::filesystem_error when the file cannot be opened.
EdgeListGraph ingest_edge_list(const std::filesystem::path& path, const IngestDirectives& directives = {});

}  // namespace ecm
