#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fdo/record.hpp"
#include "fdo/type_system.hpp"

namespace fdo {

struct PidTriple {
    std::string subject;
    std::string predicate;
    std::string object;

    bool operator==(const PidTriple&) const = default;
    auto operator<=>(const PidTriple&) const = default;
};

// A referencing pair whose value does not resolve to a record in scope:
// either a URL or a PID pointing outside the set.
struct ExternalEdge {
    std::string subject;
    std::string predicate;
    std::string value;

    bool operator==(const ExternalEdge&) const = default;
    auto operator<=>(const ExternalEdge&) const = default;
};

struct TripleExtraction {
    std::set<PidTriple> triples;
    std::set<ExternalEdge> external_edges;
};

// Emits one triple per referencing pair whose value is a PID resolving to
// another record in `records`; everything else lands in external_edges.
// Referencing pairs are those with a handle- or url-typed attribute key.
TripleExtraction extract_triples(const std::vector<InformationRecord>& records,
                                 const TypeRegistry& types);

enum class Direction { Out, In, Both };

// Immutable directed multigraph over record PIDs with predicated edges.
class FdoGraph {
  public:
    FdoGraph() = default;
    FdoGraph(std::set<std::string> nodes, std::set<PidTriple> triples,
             std::set<ExternalEdge> external_edges = {});

    const std::set<std::string>& nodes() const { return nodes_; }
    const std::set<std::string>& predicates() const { return predicates_; }
    const std::set<PidTriple>& triples() const { return triples_; }
    const std::set<ExternalEdge>& external_edges() const { return external_edges_; }

    bool has_node(const std::string& pid) const { return nodes_.count(pid) > 0; }

    std::set<std::string> neighbors(const std::string& pid, Direction direction,
                                    const std::optional<std::string>& predicate = std::nullopt) const;

    // Maximal strongly connected components, each sorted, ordered by smallest
    // member.
    std::vector<std::vector<std::string>> strongly_connected_components() const;

    bool reachable(const std::string& from, const std::string& to) const;

    // Shortest path by edge count; among equals, the lexicographically
    // smallest next hop (then predicate) wins at every step. nullopt when
    // unreachable; the empty sequence when from == to.
    std::optional<std::vector<PidTriple>> path(const std::string& from,
                                               const std::string& to) const;

  private:
    void require_node(const std::string& pid) const;

    std::set<std::string> nodes_;
    std::set<std::string> predicates_;
    std::set<PidTriple> triples_;
    std::set<ExternalEdge> external_edges_;
    // node -> sorted (neighbor, predicate) pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> out_;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> in_;
};

FdoGraph build_graph(const std::vector<InformationRecord>& records, const TypeRegistry& types);

enum class GraphFormat { Triples, Dot };

std::string export_graph(const FdoGraph& graph, GraphFormat format);

// Re-imports the line-oriented triples format.
std::set<PidTriple> parse_triples_document(const std::string& text);

}  // namespace fdo
