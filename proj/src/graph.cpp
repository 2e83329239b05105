#include "fdo/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "fdo/errors.hpp"
#include "fdo/pid.hpp"
#include "fdo/value_types.hpp"

namespace fdo {

TripleExtraction extract_triples(const std::vector<InformationRecord>& records,
                                 const TypeRegistry& types) {
    std::set<std::string> in_scope;
    for (const auto& record : records) {
        if (!record.pid.empty()) in_scope.insert(record.pid);
    }

    TripleExtraction out;
    for (const auto& record : records) {
        if (record.pid.empty()) continue;
        for (const auto& pair : record.pairs) {
            auto attr = types.find_attribute(pair.attribute_pid);
            if (!attr || !is_reference_type(attr->value_type)) continue;
            if (Pid::is_valid(pair.value) && in_scope.count(pair.value) > 0) {
                out.triples.insert({record.pid, pair.attribute_pid, pair.value});
            } else {
                out.external_edges.insert({record.pid, pair.attribute_pid, pair.value});
            }
        }
    }
    return out;
}

FdoGraph::FdoGraph(std::set<std::string> nodes, std::set<PidTriple> triples,
                   std::set<ExternalEdge> external_edges)
    : nodes_(std::move(nodes)),
      triples_(std::move(triples)),
      external_edges_(std::move(external_edges)) {
    for (const auto& triple : triples_) {
        predicates_.insert(triple.predicate);
        nodes_.insert(triple.subject);
        nodes_.insert(triple.object);
        out_[triple.subject].emplace_back(triple.object, triple.predicate);
        in_[triple.object].emplace_back(triple.subject, triple.predicate);
    }
    for (auto& [node, edges] : out_) std::sort(edges.begin(), edges.end());
    for (auto& [node, edges] : in_) std::sort(edges.begin(), edges.end());
}

FdoGraph build_graph(const std::vector<InformationRecord>& records, const TypeRegistry& types) {
    TripleExtraction extraction = extract_triples(records, types);
    std::set<std::string> nodes;
    for (const auto& record : records) {
        if (!record.pid.empty()) nodes.insert(record.pid);
    }
    return FdoGraph(std::move(nodes), std::move(extraction.triples),
                    std::move(extraction.external_edges));
}

void FdoGraph::require_node(const std::string& pid) const {
    if (nodes_.count(pid) == 0) {
        throw Error(ErrorCode::UnknownNode, pid);
    }
}

std::set<std::string> FdoGraph::neighbors(const std::string& pid, Direction direction,
                                          const std::optional<std::string>& predicate) const {
    require_node(pid);
    std::set<std::string> out;
    auto collect = [&](const auto& adjacency) {
        auto it = adjacency.find(pid);
        if (it == adjacency.end()) return;
        for (const auto& [neighbor, edge_predicate] : it->second) {
            if (predicate && edge_predicate != *predicate) continue;
            out.insert(neighbor);
        }
    };
    if (direction == Direction::Out || direction == Direction::Both) collect(out_);
    if (direction == Direction::In || direction == Direction::Both) collect(in_);
    return out;
}

std::vector<std::vector<std::string>> FdoGraph::strongly_connected_components() const {
    // Iterative Tarjan; nodes and adjacency are iterated in sorted order so
    // the discovery sequence is deterministic.
    std::map<std::string, int> index;
    std::map<std::string, int> lowlink;
    std::set<std::string> on_stack;
    std::vector<std::string> stack;
    std::vector<std::vector<std::string>> components;
    int next_index = 0;

    struct Frame {
        std::string node;
        size_t edge = 0;
    };

    for (const auto& root : nodes_) {
        if (index.count(root) > 0) continue;
        std::vector<Frame> frames;
        frames.push_back({root});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack.insert(root);

        while (!frames.empty()) {
            Frame& frame = frames.back();
            const std::string& node = frame.node;
            auto adjacency = out_.find(node);
            size_t degree = adjacency == out_.end() ? 0 : adjacency->second.size();

            if (frame.edge < degree) {
                std::string next = adjacency->second[frame.edge].first;
                ++frame.edge;
                auto it = index.find(next);
                if (it == index.end()) {
                    index[next] = lowlink[next] = next_index++;
                    stack.push_back(next);
                    on_stack.insert(next);
                    frames.push_back({std::move(next)});
                } else if (on_stack.count(next) > 0) {
                    lowlink[node] = std::min(lowlink[node], it->second);
                }
                continue;
            }

            if (lowlink[node] == index[node]) {
                std::vector<std::string> component;
                while (true) {
                    std::string member = stack.back();
                    stack.pop_back();
                    on_stack.erase(member);
                    component.push_back(member);
                    if (member == node) break;
                }
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            std::string finished = node;
            frames.pop_back();
            if (!frames.empty()) {
                const std::string& parent = frames.back().node;
                lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
            }
        }
    }

    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

bool FdoGraph::reachable(const std::string& from, const std::string& to) const {
    return path(from, to).has_value();
}

std::optional<std::vector<PidTriple>> FdoGraph::path(const std::string& from,
                                                     const std::string& to) const {
    require_node(from);
    require_node(to);
    if (from == to) return std::vector<PidTriple>{};

    // Distance-to-target over reverse edges, then a greedy forward walk that
    // always takes the smallest next hop still on a shortest path.
    std::map<std::string, size_t> distance;
    distance[to] = 0;
    std::deque<std::string> queue{to};
    while (!queue.empty()) {
        std::string node = queue.front();
        queue.pop_front();
        auto it = in_.find(node);
        if (it == in_.end()) continue;
        for (const auto& [neighbor, predicate] : it->second) {
            if (distance.count(neighbor) == 0) {
                distance[neighbor] = distance[node] + 1;
                queue.push_back(neighbor);
            }
        }
    }
    auto start = distance.find(from);
    if (start == distance.end()) return std::nullopt;

    std::vector<PidTriple> result;
    std::string current = from;
    while (current != to) {
        size_t remaining = distance[current];
        const auto& edges = out_.at(current);
        bool advanced = false;
        for (const auto& [neighbor, predicate] : edges) {
            auto it = distance.find(neighbor);
            if (it != distance.end() && it->second + 1 == remaining) {
                result.push_back({current, predicate, neighbor});
                current = neighbor;
                advanced = true;
                break;
            }
        }
        if (!advanced) return std::nullopt;  // unreachable given consistent distances
    }
    return result;
}

std::string export_graph(const FdoGraph& graph, GraphFormat format) {
    std::ostringstream out;
    if (format == GraphFormat::Triples) {
        for (const auto& triple : graph.triples()) {
            out << triple.subject << " " << triple.predicate << " " << triple.object << "\n";
        }
        return out.str();
    }

    out << "digraph fdo {\n";
    std::set<std::string> connected;
    for (const auto& triple : graph.triples()) {
        connected.insert(triple.subject);
        connected.insert(triple.object);
    }
    for (const auto& node : graph.nodes()) {
        if (connected.count(node) == 0) {
            out << "  \"" << node << "\";\n";
        }
    }
    for (const auto& triple : graph.triples()) {
        out << "  \"" << triple.subject << "\" -> \"" << triple.object << "\" [label=\""
            << triple.predicate << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::set<PidTriple> parse_triples_document(const std::string& text) {
    std::set<PidTriple> out;
    std::istringstream in(text);
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        std::istringstream fields(line);
        PidTriple triple;
        std::string extra;
        if (!(fields >> triple.subject >> triple.predicate >> triple.object) || (fields >> extra)) {
            throw Error(ErrorCode::MalformedRecordDocument,
                        "triples line " + std::to_string(line_number) + ": expected 3 fields");
        }
        out.insert(std::move(triple));
    }
    return out;
}

}  // namespace fdo
