#pragma once

// Brute-force SCC oracle: Floyd-Warshall transitive closure, then grouping by
// mutual reachability. Deliberately naive and structurally unlike the
// library's Tarjan implementation.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fdo/graph.hpp"

namespace graphoracle {

inline std::vector<std::vector<std::string>> scc_oracle(const std::set<std::string>& nodes,
                                                        const std::set<fdo::PidTriple>& triples) {
    std::vector<std::string> order(nodes.begin(), nodes.end());
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < order.size(); ++i) index[order[i]] = i;

    const size_t n = order.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& triple : triples) {
        auto s = index.find(triple.subject);
        auto o = index.find(triple.object);
        if (s != index.end() && o != index.end()) reach[s->second][o->second] = true;
    }
    for (size_t k = 0; k < n; ++k) {
        for (size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (size_t j = 0; j < n; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }

    std::vector<std::vector<std::string>> components;
    std::vector<bool> assigned(n, false);
    for (size_t i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<std::string> members;
        for (size_t j = 0; j < n; ++j) {
            if (reach[i][j] && reach[j][i]) {
                members.push_back(order[j]);
                assigned[j] = true;
            }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

inline bool reachable_oracle(const std::set<std::string>& nodes,
                             const std::set<fdo::PidTriple>& triples, const std::string& from,
                             const std::string& to) {
    std::map<std::string, std::set<std::string>> succ;
    for (const auto& triple : triples) succ[triple.subject].insert(triple.object);
    std::set<std::string> seen{from};
    std::vector<std::string> frontier{from};
    while (!frontier.empty()) {
        std::string node = frontier.back();
        frontier.pop_back();
        if (node == to) return true;
        for (const auto& next : succ[node]) {
            if (nodes.count(next) > 0 && seen.insert(next).second) frontier.push_back(next);
        }
    }
    return false;
}

}  // namespace graphoracle
