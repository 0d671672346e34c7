#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "circlelink/egonet.hpp"
#include "circlelink/graph.hpp"

namespace circlelink {

/// CSV with header "src,dst,timestamp"; timestamps are epoch seconds or
/// ISO-8601 UTC.  Strict: malformed rows (wrong arity, bad timestamp,
/// src == dst) throw ParseError with the 1-based line number; a file without
/// data rows throws EmptyFile.
std::vector<InteractionRecord> load_interaction_log(const std::string& path);

/// Canonical writer (ISO-8601 timestamps); loading the output and writing it
/// again is byte-identical.
void write_interaction_log(const std::vector<InteractionRecord>& records,
                           const std::string& path);

/// CSV with header "src,dst,weight".
std::vector<WeightedEdge> load_weighted_edges(const std::string& path);
void write_weighted_edges(const std::vector<WeightedEdge>& edges,
                          const std::string& path);

/// CSV with header "node,class"; class is one of ego/domain/generic.
std::map<std::string, NodeClass> load_node_classes(const std::string& path);
void write_node_classes(const std::map<std::string, NodeClass>& classes,
                        const std::string& path);

/// CSV with header "src,dst" or "src,dst,weight" (weight ignored); the
/// second-snapshot edge list.
std::vector<std::pair<std::string, std::string>> load_edge_pairs(
    const std::string& path);
void write_edge_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                      const std::string& path);

}  // namespace circlelink
