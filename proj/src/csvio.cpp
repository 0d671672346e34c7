#include "circlelink/csvio.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "circlelink/errors.hpp"
#include "circlelink/timeutil.hpp"

namespace circlelink {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

struct CsvReader {
  std::string path;
  std::ifstream in;
  std::size_t line_no = 0;

  explicit CsvReader(const std::string& p, const char* header) : path(p), in(p) {
    if (!in) throw EmptyFile("cannot open '" + p + "'");
    std::string line;
    if (!std::getline(in, line)) throw EmptyFile("'" + p + "' is empty");
    ++line_no;
    auto fields = split_fields(line);
    std::string joined;
    for (std::size_t i = 0; i < fields.size(); ++i)
      joined += (i ? "," : "") + fields[i];
    if (joined != header)
      throw ParseError("'" + p + "' line 1: expected header '" +
                       std::string(header) + "', got '" + joined + "'");
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;  // skip blank lines
      fields = split_fields(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("'" + path + "' line " + std::to_string(line_no) + ": " +
                     what);
  }
};

double parse_weight(const std::string& s, const CsvReader& r) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == nullptr || *end != '\0' || s.empty())
    r.fail("bad weight '" + s + "'");
  return v;
}

std::string fmt_weight(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace

std::vector<InteractionRecord> load_interaction_log(const std::string& path) {
  CsvReader r(path, "src,dst,timestamp");
  std::vector<InteractionRecord> records;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != 3) r.fail("expected 3 fields, got " + std::to_string(f.size()));
    if (f[0].empty() || f[1].empty()) r.fail("empty node label");
    if (f[0] == f[1]) r.fail("self-interaction '" + f[0] + "'");
    std::int64_t ts = 0;
    try {
      ts = parse_timestamp(f[2]);
    } catch (const ParseError& e) {
      r.fail(e.what());
    }
    records.push_back({f[0], f[1], ts});
  }
  if (records.empty()) throw EmptyFile("'" + path + "' has no data rows");
  return records;
}

void write_interaction_log(const std::vector<InteractionRecord>& records,
                           const std::string& path) {
  std::string out = "src,dst,timestamp\n";
  for (const auto& rec : records)
    out += rec.ego + ',' + rec.alter + ',' + format_timestamp(rec.timestamp) + '\n';
  write_file(path, out);
}

std::vector<WeightedEdge> load_weighted_edges(const std::string& path) {
  CsvReader r(path, "src,dst,weight");
  std::vector<WeightedEdge> edges;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != 3) r.fail("expected 3 fields, got " + std::to_string(f.size()));
    if (f[0].empty() || f[1].empty()) r.fail("empty node label");
    if (f[0] == f[1]) r.fail("self-edge '" + f[0] + "'");
    edges.push_back({f[0], f[1], parse_weight(f[2], r)});
  }
  if (edges.empty()) throw EmptyFile("'" + path + "' has no data rows");
  return edges;
}

void write_weighted_edges(const std::vector<WeightedEdge>& edges,
                          const std::string& path) {
  std::string out = "src,dst,weight\n";
  for (const auto& e : edges)
    out += e.src + ',' + e.dst + ',' + fmt_weight(e.weight) + '\n';
  write_file(path, out);
}

std::map<std::string, NodeClass> load_node_classes(const std::string& path) {
  CsvReader r(path, "node,class");
  std::map<std::string, NodeClass> classes;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != 2) r.fail("expected 2 fields, got " + std::to_string(f.size()));
    if (f[0].empty()) r.fail("empty node label");
    NodeClass cls;
    try {
      cls = node_class_from_string(f[1]);
    } catch (const ParseError& e) {
      r.fail(e.what());
    }
    if (!classes.emplace(f[0], cls).second)
      r.fail("duplicate node '" + f[0] + "'");
  }
  if (classes.empty()) throw EmptyFile("'" + path + "' has no data rows");
  return classes;
}

void write_node_classes(const std::map<std::string, NodeClass>& classes,
                        const std::string& path) {
  std::string out = "node,class\n";
  for (const auto& [node, cls] : classes)
    out += node + ',' + to_string(cls) + '\n';
  write_file(path, out);
}

std::vector<std::pair<std::string, std::string>> load_edge_pairs(
    const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw EmptyFile("cannot open '" + path + "'");
  std::string header;
  std::getline(probe, header);
  auto head_fields = split_fields(header);
  bool weighted = head_fields.size() == 3;
  probe.close();

  CsvReader r(path, weighted ? "src,dst,weight" : "src,dst");
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> f;
  std::size_t want = weighted ? 3 : 2;
  while (r.next(f)) {
    if (f.size() != want)
      r.fail("expected " + std::to_string(want) + " fields, got " +
             std::to_string(f.size()));
    if (f[0].empty() || f[1].empty()) r.fail("empty node label");
    if (f[0] == f[1]) r.fail("self-pair '" + f[0] + "'");
    pairs.emplace_back(f[0], f[1]);
  }
  if (pairs.empty()) throw EmptyFile("'" + path + "' has no data rows");
  return pairs;
}

void write_edge_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                      const std::string& path) {
  std::string out = "src,dst\n";
  for (const auto& [a, b] : pairs) out += a + ',' + b + '\n';
  write_file(path, out);
}

}  // namespace circlelink
