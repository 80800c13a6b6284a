#include "zealot/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "zealot/errors.hpp"

namespace zealot {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

NodeId parse_id(std::string_view token, std::size_t line_no) {
  NodeId value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": invalid node id '" +
                     std::string(token) + "'");
  }
  return value;
}

std::vector<NodeId> parse_id_list(std::string_view list, std::size_t line_no) {
  std::vector<NodeId> ids;
  while (!list.empty()) {
    const auto comma = list.find(',');
    ids.push_back(parse_id(trim(list.substr(0, comma)), line_no));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return ids;
}

void parse_zealot_header(std::string_view body, std::size_t line_no, EdgeList& out) {
  std::istringstream fields{std::string(body)};
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected key=ids, got '" +
                       field + "'");
    }
    const std::string_view key = std::string_view(field).substr(0, eq);
    const auto ids = parse_id_list(std::string_view(field).substr(eq + 1), line_no);
    if (key == "correct") {
      out.correct_zealots.insert(out.correct_zealots.end(), ids.begin(), ids.end());
    } else if (key == "incorrect") {
      out.incorrect_zealots.insert(out.incorrect_zealots.end(), ids.begin(), ids.end());
    } else {
      throw ParseError("edge list line " + std::to_string(line_no) + ": unknown zealot key '" +
                       std::string(key) + "'");
    }
  }
}

}  // namespace

EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      constexpr std::string_view kHeader = "#zealots";
      if (text.starts_with(kHeader)) parse_zealot_header(text.substr(kHeader.size()), line_no, out);
      continue;
    }
    std::istringstream fields{std::string(text)};
    std::string u, v, extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    out.edges.emplace_back(parse_id(u, line_no), parse_id(v, line_no));
  }
  return out;
}

EdgeList read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path.string() + "'");
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const EdgeList& list) {
  auto join = [&](const std::vector<NodeId>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
  };
  out << "#zealots correct=";
  join(list.correct_zealots);
  out << " incorrect=";
  join(list.incorrect_zealots);
  out << '\n';
  for (const auto& [u, v] : list.edges) out << u << ' ' << v << '\n';
}

EdgeList ring_edge_list(NodeId node_count, std::vector<NodeId> correct,
                        std::vector<NodeId> incorrect) {
  EdgeList out;
  for (NodeId i = 0; i < node_count; ++i) out.edges.emplace_back(i, (i + 1) % node_count);
  out.correct_zealots = std::move(correct);
  out.incorrect_zealots = std::move(incorrect);
  return out;
}

}  // namespace zealot
