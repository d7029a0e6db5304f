#include "walkrag/osm.hpp"

#include <charconv>
#include <memory>
#include <optional>
#include <string_view>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include <expat.h>

#include "walkrag/errors.hpp"

namespace walkrag::geodata {

namespace {

// Streaming handler state. Errors are parked in `failure` and the parser is
// stopped, since exceptions must not unwind through expat.
struct parse_state {
  XML_Parser parser = nullptr;
  map_extract extract;
  std::unordered_set<node_id> seen;
  int depth = 0;
  enum class in { none, node, way, other } current = in::none;
  std::optional<malformed_input> failure;

  long line() const { return static_cast<long>(XML_GetCurrentLineNumber(parser)); }

  void fail(std::string const& reason) {
    if (!failure) {
      failure.emplace(line(), reason);
    }
    XML_StopParser(parser, XML_FALSE);
  }
};

char const* find_attr(char const** attrs, std::string_view key) {
  for (auto i = 0; attrs[i] != nullptr; i += 2) {
    if (key == attrs[i]) {
      return attrs[i + 1];
    }
  }
  return nullptr;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

template <typename T>
std::optional<T> number_attr(parse_state& st, char const** attrs, char const* key, char const* element) {
  auto const* raw = find_attr(attrs, key);
  if (raw == nullptr) {
    st.fail(std::string{element} + " without '" + key + "' attribute");
    return std::nullopt;
  }
  auto v = parse_number<T>(raw);
  if (!v) {
    st.fail(std::string{"invalid "} + element + " " + key + " '" + raw + "'");
  }
  return v;
}

void on_start(void* data, char const* name, char const** attrs) {
  auto& st = *static_cast<parse_state*>(data);
  ++st.depth;
  std::string_view const el{name};
  if (st.depth == 2) {
    if (el == "node") {
      auto const id = number_attr<node_id>(st, attrs, "id", "node");
      auto const lat = id ? number_attr<double>(st, attrs, "lat", "node") : std::nullopt;
      auto const lon = lat ? number_attr<double>(st, attrs, "lon", "node") : std::nullopt;
      if (!lon) {
        return;
      }
      if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
        return st.fail("node " + std::to_string(*id) + " has out-of-range coordinates");
      }
      if (!st.seen.insert(*id).second) {
        return st.fail("duplicate node id " + std::to_string(*id));
      }
      st.extract.nodes.push_back({*id, {*lat, *lon}, {}});
      st.current = parse_state::in::node;
    } else if (el == "way") {
      auto const id = number_attr<std::int64_t>(st, attrs, "id", "way");
      if (!id) {
        return;
      }
      st.extract.ways.push_back({*id, {}, {}});
      st.current = parse_state::in::way;
    } else {
      st.current = parse_state::in::other;
    }
    return;
  }
  if (st.depth != 3 || st.current == parse_state::in::none || st.current == parse_state::in::other) {
    return;
  }
  if (el == "tag") {
    auto const* k = find_attr(attrs, "k");
    auto const* v = find_attr(attrs, "v");
    if (k == nullptr || v == nullptr) {
      return st.fail(std::string{"tag without '"} + (k == nullptr ? "k" : "v") + "' attribute");
    }
    auto& tags = st.current == parse_state::in::node ? st.extract.nodes.back().tags
                                                      : st.extract.ways.back().tags;
    tags[k] = v;
  } else if (el == "nd" && st.current == parse_state::in::way) {
    if (auto const ref = number_attr<node_id>(st, attrs, "ref", "nd")) {
      st.extract.ways.back().refs.push_back(*ref);
    }
  }
}

void on_end(void* data, char const*) {
  auto& st = *static_cast<parse_state*>(data);
  if (st.depth == 2) {
    st.current = parse_state::in::none;
  }
  --st.depth;
}

void write_escaped(std::ostream& out, std::string_view s) {
  for (auto const c : s) {
    switch (c) {
      case '&': out << "&amp;"; break;
      case '<': out << "&lt;"; break;
      case '>': out << "&gt;"; break;
      case '"': out << "&quot;"; break;
      case '\'': out << "&apos;"; break;
      default: out << c;
    }
  }
}

std::string shortest(double v) {
  char buf[64];
  auto const [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_tags(std::ostream& out, tag_map const& tags) {
  for (auto const& [k, v] : tags) {
    out << "    <tag k=\"";
    write_escaped(out, k);
    out << "\" v=\"";
    write_escaped(out, v);
    out << "\"/>\n";
  }
}

}  // namespace

std::unordered_map<node_id, osm_node const*> index_nodes(map_extract const& extract) {
  std::unordered_map<node_id, osm_node const*> index;
  index.reserve(extract.nodes.size());
  for (auto const& n : extract.nodes) {
    index.emplace(n.id, &n);
  }
  return index;
}

map_extract parse_map_extract(std::istream& in) {
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser{XML_ParserCreate(nullptr),
                                                                       &XML_ParserFree};
  if (!parser) {
    throw std::bad_alloc();
  }
  parse_state st;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), &on_start, &on_end);

  std::vector<char> buf(1 << 16);
  bool done = false;
  while (!done) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    auto const got = static_cast<int>(in.gcount());
    done = got == 0 || in.eof();
    if (XML_Parse(parser.get(), buf.data(), got, done ? XML_TRUE : XML_FALSE) == XML_STATUS_ERROR) {
      if (st.failure) {
        throw *st.failure;
      }
      throw malformed_input(st.line(), XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
  }

  for (auto const& way : st.extract.ways) {
    for (auto const ref : way.refs) {
      if (!st.seen.contains(ref)) {
        throw dangling_reference(way.id, ref);
      }
    }
  }
  return std::move(st.extract);
}

map_extract parse_map_extract_file(std::string const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw malformed_input(0, "cannot open " + path);
  }
  return parse_map_extract(in);
}

void serialize_map_extract(map_extract const& extract, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<osm version=\"0.6\">\n";
  for (auto const& n : extract.nodes) {
    out << "  <node id=\"" << n.id << "\" lat=\"" << shortest(n.pos.lat) << "\" lon=\""
        << shortest(n.pos.lon) << "\"";
    if (n.tags.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    write_tags(out, n.tags);
    out << "  </node>\n";
  }
  for (auto const& w : extract.ways) {
    out << "  <way id=\"" << w.id << "\">\n";
    for (auto const ref : w.refs) {
      out << "    <nd ref=\"" << ref << "\"/>\n";
    }
    write_tags(out, w.tags);
    out << "  </way>\n";
  }
  out << "</osm>\n";
}

}  // namespace walkrag::geodata
