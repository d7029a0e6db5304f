#include "walkrag/gazetteer.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "walkrag/errors.hpp"

namespace walkrag::geodata {

namespace {

std::vector<std::string> split_csv_line(std::string const& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  auto quoted = false;
  for (auto i = std::size_t{0}; i < line.size(); ++i) {
    auto const c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw malformed_input(static_cast<long>(line_no), "unterminated quote");
  }
  fields.push_back(std::move(field));
  return fields;
}

double parse_degrees(std::string const& text, std::size_t line_no) {
  auto const trimmed = normalize_place_name(text);
  double value = 0.0;
  auto const* last = trimmed.data() + trimmed.size();
  auto const [ptr, ec] = std::from_chars(trimmed.data(), last, value);
  if (ec != std::errc{} || ptr != last) {
    throw malformed_input(static_cast<long>(line_no), "invalid coordinate '" + text + "'");
  }
  return value;
}

}  // namespace

std::string normalize_place_name(std::string_view name) {
  auto const first = name.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  auto const last = name.find_last_not_of(" \t\r\n");
  std::string out{name.substr(first, last - first + 1)};
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

gazetteer::gazetteer(std::vector<gazetteer_entry> entries) : entries_(std::move(entries)) {
  for (auto i = std::size_t{0}; i < entries_.size(); ++i) {
    auto key = normalize_place_name(entries_[i].name);
    if (key.empty()) {
      throw malformed_input(static_cast<long>(i + 2), "empty place name");
    }
    if (!by_key_.emplace(std::move(key), i).second) {
      throw malformed_input(static_cast<long>(i + 2),
                            "duplicate place name '" + entries_[i].name + "'");
    }
  }
}

gazetteer gazetteer::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<gazetteer_entry> entries;
  auto header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    auto const fields = split_csv_line(line, line_no);
    if (!header_seen) {
      if (fields.size() != 3 || normalize_place_name(fields[0]) != "name" ||
          normalize_place_name(fields[1]) != "lat" || normalize_place_name(fields[2]) != "lon") {
        throw malformed_input(static_cast<long>(line_no), "expected header 'name,lat,lon'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw malformed_input(static_cast<long>(line_no), "expected 3 fields");
    }
    gazetteer_entry e;
    e.name = fields[0];
    e.pos = {parse_degrees(fields[1], line_no), parse_degrees(fields[2], line_no)};
    if (e.pos.lat < -90.0 || e.pos.lat > 90.0 || e.pos.lon < -180.0 || e.pos.lon > 180.0) {
      throw malformed_input(static_cast<long>(line_no), "coordinates out of range");
    }
    entries.push_back(std::move(e));
  }
  return gazetteer{std::move(entries)};
}

gazetteer gazetteer::load_file(std::string const& path) {
  std::ifstream in{path};
  if (!in) {
    throw malformed_input(0, "cannot open " + path);
  }
  return load(in);
}

std::optional<lat_lon> gazetteer::find(std::string_view name) const {
  auto const it = by_key_.find(normalize_place_name(name));
  if (it == by_key_.end()) {
    return std::nullopt;
  }
  return entries_[it->second].pos;
}

lat_lon gazetteer::geocode(std::string_view name) const {
  if (auto const pos = find(name)) {
    return *pos;
  }
  throw not_found(std::string{name});
}

void gazetteer::write_csv(std::ostream& out) const {
  out << "name,lat,lon\n";
  char buf[64];
  for (auto const& e : entries_) {
    auto const needs_quotes = e.name.find_first_of(",\"") != std::string::npos;
    if (needs_quotes) {
      out << '"';
      for (auto const c : e.name) {
        out << (c == '"' ? "\"\"" : std::string(1, c));
      }
      out << '"';
    } else {
      out << e.name;
    }
    auto p = std::to_chars(buf, buf + sizeof(buf), e.pos.lat).ptr;
    out << ',' << std::string_view(buf, static_cast<std::size_t>(p - buf));
    p = std::to_chars(buf, buf + sizeof(buf), e.pos.lon).ptr;
    out << ',' << std::string_view(buf, static_cast<std::size_t>(p - buf)) << '\n';
  }
}

}  // namespace walkrag::geodata
