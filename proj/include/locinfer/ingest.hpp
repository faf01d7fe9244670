#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "locinfer/multigraph.hpp"

namespace locinfer {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class AreaLabel { Inside, Outside };

struct UserProfile {
  UserId id = 0;
  std::string location_text;
  std::optional<AreaLabel> truth;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

}  // namespace detail

// Edge list: "F <src> <dst>" or "I <src> <dst> <weight>", '#' comments.
inline Multigraph read_graph(std::istream& in) {
  Multigraph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank_or_comment(line)) continue;
    auto f = detail::split_ws(line);
    const bool follow = f[0] == "F";
    const bool interact = f[0] == "I";
    if (!follow && !interact) throw ParseError(lineno, "unknown record type '" + std::string(f[0]) + "'");
    if (f.size() != (follow ? 3u : 4u)) throw ParseError(lineno, "wrong field count");
    auto src = detail::parse_uint(f[1]);
    auto dst = detail::parse_uint(f[2]);
    if (!src || !dst) throw ParseError(lineno, "non-integer user id");
    if (*src == *dst) throw ParseError(lineno, "self-loop");
    if (follow) {
      g.add_follow(*src, *dst);
    } else {
      auto w = detail::parse_uint(f[3]);
      if (!w) throw ParseError(lineno, "non-integer weight");
      if (*w == 0) throw ParseError(lineno, "zero weight");
      g.add_interaction(*src, *dst, *w);
    }
  }
  return g;
}

inline Multigraph load_graph(const std::string& path) {
  auto in = detail::open_input(path);
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Multigraph& g) {
  for (const auto& [u, v] : g.follow_edges()) out << "F " << u << ' ' << v << '\n';
  for (const auto& e : g.interaction_edges()) out << "I " << e.src << ' ' << e.dst << ' ' << e.weight << '\n';
}

// Profiles: "<id>\t<inside|outside|->\t<location text>".
inline std::vector<UserProfile> read_profiles(std::istream& in) {
  std::vector<UserProfile> out;
  UserSet seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab1 = line.find('\t');
    if (tab1 == std::string::npos) throw ParseError(lineno, "expected tab-separated fields");
    auto tab2 = line.find('\t', tab1 + 1);
    std::string_view sv(line);
    auto id = detail::parse_uint(sv.substr(0, tab1));
    if (!id) throw ParseError(lineno, "non-integer user id");
    auto label = sv.substr(tab1 + 1, tab2 == std::string::npos ? std::string_view::npos : tab2 - tab1 - 1);
    UserProfile p;
    p.id = *id;
    if (label == "inside") {
      p.truth = AreaLabel::Inside;
    } else if (label == "outside") {
      p.truth = AreaLabel::Outside;
    } else if (label != "-") {
      throw ParseError(lineno, "bad truth label '" + std::string(label) + "'");
    }
    if (tab2 != std::string::npos) p.location_text = line.substr(tab2 + 1);
    if (!seen.insert(p.id).second) throw ParseError(lineno, "duplicate profile id " + std::to_string(p.id));
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<UserProfile> load_profiles(const std::string& path) {
  auto in = detail::open_input(path);
  return read_profiles(in);
}

inline void write_profiles(std::ostream& out, const std::vector<UserProfile>& profiles) {
  for (const auto& p : profiles) {
    out << p.id << '\t';
    if (!p.truth) out << '-';
    else out << (*p.truth == AreaLabel::Inside ? "inside" : "outside");
    out << '\t' << p.location_text << '\n';
  }
}

/// Lowercased alphanumeric tokens; every other byte is a separator.
inline std::vector<std::string> location_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

/// City names of the target area, kept as token sequences.
class Gazetteer {
 public:
  explicit Gazetteer(const std::vector<std::string>& names) {
    for (const auto& n : names) {
      auto toks = location_tokens(n);
      if (toks.empty()) throw std::invalid_argument("gazetteer name without alphanumeric token: '" + n + "'");
      names_.push_back(n);
      entries_.push_back(std::move(toks));
    }
    if (entries_.empty()) throw std::invalid_argument("empty gazetteer");
  }

  const std::vector<std::string>& names() const { return names_; }

  /// True iff some city's token sequence occurs contiguously in `text`.
  bool matches(std::string_view text) const {
    auto toks = location_tokens(text);
    for (const auto& city : entries_) {
      if (city.size() > toks.size()) continue;
      auto it = std::search(toks.begin(), toks.end(), city.begin(), city.end());
      if (it != toks.end()) return true;
    }
    return false;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> entries_;
};

inline Gazetteer read_gazetteer(std::istream& in) {
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    names.push_back(line);
  }
  return Gazetteer(names);
}

inline Gazetteer load_gazetteer(const std::string& path) {
  auto in = detail::open_input(path);
  return read_gazetteer(in);
}

inline void write_gazetteer(std::ostream& out, const Gazetteer& gaz) {
  for (const auto& n : gaz.names()) out << n << '\n';
}

/// Seed set S: users whose profile location names a gazetteer city.
/// Truth labels are ignored.
inline UserSet refine_seeds(const std::vector<UserProfile>& profiles, const Gazetteer& gaz) {
  UserSet seeds;
  for (const auto& p : profiles)
    if (gaz.matches(p.location_text)) seeds.insert(p.id);
  return seeds;
}

}  // namespace locinfer
