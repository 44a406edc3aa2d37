#include "equiwing/serialization.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "equiwing/errors.hpp"

namespace equiwing {

namespace {

constexpr const char* kPlainHeader = "EQUIWING v1";
constexpr const char* kCompHeader = "EQUIWING-COMP v1";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

void write_node(std::ostringstream& body, const SuperGraph& sg, SnId id) {
  const SuperNode& n = sg.node(id);
  body << "N " << id << ' ' << n.k << ' ' << n.members.size() << '\n';
  for (const EdgeKey& e : n.members)
    body << sg.vertices().label(Side::U, e.u) << ' ' << sg.vertices().label(Side::V, e.v) << '\n';
}

void write_vertices(std::ostringstream& body, const SuperGraph& sg) {
  const VertexTable& vt = sg.vertices();
  body << "vertices " << vt.count(Side::U) << ' ' << vt.count(Side::V) << '\n';
  for (std::uint32_t i = 0; i < vt.count(Side::U); ++i) body << "U " << vt.label(Side::U, i) << '\n';
  for (std::uint32_t i = 0; i < vt.count(Side::V); ++i) body << "V " << vt.label(Side::V, i) << '\n';
}

void write_tail(std::ostringstream& body, const SuperGraph& sg, const std::map<SnId, SnId>* log) {
  for (auto [a, b] : sg.super_edges()) body << "E " << a << ' ' << b << '\n';
  if (log)
    for (auto [from, to] : *log) body << "M " << from << ' ' << to << '\n';
  const VertexTable& vt = sg.vertices();
  for (Side s : {Side::U, Side::V}) {
    for (std::uint32_t i = 0; i < vt.count(s); ++i) {
      auto seeds = sg.seeds({s, i});
      if (seeds.empty()) continue;
      body << "S " << (s == Side::U ? 'U' : 'V') << ' ' << vt.label(s, i);
      for (SnId id : seeds) body << ' ' << id;
      body << '\n';
    }
  }
}

void finish(std::ostream& out, const std::string& body) {
  out << body << "checksum " << hex64(fnv1a(body)) << '\n';
  if (!out) throw IoError("write failure");
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  bool next() {
    if (!std::getline(in_, line_)) return false;
    ++lineno_;
    if (line_.rfind("checksum ", 0) == 0) {
      checksum_line_ = true;
      return true;
    }
    hashed_ += line_;
    hashed_ += '\n';
    tokens_.clear();
    std::istringstream ts(line_);
    for (std::string t; ts >> t;) tokens_.push_back(std::move(t));
    return true;
  }
  void require() {
    if (!next()) throw ParseError(lineno_, "truncated index");
  }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& line() const { return line_; }
  bool at_checksum() const { return checksum_line_; }
  std::size_t lineno() const { return lineno_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(lineno_, what); }

  std::uint64_t number(std::size_t i) const {
    if (i >= tokens_.size()) fail("missing field");
    const std::string& t = tokens_[i];
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) fail("expected a number, got '" + t + "'");
    try {
      return std::stoull(t);
    } catch (const std::exception&) {
      fail("number out of range");
    }
  }

  void verify_checksum() {
    if (!checksum_line_) throw ParseError(lineno_, "missing checksum");
    const std::string want = line_.substr(9);
    if (want != hex64(fnv1a(hashed_))) throw FormatError("checksum mismatch");
  }

 private:
  std::istream& in_;
  std::string line_;
  std::string hashed_;
  std::vector<std::string> tokens_;
  std::size_t lineno_ = 0;
  bool checksum_line_ = false;
};

struct Parsed {
  bool comp = false;
  std::map<SnId, SnId> log;
};

// Reads everything after the header into `sg`.
Parsed read_body(Reader& r, SuperGraph& sg, bool comp) {
  Parsed p;
  p.comp = comp;
  r.require();
  if (r.tokens().size() != 3 || r.tokens()[0] != "vertices") r.fail("expected vertex counts");
  const std::uint64_t nu = r.number(1), nv = r.number(2);
  VertexTable vt;
  for (Side s : {Side::U, Side::V}) {
    const std::uint64_t n = s == Side::U ? nu : nv;
    const char* tag = s == Side::U ? "U" : "V";
    for (std::uint64_t i = 0; i < n; ++i) {
      r.require();
      if (r.tokens().size() != 2 || r.tokens()[0] != tag) r.fail(std::string("expected ") + tag + " vertex");
      if (vt.add(s, r.tokens()[1]) != i) r.fail("duplicate vertex label");
    }
  }
  sg.sync_vertices(vt);

  std::vector<std::pair<SnId, SnId>> edges;
  std::map<std::pair<int, std::uint32_t>, std::vector<SnId>> seeds;
  std::uint64_t current_level = 0;
  bool have_level = false;
  while (true) {
    r.require();
    if (r.at_checksum()) break;
    const auto& t = r.tokens();
    if (t.empty()) r.fail("blank line");
    const std::string& tag = t[0];
    if (tag == "L" && comp) {
      if (t.size() != 2) r.fail("bad level marker");
      current_level = r.number(1);
      have_level = true;
    } else if (tag == "N") {
      if (t.size() != 4) r.fail("bad node record");
      const SnId id = SnId(r.number(1));
      const WingNumber k = WingNumber(r.number(2));
      const std::uint64_t count = r.number(3);
      if (comp && (!have_level || k != current_level)) r.fail("node outside its level section");
      if (k == 0) r.fail("node with level 0");
      if (sg.contains(id)) r.fail("duplicate node id");
      std::vector<EdgeKey> members;
      for (std::uint64_t i = 0; i < count; ++i) {
        r.require();
        if (r.at_checksum() || r.tokens().size() != 2) r.fail("truncated node member list");
        auto u = vt.find(Side::U, r.tokens()[0]);
        auto v = vt.find(Side::V, r.tokens()[1]);
        if (!u || !v) r.fail("member edge names an unknown vertex");
        members.push_back({*u, *v});
      }
      try {
        sg.add_node_with_id(id, k, std::move(members));
      } catch (const ConsistencyError& e) {
        r.fail(e.what());
      }
    } else if (tag == "E") {
      if (t.size() != 3) r.fail("bad super edge");
      edges.emplace_back(SnId(r.number(1)), SnId(r.number(2)));
    } else if (tag == "M" && comp) {
      if (t.size() != 3) r.fail("bad merge record");
      p.log[SnId(r.number(1))] = SnId(r.number(2));
    } else if (tag == "S") {
      if (t.size() < 3 || (t[1] != "U" && t[1] != "V")) r.fail("bad seed record");
      const Side s = t[1] == "U" ? Side::U : Side::V;
      auto o = vt.find(s, t[2]);
      if (!o) r.fail("seed record for unknown vertex");
      auto& list = seeds[{side_index(s), *o}];
      for (std::size_t i = 3; i < t.size(); ++i) list.push_back(SnId(r.number(i)));
    } else {
      r.fail("unknown record '" + tag + "'");
    }
  }
  r.verify_checksum();

  for (auto [a, b] : edges) {
    try {
      sg.add_super_edge(a, b);
    } catch (const ConsistencyError& e) {
      throw FormatError(std::string("invalid super edge: ") + e.what());
    }
  }
  // Seed lists are derivable from the members; a mismatch means corruption.
  for (Side s : {Side::U, Side::V}) {
    for (std::uint32_t i = 0; i < vt.count(s); ++i) {
      auto have = sg.seeds({s, i});
      auto it = seeds.find({side_index(s), i});
      const std::vector<SnId> empty;
      const auto& want = it == seeds.end() ? empty : it->second;
      if (!std::equal(have.begin(), have.end(), want.begin(), want.end()))
        throw FormatError("seed table disagrees with node members for " + vt.label(s, i));
    }
  }
  return p;
}

std::string read_header(std::istream& in) {
  std::string h;
  if (!std::getline(in, h)) throw ParseError(1, "empty index file");
  return h;
}

}  // namespace

void serialize(const EquiWingIndex& index, std::ostream& out) {
  std::ostringstream body;
  body << kPlainHeader << '\n';
  write_vertices(body, index);
  for (SnId id : index.node_ids()) write_node(body, index, id);
  write_tail(body, index, nullptr);
  finish(out, body.str());
}

void serialize(const EquiWingCompIndex& index, std::ostream& out) {
  std::ostringstream body;
  body << kCompHeader << '\n';
  write_vertices(body, index);
  for (WingNumber k : index.levels()) {
    body << "L " << k << '\n';
    for (SnId id : index.level(k)) write_node(body, index, id);
  }
  write_tail(body, index, &index.merge_log());
  finish(out, body.str());
}

namespace {

template <class Index>
Index read_index(std::istream& in, const std::string& header, bool comp) {
  Index index;
  // The header takes part in the checksum like every other line.
  std::stringstream joined;
  joined << header << '\n' << in.rdbuf();
  Reader full(joined);
  full.next();
  Parsed p = read_body(full, index, comp);
  if constexpr (std::is_same_v<Index, EquiWingCompIndex>) {
    for (auto [from, to] : p.log)
      if (!index.contains(to) || index.contains(from)) throw FormatError("merge record names a bad node");
    index.set_merge_log(std::move(p.log));
    index.refresh_levels();
  }
  return index;
}

}  // namespace

EquiWingIndex deserialize_equiwing(std::istream& in) {
  const std::string h = read_header(in);
  if (h != kPlainHeader) throw FormatError("not an EquiWing index (header '" + h + "')");
  return read_index<EquiWingIndex>(in, h, false);
}

EquiWingCompIndex deserialize_comp(std::istream& in) {
  const std::string h = read_header(in);
  if (h != kCompHeader) throw FormatError("not an EquiWing-Comp index (header '" + h + "')");
  return read_index<EquiWingCompIndex>(in, h, true);
}

AnyIndex deserialize_any(std::istream& in) {
  const std::string h = read_header(in);
  if (h == kPlainHeader) return read_index<EquiWingIndex>(in, h, false);
  if (h == kCompHeader) return read_index<EquiWingCompIndex>(in, h, true);
  throw FormatError("unrecognized index header '" + h + "'");
}

AnyIndex load_index_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return deserialize_any(in);
}

void save_index_file(const AnyIndex& index, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    std::visit([&](const auto& x) { serialize(x, out); }, index);
    out.flush();
    if (!out) throw IoError("write failure on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path + ": " + ec.message());
}

}  // namespace equiwing
