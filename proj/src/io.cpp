#include "gpdkit/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>

namespace gpdkit::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t index_value(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw FormatError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string string_value(const Json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(string_value(e, what));
  return out;
}

}  // namespace

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json j;
  j["objects"] = Json::array();
  for (ObjectIndex x = 0; x < g.object_count(); ++x) j["objects"].push_back(g.object_label(x));
  j["morphisms"] = Json::array();
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    Json e;
    e["label"] = g.morphism_label(m);
    e["source"] = g.source(m);
    e["target"] = g.target(m);
    e["inverse"] = g.inverse(m);
    j["morphisms"].push_back(std::move(e));
  }
  j["comp"] = Json::array();
  for (MorphismIndex i = 0; i < g.morphism_count(); ++i) {
    for (auto k : g.incoming(g.source(i))) j["comp"].push_back(Json::array({i, k, g.compose(i, k)}));
  }
  return j;
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  GroupoidTables t;
  t.object_labels = string_list(field(j, "objects"), "object label");
  const Json& ms = field(j, "morphisms");
  if (!ms.is_array()) throw FormatError("'morphisms' must be an array");
  for (const auto& m : ms) {
    t.morphism_labels.push_back(string_value(field(m, "label"), "morphism label"));
    t.source.push_back(index_value(field(m, "source"), "source"));
    t.target.push_back(index_value(field(m, "target"), "target"));
    t.inverse.push_back(index_value(field(m, "inverse"), "inverse"));
  }
  const Json& comp = field(j, "comp");
  if (!comp.is_array()) throw FormatError("'comp' must be an array");
  for (const auto& row : comp) {
    if (!row.is_array() || row.size() != 3) throw FormatError("composition entries are [i, j, k] triples");
    t.comp.push_back({index_value(row[0], "comp index"), index_value(row[1], "comp index"),
                      index_value(row[2], "comp index")});
  }

  const std::size_t N = t.morphism_labels.size();
  constexpr MorphismIndex kNone = static_cast<MorphismIndex>(-1);
  t.unit.assign(t.object_labels.size(), kNone);
  for (const auto& e : t.comp) {
    if (e.left == e.right && e.right == e.result && e.left < N && t.source[e.left] == t.target[e.left] &&
        t.source[e.left] < t.unit.size() && t.unit[t.source[e.left]] == kNone) {
      t.unit[t.source[e.left]] = e.left;
    }
  }
  for (std::size_t x = 0; x < t.unit.size(); ++x) {
    if (t.unit[x] == kNone) throw InvalidGroupoid("object '" + t.object_labels[x] + "' has no unit");
  }
  return FiniteGroupoid::create(std::move(t));
}

std::string groupoid_hash(const FiniteGroupoid& g) {
  const std::string text = groupoid_to_json(g).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json element_to_json(const AlgebraElement& f) {
  Json j;
  j["groupoid_hash"] = groupoid_hash(f.parent());
  j["coeffs"] = Json::array();
  for (auto c : f.coeffs()) j["coeffs"].push_back(complex_to_json(c));
  return j;
}

AlgebraElement element_from_json(const Json& j, const FiniteGroupoid& parent) {
  const auto hash = string_value(field(j, "groupoid_hash"), "groupoid_hash");
  if (hash != groupoid_hash(parent)) {
    throw ParentMismatch("element was stored for groupoid " + hash + ", not " + groupoid_hash(parent));
  }
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array()) throw FormatError("'coeffs' must be an array");
  std::vector<Complex> coeffs;
  for (const auto& c : cs) coeffs.push_back(complex_from_json(c));
  return AlgebraElement(parent, std::move(coeffs));
}

Json matrix_to_json(const MatrixC& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = Json::array();
  for (auto c : m.entries()) j["entries"].push_back(complex_to_json(c));
  return j;
}

MatrixC matrix_from_json(const Json& j) {
  const auto rows = index_value(field(j, "rows"), "rows");
  const auto cols = index_value(field(j, "cols"), "cols");
  const Json& es = field(j, "entries");
  if (!es.is_array()) throw FormatError("'entries' must be an array");
  std::vector<Complex> entries;
  for (const auto& e : es) entries.push_back(complex_from_json(e));
  return MatrixC(rows, cols, std::move(entries));
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string matrix_to_csv(const MatrixC& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      const auto z = m(r, c);
      out += format_double(z.real());
      const std::string im = format_double(z.imag());
      if (im.front() != '-') out += '+';
      out += im;
      out += 'j';
    }
    out += '\n';
  }
  return out;
}

Json event_space_to_json(const EventSpace& space) {
  Json j;
  j["frames"] = Json::array();
  for (const auto& f : space.frames()) {
    Json e;
    e["label"] = f.label;
    e["events"] = f.events;
    j["frames"].push_back(std::move(e));
  }
  j["identifications"] = Json::array();
  for (const auto& [l, r] : space.identifications()) {
    j["identifications"].push_back(Json::array({l.str(), r.str()}));
  }
  return j;
}

namespace {

EventRef parse_ref(const Json& j) {
  const auto s = string_value(j, "event reference");
  const auto dot = s.find('.');
  if (dot == std::string::npos) throw FormatError("event reference '" + s + "' is not frame.event");
  return {s.substr(0, dot), s.substr(dot + 1)};
}

}  // namespace

EventSpace event_space_from_json(const Json& j) {
  std::vector<Frame> frames;
  const Json& fs = field(j, "frames");
  if (!fs.is_array()) throw FormatError("'frames' must be an array");
  for (const auto& f : fs) {
    frames.push_back({string_value(field(f, "label"), "frame label"),
                      string_list(field(f, "events"), "event label")});
  }
  std::vector<Identification> ids;
  if (j.contains("identifications")) {
    const Json& is = j.at("identifications");
    if (!is.is_array()) throw FormatError("'identifications' must be an array");
    for (const auto& p : is) {
      if (!p.is_array() || p.size() != 2) throw FormatError("identifications are pairs of references");
      ids.emplace_back(parse_ref(p[0]), parse_ref(p[1]));
    }
  }
  return build_event_space(std::move(frames), std::move(ids));
}

Json cell_to_json(const TwoCell& cell) {
  Json j;
  j["a"] = cell.a;
  j["a'"] = cell.a_prime;
  j["b"] = cell.b;
  j["b'"] = cell.b_prime;
  return j;
}

TwoCell cell_from_json(const Json& j, const EventSpace& space) {
  return two_cell(space, index_value(field(j, "a"), "a"), index_value(field(j, "a'"), "a'"),
                  index_value(field(j, "b"), "b"), index_value(field(j, "b'"), "b'"));
}

}  // namespace gpdkit::io
