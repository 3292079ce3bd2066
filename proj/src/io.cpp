#include "pqstab/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "pqstab/error.hpp"

namespace pqstab {

using nlohmann::json;

namespace {

std::string field(const std::string& parent, std::size_t index) { return parent + "[" + std::to_string(index) + "]"; }

const json& require(const json& doc, const std::string& key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw InputError("missing field", where.empty() || where == "document" ? key : where + "." + key);
  }
  return *it;
}

Scalar scalar_from(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Scalar(std::to_string(v.get<std::uint64_t>()))
                                  : Scalar(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    try {
      return parse_scalar(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(e.what(), where);
    }
  }
  if (v.is_number_float()) {
    throw InputError("floating-point numbers are not exact; write \"0.5\" or \"1/2\" as a string", where);
  }
  throw InputError("expected a number", where);
}

long long integer_from(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError("expected an integer", where);
  return v.get<long long>();
}

std::size_t index_from(const json& v, const std::string& where) {
  const long long i = integer_from(v, where);
  if (i < 0) throw InputError("expected a non-negative integer", where);
  return static_cast<std::size_t>(i);
}

const json& array_at(const json& doc, const std::string& key, const std::string& where) {
  const json& v = require(doc, key, where);
  if (!v.is_array()) throw InputError("expected an array", where.empty() ? key : where + "." + key);
  return v;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_from(const json& arr, const std::string& where) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = field(where, i);
    if (!arr[i].is_array() || arr[i].size() != 2) throw InputError("expected a pair", at);
    out.emplace_back(index_from(arr[i][0], at + "[0]"), index_from(arr[i][1], at + "[1]"));
  }
  return out;
}

std::vector<ElementSet> sets_from(const json& arr, const std::string& where) {
  std::vector<ElementSet> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = field(where, i);
    if (!arr[i].is_array()) throw InputError("expected an array of indices", at);
    ElementSet s;
    for (std::size_t j = 0; j < arr[i].size(); ++j) s.push_back(index_from(arr[i][j], field(at, j)));
    out.push_back(normalize_set(std::move(s)));
  }
  return out;
}

json point_json(const Point2& p) { return json::array({to_string(p.x), to_string(p.y)}); }

Point2 point_from(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw InputError("expected a point [x, y]", where);
  return Point2{scalar_from(v[0], where + "[0]"), scalar_from(v[1], where + "[1]")};
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
    throw InputError(e.what(), "line " + std::to_string(line));
  }
}

void check_version(const json& doc) {
  if (!doc.is_object()) throw InputError("expected a JSON object", "document");
  const json& v = require(doc, "format_version", "document");
  if (integer_from(v, "format_version") != kFormatVersion) {
    throw InputError("unsupported format_version (expected " + std::to_string(kFormatVersion) + ")",
                     "format_version");
  }
}

InstanceKind kind_from(const json& doc) {
  const json& k = require(doc, "kind", "document");
  if (!k.is_string()) throw InputError("expected a string", "kind");
  const std::string s = k.get<std::string>();
  if (s == "planar") return InstanceKind::Planar;
  if (s == "tree") return InstanceKind::Tree;
  if (s == "poset") return InstanceKind::Poset;
  throw InputError("unknown kind '" + s + "' (expected planar, tree or poset)", "kind");
}

json sets_json(const std::vector<ElementSet>& sets) {
  json arr = json::array();
  for (const auto& s : sets) arr.push_back(s);
  return arr;
}

json certificate_json(const Certificate& c) {
  return json{{"kind", to_string(c.kind)}, {"verdict", c.verdict}, {"witness", c.witness}, {"detail", c.detail}};
}

Certificate certificate_from(const json& v) {
  Certificate c;
  const std::string kind = require(v, "kind", "certificate").get<std::string>();
  if (kind == "pq-property") c.kind = CertificateKind::PQProperty;
  else if (kind == "stabbing") c.kind = CertificateKind::Stabbing;
  else if (kind == "minimum-stab") c.kind = CertificateKind::MinimumStab;
  else if (kind == "decision") c.kind = CertificateKind::Decision;
  else throw InputError("unknown certificate kind '" + kind + "'", "certificate.kind");
  c.verdict = require(v, "verdict", "certificate").get<bool>();
  c.witness = require(v, "witness", "certificate").get<std::vector<std::size_t>>();
  c.detail = v.value("detail", "");
  return c;
}

}  // namespace

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Planar: return "planar";
    case InstanceKind::Tree: return "tree";
    case InstanceKind::Poset: return "poset";
  }
  return "unknown";
}

InstanceFile parse_instance(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc);
  InstanceFile inst;
  inst.kind = kind_from(doc);
  inst.p = static_cast<int>(integer_from(require(doc, "p", "document"), "p"));
  inst.q = static_cast<int>(integer_from(require(doc, "q", "document"), "q"));
  if (auto it = doc.find("provenance"); it != doc.end()) {
    inst.provenance = Provenance{it->value("generator", ""), it->value("seed", std::uint64_t{0})};
  }

  switch (inst.kind) {
    case InstanceKind::Planar: {
      const json& polys = array_at(doc, "polygons", "");
      for (std::size_t i = 0; i < polys.size(); ++i) {
        const std::string at = field("polygons", i);
        if (!polys[i].is_array() || polys[i].empty()) throw InputError("expected a non-empty vertex list", at);
        std::vector<Point2> vs;
        for (std::size_t j = 0; j < polys[i].size(); ++j) vs.push_back(point_from(polys[i][j], field(at, j)));
        bool reversed = false;
        try {
          inst.polygons.push_back(ConvexPolygon::from_vertices(std::move(vs), &reversed));
        } catch (const InputError& e) {
          throw InputError(e.what(), at);
        }
        if (reversed) inst.warnings.push_back(at + " was clockwise and has been reversed");
      }
      if (auto it = doc.find("line"); it != doc.end()) {
        inst.line = VerticalLine{scalar_from(require(*it, "x", "line"), "line.x")};
      }
      break;
    }
    case InstanceKind::Tree: {
      const std::size_t n = index_from(require(doc, "vertices", "document"), "vertices");
      const auto edges = pairs_from(array_at(doc, "edges", ""), "edges");
      inst.tree.emplace(n, edges);
      inst.sets = sets_from(array_at(doc, "subtrees", ""), "subtrees");
      for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        if (!inst.tree->is_subtree(inst.sets[i])) {
          throw InputError("not a subtree: empty, out of range or not connected", field("subtrees", i));
        }
      }
      break;
    }
    case InstanceKind::Poset: {
      const std::size_t n = index_from(require(doc, "elements", "document"), "elements");
      const auto rel = pairs_from(array_at(doc, "relations", ""), "relations");
      inst.poset.emplace(n, rel);
      inst.sets = sets_from(array_at(doc, "ideals", ""), "ideals");
      for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        if (inst.sets[i].empty() || !inst.poset->is_ideal(inst.sets[i])) {
          throw InputError("not an ideal: empty, out of range or not downward closed", field("ideals", i));
        }
      }
      break;
    }
  }
  return inst;
}

std::string dump_instance(const InstanceFile& inst) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = to_string(inst.kind);
  doc["p"] = inst.p;
  doc["q"] = inst.q;
  switch (inst.kind) {
    case InstanceKind::Planar: {
      json polys = json::array();
      for (const ConvexPolygon& poly : inst.polygons) {
        json vs = json::array();
        for (const Point2& v : poly.vertices()) vs.push_back(point_json(v));
        polys.push_back(std::move(vs));
      }
      doc["polygons"] = std::move(polys);
      if (inst.line) doc["line"] = json{{"x", to_string(inst.line->x0)}};
      break;
    }
    case InstanceKind::Tree:
      if (!inst.tree) throw PreconditionError("dump_instance: tree instance without a tree");
      doc["vertices"] = inst.tree->size();
      doc["edges"] = inst.tree->edges();
      doc["subtrees"] = sets_json(inst.sets);
      break;
    case InstanceKind::Poset:
      if (!inst.poset) throw PreconditionError("dump_instance: poset instance without a poset");
      doc["elements"] = inst.poset->size();
      doc["relations"] = inst.poset->relations();
      doc["ideals"] = sets_json(inst.sets);
      break;
  }
  if (inst.provenance) doc["provenance"] = json{{"generator", inst.provenance->generator}, {"seed", inst.provenance->seed}};
  return doc.dump(2) + "\n";
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_text(path)); }

void save_instance(const std::string& path, const InstanceFile& inst) { write_text(path, dump_instance(inst)); }

template <class Element>
ResultFile make_result_file(InstanceKind kind, int p, int q, const StabbingResult<Element>& r) {
  ResultFile out;
  out.kind = kind;
  out.p = p;
  out.q = q;
  out.budget = r.budget;
  if constexpr (std::is_same_v<Element, Point2>) {
    out.points = r.points;
  } else {
    out.elements = r.points;
  }
  out.coverage = r.coverage;
  out.reduction_trail = r.reduction_trail;
  out.uncovered = r.uncovered;
  out.promise_violated = r.promise_violated;
  out.diagnostic = r.diagnostic;
  out.statistics = r.statistics;
  return out;
}

template ResultFile make_result_file(InstanceKind, int, int, const StabbingResult<Point2>&);
template ResultFile make_result_file(InstanceKind, int, int, const StabbingResult<std::size_t>&);

std::string dump_result(const ResultFile& r, bool with_timing) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = to_string(r.kind);
  doc["p"] = r.p;
  doc["q"] = r.q;
  doc["budget"] = r.budget;
  if (!r.mode.empty()) doc["mode"] = r.mode;
  doc["seed"] = r.seed;
  if (r.kind == InstanceKind::Planar) {
    json pts = json::array();
    for (const Point2& p : r.points) pts.push_back(point_json(p));
    doc["points"] = std::move(pts);
  } else {
    doc["elements"] = r.elements;
  }
  doc["coverage"] = r.coverage;
  json trail = json::array();
  for (const PQParams& t : r.reduction_trail) trail.push_back(json::array({t.p, t.q}));
  doc["reduction_trail"] = std::move(trail);
  doc["uncovered"] = r.uncovered;
  doc["promise_violated"] = r.promise_violated;
  if (!r.diagnostic.empty()) doc["diagnostic"] = r.diagnostic;
  doc["statistics"] = r.statistics;
  if (r.certificate) doc["certificate"] = certificate_json(*r.certificate);
  if (with_timing && r.elapsed_ms) doc["timing"] = json{{"elapsed_ms", *r.elapsed_ms}};
  return doc.dump(2) + "\n";
}

ResultFile parse_result(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc);
  ResultFile r;
  r.kind = kind_from(doc);
  r.p = static_cast<int>(integer_from(require(doc, "p", "document"), "p"));
  r.q = static_cast<int>(integer_from(require(doc, "q", "document"), "q"));
  r.budget = static_cast<int>(integer_from(require(doc, "budget", "document"), "budget"));
  r.mode = doc.value("mode", "");
  r.seed = doc.value("seed", std::uint64_t{0});
  try {
    if (r.kind == InstanceKind::Planar) {
      const json& pts = array_at(doc, "points", "");
      for (std::size_t i = 0; i < pts.size(); ++i) r.points.push_back(point_from(pts[i], field("points", i)));
    } else {
      const json& els = array_at(doc, "elements", "");
      for (std::size_t i = 0; i < els.size(); ++i) r.elements.push_back(index_from(els[i], field("elements", i)));
    }
    r.coverage = doc.value("coverage", std::vector<std::vector<std::size_t>>{});
    for (const json& t : doc.value("reduction_trail", json::array())) {
      r.reduction_trail.push_back(PQParams{t.at(0).get<int>(), t.at(1).get<int>(), r.kind == InstanceKind::Planar ? 3 : 0});
    }
    r.uncovered = doc.value("uncovered", std::vector<std::size_t>{});
    r.promise_violated = doc.value("promise_violated", false);
    r.diagnostic = doc.value("diagnostic", "");
    r.statistics = doc.value("statistics", std::map<std::string, std::size_t>{});
    if (auto it = doc.find("certificate"); it != doc.end()) r.certificate = certificate_from(*it);
    if (auto it = doc.find("timing"); it != doc.end()) r.elapsed_ms = it->value("elapsed_ms", 0.0);
  } catch (const json::exception& e) {
    throw InputError(e.what(), "result");
  }
  return r;
}

ResultFile load_result(const std::string& path) { return parse_result(read_text(path)); }

void save_result(const std::string& path, const ResultFile& r) { write_text(path, dump_result(r)); }

std::vector<Interval> parse_intervals(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw InputError("expected a JSON object", "document");
  const json& arr = array_at(doc, "intervals", "");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = field("intervals", i);
    if (!arr[i].is_array() || arr[i].size() != 2) throw InputError("expected [lo, hi]", at);
    Interval iv{scalar_from(arr[i][0], at + "[0]"), scalar_from(arr[i][1], at + "[1]")};
    if (iv.hi < iv.lo) throw InputError("lo exceeds hi", at);
    out.push_back(std::move(iv));
  }
  return out;
}

std::vector<Interval> load_intervals(const std::string& path) { return parse_intervals(read_text(path)); }

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file", path);
  out << text;
}

}  // namespace pqstab
