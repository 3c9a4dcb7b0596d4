// File formats: tracks (JSON lines), regions, route graphs, scene bundles
// and narrative dumps. Every file starts with a schema name and version.
//
// tracks.jsonl   {"schema":"vistalk.tracks","version":1}
//                {"entity_id":"irene_face","kind":"person","t":10.0,"box":[x0,y0,x1,y1]}
//                {"entity_id":"barbara_gaze","kind":"gaze","t":3.2,"point":[x,y],"depth":1.5}
// regions.json   {"schema":"vistalk.regions","version":1,
//                 "regions":[{"name":"corridor","box":[10,0,40,15],"layer":"floorplan"}]}
// route_graph    {"schema":"vistalk.route_graph","version":1,
//                 "nodes":[{"name":"corridor","region":"corridor"}],"edges":[["corridor","reception"]]}
// scene.json     {"schema":"vistalk.scene","version":1,"files":{...},"relations":[...],...}
// narrative      {"schema":"vistalk.narrative","version":1,"frames":[...],"entities":{...},
//                 "holdings":[...],"occurrences":[...]}
#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vistalk/core.hpp"
#include "vistalk/image_schemas.hpp"
#include "vistalk/narrative.hpp"
#include "vistalk/nlg/grammar.hpp"
#include "vistalk/nlg/ids.hpp"
#include "vistalk/nlg/lexicon.hpp"
#include "vistalk/scene.hpp"
#include "vistalk/store.hpp"

namespace vistalk::io {

using nlohmann::json;

inline constexpr int format_version = 1;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_input, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_input, where + ": malformed JSON (" + e.what() + ")");
  }
}

inline void check_header(const json& j, const std::string& schema, const std::string& where) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema)
    throw Error(ErrorCode::invalid_input, where + ": expected schema \"" + schema + "\"");
  if (!j.contains("version") || j["version"] != format_version)
    throw Error(ErrorCode::invalid_input, where + ": unsupported " + schema + " version");
}

inline Box2 box_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4 || !std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number(); }))
    throw Error(ErrorCode::invalid_input, where + ": box must be [xmin, ymin, xmax, ymax]");
  try {
    return Box2(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  } catch (const Error& e) {
    throw Error(ErrorCode::invalid_input, where + ": " + e.what());
  }
}

inline json box_to(const Box2& b) { return json::array({b.xmin(), b.ymin(), b.xmax(), b.ymax()}); }

template <class T>
T field(const json& j, const char* name, const std::string& where) {
  if (!j.contains(name)) throw Error(ErrorCode::invalid_input, where + ": missing field \"" + std::string(name) + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::invalid_input, where + ": field \"" + std::string(name) + "\" has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const char* name, T fallback, const std::string& where) {
  return j.contains(name) ? field<T>(j, name, where) : fallback;
}

inline json span_to(const Span& s) { return {{"start", s.start().seconds()}, {"end", s.end().seconds()}}; }

inline Span span_from(const json& j, const std::string& where) {
  return Span::from_bounds(TimePoint::from_seconds(field<double>(j, "start", where)),
                           TimePoint::from_seconds(field<double>(j, "end", where)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tracks

/// Reads line-delimited track records. Tracks appear in first-mention order;
/// each entity keeps one kind throughout.
inline std::vector<Track> parse_tracks(std::string_view text, const std::string& source = "<tracks>") {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<std::string> order;
  std::map<std::string, std::pair<EntityKind, std::vector<Observation>>> by_entity;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const json j = detail::parse_json(line, where);
    if (!header) {
      detail::check_header(j, "vistalk.tracks", where);
      header = true;
      continue;
    }
    const auto id = detail::field<std::string>(j, "entity_id", where);
    const auto kind_text = detail::field<std::string>(j, "kind", where);
    const auto kind = parse_entity_kind(kind_text);
    if (!kind || *kind == EntityKind::region) throw Error(ErrorCode::invalid_input, where + ": bad kind \"" + kind_text + "\"");
    Observation o{TimePoint::from_seconds(detail::field<double>(j, "t", where)), std::nullopt, std::nullopt, std::nullopt};
    if (j.contains("box")) o.box = detail::box_from(j["box"], where);
    if (j.contains("point")) {
      const auto p = detail::field<std::vector<double>>(j, "point", where);
      if (p.size() != 2) throw Error(ErrorCode::invalid_input, where + ": point must be [x, y]");
      o.point = Point2{p[0], p[1]};
    }
    if (j.contains("depth")) o.depth = detail::field<double>(j, "depth", where);
    try {
      o.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::invalid_input, where + ": " + e.what());
    }
    auto [it, inserted] = by_entity.try_emplace(id, *kind, std::vector<Observation>{});
    if (inserted) order.push_back(id);
    if (it->second.first != *kind)
      throw Error(ErrorCode::invalid_input, where + ": entity '" + id + "' changes kind to " + kind_text);
    auto& obs = it->second.second;
    if (!obs.empty() && !(obs.back().at < o.at))
      throw Error(ErrorCode::invalid_input, where + ": observations of '" + id + "' are not strictly increasing in t");
    obs.push_back(o);
  }
  if (!header) throw Error(ErrorCode::invalid_input, source + ": empty tracks file");
  std::vector<Track> out;
  for (const auto& id : order) out.emplace_back(id, by_entity[id].first, std::move(by_entity[id].second));
  return out;
}

inline std::vector<Track> load_tracks(const std::string& path) { return parse_tracks(detail::read_file(path), path); }

inline std::string dump_tracks(const std::vector<Track>& tracks) {
  std::string out = json{{"schema", "vistalk.tracks"}, {"version", format_version}}.dump() + "\n";
  for (const auto& t : tracks) {
    for (const auto& o : t.observations()) {
      json j{{"entity_id", t.entity_id()}, {"kind", to_string(t.kind())}, {"t", o.at.seconds()}};
      if (o.box) j["box"] = detail::box_to(*o.box);
      if (o.point) j["point"] = {o.point->x, o.point->y};
      if (o.depth) j["depth"] = *o.depth;
      out += j.dump() + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regions and route graphs

inline std::vector<Region> parse_regions(const std::string& text, const std::string& source = "<regions>") {
  const json j = detail::parse_json(text, source);
  detail::check_header(j, "vistalk.regions", source);
  if (!j.contains("regions") || !j["regions"].is_array())
    throw Error(ErrorCode::invalid_input, source + ": \"regions\" must be an array");
  std::vector<Region> out;
  for (std::size_t i = 0; i < j["regions"].size(); ++i) {
    const json& r = j["regions"][i];
    const std::string where = source + ": regions[" + std::to_string(i) + "]";
    out.push_back({detail::field<std::string>(r, "name", where), detail::box_from(r.value("box", json()), where),
                   detail::field_or<std::string>(r, "layer", "default", where)});
  }
  return out;
}

inline std::vector<Region> load_regions(const std::string& path) { return parse_regions(detail::read_file(path), path); }

inline RouteGraph parse_route_graph(const std::string& text, const std::string& source = "<route_graph>") {
  const json j = detail::parse_json(text, source);
  detail::check_header(j, "vistalk.route_graph", source);
  std::vector<RouteGraph::Node> nodes;
  for (const auto& n : j.value("nodes", json::array()))
    nodes.push_back({detail::field<std::string>(n, "name", source), detail::field<std::string>(n, "region", source)});
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw Error(ErrorCode::invalid_input, source + ": edges must be [a, b] name pairs");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  try {
    return RouteGraph(std::move(nodes), edges);
  } catch (const Error& e) {
    throw Error(ErrorCode::invalid_input, source + ": " + e.what());
  }
}

inline RouteGraph load_route_graph(const std::string& path) { return parse_route_graph(detail::read_file(path), path); }

// ---------------------------------------------------------------------------
// Scene configuration

inline Polarity parse_polarity(const std::string& s, const std::string& where) {
  if (s == "increasing") return Polarity::increasing;
  if (s == "decreasing") return Polarity::decreasing;
  throw Error(ErrorCode::invalid_input, where + ": polarity must be increasing or decreasing");
}

inline SceneConfig parse_scene_config(const json& j, const std::string& where) {
  SceneConfig c;
  if (j.contains("axis")) {
    const json& a = j["axis"];
    c.polarity.vertical = parse_polarity(detail::field_or<std::string>(a, "vertical", "increasing", where), where);
    c.polarity.horizontal = parse_polarity(detail::field_or<std::string>(a, "horizontal", "increasing", where), where);
    c.polarity.depth = parse_polarity(detail::field_or<std::string>(a, "depth", "increasing", where), where);
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    c.tolerances.dist = detail::field_or<double>(t, "dist", c.tolerances.dist, where);
    c.tolerances.size = detail::field_or<double>(t, "size", c.tolerances.size, where);
    c.tolerances.depth = detail::field_or<double>(t, "depth", c.tolerances.depth, where);
    if (t.contains("motion")) c.eps_motion = detail::field<double>(t, "motion", where);
  }
  c.motion_rate = detail::field_or<double>(j, "motion_rate", c.motion_rate, where);
  if (j.contains("scene_diagonal")) c.scene_diagonal = detail::field<double>(j, "scene_diagonal", where);
  c.motion_stride = detail::field_or<std::size_t>(j, "motion_stride", c.motion_stride, where);
  c.max_gap = detail::field_or<double>(j, "max_gap", c.max_gap, where);
  c.min_hold = detail::field_or<std::size_t>(j, "min_hold", c.min_hold, where);
  for (const auto& r : j.value("relations", json::array())) {
    RelationSpec spec{detail::field<std::string>(r, "family", where),
                      detail::field<std::vector<std::string>>(r, "args", where)};
    try {
      expand_relation_specs({spec});
    } catch (const Error& e) {
      throw Error(ErrorCode::invalid_input, where + ": relation " + spec.family + ": " + e.what());
    }
    c.relations.push_back(std::move(spec));
  }
  for (const auto& l : j.value("localize", json::array()))
    c.localize.push_back({detail::field<std::string>(l, "entity", where), detail::field<std::string>(l, "layer", where)});
  if (j.contains("schemas")) {
    const json& s = j["schemas"];
    for (const auto& x : s.value("containment", json::array()))
      c.schemas.containment.push_back(
          {detail::field<std::string>(x, "entity", where), detail::field<std::string>(x, "container", where)});
    c.schemas.occupancy_threshold = detail::field_or<double>(s, "occupancy_threshold", c.schemas.occupancy_threshold, where);
    c.schemas.source_path_goal = detail::field_or<std::vector<std::string>>(s, "source_path_goal", {}, where);
    c.schemas.path_goal = detail::field_or<std::vector<std::string>>(s, "path_goal", {}, where);
    for (const auto& x : s.value("attraction", json::array()))
      c.schemas.attraction.push_back({detail::field<std::string>(x, "entity", where),
                                      detail::field<std::vector<std::string>>(x, "attractors", where)});
    c.schemas.attraction_threshold =
        detail::field_or<double>(s, "attraction_threshold", c.schemas.attraction_threshold, where);
    c.schemas.max_transition_gap = detail::field_or<double>(s, "max_transition_gap", c.schemas.max_transition_gap, where);
  }
  return c;
}

/// Everything needed to narrate one scene.
struct SceneBundle {
  std::filesystem::path root;
  Scene scene;
  SceneConfig config;
  std::optional<RouteGraph> route_graph;
  nlg::Vocabulary vocabulary;
  nlg::Lexicon lexicon;
  std::optional<nlg::Grammar> grammar;
  bool has_vocabulary = false;
};

/// Language resources only, for parsing without a scene.
inline nlg::Lexicon load_lexicons(const std::vector<std::string>& paths,
                                  nlg::PossessiveStyle style = nlg::PossessiveStyle::plain) {
  nlg::Lexicon lex(style);
  for (const auto& p : paths) nlg::load_lexicon_file(lex, p);
  return lex;
}

/// Loads a bundle from a directory holding scene.json, or from the path of
/// a scene file. `config_override` replaces the scene file. Relative paths
/// inside the scene file resolve against the scene file's directory.
inline SceneBundle load_bundle(const std::filesystem::path& bundle, const std::optional<std::filesystem::path>& config_override = {}) {
  namespace fs = std::filesystem;
  fs::path scene_file = config_override ? *config_override
                        : fs::is_directory(bundle) ? bundle / "scene.json"
                                                   : bundle;
  const std::string where = scene_file.string();
  const json j = detail::parse_json(detail::read_file(where), where);
  detail::check_header(j, "vistalk.scene", where);

  SceneBundle b;
  b.root = scene_file.parent_path();
  auto resolve = [&](const std::string& rel) { return (b.root / rel).lexically_normal().string(); };
  const json files = j.value("files", json::object());
  if (!files.contains("tracks")) throw Error(ErrorCode::invalid_input, where + ": files.tracks is required");
  if (!files.contains("regions")) throw Error(ErrorCode::invalid_input, where + ": files.regions is required");

  std::vector<Track> tracks = load_tracks(resolve(detail::field<std::string>(files, "tracks", where)));
  std::vector<Region> regions = load_regions(resolve(detail::field<std::string>(files, "regions", where)));
  try {
    b.scene = Scene(std::move(tracks), std::move(regions));
  } catch (const Error& e) {
    throw Error(ErrorCode::invalid_input, where + ": " + e.what());
  }
  b.config = parse_scene_config(j, where);
  if (files.contains("route_graph")) {
    b.route_graph = load_route_graph(resolve(detail::field<std::string>(files, "route_graph", where)));
    try {
      b.route_graph->validate_against(b.scene.regions());
    } catch (const Error& e) {
      throw Error(ErrorCode::invalid_input, where + ": " + e.what());
    }
  }
  if (files.contains("vocab")) {
    b.vocabulary = nlg::load_vocabulary_file(resolve(detail::field<std::string>(files, "vocab", where)));
    b.has_vocabulary = true;
  }
  const std::string style = j.value("possessive", std::string("plain"));
  if (style != "plain" && style != "apostrophe")
    throw Error(ErrorCode::invalid_input, where + ": possessive must be plain or apostrophe");
  b.lexicon = nlg::Lexicon(style == "plain" ? nlg::PossessiveStyle::plain : nlg::PossessiveStyle::apostrophe);
  for (const auto& p : detail::field_or<std::vector<std::string>>(files, "lexicon", {}, where))
    nlg::load_lexicon_file(b.lexicon, resolve(p));
  if (files.contains("grammar")) b.grammar = nlg::load_grammar_file(resolve(detail::field<std::string>(files, "grammar", where)));
  return b;
}

// ---------------------------------------------------------------------------
// Narrative dumps

inline json occurrence_to_json(const Occurrence& o) {
  return {{"id", o.id()}, {"kind", o.kind}, {"roles", o.roles}, {"attributes", o.attributes}, {"span", detail::span_to(o.span)}};
}

inline json store_to_json(const NarrativeStore& store) {
  json frames = json::array();
  for (TimePoint t : store.frames()) frames.push_back(t.seconds());
  json entities = json::object();
  for (const auto& [id, kind] : store.entities()) entities[id] = to_string(kind);
  json holdings = json::array();
  for (const Holding& h : store.holdings())
    holdings.push_back({{"fluent", h.fluent.name()}, {"args", h.fluent.args()}, {"relation", h.relation},
                        {"span", detail::span_to(h.span)}});
  json occurrences = json::array();
  for (const auto& o : store.occurrences()) occurrences.push_back(occurrence_to_json(o));
  return {{"schema", "vistalk.narrative"}, {"version", format_version}, {"frames", frames},
          {"entities", entities},          {"holdings", holdings},      {"occurrences", occurrences}};
}

inline NarrativeStore store_from_json(const json& j, const std::string& where = "<narrative>") {
  detail::check_header(j, "vistalk.narrative", where);
  std::vector<TimePoint> frames;
  for (const auto& f : j.value("frames", json::array())) frames.push_back(TimePoint::from_seconds(f.get<double>()));
  NarrativeStore store(frames);
  const json entities = j.value("entities", json::object());
  for (const auto& [id, kind] : entities.items()) {
    const auto k = parse_entity_kind(kind.get<std::string>());
    if (!k) throw Error(ErrorCode::invalid_input, where + ": bad entity kind for " + id);
    store.register_entity(id, *k);
  }
  for (const auto& h : j.value("holdings", json::array()))
    store.insert({Fluent(detail::field<std::string>(h, "fluent", where), detail::field<std::vector<std::string>>(h, "args", where)),
                  detail::field<std::string>(h, "relation", where), detail::span_from(h.at("span"), where)});
  for (const auto& o : j.value("occurrences", json::array())) {
    Occurrence occ{detail::field<std::string>(o, "kind", where),
                   detail::field<std::map<std::string, std::vector<std::string>>>(o, "roles", where),
                   detail::field_or<std::map<std::string, std::string>>(o, "attributes", {}, where),
                   detail::span_from(o.at("span"), where)};
    store.add_occurrence(std::move(occ));
  }
  return store;
}

/// Writes `content` to `path` through a temporary file and a rename, so
/// readers never see a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::invalid_input, tmp.string() + ": cannot write");
    out << content;
    if (!out) throw Error(ErrorCode::invalid_input, tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace vistalk::io
