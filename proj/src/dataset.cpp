#include "ehoikit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ehoikit/errors.hpp"
#include "ehoikit/rng.hpp"

namespace ehoi {

using Json = nlohmann::ordered_json;

bool CategoryTable::contains(int id) const {
  return std::any_of(categories.begin(), categories.end(),
                     [id](const Category& c) { return c.id == id; });
}

const std::string& CategoryTable::name_of(int id) const {
  for (const auto& c : categories)
    if (c.id == id) return c.name;
  throw ValidationError("unknown category id " + std::to_string(id));
}

CategoryTable reference_categories() {
  static const char* kNames[] = {
      "power supply",       "oscilloscope",
      "welder station",     "electric screwdriver",
      "screwdriver",        "pliers",
      "welder probe tip",   "oscilloscope probe tip",
      "low voltage board",  "high voltage board",
      "register",           "electric screwdriver battery",
      "working area",       "welder base",
      "socket",             "left red button",
      "left green button",  "right red button",
      "right green button"};
  CategoryTable table;
  int id = 1;
  for (const char* name : kNames) table.categories.push_back({id++, name});
  return table;
}

const Frame* FrameSet::find_frame(int id) const {
  for (const auto& f : frames)
    if (f.id == id) return &f;
  return nullptr;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON document: ") + e.what());
  }
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null())
    throw ParseError(where + ": missing required key '" + key + "'");
  return *it;
}

double require_number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + ": key '" + key + "' is not a number");
  return v.get<double>();
}

int require_int(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + ": key '" + key + "' is not an integer");
  return v.get<int>();
}

std::string require_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": key '" + key + "' is not a string");
  return v.get<std::string>();
}

std::optional<double> optional_number(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ParseError(where + ": key '" + key + "' is not a number");
  return it->get<double>();
}

std::optional<int> optional_int(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw ParseError(where + ": key '" + key + "' is not an integer");
  return it->get<int>();
}

std::optional<std::string> optional_string(const Json& obj, const char* key,
                                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(where + ": key '" + key + "' is not a string");
  return it->get<std::string>();
}

enum class BoxFormat { kXYWH, kXYXY };

BoxFormat document_box_format(const Json& doc) {
  const auto fmt = optional_string(doc, "bbox_format", "document");
  if (!fmt || *fmt == "xywh") return BoxFormat::kXYWH;
  if (*fmt == "xyxy") return BoxFormat::kXYXY;
  throw ParseError("document: unsupported bbox_format '" + *fmt + "'");
}

BBox parse_bbox(const Json& rec, BoxFormat format, const std::string& where) {
  const Json& arr = require(rec, "bbox", where);
  if (!arr.is_array() || arr.size() != 4)
    throw ParseError(where + ": bbox must be an array of four numbers");
  double v[4];
  for (int i = 0; i < 4; ++i) {
    if (!arr[i].is_number()) throw ParseError(where + ": bbox must be an array of four numbers");
    v[i] = arr[i].get<double>();
  }
  BBox box;
  if (format == BoxFormat::kXYWH) {
    box = {v[0], v[1], v[2], v[3]};
  } else {
    box = {v[0], v[1], v[2] - v[0], v[3] - v[1]};
  }
  if (box.w < 0.0 || box.h < 0.0)
    throw ValidationError(where + ": bbox has negative width or height");
  return box;
}

double parse_score(const Json& rec, const char* key, bool required, const std::string& where) {
  std::optional<double> s;
  if (required) {
    s = require_number(rec, key, where);
  } else {
    s = optional_number(rec, key, where);
    if (!s) return 1.0;
  }
  if (*s < 0.0 || *s > 1.0)
    throw ValidationError(where + ": " + key + " must lie in [0,1]");
  return *s;
}

HandSide parse_side(const Json& rec, const std::string& where) {
  const std::string s = require_string(rec, "hand_side", where);
  if (s == "left") return HandSide::kLeft;
  if (s == "right") return HandSide::kRight;
  throw ValidationError(where + ": hand_side must be 'left' or 'right'");
}

std::optional<ContactState> parse_state(const Json& rec, const std::string& where) {
  const auto s = optional_string(rec, "contact_state", where);
  if (!s) return std::nullopt;
  if (*s == "contact") return ContactState::kInContact;
  if (*s == "no_contact") return ContactState::kNoContact;
  throw ValidationError(where + ": contact_state must be 'contact' or 'no_contact'");
}

std::optional<OffsetVector> parse_offset(const Json& rec, const std::string& where) {
  auto it = rec.find("offset");
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_array() || it->size() != 3)
    throw ParseError(where + ": offset must be an array [vx, vy, m]");
  OffsetVector o;
  o.vx = (*it)[0].get<double>();
  o.vy = (*it)[1].get<double>();
  o.m = (*it)[2].get<double>();
  if (o.m < 0.0) throw ValidationError(where + ": offset magnitude must be nonnegative");
  if (o.m > 0.0 && std::abs(o.vx * o.vx + o.vy * o.vy - 1.0) >= 1e-6)
    throw ValidationError(where + ": offset direction is not a unit vector");
  return o;
}

CategoryTable parse_categories(const Json& arr) {
  CategoryTable table;
  for (const auto& c : arr) {
    const std::string where = "category " + (c.contains("id") ? c["id"].dump() : "<no id>");
    Category cat;
    cat.id = require_int(c, "id", where);
    cat.name = require_string(c, "name", where);
    table.categories.push_back(cat);
  }
  std::sort(table.categories.begin(), table.categories.end(),
            [](const Category& a, const Category& b) { return a.id < b.id; });
  std::set<std::string> names;
  for (std::size_t i = 0; i < table.categories.size(); ++i) {
    const auto& c = table.categories[i];
    if (c.id != static_cast<int>(i) + 1)
      throw ValidationError("category ids must be unique and contiguous from 1; found id " +
                            std::to_string(c.id) + " at position " + std::to_string(i + 1));
    if (!names.insert(c.name).second)
      throw ValidationError("duplicate category name '" + c.name + "'");
  }
  return table;
}

FrameKind parse_frame_kind(const Json& rec, const std::string& where) {
  const auto s = optional_string(rec, "frame_kind", where);
  if (!s) return FrameKind::kUnspecified;
  if (*s == "contact") return FrameKind::kContact;
  if (*s == "non_contact") return FrameKind::kNonContact;
  throw ValidationError(where + ": frame_kind must be 'contact' or 'non_contact'");
}

// Referential checks shared by both document kinds, applied once a frame's
// hand and object lists are assembled.
void validate_frame_links(Frame& frame, bool ground_truth) {
  const std::string fctx = "frame " + std::to_string(frame.id);
  std::set<int> used_ids;
  for (const auto& h : frame.hands)
    if (!used_ids.insert(h.id).second)
      throw ValidationError(fctx + ": duplicate annotation id " + std::to_string(h.id));
  for (const auto& o : frame.objects)
    if (!used_ids.insert(o.id).second)
      throw ValidationError(fctx + ": duplicate annotation id " + std::to_string(o.id));

  auto find_hand = [&](int id) -> const HandRecord* {
    for (const auto& h : frame.hands)
      if (h.id == id) return &h;
    return nullptr;
  };

  for (const auto& o : frame.objects) {
    const std::string octx = fctx + ": object " + std::to_string(o.id);
    if (o.active && ground_truth && !o.linked_hand)
      throw ValidationError(octx + ": active object has no linked_hand_id");
    if (o.linked_hand) {
      if (!o.active)
        throw ValidationError(octx + ": linked_hand_id requires active = true");
      const HandRecord* h = find_hand(*o.linked_hand);
      if (!h)
        throw ValidationError(octx + ": linked_hand_id " + std::to_string(*o.linked_hand) +
                              " does not name a hand in the frame");
      if (h->state != ContactState::kInContact)
        throw ValidationError(octx + ": linked hand " + std::to_string(h->id) +
                              " has contact_state no_contact");
    }
  }

  for (auto& h : frame.hands) {
    const std::string hctx = fctx + ": hand " + std::to_string(h.id);
    if (h.state == ContactState::kNoContact && h.offset)
      throw ValidationError(hctx + ": no_contact hand carries an offset");
    if (h.state == ContactState::kInContact) {
      if (ground_truth) {
        const ObjectRecord* linked = nullptr;
        for (const auto& o : frame.objects) {
          if (o.active && o.linked_hand == h.id && (!linked || o.id < linked->id)) linked = &o;
        }
        if (!linked)
          throw ValidationError(hctx + ": in-contact hand has no linked active object");
        if (!h.offset)
          h.offset = encode_offset(h.box, linked->box,
                                   {static_cast<double>(frame.width),
                                    static_cast<double>(frame.height)});
      } else if (!h.offset) {
        throw ValidationError(hctx + ": in-contact hand detection has no offset");
      }
    }
  }

  std::sort(frame.distances_3d.begin(), frame.distances_3d.end());
}

}  // namespace

FrameSet parse_annotations(const std::string& text, const ParseOptions& opts) {
  (void)opts;
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document: top level must be a JSON object");
  const BoxFormat box_format = document_box_format(doc);

  FrameSet fs;
  const Json& cats = require(doc, "categories", "document");
  if (!cats.is_array()) throw ParseError("document: 'categories' must be an array");
  fs.categories = parse_categories(cats);

  std::set<int> video_ids;
  if (doc.contains("videos") && !doc["videos"].is_null()) {
    if (!doc["videos"].is_array()) throw ParseError("document: 'videos' must be an array");
    for (const auto& v : doc["videos"]) {
      const std::string where = "video " + (v.contains("id") ? v["id"].dump() : "<no id>");
      VideoInfo info;
      info.id = require_int(v, "id", where);
      info.name = optional_string(v, "name", where).value_or("");
      if (!video_ids.insert(info.id).second)
        throw ValidationError("duplicate video id " + std::to_string(info.id));
      fs.videos.push_back(info);
    }
  }

  const Json& images = require(doc, "images", "document");
  if (!images.is_array()) throw ParseError("document: 'images' must be an array");
  std::map<int, std::size_t> frame_index;
  for (const auto& im : images) {
    const std::string where = "image " + (im.contains("id") ? im["id"].dump() : "<no id>");
    Frame frame;
    frame.id = require_int(im, "id", where);
    frame.image_path = require_string(im, "file_name", where);
    frame.width = require_int(im, "width", where);
    frame.height = require_int(im, "height", where);
    if (frame.width <= 0 || frame.height <= 0)
      throw ValidationError(where + ": width and height must be positive");
    frame.video_id = optional_int(im, "video_id", where).value_or(0);
    if (!fs.videos.empty() && frame.video_id != 0 && !video_ids.count(frame.video_id))
      throw ValidationError(where + ": video_id " + std::to_string(frame.video_id) +
                            " is not listed in 'videos'");
    frame.kind = parse_frame_kind(im, where);
    frame.depth_path = optional_string(im, "depth_file_name", where);
    frame.mask_path = optional_string(im, "mask_file_name", where);
    if (frame_index.count(frame.id))
      throw ValidationError(where + ": duplicate image id " + std::to_string(frame.id));
    frame_index[frame.id] = fs.frames.size();
    fs.frames.push_back(std::move(frame));
  }

  const Json& anns = require(doc, "annotations", "document");
  if (!anns.is_array()) throw ParseError("document: 'annotations' must be an array");
  for (const auto& a : anns) {
    const std::string where = "annotation " + (a.contains("id") ? a["id"].dump() : "<no id>");
    const int id = require_int(a, "id", where);
    const int image_id = require_int(a, "image_id", where);
    auto fit = frame_index.find(image_id);
    if (fit == frame_index.end())
      throw ValidationError(where + ": image_id " + std::to_string(image_id) +
                            " does not name an image");
    Frame& frame = fs.frames[fit->second];
    const std::string type = require_string(a, "type", where);
    const BBox box = parse_bbox(a, box_format, where);
    if (const auto d3 = optional_number(a, "distance_3d", where))
      frame.distances_3d.emplace_back(id, *d3);
    if (type == "hand") {
      HandRecord h;
      h.id = id;
      h.box = box;
      h.score = parse_score(a, "score", false, where);
      h.side = parse_side(a, where);
      h.side_score = parse_score(a, "side_score", false, where);
      const auto state = parse_state(a, where);
      if (!state) throw ParseError(where + ": missing required key 'contact_state'");
      h.state = *state;
      h.state_score = parse_score(a, "state_score", false, where);
      h.offset = parse_offset(a, where);
      frame.hands.push_back(h);
    } else if (type == "object") {
      ObjectRecord o;
      o.id = id;
      o.box = box;
      o.score = parse_score(a, "score", false, where);
      o.category = require_int(a, "category_id", where);
      if (!fs.categories.contains(o.category))
        throw ValidationError(where + ": unknown category_id " + std::to_string(o.category));
      auto act = a.find("active");
      if (act != a.end() && !act->is_null()) {
        if (!act->is_boolean()) throw ParseError(where + ": 'active' must be a boolean");
        o.active = act->get<bool>();
      }
      o.linked_hand = optional_int(a, "linked_hand_id", where);
      frame.objects.push_back(o);
    } else {
      throw ValidationError(where + ": unknown annotation type '" + type + "'");
    }
  }

  for (auto& frame : fs.frames) validate_frame_links(frame, /*ground_truth=*/true);
  return fs;
}

FrameSet parse_annotations_file(const std::string& path, const ParseOptions& opts) {
  return parse_annotations(read_file(path), opts);
}

FrameSet parse_detections(const std::string& text, const ParseOptions& opts) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document: top level must be a JSON object");
  const BoxFormat box_format = document_box_format(doc);

  FrameSet fs;
  if (doc.contains("categories") && !doc["categories"].is_null()) {
    if (!doc["categories"].is_array()) throw ParseError("document: 'categories' must be an array");
    fs.categories = parse_categories(doc["categories"]);
  }

  const Json& frames = require(doc, "frames", "document");
  if (!frames.is_array()) throw ParseError("document: 'frames' must be an array");
  std::set<int> frame_ids;
  for (const auto& fr : frames) {
    const std::string fwhere =
        "frame " + (fr.contains("image_id") ? fr["image_id"].dump() : "<no image_id>");
    Frame frame;
    frame.id = require_int(fr, "image_id", fwhere);
    if (!frame_ids.insert(frame.id).second)
      throw ValidationError(fwhere + ": duplicate image_id " + std::to_string(frame.id));
    frame.width = optional_int(fr, "width", fwhere).value_or(0);
    frame.height = optional_int(fr, "height", fwhere).value_or(0);
    if (frame.width < 0 || frame.height < 0)
      throw ValidationError(fwhere + ": width and height must be positive");

    if (fr.contains("hands") && !fr["hands"].is_null()) {
      if (!fr["hands"].is_array()) throw ParseError(fwhere + ": 'hands' must be an array");
      for (const auto& a : fr["hands"]) {
        const std::string where =
            fwhere + ": hand " + (a.contains("id") ? a["id"].dump() : "<no id>");
        HandRecord h;
        h.id = require_int(a, "id", where);
        h.box = parse_bbox(a, box_format, where);
        h.score = parse_score(a, "score", true, where);
        h.side = parse_side(a, where);
        h.side_score = parse_score(a, "side_score", true, where);
        h.state_score = parse_score(a, "state_score", true, where);
        const auto state = parse_state(a, where);
        // Files carrying only a probability map to in-contact at the
        // configured threshold.
        h.state = state ? *state
                        : (h.state_score >= opts.state_threshold ? ContactState::kInContact
                                                                 : ContactState::kNoContact);
        h.offset = parse_offset(a, where);
        // Thresholding below contact discards the projection output; only an
        // explicit no_contact state contradicts a stored offset.
        if (!state && h.state == ContactState::kNoContact) h.offset.reset();
        frame.hands.push_back(h);
      }
    }
    if (fr.contains("objects") && !fr["objects"].is_null()) {
      if (!fr["objects"].is_array()) throw ParseError(fwhere + ": 'objects' must be an array");
      for (const auto& a : fr["objects"]) {
        const std::string where =
            fwhere + ": object " + (a.contains("id") ? a["id"].dump() : "<no id>");
        ObjectRecord o;
        o.id = require_int(a, "id", where);
        o.box = parse_bbox(a, box_format, where);
        o.score = parse_score(a, "score", true, where);
        o.category = require_int(a, "category_id", where);
        if (!fs.categories.categories.empty() && !fs.categories.contains(o.category))
          throw ValidationError(where + ": unknown category_id " + std::to_string(o.category));
        auto act = a.find("active");
        if (act != a.end() && !act->is_null()) {
          if (!act->is_boolean()) throw ParseError(where + ": 'active' must be a boolean");
          o.active = act->get<bool>();
        }
        o.linked_hand = optional_int(a, "linked_hand_id", where);
        if (const auto d3 = optional_number(a, "distance_3d", where))
          frame.distances_3d.emplace_back(o.id, *d3);
        frame.objects.push_back(o);
      }
    }
    validate_frame_links(frame, /*ground_truth=*/false);
    fs.frames.push_back(std::move(frame));
  }
  return fs;
}

FrameSet parse_detections_file(const std::string& path, const ParseOptions& opts) {
  return parse_detections(read_file(path), opts);
}

namespace {

Json offset_to_json(const OffsetVector& o) { return Json::array({o.vx, o.vy, o.m}); }

Json bbox_to_json(const BBox& b) { return Json::array({b.x, b.y, b.w, b.h}); }

std::optional<double> distance_for(const Frame& frame, int ann_id) {
  for (const auto& [id, d] : frame.distances_3d)
    if (id == ann_id) return d;
  return std::nullopt;
}

Json hand_to_json(const HandRecord& h, bool detection) {
  Json a;
  a["id"] = h.id;
  a["bbox"] = bbox_to_json(h.box);
  if (detection || h.score != 1.0) a["score"] = h.score;
  a["hand_side"] = to_string(h.side);
  if (detection || h.side_score != 1.0) a["side_score"] = h.side_score;
  a["contact_state"] = to_string(h.state);
  if (detection || h.state_score != 1.0) a["state_score"] = h.state_score;
  if (h.offset) a["offset"] = offset_to_json(*h.offset);
  return a;
}

Json object_to_json(const ObjectRecord& o, const Frame& frame, bool detection) {
  Json a;
  a["id"] = o.id;
  a["bbox"] = bbox_to_json(o.box);
  if (detection || o.score != 1.0) a["score"] = o.score;
  a["category_id"] = o.category;
  if (o.active) a["active"] = true;
  if (o.linked_hand) a["linked_hand_id"] = *o.linked_hand;
  if (const auto d3 = distance_for(frame, o.id)) a["distance_3d"] = *d3;
  return a;
}

}  // namespace

std::string write_annotations(const FrameSet& fs) {
  Json doc;
  doc["schema_version"] = 1;
  doc["bbox_format"] = "xywh";
  doc["images"] = Json::array();
  for (const auto& f : fs.frames) {
    Json im;
    im["id"] = f.id;
    im["file_name"] = f.image_path;
    im["width"] = f.width;
    im["height"] = f.height;
    if (f.video_id != 0) im["video_id"] = f.video_id;
    if (f.kind == FrameKind::kContact) im["frame_kind"] = "contact";
    if (f.kind == FrameKind::kNonContact) im["frame_kind"] = "non_contact";
    if (f.depth_path) im["depth_file_name"] = *f.depth_path;
    if (f.mask_path) im["mask_file_name"] = *f.mask_path;
    doc["images"].push_back(std::move(im));
  }
  doc["videos"] = Json::array();
  for (const auto& v : fs.videos) {
    Json jv;
    jv["id"] = v.id;
    if (!v.name.empty()) jv["name"] = v.name;
    doc["videos"].push_back(std::move(jv));
  }
  doc["categories"] = Json::array();
  for (const auto& c : fs.categories.categories)
    doc["categories"].push_back(Json{{"id", c.id}, {"name", c.name}});
  doc["annotations"] = Json::array();
  for (const auto& f : fs.frames) {
    for (const auto& h : f.hands) {
      Json a = hand_to_json(h, false);
      a["image_id"] = f.id;
      a["type"] = "hand";
      if (const auto d3 = distance_for(f, h.id)) a["distance_3d"] = *d3;
      doc["annotations"].push_back(std::move(a));
    }
    for (const auto& o : f.objects) {
      Json a = object_to_json(o, f, false);
      a["image_id"] = f.id;
      a["type"] = "object";
      doc["annotations"].push_back(std::move(a));
    }
  }
  return doc.dump(2) + "\n";
}

std::string write_detections(const FrameSet& fs, const std::vector<FrameMatchInfo>* match_info) {
  if (match_info && match_info->size() != fs.frames.size())
    throw std::invalid_argument("write_detections: match_info size does not match frame count");
  Json doc;
  doc["schema_version"] = 1;
  doc["bbox_format"] = "xywh";
  if (!fs.categories.categories.empty()) {
    doc["categories"] = Json::array();
    for (const auto& c : fs.categories.categories)
      doc["categories"].push_back(Json{{"id", c.id}, {"name", c.name}});
  }
  doc["frames"] = Json::array();
  for (std::size_t i = 0; i < fs.frames.size(); ++i) {
    const Frame& f = fs.frames[i];
    Json fr;
    fr["image_id"] = f.id;
    if (f.width > 0) fr["width"] = f.width;
    if (f.height > 0) fr["height"] = f.height;
    fr["hands"] = Json::array();
    for (const auto& h : f.hands) fr["hands"].push_back(hand_to_json(h, true));
    fr["objects"] = Json::array();
    for (const auto& o : f.objects) fr["objects"].push_back(object_to_json(o, f, true));
    if (match_info) {
      const FrameMatchInfo& info = (*match_info)[i];
      fr["quadruplets"] = Json::array();
      for (const auto& q : info.quadruplets) {
        Json jq;
        jq["hand_id"] = q.hand;
        jq["contact_state"] = to_string(q.contact_state);
        if (q.active_object) jq["active_object_id"] = *q.active_object;
        jq["other_object_ids"] = q.other_objects;
        auto pit = info.interaction_points.find(q.hand);
        if (pit != info.interaction_points.end())
          jq["interaction_point"] = Json::array({pit->second.x, pit->second.y});
        fr["quadruplets"].push_back(std::move(jq));
      }
    }
    doc["frames"].push_back(std::move(fr));
  }
  return doc.dump(2) + "\n";
}

SplitSpec parse_split_spec(const std::string& text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("split spec: top level must be a JSON object");
  SplitSpec spec;
  const std::pair<const char*, SplitSpec::Bucket> buckets[] = {
      {"train", SplitSpec::Bucket::kTrain},
      {"val", SplitSpec::Bucket::kVal},
      {"test", SplitSpec::Bucket::kTest}};
  for (const auto& [key, bucket] : buckets) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) continue;
    if (!it->is_array()) throw ParseError(std::string("split spec: '") + key + "' must be an array");
    for (const auto& v : *it) {
      if (!v.is_number_integer())
        throw ParseError(std::string("split spec: '") + key + "' must hold integer video ids");
      const int id = v.get<int>();
      if (spec.assignment.count(id))
        throw ValidationError("split spec: video id " + std::to_string(id) +
                              " is assigned more than once");
      spec.assignment[id] = bucket;
    }
  }
  return spec;
}

SplitSpec parse_split_spec_file(const std::string& path) {
  return parse_split_spec(read_file(path));
}

DatasetStats stats(const FrameSet& fs) {
  DatasetStats s;
  std::set<int> videos;
  for (const auto& f : fs.frames) {
    ++s.images;
    videos.insert(f.video_id);
    for (const auto& h : f.hands) {
      ++s.hands;
      if (h.state == ContactState::kInContact)
        ++s.hands_in_contact;
      else
        ++s.hands_no_contact;
      if (h.side == HandSide::kLeft)
        ++s.left_hands;
      else
        ++s.right_hands;
    }
    for (const auto& o : f.objects) {
      ++s.objects;
      ++s.per_category_all[o.category];
      if (o.active) {
        ++s.active_objects;
        ++s.per_category_active[o.category];
      }
    }
  }
  videos.erase(0);  // 0 marks "no video"
  s.videos = videos.size();
  s.categories_present = s.per_category_all.size();
  return s;
}

SplitResult split(const FrameSet& fs, const SplitSpec& spec) {
  for (const auto& f : fs.frames) {
    if (!spec.assignment.count(f.video_id))
      throw ValidationError("split: video id " + std::to_string(f.video_id) +
                            " (frame " + std::to_string(f.id) + ") has no split assignment");
  }
  SplitResult r;
  FrameSet* sets[] = {&r.train, &r.val, &r.test};
  for (FrameSet* s : sets) s->categories = fs.categories;
  for (const auto& v : fs.videos) {
    auto it = spec.assignment.find(v.id);
    if (it == spec.assignment.end()) continue;
    sets[static_cast<int>(it->second)]->videos.push_back(v);
  }
  for (const auto& f : fs.frames)
    sets[static_cast<int>(spec.assignment.at(f.video_id))]->frames.push_back(f);
  r.train_stats = stats(r.train);
  r.val_stats = stats(r.val);
  r.test_stats = stats(r.test);
  return r;
}

FrameSet subsample(const FrameSet& fs, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw ValidationError("subsample: fraction must lie in (0, 1]");
  const std::size_t n = fs.frames.size();
  const std::size_t k =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(order[i - 1], order[j]);
  }
  order.resize(k);
  std::sort(order.begin(), order.end());
  FrameSet out;
  out.categories = fs.categories;
  out.videos = fs.videos;
  out.frames.reserve(k);
  for (const std::size_t i : order) out.frames.push_back(fs.frames[i]);
  return out;
}

std::string format_count(std::uint64_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  out.reserve(digits.size() + digits.size() / 3);
  int until_sep = static_cast<int>(digits.size() % 3);
  if (until_sep == 0) until_sep = 3;
  for (char c : digits) {
    if (until_sep == 0) {
      out.push_back(',');
      until_sep = 3;
    }
    out.push_back(c);
    --until_sep;
  }
  return out;
}

namespace {

std::string format_percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void append_row(std::string& out, const std::string& label, const std::string v[3]) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-17s%-9s%-9s%s\n", label.c_str(), v[0].c_str(), v[1].c_str(),
                v[2].c_str());
  out += buf;
}

}  // namespace

std::string render_stats_table(const DatasetStats& s) {
  std::string out;
  auto row = [&out](const std::string& label, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-25s%s\n", label.c_str(), value.c_str());
    out += buf;
  };
  if (s.videos > 0) row("#videos", format_count(s.videos));
  row("Total number of images", format_count(s.images));
  row("#hands", format_count(s.hands));
  row("#hands in contact", format_count(s.hands_in_contact));
  row("#hands not in contact", format_count(s.hands_no_contact));
  row("#left hands", format_count(s.left_hands));
  row("#right hands", format_count(s.right_hands));
  row("#object categories", format_count(s.categories_present));
  row("#objects", format_count(s.objects));
  row("#active objects", format_count(s.active_objects));
  return out;
}

std::string render_split_table(const SplitResult& r) {
  const DatasetStats* s[3] = {&r.train_stats, &r.val_stats, &r.test_stats};
  const double total_images = static_cast<double>(s[0]->images + s[1]->images + s[2]->images);
  std::string out;
  const std::string header[3] = {"Train", "Val", "Test"};
  append_row(out, "Split", header);
  std::string v[3];
  for (int i = 0; i < 3; ++i) v[i] = format_count(s[i]->videos);
  append_row(out, "#Videos", v);
  for (int i = 0; i < 3; ++i) v[i] = format_count(s[i]->images);
  append_row(out, "#images", v);
  for (int i = 0; i < 3; ++i)
    v[i] = format_percent(total_images > 0 ? 100.0 * static_cast<double>(s[i]->images) / total_images
                                           : 0.0);
  append_row(out, "%images", v);
  for (int i = 0; i < 3; ++i) v[i] = format_count(s[i]->hands);
  append_row(out, "#Hands", v);
  for (int i = 0; i < 3; ++i) v[i] = format_count(s[i]->objects);
  append_row(out, "#Objects", v);
  for (int i = 0; i < 3; ++i) v[i] = format_count(s[i]->active_objects);
  append_row(out, "#Active Objects", v);
  return out;
}

namespace {

Json stats_to_json_value(const DatasetStats& s, const CategoryTable& table) {
  Json j;
  j["videos"] = s.videos;
  j["images"] = s.images;
  j["hands"] = s.hands;
  j["hands_in_contact"] = s.hands_in_contact;
  j["hands_no_contact"] = s.hands_no_contact;
  j["left_hands"] = s.left_hands;
  j["right_hands"] = s.right_hands;
  j["object_categories"] = s.categories_present;
  j["objects"] = s.objects;
  j["active_objects"] = s.active_objects;
  j["per_category"] = Json::array();
  for (const auto& c : table.categories) {
    Json pc;
    pc["id"] = c.id;
    pc["name"] = c.name;
    auto all_it = s.per_category_all.find(c.id);
    auto act_it = s.per_category_active.find(c.id);
    pc["all"] = all_it == s.per_category_all.end() ? 0 : all_it->second;
    pc["active"] = act_it == s.per_category_active.end() ? 0 : act_it->second;
    j["per_category"].push_back(std::move(pc));
  }
  return j;
}

}  // namespace

std::string stats_to_json(const DatasetStats& s, const CategoryTable& table) {
  Json j;
  j["schema_version"] = 1;
  j["stats"] = stats_to_json_value(s, table);
  return j.dump(2) + "\n";
}

std::string split_stats_to_json(const SplitResult& r, const CategoryTable& table) {
  const double total =
      static_cast<double>(r.train_stats.images + r.val_stats.images + r.test_stats.images);
  Json j;
  j["schema_version"] = 1;
  const std::pair<const char*, const DatasetStats*> buckets[] = {
      {"train", &r.train_stats}, {"val", &r.val_stats}, {"test", &r.test_stats}};
  for (const auto& [key, s] : buckets) {
    Json b = stats_to_json_value(*s, table);
    b["images_percent"] =
        total > 0 ? 100.0 * static_cast<double>(s->images) / total : 0.0;
    j[key] = std::move(b);
  }
  return j.dump(2) + "\n";
}

}  // namespace ehoi
