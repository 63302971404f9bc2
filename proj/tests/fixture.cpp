#include "fixture.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include "ehoikit/image_io.hpp"
#include "ehoikit/matcher.hpp"
#include "ehoikit/model.hpp"

namespace fixture {

using namespace ehoi;

FrameSet reference_dataset() {
  FrameSet fs;
  fs.categories = reference_categories();
  for (int v = 1; v <= 4; ++v) fs.videos.push_back({v, "video_" + std::to_string(v)});

  for (int f = 0; f < 12; ++f) {
    Frame frame;
    frame.id = f + 1;
    frame.video_id = f / 3 + 1;
    frame.width = 640;
    frame.height = 480;
    char name[64];
    std::snprintf(name, sizeof(name), "video_%d/frame_%03d.ppm", frame.video_id, f);
    frame.image_path = name;
    frame.kind = f % 2 == 0 ? FrameKind::kContact : FrameKind::kUnspecified;
    if (f % 4 == 0) frame.depth_path = "depth/frame_" + std::to_string(f) + ".pgm";

    const double bx = 40.0 + 13.0 * (f % 5);
    const double by = 30.0 + 11.0 * (f % 4);
    const ImageSize image{640.0, 480.0};

    HandRecord contact_hand;
    contact_hand.id = 1;
    contact_hand.box = {bx, by, 60.0, 60.0};
    contact_hand.side = f % 2 == 1 ? HandSide::kLeft : HandSide::kRight;
    contact_hand.state = ContactState::kInContact;

    HandRecord free_hand;
    free_hand.id = 2;
    free_hand.box = {bx + 400.0, by + 250.0, 50.0, 40.0};
    free_hand.side = f % 2 == 1 ? HandSide::kRight : HandSide::kLeft;
    free_hand.state = ContactState::kNoContact;

    for (int j = 0; j < 5; ++j) {
      ObjectRecord o;
      o.id = 3 + j;
      o.category = (f * 5 + j) % 19 + 1;
      if (j == 0) {
        o.box = {bx + 40.0, by + 40.0, 40.0, 40.0};
        o.active = true;
        o.linked_hand = 1;
      } else if (j == 1 && f % 3 == 0) {
        o.box = {bx + 30.0, by - 30.0, 40.0, 40.0};  // overlaps the hand, but farther
      } else {
        o.box = {bx + 100.0 + 40.0 * j, by + 200.0, 30.0, 30.0};
      }
      frame.objects.push_back(o);
    }
    contact_hand.offset = encode_offset(contact_hand.box, frame.objects[0].box, image);
    frame.hands.push_back(contact_hand);
    frame.hands.push_back(free_hand);
    frame.distances_3d.emplace_back(3, 0.5 + 0.01 * f);
    fs.frames.push_back(std::move(frame));
  }
  return fs;
}

FrameSet perfect_detections(const FrameSet& gt) {
  FrameSet dets;
  dets.categories = gt.categories;
  for (const auto& gt_frame : gt.frames) {
    Frame frame;
    frame.id = gt_frame.id;
    frame.width = gt_frame.width;
    frame.height = gt_frame.height;
    const int f = gt_frame.id - 1;
    for (auto h : gt_frame.hands) {
      h.score = (h.state == ContactState::kInContact ? 0.95 : 0.9) - 0.005 * f;
      h.side_score = 0.93;
      h.state_score = h.state == ContactState::kInContact ? 0.88 : 0.12;
      frame.hands.push_back(h);
    }
    for (auto o : gt_frame.objects) {
      o.score = 0.85 - 0.02 * (o.id - 3) - 0.003 * f;
      o.active = false;
      o.linked_hand.reset();
      frame.objects.push_back(o);
    }
    dets.frames.push_back(std::move(frame));
  }
  match_dataset(dets, &gt, 1);
  return dets;
}

SplitSpec reference_split() {
  SplitSpec spec;
  spec.assignment[1] = SplitSpec::Bucket::kTrain;
  spec.assignment[2] = SplitSpec::Bucket::kTrain;
  spec.assignment[3] = SplitSpec::Bucket::kVal;
  spec.assignment[4] = SplitSpec::Bucket::kTest;
  return spec;
}

FrameSet blur_probe_set() {
  FrameSet set;
  set.categories.categories = {{1, "mug"}, {2, "plate"}};
  set.videos = {{1, "video_1"}};
  for (int f = 0; f < 2; ++f) {
    Frame frame;
    frame.id = f + 1;
    frame.video_id = 1;
    frame.width = 64;
    frame.height = 48;
    char name[32];
    std::snprintf(name, sizeof(name), "cam/f_%03d.ppm", f + 1);
    frame.image_path = name;
    HandRecord h;
    h.id = 1;
    h.box = {10.0 + f, 10.0, 12.0, 12.0};
    h.side = HandSide::kLeft;
    h.state = ContactState::kInContact;
    ObjectRecord o;
    o.id = 2;
    o.box = {26.0 + f, 14.0, 10.0, 10.0};
    o.category = f + 1;
    o.active = true;
    o.linked_hand = 1;
    h.offset = encode_offset(h.box, o.box, {64.0, 48.0});
    frame.hands.push_back(h);
    frame.objects.push_back(o);
    set.frames.push_back(std::move(frame));
  }
  return set;
}

void write_probe_images(const std::string& dir) {
  std::filesystem::create_directories(std::filesystem::path(dir) / "cam");
  for (int f = 0; f < 2; ++f) {
    Image img;
    img.width = 64;
    img.height = 48;
    img.channels = 3;
    img.data.resize(64 * 48 * 3);
    for (std::size_t i = 0; i < img.data.size(); ++i)
      img.data[i] = static_cast<std::uint8_t>((i * 7 + static_cast<std::size_t>(f) * 31) % 256);
    char name[32];
    std::snprintf(name, sizeof(name), "cam/f_%03d.ppm", f + 1);
    write_pnm((std::filesystem::path(dir) / name).string(), img);
  }
}

std::string fixtures_dir() {
  const char* dir = std::getenv("EHOIKIT_FIXTURES");
  if (!dir || !*dir) throw std::runtime_error("EHOIKIT_FIXTURES is not set");
  return dir;
}

}  // namespace fixture
