#ifndef EHOIKIT_TESTS_FIXTURE_HPP_
#define EHOIKIT_TESTS_FIXTURE_HPP_

#include <string>

#include "ehoikit/dataset.hpp"

namespace fixture {

// Twelve 640x480 frames across four videos. Every frame has one in-contact
// hand interacting with one active object, one no-contact hand, and four
// passive objects; every third frame adds a second hand-overlapping object
// that must lose the association on distance. All nineteen reference
// categories occur; twelve of them occur as active objects.
ehoi::FrameSet reference_dataset();

// Detections that reproduce the ground truth exactly, with varied scores and
// associations rebuilt by the matcher. Every metric must score 100 on these.
ehoi::FrameSet perfect_detections(const ehoi::FrameSet& gt);

// Videos 1 and 2 to train, 3 to val, 4 to test.
ehoi::SplitSpec reference_split();

// Two 64x48 frames with one interaction each, small enough to blur quickly.
ehoi::FrameSet blur_probe_set();

// Writes the matching synthetic color images under dir/cam/.
void write_probe_images(const std::string& dir);

// Directory with committed fixture files, from $EHOIKIT_FIXTURES.
std::string fixtures_dir();

}  // namespace fixture

#endif  // EHOIKIT_TESTS_FIXTURE_HPP_
