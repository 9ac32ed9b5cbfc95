#pragma once

#include "kgp/ingest.hpp"
#include "kgp/schema.hpp"

namespace kgp {

/// Reading speed used for the readable-in-time flag (180 words per minute).
inline constexpr double kReadingWordsPerSecond = 3.0;

/// 14 layout features of the slide deck.
FeatureGroup slide_structure_features(const SlideDoc& slides);

/// 10 subtitle features; sentence boundaries come from the transcript
/// annotation.
FeatureGroup srt_structure_features(const TranscriptDoc& transcript,
                                    const AnnotatedDocument& ann);

}  // namespace kgp
